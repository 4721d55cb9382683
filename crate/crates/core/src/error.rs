use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants carry a witness element index where one exists so callers can
/// show a concrete counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{p}")]
    Reducible { p: u64 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("field of size {q} exceeds enumeration bound {bound}")]
    TooLarge { q: u128, bound: u64 },
    #[error("{d} does not divide {n}")]
    NotDivisor { d: u64, n: u64 },
    #[error("gcd({a}, {b}) = {gcd} is not 1")]
    NotCoprime { a: i64, b: i64, gcd: i64 },
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("trace degree {d} does not divide extension degree {n}")]
    BadTraceDegree { d: u32, n: u32 },
    #[error("constant {value} out of range for field of size {q}")]
    ConstantOutOfRange { value: i128, q: u32 },
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("linearized polynomial is not bijective")]
    Singular,
    #[error("map is not bijective: {first} and {second} have the same image")]
    NotBijective { first: u32, second: u32 },
    #[error("|S| = {s} differs from |S_bar| = {s_bar}")]
    SizeMismatch { s: usize, s_bar: usize },
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("h vanishes at {witness} in the subgroup")]
    HVanishes { witness: u32 },
    #[error("h vanishes at {witness} in the image of lambda")]
    HVanishesOnImage { witness: u32 },
    #[error("condition failed: {what}")]
    ConditionFail { what: String, witness: Option<u32> },
    #[error("gamma is not a linear translator: lambda({x} + {u}*gamma) != lambda({x}) + {u}*b")]
    NotTranslator { x: u32, u: u32 },
    #[error("b + 1 = 0")]
    BPlusOneZero,
    #[error("lambda vanishes at {witness}")]
    LambdaZero { witness: u32 },
    #[error("pair map is not injective: {x} and {y} collide")]
    NotInjectivePhi { x: u32, y: u32 },
    #[error("psi inverse disagrees with the commuting square at {witness}")]
    SquareDoesNotCommute { witness: u32 },
    #[error("gamma must be nonzero")]
    GammaZero,
    #[error("gcd(k, q + 1) != 1 for k = {k}")]
    BadK { k: u64 },
    #[error("absolute trace of beta is nonzero")]
    TraceNonzero,
    #[error("{0} is not in the required subfield")]
    NotInSubfield(u32),
    #[error("extension degree must be even")]
    OddN,
    #[error("characteristic must be 2")]
    OddChar,
    #[error("element index {value} out of range for field of size {q}")]
    ElemOutOfRange { value: u64, q: u32 },
    #[error("closed form disagrees with the oracle at {witness}")]
    OracleMismatch { witness: u32 },
}

impl Error {
    /// Stable variant name used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::Reducible { .. } => "Reducible",
            Error::BadModulus(_) => "BadModulus",
            Error::TooLarge { .. } => "TooLarge",
            Error::NotDivisor { .. } => "NotDivisor",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::BadTraceDegree { .. } => "BadTraceDegree",
            Error::ConstantOutOfRange { .. } => "ConstantOutOfRange",
            Error::CtxMismatch => "CtxMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::Singular => "Singular",
            Error::NotBijective { .. } => "NotBijective",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::NotPermutation(_) => "NotPermutation",
            Error::HVanishes { .. } => "HVanishes",
            Error::HVanishesOnImage { .. } => "HVanishesOnImage",
            Error::ConditionFail { .. } => "ConditionFail",
            Error::NotTranslator { .. } => "NotTranslator",
            Error::BPlusOneZero => "BPlusOneZero",
            Error::LambdaZero { .. } => "LambdaZero",
            Error::NotInjectivePhi { .. } => "NotInjectivePhi",
            Error::SquareDoesNotCommute { .. } => "SquareDoesNotCommute",
            Error::GammaZero => "GammaZero",
            Error::BadK { .. } => "BadK",
            Error::TraceNonzero => "TraceNonzero",
            Error::NotInSubfield(_) => "NotInSubfield",
            Error::OddN => "OddN",
            Error::OddChar => "OddChar",
            Error::ElemOutOfRange { .. } => "ElemOutOfRange",
            Error::OracleMismatch { .. } => "OracleMismatch",
        }
    }

    /// Witness element, when the error names one.
    pub fn witness(&self) -> Option<Vec<u32>> {
        match *self {
            Error::NotBijective { first, second } => Some(vec![first, second]),
            Error::HVanishes { witness }
            | Error::HVanishesOnImage { witness }
            | Error::LambdaZero { witness }
            | Error::SquareDoesNotCommute { witness }
            | Error::OracleMismatch { witness } => Some(vec![witness]),
            Error::NotTranslator { x, u } => Some(vec![x, u]),
            Error::NotInjectivePhi { x, y } => Some(vec![x, y]),
            Error::ConditionFail { witness: Some(w), .. } => Some(vec![w]),
            Error::NotInSubfield(e) => Some(vec![e]),
            _ => None,
        }
    }

    /// Errors that reject a mathematical object, as opposed to malformed input.
    pub fn is_mathematical(&self) -> bool {
        !matches!(
            self,
            Error::SyntaxError { .. }
                | Error::BadModulus(_)
                | Error::LengthMismatch { .. }
                | Error::ElemOutOfRange { .. }
                | Error::ConstantOutOfRange { .. }
                | Error::BadTraceDegree { .. }
                | Error::CtxMismatch
                | Error::TooLarge { .. }
        )
    }

    pub(crate) fn condition(what: impl Into<String>, witness: Option<u32>) -> Self {
        Error::ConditionFail {
            what: what.into(),
            witness,
        }
    }
}
