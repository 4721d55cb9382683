//! Finite-field permutation polynomials: arithmetic over GF(p^n), a small
//! polynomial expression language, brute-force permutation oracles, and
//! closed-form compositional inverses for AGW-type families.

pub mod agw;
pub mod cli;
pub mod descriptor;
pub mod error;
pub mod gen;
pub mod gf;
pub mod involution;
pub mod json;
pub mod perm;
pub mod poly;

pub use error::{Error, Result};
pub use gf::{build_field, Elem, FieldCtx, FieldSpec};
pub use poly::{compose, interpolate, parse_poly_expr, PolyFq};
