//! Polynomials over F_q, always kept reduced modulo `x^q - x` so that two
//! polynomials are equal exactly when they induce the same function.

mod linearized;
mod parse;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

pub use linearized::{linearized_inverse, LinearizedPoly};
pub use parse::{parse_expr, parse_poly_expr, ExprAst};

/// Dense coefficients over a field, low-to-high, reduced mod `x^q - x`
/// with trailing zeros trimmed.
#[derive(Clone)]
pub struct PolyFq {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<Elem>,
}

impl PartialEq for PolyFq {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.ctx, &other.ctx) && self.coeffs == other.coeffs
    }
}

impl Eq for PolyFq {}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFq(q={}, {})", self.ctx.q(), self)
    }
}

/// Printed form `c0 + c1*x + c2*x^2 + ...`, zero terms omitted.
impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub(crate) fn same_field(a: &Arc<FieldCtx>, b: &Arc<FieldCtx>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Folds an exponent into `[0, q)` without changing the induced function.
#[inline]
pub(crate) fn fold_exponent(e: u128, q: u32) -> usize {
    if e < q as u128 {
        e as usize
    } else {
        (((e - 1) % (q as u128 - 1)) + 1) as usize
    }
}

impl PolyFq {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        PolyFq {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<FieldCtx>, c: Elem) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        Self::monomial(ctx, Elem::ONE, 1)
    }

    /// `c * x^e`, with `e` folded into `[0, q)`.
    pub fn monomial(ctx: &Arc<FieldCtx>, c: Elem, e: u64) -> Self {
        let e = fold_exponent(e as u128, ctx.q());
        let mut coeffs = vec![Elem::ZERO; e + 1];
        coeffs[e] = c;
        Self::from_coeffs(ctx, coeffs)
    }

    /// `c * x^e` for a possibly negative `e`, reading `x^{-k}` as the map
    /// `x -> x^{-k}` with `0^{-1} = 0`.
    pub fn monomial_signed(ctx: &Arc<FieldCtx>, c: Elem, e: i64) -> Self {
        if e >= 0 {
            Self::monomial(ctx, c, e as u64)
        } else {
            Self::monomial(ctx, c, negative_exponent(e.unsigned_abs(), ctx.q()))
        }
    }

    /// Builds a polynomial from raw coefficients of any length, reducing
    /// modulo `x^q - x`.
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, raw: Vec<Elem>) -> Self {
        let q = ctx.q() as usize;
        let coeffs = if raw.len() <= q {
            raw
        } else {
            let mut out = vec![Elem::ZERO; q];
            for (e, c) in raw.into_iter().enumerate() {
                if !c.is_zero() {
                    let k = fold_exponent(e as u128, ctx.q());
                    out[k] = ctx.add(out[k], c);
                }
            }
            out
        };
        let mut p = PolyFq {
            ctx: ctx.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn nonzero_terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
    }

    pub fn term_count(&self) -> usize {
        self.nonzero_terms().count()
    }

    /// Horner evaluation; sparse polynomials are summed term by term.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &*self.ctx;
        let terms = self.term_count();
        if terms * 8 < self.coeffs.len() {
            return self
                .nonzero_terms()
                .fold(Elem::ZERO, |acc, (i, c)| f.add(acc, f.mul(c, f.pow_u(x, i as u64))));
        }
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Values at every field element, in index order.
    pub fn tabulate(&self) -> Vec<Elem> {
        self.ctx.elements().map(|x| self.eval(x)).collect()
    }

    fn check_ctx(&self, other: &PolyFq) -> Result<()> {
        if same_field(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &PolyFq) -> Result<PolyFq> {
        self.check_ctx(other)?;
        let f = &*self.ctx;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::from_coeffs(&self.ctx, coeffs))
    }

    pub fn neg(&self) -> PolyFq {
        let coeffs = self.coeffs.iter().map(|&c| self.ctx.neg(c)).collect();
        Self::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &PolyFq) -> Result<PolyFq> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> PolyFq {
        let coeffs = self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect();
        Self::from_coeffs(&self.ctx, coeffs)
    }

    /// Product reduced mod `x^q - x`.
    pub fn mul(&self, other: &PolyFq) -> Result<PolyFq> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let f = &*self.ctx;
        let q = f.q();
        let len = (self.coeffs.len() + other.coeffs.len() - 1).min(q as usize);
        let mut out = vec![Elem::ZERO; len];
        let rhs: Vec<(usize, Elem)> = other.nonzero_terms().collect();
        for (i, a) in self.nonzero_terms() {
            for &(j, b) in &rhs {
                let k = fold_exponent((i + j) as u128, q);
                out[k] = f.add(out[k], f.mul(a, b));
            }
        }
        Ok(Self::from_coeffs(&self.ctx, out))
    }

    /// `self^e` as a function on the field (`P^0 = 1`).
    pub fn pow(&self, e: u64) -> PolyFq {
        let q = self.ctx.q();
        if e == 0 {
            return Self::constant(&self.ctx, Elem::ONE);
        }
        let e = fold_exponent(e as u128, q) as u64;
        if self.term_count() == 1 {
            let (j, c) = self.nonzero_terms().next().unwrap();
            let c = self.ctx.pow_u(c, e);
            return Self::monomial(&self.ctx, c, fold_exponent(j as u128 * e as u128, q) as u64);
        }
        let mut base = self.clone();
        let mut acc = Self::constant(&self.ctx, Elem::ONE);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// `self(x)^{p^k}`, computed coefficient-wise.
    pub fn frobenius(&self, k: u32) -> PolyFq {
        let f = &*self.ctx;
        let q = f.q();
        let order = (q - 1) as u64;
        let pk = crate::gf::mod_pow(f.p() as u64, k as u64, order);
        let mut out = vec![Elem::ZERO; q as usize];
        for (i, c) in self.nonzero_terms() {
            // i * p^k >= 1 whenever i >= 1, so fold via its residue mod q-1
            let e = if i == 0 {
                0
            } else {
                ((i as u64 * pk + order - 1) % order + 1) as usize
            };
            out[e] = f.add(out[e], f.frob(c, k));
        }
        Self::from_coeffs(&self.ctx, out)
    }

    /// Relative trace to the degree-`d` subfield applied to this polynomial.
    pub fn trace(&self, d: u32) -> Result<PolyFq> {
        let f = &*self.ctx;
        f.check_subfield_degree(d)?;
        let mut acc = Self::zero(&self.ctx);
        for i in 0..f.n() / d {
            acc = acc.add(&self.frobenius(d * i))?;
        }
        Ok(acc)
    }
}

/// `x^{-k}` as a nonnegative exponent in `[1, q-1]`, so that `0 -> 0`.
pub(crate) fn negative_exponent(k: u64, q: u32) -> u64 {
    let order = q as u64 - 1;
    order - (k % order)
}

/// Evaluates a raw (unreduced) coefficient list; used to state reduction
/// invariants.
pub fn eval_raw(ctx: &FieldCtx, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

/// Reduces a raw coefficient list modulo `x^q - x`.
pub fn reduce_mod_field(ctx: &Arc<FieldCtx>, raw: &[Elem]) -> PolyFq {
    PolyFq::from_coeffs(ctx, raw.to_vec())
}

pub fn eval_poly(p: &PolyFq, x: Elem) -> Elem {
    p.eval(x)
}

/// `outer(inner(x))` reduced mod `x^q - x`.
///
/// Uses symbolic Horner composition when that is cheaper than tabulating
/// and interpolating, and the table route otherwise.
pub fn compose(outer: &PolyFq, inner: &PolyFq) -> Result<PolyFq> {
    outer.check_ctx(inner)?;
    let q = outer.ctx.q() as u128;
    let symbolic_cost = outer.coeffs.len() as u128 * q * inner.term_count().max(1) as u128;
    if symbolic_cost <= q * q {
        compose_symbolic(outer, inner)
    } else {
        compose_tabulated(outer, inner)
    }
}

pub(crate) fn compose_symbolic(outer: &PolyFq, inner: &PolyFq) -> Result<PolyFq> {
    outer.check_ctx(inner)?;
    let ctx = &outer.ctx;
    let mut acc = PolyFq::zero(ctx);
    for &c in outer.coeffs.iter().rev() {
        acc = acc.mul(inner)?.add(&PolyFq::constant(ctx, c))?;
    }
    Ok(acc)
}

pub(crate) fn compose_tabulated(outer: &PolyFq, inner: &PolyFq) -> Result<PolyFq> {
    outer.check_ctx(inner)?;
    let table: Vec<Elem> = inner.tabulate().into_iter().map(|y| outer.eval(y)).collect();
    interpolate(&outer.ctx, &table)
}

/// The unique polynomial of degree `< q` taking `table[i]` at element `i`.
///
/// Lagrange over all of F_q: the basis polynomial at node `a` is
/// `1 - (x - a)^{q-1}` (its denominator `prod_{b != a}(a - b)` is always
/// `-1`), which expands to coefficient `-sum_a f(a) a^{q-1-k}` for
/// `1 <= k <= q-1` and `f(0)` for `k = 0`.
pub fn interpolate(ctx: &Arc<FieldCtx>, table: &[Elem]) -> Result<PolyFq> {
    let q = ctx.q() as usize;
    if table.len() != q {
        return Err(Error::LengthMismatch {
            expected: q,
            got: table.len(),
        });
    }
    if let Some(bad) = table.iter().find(|v| v.0 >= q as u32) {
        return Err(Error::ElemOutOfRange {
            value: bad.0 as u64,
            q: q as u32,
        });
    }
    let f = &**ctx;
    let order = (q - 1) as u64;
    // sums[e] = sum_{a != 0} f(a) a^e for e in [0, q-1)
    let mut sums = vec![Elem::ZERO; q - 1];
    for a in f.nonzero_elements() {
        let fa = table[a.index()];
        let Some(lf) = f.log(fa) else { continue };
        let la = f.log(a).unwrap() as u64;
        let mut l = lf as u64;
        for s in sums.iter_mut() {
            *s = f.add(*s, f.exp(l));
            l += la;
            if l >= order {
                l -= order;
            }
        }
    }
    let mut coeffs = vec![Elem::ZERO; q];
    coeffs[0] = table[0];
    for k in 1..q {
        let mut s = sums[q - 1 - k];
        if k == q - 1 {
            // a = 0 contributes f(0) * 0^0
            s = f.add(s, table[0]);
        }
        coeffs[k] = f.neg(s);
    }
    Ok(PolyFq::from_coeffs(ctx, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    fn ctx(p: u64, n: u32) -> Arc<FieldCtx> {
        Arc::new(build_field(p, n, None).unwrap())
    }

    fn poly(c: &Arc<FieldCtx>, coeffs: &[u32]) -> PolyFq {
        PolyFq::from_coeffs(c, coeffs.iter().map(|&v| Elem(v)).collect())
    }

    #[test]
    fn eval_examples() {
        let f5 = ctx(5, 1);
        let p = poly(&f5, &[0, 2, 0, 1]);
        assert_eq!(p.eval(Elem(1)), Elem(3));
        assert_eq!(p.eval(Elem(0)), Elem(0));
        let c = PolyFq::constant(&f5, Elem(4));
        for x in f5.elements() {
            assert_eq!(c.eval(x), Elem(4));
        }
    }

    #[test]
    fn compose_examples() {
        let f9 = ctx(3, 2);
        let cube = PolyFq::monomial(&f9, Elem::ONE, 3);
        assert_eq!(compose(&cube, &cube).unwrap(), PolyFq::x(&f9));

        let p = poly(&f9, &[4, 0, 7, 2]);
        assert_eq!(compose(&p, &PolyFq::x(&f9)).unwrap(), p);

        let f3 = ctx(3, 1);
        let sq = PolyFq::monomial(&f3, Elem::ONE, 2);
        let xp1 = poly(&f3, &[1, 1]);
        assert_eq!(compose(&sq, &xp1).unwrap(), poly(&f3, &[1, 2, 1]));
    }

    #[test]
    fn compose_ctx_mismatch() {
        let a = PolyFq::x(&ctx(3, 1));
        let b = PolyFq::x(&ctx(5, 1));
        assert_eq!(compose(&a, &b).unwrap_err(), Error::CtxMismatch);
    }

    #[test]
    fn interpolate_examples() {
        let f3 = ctx(3, 1);
        let id: Vec<Elem> = f3.elements().collect();
        assert_eq!(interpolate(&f3, &id).unwrap(), PolyFq::x(&f3));
        let c = vec![Elem(2); 3];
        assert_eq!(interpolate(&f3, &c).unwrap(), PolyFq::constant(&f3, Elem(2)));

        let f9 = ctx(3, 2);
        let two_x: Vec<Elem> = f9.elements().map(|x| f9.mul(Elem(2), x)).collect();
        assert_eq!(
            interpolate(&f9, &two_x).unwrap(),
            PolyFq::monomial(&f9, Elem(2), 1)
        );
        assert!(matches!(
            interpolate(&f9, &two_x[..4]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn interpolate_prime_field_two() {
        let f2 = ctx(2, 1);
        for t in [[0, 0], [0, 1], [1, 0], [1, 1]] {
            let table = vec![Elem(t[0]), Elem(t[1])];
            assert_eq!(interpolate(&f2, &table).unwrap().tabulate(), table);
        }
    }

    #[test]
    fn reduction_folds_high_exponents() {
        let f4 = ctx(2, 2);
        let x4 = PolyFq::monomial(&f4, Elem::ONE, 4);
        assert_eq!(x4, PolyFq::x(&f4));
        let x3 = PolyFq::monomial(&f4, Elem::ONE, 3);
        assert_eq!(x3.degree(), Some(3));
        assert_eq!(x3.eval(Elem(0)), Elem(0));
    }

    #[test]
    fn display_form() {
        let f5 = ctx(5, 1);
        assert_eq!(poly(&f5, &[0, 2, 0, 1]).to_string(), "2*x + 1*x^3");
        assert_eq!(PolyFq::zero(&f5).to_string(), "0");
        assert_eq!(poly(&f5, &[3]).to_string(), "3");
    }

    #[test]
    fn symbolic_and_tabulated_compose_agree() {
        let f = ctx(2, 4);
        let a = poly(&f, &[3, 0, 5, 1, 0, 0, 9]);
        let b = poly(&f, &[0, 7, 0, 0, 2]);
        let s = compose_symbolic(&a, &b).unwrap();
        let t = compose_tabulated(&a, &b).unwrap();
        assert_eq!(s, t);
        for x in f.elements() {
            assert_eq!(s.eval(x), a.eval(b.eval(x)));
        }
    }
}
