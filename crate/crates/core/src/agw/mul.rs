//! `f(x) = x^r h(x^s)` with `s | q - 1`.

use std::sync::Arc;

use serde::Serialize;

use super::{certify, first_difference, Inverse};
use crate::error::{Error, Result};
use crate::gf::{ext_gcd, gcd, Elem, FieldCtx, MuSubgroup};
use crate::perm::{check_table, ElemSet, SubsetMap, Table};

#[derive(Clone, Debug)]
pub struct MulFamily {
    ctx: Arc<FieldCtx>,
    r: u64,
    s: u64,
    h: Table,
    mu: MuSubgroup,
    g: SubsetMap,
    g_inv: SubsetMap,
    a: i64,
    b: i64,
    f: Table,
}

impl MulFamily {
    /// `h` is given by its values on the whole field; only its values on
    /// `mu_{(q-1)/s}` matter.
    pub fn new(ctx: &Arc<FieldCtx>, r: u64, s: u64, h: Table) -> Result<Self> {
        check_table(ctx, &h)?;
        if r == 0 {
            return Err(Error::condition("r must be positive", None));
        }
        let order = (ctx.q() - 1) as u64;
        if s == 0 || !order.is_multiple_of(s) {
            return Err(Error::NotDivisor { d: s, n: order });
        }
        let (a, b) = ext_gcd(s, r)?;
        let mu = ctx.mu_subgroup(order / s)?;
        if let Some(z) = mu.elements.iter().find(|z| h[z.index()].is_zero()) {
            return Err(Error::HVanishes { witness: z.0 });
        }
        let domain = ElemSet::new(mu.elements.clone());
        let g = SubsetMap::from_fn(domain, |z| {
            ctx.mul(ctx.pow_u(z, r), ctx.pow_u(h[z.index()], s))
        });
        if !g.is_permutation() {
            return Err(Error::NotPermutation(
                "x^r h(x)^s does not permute the subgroup".into(),
            ));
        }
        let g_inv = g.inverse()?;
        let f = ctx
            .elements()
            .map(|x| ctx.mul(ctx.pow_u(x, r), h[ctx.pow_u(x, s).index()]))
            .collect();
        Ok(MulFamily {
            ctx: ctx.clone(),
            r,
            s,
            h,
            mu,
            g,
            g_inv,
            a,
            b,
            f,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn ell(&self) -> u64 {
        self.mu.ell
    }

    pub fn h(&self) -> &[Elem] {
        &self.h
    }

    pub fn mu(&self) -> &MuSubgroup {
        &self.mu
    }

    /// `g(z) = z^r h(z)^s` on the subgroup.
    pub fn g(&self) -> &SubsetMap {
        &self.g
    }

    pub fn g_inv(&self) -> &SubsetMap {
        &self.g_inv
    }

    /// `(a, b)` with `a s + b r = 1`, `0 <= a < r`.
    pub fn bezout(&self) -> (i64, i64) {
        (self.a, self.b)
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }

    pub(crate) fn h_at(&self, x: Elem) -> Elem {
        self.h[x.index()]
    }
}

/// `f^{-1}(x) = g^{-1}(x^s)^a x^b h(g^{-1}(x^s))^{-b}`, with `0 -> 0`.
pub fn invert_multiplicative(fam: &MulFamily) -> Result<Inverse> {
    let f = &*fam.ctx;
    let (a, b) = (fam.a, fam.b);
    let table = f
        .elements()
        .map(|x| {
            if x.is_zero() {
                return Elem::ZERO;
            }
            let y = fam.g_inv.get(f.pow_u(x, fam.s)).expect("x^s lies in the subgroup");
            let hy = fam.h_at(y);
            f.mul(f.mul(f.pow(y, a), f.pow(x, b)), f.pow(hy, -b))
        })
        .collect();
    certify(&fam.ctx, &fam.f, table)
}

/// Symbolic inverse `x^{x_exponent} h(x^{inner_exponent})^{h_exponent}`,
/// exponents reduced modulo `q - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormMul {
    pub n_exp: i64,
    pub t: u64,
    pub x_exponent: u64,
    pub inner_exponent: u64,
    pub h_exponent: u64,
    #[serde(skip)]
    pub table: Vec<Elem>,
}

/// Closed form when `h(z)^s = z^n` on the subgroup, so that `g(z) = z^{r+n}`
/// and `g^{-1}(z) = z^t`. The result is checked against
/// [`invert_multiplicative`].
pub fn closed_form_mul(fam: &MulFamily, n_exp: i64, t: Option<u64>) -> Result<ClosedFormMul> {
    let f = &*fam.ctx;
    let ell = fam.ell();
    let order = (f.q() - 1) as i128;
    if let Some(z) = fam
        .mu
        .elements
        .iter()
        .find(|&&z| f.pow_u(fam.h_at(z), fam.s) != f.pow(z, n_exp))
    {
        return Err(Error::condition(
            format!("h(z)^s != z^{n_exp} on the subgroup"),
            Some(z.0),
        ));
    }
    let rn = (fam.r as i128 + n_exp as i128).rem_euclid(ell as i128) as u64;
    let g = gcd(rn, ell);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: fam.r as i64 + n_exp,
            b: ell as i64,
            gcd: g as i64,
        });
    }
    let t = match t {
        Some(t) => {
            if (rn as u128 * t as u128) % ell as u128 != 1 % ell as u128 {
                return Err(Error::condition(
                    format!("(r + n) t != 1 mod {ell} for t = {t}"),
                    None,
                ));
            }
            t
        }
        None if ell == 1 => 1,
        None => ext_gcd(rn, ell)?.0 as u64,
    };
    let (a, b) = (fam.a as i128, fam.b as i128);
    let st = fam.s as i128 * t as i128;
    let x_exponent = (a * st + b).rem_euclid(order) as u64;
    let inner_exponent = st.rem_euclid(order) as u64;
    let h_exponent = (-b).rem_euclid(order) as u64;
    let table: Vec<Elem> = f
        .elements()
        .map(|x| {
            if x.is_zero() {
                return Elem::ZERO;
            }
            let hx = fam.h_at(f.pow_u(x, inner_exponent));
            f.mul(f.pow_u(x, x_exponent), f.pow_u(hx, h_exponent))
        })
        .collect();
    let reference = invert_multiplicative(fam)?;
    if let Some(w) = first_difference(&table, reference.table.images()) {
        return Err(Error::OracleMismatch { witness: w });
    }
    Ok(ClosedFormMul {
        n_exp,
        t,
        x_exponent,
        inner_exponent,
        h_exponent,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;
    use crate::perm::PermTable;

    #[test]
    fn three_x_over_f7() {
        let c = ctx(7, 1);
        let fam = MulFamily::new(&c, 1, 3, t(&c, "3")).unwrap();
        assert_eq!(fam.bezout(), (0, 1));
        let inv = invert_multiplicative(&fam).unwrap();
        assert!(inv.certified);
        assert_eq!(inv.table.images(), t(&c, "5*x").as_slice());
        assert_eq!(inv.polynomial().to_string(), "5*x");
    }

    #[test]
    fn small_involution_over_f16() {
        let c = ctx(2, 4);
        let fam = MulFamily::new(&c, 14, 3, t(&c, "x^-1 + x^-2 + 1")).unwrap();
        let inv = invert_multiplicative(&fam).unwrap();
        assert_eq!(inv.table.images(), fam.f_table());
    }

    #[test]
    fn identity_family() {
        let c = ctx(5, 1);
        let fam = MulFamily::new(&c, 1, 1, t(&c, "1")).unwrap();
        assert!(invert_multiplicative(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn closed_form_distinguishes_bezout_reading() {
        let c = ctx(7, 1);
        let fam = MulFamily::new(&c, 1, 3, t(&c, "x^2")).unwrap();
        let cf = closed_form_mul(&fam, 6, Some(1)).unwrap();
        assert_eq!(cf.table, t(&c, "x"));
        // the alternative a r + b s = 1 reading with (a, b) = (1, 0) would give x^3
        assert_ne!(t(&c, "x^3"), cf.table);
    }

    #[test]
    fn closed_form_monomial() {
        let c = ctx(2, 4);
        // f = x^7 with s = 1, h = 1: inverse is x^13 since 7 * 13 = 91 = 1 mod 15
        let fam = MulFamily::new(&c, 7, 1, t(&c, "1")).unwrap();
        let cf = closed_form_mul(&fam, 0, None).unwrap();
        assert_eq!(cf.table, t(&c, "x^13"));
    }

    #[test]
    fn closed_form_errors() {
        let c = ctx(7, 1);
        let fam = MulFamily::new(&c, 1, 3, t(&c, "x^2")).unwrap();
        assert!(matches!(
            closed_form_mul(&fam, 1, None),
            Err(Error::ConditionFail { witness: Some(6), .. })
        ));
        assert!(matches!(
            closed_form_mul(&fam, 6, Some(2)),
            Err(Error::ConditionFail { witness: None, .. })
        ));
    }

    #[test]
    fn constructor_errors() {
        let c = ctx(7, 1);
        assert!(matches!(
            MulFamily::new(&c, 1, 4, t(&c, "1")),
            Err(Error::NotDivisor { d: 4, n: 6 })
        ));
        assert!(matches!(
            MulFamily::new(&c, 3, 3, t(&c, "1")),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            MulFamily::new(&c, 1, 3, t(&c, "x + 1")),
            Err(Error::HVanishes { witness: 6 })
        ));
        assert!(matches!(
            MulFamily::new(&c, 2, 3, t(&c, "1")),
            Err(Error::NotPermutation(_))
        ));
        assert!(matches!(
            MulFamily::new(&c, 0, 3, t(&c, "1")),
            Err(Error::ConditionFail { .. })
        ));
    }

    #[test]
    fn f_matches_direct_evaluation() {
        let c = ctx(3, 2);
        let fam = MulFamily::new(&c, 5, 4, t(&c, "x^2 + 1")).unwrap();
        let direct = t(&c, "x^5 * (x^8 + 1)");
        assert_eq!(fam.f_table(), direct.as_slice());
        let inv = invert_multiplicative(&fam).unwrap();
        let fp = PermTable::as_permutation(&c, direct).unwrap();
        assert!(is_inverse(fp.images(), &inv.table));
    }
}
