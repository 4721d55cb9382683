//! `f(x) = x + gamma G(lambda(x))` where `gamma` is a `b`-linear translator
//! of `lambda`.

use std::sync::Arc;

use super::{certify, first_difference, Inverse};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::perm::{check_table, ElemSet, SubsetMap, Table};

#[derive(Clone, Debug)]
pub struct TranslatorFamily {
    ctx: Arc<FieldCtx>,
    lambda: Table,
    s: ElemSet,
    image: ElemSet,
    gamma: Elem,
    b: Elem,
    big_g: Table,
    g: SubsetMap,
    g_inv: SubsetMap,
    f: Table,
}

/// `b` read off from `lambda(u gamma) - lambda(0) = u b` at the first
/// nonzero `u` in `S`; `0` when `S = {0}`.
fn infer_b(ctx: &FieldCtx, lambda: &[Elem], s: &ElemSet, gamma: Elem) -> Elem {
    match s.iter().find(|u| !u.is_zero()) {
        Some(u) => {
            let d = ctx.sub(lambda[ctx.mul(u, gamma).index()], lambda[0]);
            ctx.div(d, u)
        }
        None => Elem::ZERO,
    }
}

impl TranslatorFamily {
    /// `s` is the scalar set for the translator property and defaults to
    /// `lambda(F)`; `b` is inferred when absent.
    pub fn new(
        ctx: &Arc<FieldCtx>,
        lambda: Table,
        s: Option<ElemSet>,
        gamma: Elem,
        b: Option<Elem>,
        big_g: Table,
    ) -> Result<Self> {
        check_table(ctx, &lambda)?;
        check_table(ctx, &big_g)?;
        for e in [Some(gamma), b].into_iter().flatten() {
            ctx.elem(e.0 as u64)?;
        }
        let fld = &**ctx;
        let image = ElemSet::image_of(&lambda);
        let s = s.unwrap_or_else(|| image.clone());
        let b = b.unwrap_or_else(|| infer_b(fld, &lambda, &s, gamma));
        for u in s.iter() {
            let shift = fld.mul(u, gamma);
            let ub = fld.mul(u, b);
            if let Some(x) = ctx.elements().find(|&x| {
                lambda[fld.add(x, shift).index()] != fld.add(lambda[x.index()], ub)
            }) {
                return Err(Error::NotTranslator { x: x.0, u: u.0 });
            }
        }
        if let Some(y) = image.iter().find(|y| !s.contains(big_g[y.index()])) {
            return Err(Error::condition("G(lambda(F)) is not inside S", Some(y.0)));
        }
        let g = SubsetMap::from_fn(image.clone(), |y| fld.add(y, fld.mul(b, big_g[y.index()])));
        if !g.is_permutation() {
            return Err(Error::NotPermutation(
                "x + b G(x) does not permute lambda(F)".into(),
            ));
        }
        let g_inv = g.inverse()?;
        let f = ctx
            .elements()
            .map(|x| fld.add(x, fld.mul(gamma, big_g[lambda[x.index()].index()])))
            .collect();
        Ok(TranslatorFamily {
            ctx: ctx.clone(),
            lambda,
            s,
            image,
            gamma,
            b,
            big_g,
            g,
            g_inv,
            f,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    pub fn s(&self) -> &ElemSet {
        &self.s
    }

    pub fn image(&self) -> &ElemSet {
        &self.image
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    pub fn b(&self) -> Elem {
        self.b
    }

    pub fn big_g(&self) -> &[Elem] {
        &self.big_g
    }

    pub fn g(&self) -> &SubsetMap {
        &self.g
    }

    pub fn g_inv(&self) -> &SubsetMap {
        &self.g_inv
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }
}

/// `f^{-1}(x) = (b - gamma) G(y) + y - lambda(x) + x` with `y = g^{-1}(lambda(x))`.
pub fn invert_translator(fam: &TranslatorFamily) -> Result<Inverse> {
    let f = &*fam.ctx;
    let bg = f.sub(fam.b, fam.gamma);
    let table = f
        .elements()
        .map(|x| {
            let lx = fam.lambda[x.index()];
            let y = fam.g_inv.get(lx).expect("lambda(x) lies in the image");
            let t = f.add(f.mul(bg, fam.big_g[y.index()]), y);
            f.add(f.sub(t, lx), x)
        })
        .collect();
    certify(&fam.ctx, &fam.f, table)
}

/// For `G = id`: `f^{-1}(x) = x - gamma / (b + 1) lambda(x)`.
pub fn invert_translator_linear(fam: &TranslatorFamily) -> Result<Inverse> {
    let f = &*fam.ctx;
    let b1 = f.add(fam.b, Elem::ONE);
    if b1.is_zero() {
        return Err(Error::BPlusOneZero);
    }
    if let Some(y) = fam.image.iter().find(|y| fam.big_g[y.index()] != *y) {
        return Err(Error::condition("G is not the identity on lambda(F)", Some(y.0)));
    }
    let c = f.div(fam.gamma, b1);
    let table: Table = f
        .elements()
        .map(|x| f.sub(x, f.mul(c, fam.lambda[x.index()])))
        .collect();
    let general = invert_translator(fam)?;
    if let Some(w) = first_difference(&table, general.table.images()) {
        return Err(Error::OracleMismatch { witness: w });
    }
    certify(&fam.ctx, &fam.f, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;

    #[test]
    fn zero_g_is_identity() {
        let c = ctx(3, 2);
        let fam =
            TranslatorFamily::new(&c, t(&c, "Tr{1}(x)"), None, Elem(2), None, t(&c, "0")).unwrap();
        assert!(invert_translator(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn trace_translator_over_f9() {
        let c = ctx(3, 2);
        let fam =
            TranslatorFamily::new(&c, t(&c, "Tr{1}(x)"), None, Elem(2), None, t(&c, "x")).unwrap();
        assert_eq!(fam.b(), Elem(1));
        assert_eq!(fam.f_table(), t(&c, "2*x^3").as_slice());
        let inv = invert_translator(&fam).unwrap();
        assert_eq!(inv.table.images(), fam.f_table());
        let lin = invert_translator_linear(&fam).unwrap();
        assert_eq!(lin.table, inv.table);
        assert_eq!(lin.table.images(), t(&c, "x + 2*Tr{1}(x)").as_slice());
    }

    #[test]
    fn trace_translator_over_f8_with_b_zero() {
        let c = ctx(2, 3);
        let tr = t(&c, "Tr{1}(x)");
        let gamma = c.nonzero_elements().find(|g| tr[g.index()].is_zero()).unwrap();
        let fam = TranslatorFamily::new(&c, tr.clone(), None, gamma, None, t(&c, "x")).unwrap();
        assert_eq!(fam.b(), Elem::ZERO);
        let lin = invert_translator_linear(&fam).unwrap();
        assert_eq!(lin.table.images(), fam.f_table());

        // Tr(gamma) = 1 makes b + 1 = 0 and g = 0 on F_2
        let gamma = c.nonzero_elements().find(|g| !tr[g.index()].is_zero()).unwrap();
        assert!(matches!(
            TranslatorFamily::new(&c, tr, None, gamma, None, t(&c, "x")),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn b_plus_one_zero() {
        let c = ctx(2, 3);
        let fam = TranslatorFamily::new(
            &c,
            t(&c, "0"),
            Some(ElemSet::new(vec![Elem::ZERO])),
            Elem(3),
            Some(Elem::ONE),
            t(&c, "x"),
        )
        .unwrap();
        assert_eq!(invert_translator_linear(&fam).unwrap_err(), Error::BPlusOneZero);
        assert!(invert_translator(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn zero_lambda_linear_is_identity() {
        let c = ctx(5, 1);
        let fam = TranslatorFamily::new(&c, t(&c, "0"), None, Elem(3), None, t(&c, "x")).unwrap();
        assert!(invert_translator_linear(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn not_translator_witness() {
        let c = ctx(5, 1);
        assert!(matches!(
            TranslatorFamily::new(&c, t(&c, "x^2"), None, Elem(1), Some(Elem(1)), t(&c, "0")),
            Err(Error::NotTranslator { .. })
        ));
    }

    #[test]
    fn g_escaping_s() {
        let c = ctx(3, 2);
        assert!(matches!(
            TranslatorFamily::new(&c, t(&c, "Tr{1}(x)"), None, Elem(2), None, t(&c, "x + 3")),
            Err(Error::ConditionFail { .. })
        ));
    }

    #[test]
    fn non_identity_g_rejected_by_linear_form() {
        let c = ctx(3, 2);
        let fam =
            TranslatorFamily::new(&c, t(&c, "Tr{1}(x)"), None, Elem(2), None, t(&c, "2")).unwrap();
        assert!(matches!(
            invert_translator_linear(&fam),
            Err(Error::ConditionFail { .. })
        ));
    }
}
