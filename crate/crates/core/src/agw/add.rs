//! `f(x) = g(x) + g0(lambda(x))` with an additive `lambda_bar`.

use std::sync::Arc;

use super::{certify, Inverse};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::perm::{check_table, ElemSet, PermTable, Table};

#[derive(Clone, Debug)]
pub struct AddFamily {
    ctx: Arc<FieldCtx>,
    g: PermTable,
    g_inv: PermTable,
    g0: Table,
    lambda: Table,
    lambda_bar: Table,
    s: ElemSet,
    s_bar: ElemSet,
    f: Table,
}

/// First `x` with `t(x + e) != t(x) + t(e)` for a basis vector `e`, which
/// decides additivity of `t` on the whole field.
pub(crate) fn additivity_witness(ctx: &FieldCtx, t: &[Elem]) -> Option<Elem> {
    if !t[0].is_zero() {
        return Some(Elem::ZERO);
    }
    let basis: Vec<Elem> = (0..ctx.n()).map(|j| Elem(ctx.p().pow(j))).collect();
    ctx.elements().find(|&x| {
        basis
            .iter()
            .any(|&e| t[ctx.add(x, e).index()] != ctx.add(t[x.index()], t[e.index()]))
    })
}

impl AddFamily {
    pub fn new(
        ctx: &Arc<FieldCtx>,
        g: Table,
        g0: Table,
        lambda: Table,
        lambda_bar: Table,
    ) -> Result<Self> {
        for t in [&g, &g0, &lambda, &lambda_bar] {
            check_table(ctx, t)?;
        }
        let f_ = &**ctx;
        if let Some(w) = additivity_witness(f_, &lambda_bar) {
            return Err(Error::condition("lambda_bar is not additive", Some(w.0)));
        }
        let s = ElemSet::image_of(&lambda);
        let s_bar = ElemSet::image_of(&lambda_bar);
        if s.len() != s_bar.len() {
            return Err(Error::condition(
                format!("|S| = {} differs from |S_bar| = {}", s.len(), s_bar.len()),
                None,
            ));
        }
        if ElemSet::new(s.iter().map(|y| g[y.index()]).collect()) != s_bar {
            return Err(Error::condition("g(S) != S_bar", None));
        }
        let at = |t: &Table, x: Elem| t[x.index()];
        if let Some(x) = ctx
            .elements()
            .find(|&x| !at(&lambda_bar, at(&g0, at(&lambda, x))).is_zero())
        {
            return Err(Error::condition(
                "lambda_bar(g0(lambda(x))) != 0",
                Some(x.0),
            ));
        }
        let f: Table = ctx
            .elements()
            .map(|x| f_.add(at(&g, x), at(&g0, at(&lambda, x))))
            .collect();
        if let Some(x) = ctx
            .elements()
            .find(|&x| at(&lambda_bar, at(&f, x)) != at(&g, at(&lambda, x)))
        {
            return Err(Error::condition(
                "lambda_bar(f(x)) != g(lambda(x))",
                Some(x.0),
            ));
        }
        let g = PermTable::as_permutation(ctx, g)
            .map_err(|_| Error::NotPermutation("g does not permute the field".into()))?;
        let g_inv = g.inverse();
        Ok(AddFamily {
            ctx: ctx.clone(),
            g,
            g_inv,
            g0,
            lambda,
            lambda_bar,
            s,
            s_bar,
            f,
        })
    }

    /// Replaces the brute-force inverse of `g` with a supplied one, after
    /// checking it.
    pub fn with_g_inverse(mut self, g_inv: Table) -> Result<Self> {
        let inv = PermTable::as_permutation(&self.ctx, g_inv)?;
        if !inv.compose(&self.g)?.is_identity() {
            return Err(Error::condition(
                "supplied inverse of g is wrong",
                inv.compose(&self.g)?.first_moved().map(|e| e.0),
            ));
        }
        self.g_inv = inv;
        Ok(self)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn g(&self) -> &PermTable {
        &self.g
    }

    pub fn g_inv(&self) -> &PermTable {
        &self.g_inv
    }

    pub fn g0(&self) -> &[Elem] {
        &self.g0
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    pub fn lambda_bar(&self) -> &[Elem] {
        &self.lambda_bar
    }

    pub fn s(&self) -> &ElemSet {
        &self.s
    }

    pub fn s_bar(&self) -> &ElemSet {
        &self.s_bar
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }
}

/// `f^{-1}(x) = g^{-1}(x - g0(g^{-1}(lambda_bar(x))))`.
pub fn invert_additive(fam: &AddFamily) -> Result<Inverse> {
    let f = &*fam.ctx;
    let table = f
        .elements()
        .map(|x| {
            let y = fam.g_inv.apply(fam.lambda_bar[x.index()]);
            fam.g_inv.apply(f.sub(x, fam.g0[y.index()]))
        })
        .collect();
    certify(&fam.ctx, &fam.f, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;
    use crate::poly::{linearized_inverse, LinearizedPoly};

    #[test]
    fn neutral_parameters() {
        let c = ctx(3, 2);
        let fam = AddFamily::new(&c, t(&c, "x"), t(&c, "0"), t(&c, "x"), t(&c, "x")).unwrap();
        assert!(invert_additive(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn frobenius_plus_trace_over_f16() {
        let c = ctx(2, 4);
        let tr = t(&c, "Tr{1}(x)");
        let cc = c.nonzero_elements().find(|&e| tr[e.index()].is_zero()).unwrap();
        let g0 = t(&c, &format!("{}*x", cc.0));
        let fam = AddFamily::new(&c, t(&c, "x^2"), g0, tr.clone(), tr).unwrap();
        let inv = invert_additive(&fam).unwrap();
        let expected = t(&c, &format!("(x + {}*Tr{{1}}(x))^8", cc.0));
        assert_eq!(inv.table.images(), expected.as_slice());
    }

    #[test]
    fn linearized_g_with_supplied_inverse() {
        // F_16 with lambda = x^4 + x (kills F_4, image of size 4), g = x^2,
        // g0(y) = y^5 lands in F_4 = ker lambda
        let c = ctx(2, 4);
        let lam = t(&c, "x^4 + x");
        let g = LinearizedPoly::new(&c, 1, vec![Elem(0), Elem(1)]).unwrap();
        let g_inv = linearized_inverse(&g).unwrap();
        let fam = AddFamily::new(&c, g.table(), t(&c, "x^5"), lam.clone(), lam)
            .unwrap()
            .with_g_inverse(g_inv.table())
            .unwrap();
        assert!(invert_additive(&fam).unwrap().certified);
    }

    #[test]
    fn hypothesis_violations() {
        let c = ctx(2, 4);
        let tr = t(&c, "Tr{1}(x)");
        let x = t(&c, "x");
        // lambda_bar not additive
        assert!(matches!(
            AddFamily::new(&c, x.clone(), t(&c, "0"), x.clone(), t(&c, "x^3")),
            Err(Error::ConditionFail { .. })
        ));
        // |S| != |S_bar|
        assert!(matches!(
            AddFamily::new(&c, x.clone(), t(&c, "0"), x.clone(), tr.clone()),
            Err(Error::ConditionFail { .. })
        ));
        // g0 leaves the kernel of lambda_bar
        let bad = c.nonzero_elements().find(|&e| !tr[e.index()].is_zero()).unwrap();
        assert!(matches!(
            AddFamily::new(&c, x.clone(), t(&c, &format!("{}*x", bad.0)), tr.clone(), tr.clone()),
            Err(Error::ConditionFail { witness: Some(_), .. })
        ));
        // g not a permutation
        assert!(matches!(
            AddFamily::new(&c, t(&c, "x^2 + x"), t(&c, "0"), t(&c, "0"), t(&c, "0")),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn additivity_witness_detects_constant_shift() {
        let c = ctx(3, 2);
        assert_eq!(additivity_witness(&c, &t(&c, "x + 1")), Some(Elem::ZERO));
        assert_eq!(additivity_witness(&c, &t(&c, "x^3 + 2*x")), None);
        assert!(additivity_witness(&c, &t(&c, "x^2")).is_some());
    }
}
