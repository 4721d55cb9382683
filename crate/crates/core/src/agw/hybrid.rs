//! `f(x) = x h(lambda(x))` with `lambda(a x) = k(a) lambda(x)` for `a` in `S`.

use std::sync::Arc;

use super::{certify, Inverse};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::perm::{check_table, ElemSet, SubsetMap, Table};

#[derive(Clone, Debug)]
pub struct HybridScaleFamily {
    ctx: Arc<FieldCtx>,
    h: Table,
    k: Table,
    lambda: Table,
    s: ElemSet,
    image: ElemSet,
    g: SubsetMap,
    g_inv: SubsetMap,
    f: Table,
}

impl HybridScaleFamily {
    /// Without an explicit `S`, the smallest admissible one,
    /// `{0} ∪ h(lambda(F))`, is used.
    pub fn new(
        ctx: &Arc<FieldCtx>,
        h: Table,
        k: Table,
        lambda: Table,
        s: Option<ElemSet>,
    ) -> Result<Self> {
        for t in [&h, &k, &lambda] {
            check_table(ctx, t)?;
        }
        let fld = &**ctx;
        let image = ElemSet::image_of(&lambda);
        let s = s.unwrap_or_else(|| {
            image
                .iter()
                .map(|y| h[y.index()])
                .chain([Elem::ZERO])
                .collect()
        });
        if h[0].is_zero() {
            return Err(Error::condition("h(0) = 0", Some(0)));
        }
        if !k[0].is_zero() {
            return Err(Error::condition("k(0) != 0", Some(0)));
        }
        if !s.contains(Elem::ZERO) {
            return Err(Error::condition("S does not contain 0", None));
        }
        if let Some(y) = image.iter().find(|y| !s.contains(h[y.index()])) {
            return Err(Error::condition("h(lambda(F)) is not inside S", Some(y.0)));
        }
        for a in s.iter() {
            let ka = k[a.index()];
            if let Some(x) = ctx.elements().find(|&x| {
                lambda[fld.mul(a, x).index()] != fld.mul(ka, lambda[x.index()])
            }) {
                return Err(Error::condition(
                    format!("lambda({a} x) != k({a}) lambda(x)"),
                    Some(x.0),
                ));
            }
        }
        if let Some(y) = image.iter().find(|y| h[y.index()].is_zero()) {
            return Err(Error::HVanishesOnImage { witness: y.0 });
        }
        let g = SubsetMap::from_fn(image.clone(), |y| {
            fld.mul(y, k[h[y.index()].index()])
        });
        if !g.is_permutation() {
            return Err(Error::NotPermutation(
                "x k(h(x)) does not permute lambda(F)".into(),
            ));
        }
        let g_inv = g.inverse()?;
        let f = ctx
            .elements()
            .map(|x| fld.mul(x, h[lambda[x.index()].index()]))
            .collect();
        Ok(HybridScaleFamily {
            ctx: ctx.clone(),
            h,
            k,
            lambda,
            s,
            image,
            g,
            g_inv,
            f,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn h(&self) -> &[Elem] {
        &self.h
    }

    pub fn k(&self) -> &[Elem] {
        &self.k
    }

    pub fn lambda(&self) -> &[Elem] {
        &self.lambda
    }

    pub fn s(&self) -> &ElemSet {
        &self.s
    }

    /// `lambda(F)`.
    pub fn image(&self) -> &ElemSet {
        &self.image
    }

    pub fn g(&self) -> &SubsetMap {
        &self.g
    }

    pub fn g_inv(&self) -> &SubsetMap {
        &self.g_inv
    }

    /// `theta(y) = k(h(y))`.
    pub fn theta(&self, y: Elem) -> Elem {
        self.k[self.h[y.index()].index()]
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }
}

/// `f^{-1}(x) = (x - lambda(x) + k(h(y)) y) / h(y)` with `y = g^{-1}(lambda(x))`.
pub fn invert_hybrid_scale(fam: &HybridScaleFamily) -> Result<Inverse> {
    let f = &*fam.ctx;
    let table = f
        .elements()
        .map(|x| {
            let lx = fam.lambda[x.index()];
            let y = fam.g_inv.get(lx).expect("lambda(x) lies in the image");
            let num = f.add(f.sub(x, lx), f.mul(fam.theta(y), y));
            f.div(num, fam.h[y.index()])
        })
        .collect();
    certify(&fam.ctx, &fam.f, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;

    /// `sum_{0 <= i < j < n} x^{3^i + 3^j}` over F_{3^n}.
    fn lambda2(n: u32) -> String {
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                terms.push(format!("x^{}", 3u64.pow(i) + 3u64.pow(j)));
            }
        }
        terms.join(" + ")
    }

    #[test]
    fn degenerate_h_one() {
        let c = ctx(5, 1);
        let fam = HybridScaleFamily::new(&c, t(&c, "1"), t(&c, "x"), t(&c, "x^2"), None).unwrap();
        assert!(invert_hybrid_scale(&fam).unwrap().table.is_identity());
    }

    #[test]
    fn ternary_example_over_f9() {
        let c = ctx(3, 2);
        let lam = t(&c, &lambda2(2));
        let s = Some(c.subfield(1).unwrap().into_iter().collect());
        let fam = HybridScaleFamily::new(&c, t(&c, "x^2 + 1"), t(&c, "x^2"), lam, s).unwrap();
        assert_eq!(fam.f_table(), t(&c, "2*x").as_slice());
        let inv = invert_hybrid_scale(&fam).unwrap();
        assert_eq!(inv.table.images(), t(&c, "2*x").as_slice());
    }

    #[test]
    fn squared_trace_over_f25() {
        let c = ctx(5, 2);
        let lam = t(&c, "Tr{1}(x^2)");
        let f5: ElemSet = c.subfield(1).unwrap().into_iter().collect();
        // first nonconstant h over F_5 with h(0) != 0 and x h(x)^2 permuting F_5
        let h = (1u32..5)
            .flat_map(|c0| (1u32..5).map(move |c1| (c0, c1)))
            .map(|(c0, c1)| format!("{c0} + {c1}*x"))
            .chain((1u32..5).flat_map(|c0| {
                (0u32..5).flat_map(move |c1| (1u32..5).map(move |c2| format!("{c0} + {c1}*x + {c2}*x^2")))
            }))
            .find(|h| {
                let f5c = ctx(5, 1);
                let ht = t(&f5c, h);
                let g: Vec<u32> = (0..5).map(|y| (y * ht[y as usize].0 * ht[y as usize].0) % 5).collect();
                let mut seen = [false; 5];
                g.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
            })
            .expect("some h works");
        let fam = HybridScaleFamily::new(&c, t(&c, &h), t(&c, "x^2"), lam, Some(f5)).unwrap();
        assert!(invert_hybrid_scale(&fam).unwrap().certified);
    }

    #[test]
    fn hypothesis_violations() {
        let c = ctx(5, 1);
        let x2 = t(&c, "x^2");
        assert!(matches!(
            HybridScaleFamily::new(&c, t(&c, "x"), t(&c, "x"), x2.clone(), None),
            Err(Error::ConditionFail { witness: Some(0), .. })
        ));
        assert!(matches!(
            HybridScaleFamily::new(&c, t(&c, "1"), t(&c, "x + 1"), x2.clone(), None),
            Err(Error::ConditionFail { witness: Some(0), .. })
        ));
        assert!(matches!(
            HybridScaleFamily::new(
                &c,
                t(&c, "1"),
                t(&c, "x"),
                x2.clone(),
                Some(ElemSet::new(vec![Elem(1)]))
            ),
            Err(Error::ConditionFail { .. })
        ));
        // lambda = x^2 needs k(a) = a^2, not a
        assert!(matches!(
            HybridScaleFamily::new(&c, t(&c, "2"), t(&c, "x"), x2.clone(), None),
            Err(Error::ConditionFail { witness: Some(_), .. })
        ));
        // h vanishes at 4 in lambda(F) = {0, 1, 4}
        assert!(matches!(
            HybridScaleFamily::new(&c, t(&c, "x + 1"), t(&c, "x^2"), x2.clone(), None),
            Err(Error::HVanishesOnImage { witness: 4 })
        ));
        // g(y) = y^3 + 2y sends 1 and 3 to 3
        assert!(matches!(
            HybridScaleFamily::new(&c, t(&c, "x^2 + 2"), t(&c, "x"), t(&c, "x"), None),
            Err(Error::NotPermutation(_))
        ));
    }
}
