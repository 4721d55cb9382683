//! `f^{-1} = phi^{-1} ∘ psi^{-1} ∘ phi_bar` for a commuting square
//! `psi ∘ phi = phi_bar ∘ f`, and the canonical wirings of each family.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{certify, AddFamily, HybridScaleFamily, MulFamily, NiuInstance, TranslatorFamily};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::perm::{check_table, PermTable, Table};
use crate::poly::same_field;

pub type Pair = (Elem, Elem);

type InvFn = Arc<dyn Fn(Pair) -> Elem + Send + Sync>;
type PsiFn = Arc<dyn Fn(Pair) -> Pair + Send + Sync>;

/// `x -> (first(x), second(x))` together with a left inverse on its image.
#[derive(Clone)]
pub struct PairMap {
    ctx: Arc<FieldCtx>,
    first: Table,
    second: Table,
    inv: InvFn,
}

impl fmt::Debug for PairMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairMap")
            .field("first", &self.first)
            .field("second", &self.second)
            .finish_non_exhaustive()
    }
}

impl PairMap {
    pub fn new(
        ctx: &Arc<FieldCtx>,
        first: Table,
        second: Table,
        inv: impl Fn(Pair) -> Elem + Send + Sync + 'static,
    ) -> Result<Self> {
        check_table(ctx, &first)?;
        check_table(ctx, &second)?;
        Ok(PairMap {
            ctx: ctx.clone(),
            first,
            second,
            inv: Arc::new(inv),
        })
    }

    /// Inverse by lookup; pairs outside the image go to 0.
    pub fn from_tables(ctx: &Arc<FieldCtx>, first: Table, second: Table) -> Result<Self> {
        let mut pm = Self::new(ctx, first, second, |_| Elem::ZERO)?;
        if let Some((x, y)) = pm.injectivity_witness() {
            return Err(Error::NotInjectivePhi { x, y });
        }
        let lookup: BTreeMap<Pair, Elem> = ctx.elements().map(|x| (pm.apply(x), x)).collect();
        pm.inv = Arc::new(move |p| lookup.get(&p).copied().unwrap_or(Elem::ZERO));
        Ok(pm)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn first(&self) -> &[Elem] {
        &self.first
    }

    pub fn second(&self) -> &[Elem] {
        &self.second
    }

    pub fn apply(&self, x: Elem) -> Pair {
        (self.first[x.index()], self.second[x.index()])
    }

    pub fn invert(&self, p: Pair) -> Elem {
        (self.inv)(p)
    }

    /// First colliding pair of field elements, if any.
    pub fn injectivity_witness(&self) -> Option<(u32, u32)> {
        let mut seen: BTreeMap<Pair, Elem> = BTreeMap::new();
        for x in self.ctx.elements() {
            if let Some(&prev) = seen.get(&self.apply(x)) {
                return Some((prev.0, x.0));
            }
            seen.insert(self.apply(x), x);
        }
        None
    }

    /// Injectivity plus `inv(phi(x)) = x` everywhere.
    pub fn check(&self) -> Result<()> {
        if let Some((x, y)) = self.injectivity_witness() {
            return Err(Error::NotInjectivePhi { x, y });
        }
        if let Some(x) = self.ctx.elements().find(|&x| self.invert(self.apply(x)) != x) {
            return Err(Error::condition(
                "supplied inverse is not a left inverse of the pair map",
                Some(x.0),
            ));
        }
        Ok(())
    }
}

/// `phi(x) = (lambda(x), P(x) - lambda(x))`, `phi^{-1}(y, z) = P^{-1}(y + z)`.
pub fn build_phi_add(p: &PermTable, lambda: Table) -> Result<PairMap> {
    let ctx = p.ctx().clone();
    check_table(&ctx, &lambda)?;
    let second = ctx
        .elements()
        .map(|x| ctx.sub(p.apply(x), lambda[x.index()]))
        .collect();
    let p_inv = p.inverse();
    let c = ctx.clone();
    PairMap::new(&ctx, lambda, second, move |(y, z)| p_inv.apply(c.add(y, z)))
}

/// `phi(x) = (lambda(x), P(x / lambda(x)))`, `phi^{-1}(y, z) = y P^{-1}(z)`.
pub fn build_phi_mul(p: &PermTable, lambda: Table) -> Result<PairMap> {
    let ctx = p.ctx().clone();
    check_table(&ctx, &lambda)?;
    if let Some(w) = lambda.iter().position(|l| l.is_zero()) {
        return Err(Error::LambdaZero { witness: w as u32 });
    }
    let second = ctx
        .elements()
        .map(|x| p.apply(ctx.div(x, lambda[x.index()])))
        .collect();
    let p_inv = p.inverse();
    let c = ctx.clone();
    PairMap::new(&ctx, lambda, second, move |(y, z)| c.mul(y, p_inv.apply(z)))
}

#[derive(Clone)]
pub struct GenericDiagram {
    pub phi: PairMap,
    pub phi_bar: PairMap,
    psi_inv: PsiFn,
}

impl fmt::Debug for GenericDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GenericDiagram")
            .field("phi", &self.phi)
            .field("phi_bar", &self.phi_bar)
            .finish_non_exhaustive()
    }
}

impl GenericDiagram {
    /// `psi_inv` only needs to be meaningful on `phi_bar(F)`.
    pub fn new(
        phi: PairMap,
        phi_bar: PairMap,
        psi_inv: impl Fn(Pair) -> Pair + Send + Sync + 'static,
    ) -> Result<Self> {
        if !same_field(phi.ctx(), phi_bar.ctx()) {
            return Err(Error::CtxMismatch);
        }
        Ok(GenericDiagram {
            phi,
            phi_bar,
            psi_inv: Arc::new(psi_inv),
        })
    }

    pub fn psi_inv(&self, p: Pair) -> Pair {
        (self.psi_inv)(p)
    }
}

/// Checks the square pointwise, `psi^{-1}(phi_bar(f(x))) = phi(x)`, then
/// tabulates `phi^{-1}(psi^{-1}(phi_bar(x)))` and certifies it against `f`.
pub fn generic_inverse(d: &GenericDiagram, f: &PermTable) -> Result<PermTable> {
    let ctx = d.phi.ctx();
    if !same_field(ctx, f.ctx()) {
        return Err(Error::CtxMismatch);
    }
    d.phi.check()?;
    d.phi_bar.check()?;
    if let Some(x) = ctx
        .elements()
        .find(|&x| d.psi_inv(d.phi_bar.apply(f.apply(x))) != d.phi.apply(x))
    {
        return Err(Error::SquareDoesNotCommute { witness: x.0 });
    }
    let table = ctx
        .elements()
        .map(|x| d.phi.invert(d.psi_inv(d.phi_bar.apply(x))))
        .collect();
    Ok(certify(ctx, f.images(), table)?.table)
}

/// `phi = phi_bar = (x^s, x^r)`, `phi^{-1}(y, z) = y^a z^b`.
pub fn mul_diagram(fam: &MulFamily) -> Result<GenericDiagram> {
    let ctx = fam.ctx().clone();
    let (r, s) = (fam.r(), fam.s());
    let (a, b) = fam.bezout();
    let first: Table = ctx.elements().map(|x| ctx.pow_u(x, s)).collect();
    let second: Table = ctx.elements().map(|x| ctx.pow_u(x, r)).collect();
    let c = ctx.clone();
    let phi = PairMap::new(&ctx, first, second, move |(y, z)| {
        if y.is_zero() && z.is_zero() {
            Elem::ZERO
        } else {
            c.mul(c.pow(y, a), c.pow(z, b))
        }
    })?;
    let g_inv = fam.g_inv().clone();
    let h = fam.h().to_vec();
    let c = ctx.clone();
    GenericDiagram::new(phi.clone(), phi, move |(al, be)| {
        if al.is_zero() && be.is_zero() {
            return (Elem::ZERO, Elem::ZERO);
        }
        let y = g_inv.get(al).unwrap_or(Elem::ZERO);
        let x = c.mul(c.pow(al, a), c.pow(be, b));
        (y, c.div(x, h[y.index()]))
    })
}

fn identity(ctx: &Arc<FieldCtx>) -> PermTable {
    PermTable::identity(ctx)
}

/// `phi = (lambda, x - lambda)`, `phi_bar = (lambda_bar, x - lambda_bar)`.
pub fn add_diagram(fam: &AddFamily) -> Result<GenericDiagram> {
    let ctx = fam.ctx().clone();
    let phi = build_phi_add(&identity(&ctx), fam.lambda().to_vec())?;
    let phi_bar = build_phi_add(&identity(&ctx), fam.lambda_bar().to_vec())?;
    let g_inv = fam.g_inv().clone();
    let g0 = fam.g0().to_vec();
    let c = ctx.clone();
    GenericDiagram::new(phi, phi_bar, move |(al, be)| {
        let y = g_inv.apply(al);
        let z = g_inv.apply(c.sub(c.add(al, be), g0[y.index()]));
        (y, c.sub(z, y))
    })
}

/// `phi = phi_bar = (lambda, x - lambda)`.
pub fn hybrid_diagram(fam: &HybridScaleFamily) -> Result<GenericDiagram> {
    let ctx = fam.ctx().clone();
    let phi = build_phi_add(&identity(&ctx), fam.lambda().to_vec())?;
    let fam2 = fam.clone();
    let c = ctx.clone();
    GenericDiagram::new(phi.clone(), phi, move |(al, be)| {
        let y = fam2.g_inv().get(al).unwrap_or(Elem::ZERO);
        let num = c.add(be, c.mul(fam2.theta(y), y));
        (y, c.sub(c.div(num, fam2.h()[y.index()]), y))
    })
}

/// `phi = phi_bar = (lambda, x - lambda)`.
pub fn translator_diagram(fam: &TranslatorFamily) -> Result<GenericDiagram> {
    let ctx = fam.ctx().clone();
    let phi = build_phi_add(&identity(&ctx), fam.lambda().to_vec())?;
    let g_inv = fam.g_inv().clone();
    let big_g = fam.big_g().to_vec();
    let bg = ctx.sub(fam.b(), fam.gamma());
    let c = ctx.clone();
    GenericDiagram::new(phi.clone(), phi, move |(al, be)| {
        let y = g_inv.get(al).unwrap_or(Elem::ZERO);
        (y, c.add(be, c.mul(bg, big_g[y.index()])))
    })
}

/// `phi = phi_bar = (-x^{q^i}, x^{q^i} - x + delta)`,
/// `phi^{-1}(y, z) = -y - z + delta`.
pub fn niu_diagram(inst: &NiuInstance) -> Result<GenericDiagram> {
    let ctx = inst.ctx().clone();
    let delta = inst.delta();
    let first: Table = ctx.elements().map(|x| ctx.neg(inst.frob(x))).collect();
    let second: Table = ctx
        .elements()
        .map(|x| ctx.add(ctx.sub(inst.frob(x), x), delta))
        .collect();
    let c = ctx.clone();
    let phi = PairMap::new(&ctx, first, second, move |(y, z)| {
        c.add(c.neg(c.add(y, z)), delta)
    })?;
    let inst2 = inst.clone();
    let c = ctx.clone();
    GenericDiagram::new(phi.clone(), phi, move |(al, be)| {
        let z = inst2.h_inv().apply(be);
        let gz = inst2.frob(inst2.g()[z.index()]);
        (c.div(c.add(al, gz), inst2.c()), z)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;
    use crate::agw::{
        invert_additive, invert_hybrid_scale, invert_multiplicative, invert_niu,
        invert_translator,
    };

    fn perm(c: &Arc<FieldCtx>, e: &str) -> PermTable {
        PermTable::as_permutation(c, t(c, e)).unwrap()
    }

    fn roundtrip(pm: &PairMap) {
        for x in pm.ctx().elements() {
            assert_eq!(pm.invert(pm.apply(x)), x);
        }
    }

    #[test]
    fn phi_add_examples() {
        let c = ctx(3, 2);
        let phi = build_phi_add(&identity(&c), t(&c, "Tr{1}(x)")).unwrap();
        roundtrip(&phi);
        assert_eq!(phi.invert((Elem(1), Elem(2))), c.add(Elem(1), Elem(2)));
        let phi = build_phi_add(&identity(&c), t(&c, "0")).unwrap();
        assert_eq!(phi.apply(Elem(5)), (Elem::ZERO, Elem(5)));
        let c4 = ctx(2, 2);
        roundtrip(&build_phi_add(&perm(&c4, "x^2"), t(&c4, "Tr{1}(x)")).unwrap());
    }

    #[test]
    fn phi_mul_examples() {
        let c = ctx(7, 1);
        let phi = build_phi_mul(&identity(&c), t(&c, "1")).unwrap();
        assert_eq!(phi.apply(Elem(3)), (Elem::ONE, Elem(3)));
        let mut lam = t(&c, "x^6");
        lam[0] = Elem::ONE;
        let phi = build_phi_mul(&identity(&c), lam).unwrap();
        roundtrip(&phi);
        let phi = build_phi_mul(&perm(&c, "x^5"), t(&c, "1")).unwrap();
        roundtrip(&phi);
        assert_eq!(phi.apply(Elem(3)), (Elem::ONE, Elem(5)));
        assert_eq!(
            build_phi_mul(&identity(&c), t(&c, "x")).unwrap_err(),
            Error::LambdaZero { witness: 0 }
        );
    }

    #[test]
    fn identity_square() {
        let c = ctx(5, 1);
        let phi = build_phi_add(&identity(&c), t(&c, "x^2")).unwrap();
        let d = GenericDiagram::new(phi.clone(), phi, |p| p).unwrap();
        assert!(generic_inverse(&d, &identity(&c)).unwrap().is_identity());
    }

    #[test]
    fn non_injective_and_non_commuting() {
        let c = ctx(5, 1);
        let bad = PairMap::new(&c, t(&c, "x^2"), t(&c, "0"), |p| p.0).unwrap();
        let good = build_phi_add(&identity(&c), t(&c, "0")).unwrap();
        let d = GenericDiagram::new(bad, good.clone(), |p| p).unwrap();
        assert!(matches!(
            generic_inverse(&d, &identity(&c)),
            Err(Error::NotInjectivePhi { .. })
        ));
        let d = GenericDiagram::new(good.clone(), good, |p| p).unwrap();
        assert_eq!(
            generic_inverse(&d, &perm(&c, "2*x")).unwrap_err(),
            Error::SquareDoesNotCommute { witness: 1 }
        );
    }

    #[test]
    fn from_tables_lookup() {
        let c = ctx(3, 1);
        let pm = PairMap::from_tables(&c, t(&c, "x^2"), t(&c, "x")).unwrap();
        roundtrip(&pm);
        assert!(matches!(
            PairMap::from_tables(&c, t(&c, "x^2"), t(&c, "0")),
            Err(Error::NotInjectivePhi { x: 1, y: 2 })
        ));
    }

    #[test]
    fn mul_wiring_matches() {
        let c = ctx(2, 4);
        let fam = MulFamily::new(&c, 14, 3, t(&c, "x^-1 + x^-2 + 1")).unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&mul_diagram(&fam).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_multiplicative(&fam).unwrap().table);
        let c = ctx(3, 2);
        let fam = MulFamily::new(&c, 5, 4, t(&c, "x^2 + 1")).unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&mul_diagram(&fam).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_multiplicative(&fam).unwrap().table);
    }

    #[test]
    fn add_wiring_matches() {
        let c = ctx(2, 4);
        let tr = t(&c, "Tr{1}(x)");
        let cc = c.nonzero_elements().find(|&e| tr[e.index()].is_zero()).unwrap();
        let fam =
            AddFamily::new(&c, t(&c, "x^2"), t(&c, &format!("{}*x", cc.0)), tr.clone(), tr)
                .unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&add_diagram(&fam).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_additive(&fam).unwrap().table);
    }

    #[test]
    fn hybrid_wiring_matches() {
        let c = ctx(3, 2);
        let s = Some(c.subfield(1).unwrap().into_iter().collect());
        let fam =
            HybridScaleFamily::new(&c, t(&c, "x^2 + 1"), t(&c, "x^2"), t(&c, "x^4"), s).unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&hybrid_diagram(&fam).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_hybrid_scale(&fam).unwrap().table);
    }

    #[test]
    fn translator_wiring_matches() {
        let c = ctx(3, 2);
        let fam =
            TranslatorFamily::new(&c, t(&c, "Tr{1}(x)"), None, Elem(2), None, t(&c, "x")).unwrap();
        let f = PermTable::as_permutation(&c, fam.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&translator_diagram(&fam).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_translator(&fam).unwrap().table);
    }

    #[test]
    fn niu_wiring_matches() {
        let c = ctx(2, 2);
        let inst = NiuInstance::new(&c, t(&c, "x"), 1, 1, Elem::ONE, Elem(2)).unwrap();
        let f = PermTable::as_permutation(&c, inst.f_table().to_vec()).unwrap();
        let gi = generic_inverse(&niu_diagram(&inst).unwrap(), &f).unwrap();
        assert_eq!(gi, invert_niu(&inst).unwrap().table);
    }
}
