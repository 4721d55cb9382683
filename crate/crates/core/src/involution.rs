//! Involution criteria for the four families, checked against the cycle
//! type of `f`, and constructors for known involutive instances.

use std::sync::Arc;

use serde::Serialize;

use crate::agw::{AddFamily, HybridScaleFamily, MulFamily, TranslatorFamily};
use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, FieldCtx};
use crate::perm::{check_table, PermTable, Table};
use crate::poly::PolyFq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub g_involutory: bool,
    pub aux_condition: bool,
    /// First element at which the first failing condition fails.
    pub witness: Option<u32>,
    pub is_involution: bool,
    pub oracle_agrees: bool,
}

impl CriterionReport {
    /// Condition (2) is only evaluated when (1) holds.
    fn build(
        ctx: &Arc<FieldCtx>,
        f: &[Elem],
        first: Option<Elem>,
        second: impl FnOnce() -> Option<Elem>,
    ) -> Self {
        let (g_involutory, aux_condition, witness) = match first {
            Some(w) => (false, false, Some(w.0)),
            None => match second() {
                Some(w) => (true, false, Some(w.0)),
                None => (true, true, None),
            },
        };
        let is_involution = g_involutory && aux_condition;
        let oracle = PermTable::as_permutation(ctx, f.to_vec())
            .map(|t| t.cycle_structure().is_involution)
            .unwrap_or(false);
        CriterionReport {
            g_involutory,
            aux_condition,
            witness,
            is_involution,
            oracle_agrees: is_involution == oracle,
        }
    }
}

/// (1) `g∘g = id` on `mu_l`; (2) `g(x^s)^a x^{b-r} h(g(x^s))^{-b} h(x^s)^{-1} = 1`
/// on `F^*`.
pub fn check_mul_involution(fam: &MulFamily) -> CriterionReport {
    let f = &**fam.ctx();
    let g = fam.g();
    let first = g
        .domain()
        .iter()
        .find(|&z| g.get(g.get(z).unwrap()) != Some(z));
    let second = || {
        let (a, b) = fam.bezout();
        let r = fam.r() as i64;
        f.nonzero_elements().find(|&x| {
            let xs = f.pow_u(x, fam.s());
            let gx = g.get(xs).expect("x^s lies in the subgroup");
            let v = f.mul(
                f.mul(f.pow(gx, a), f.pow(x, b - r)),
                f.mul(f.pow(fam.h()[gx.index()], -b), f.inv(fam.h()[xs.index()])),
            );
            v != Elem::ONE
        })
    };
    CriterionReport::build(fam.ctx(), fam.f_table(), first, second)
}

/// Needs `lambda = lambda_bar`. (1) `g∘g = id` on `S`;
/// (2) `g^{-1}(x - g0(g(lambda(x)))) - g(x) - g0(lambda(x)) = 0` on `F`.
pub fn check_add_involution(fam: &AddFamily) -> Result<CriterionReport> {
    if let Some(x) = fam
        .lambda()
        .iter()
        .zip(fam.lambda_bar())
        .position(|(a, b)| a != b)
    {
        return Err(Error::condition("lambda != lambda_bar", Some(x as u32)));
    }
    let f = &**fam.ctx();
    let (g, gi, g0, lam) = (fam.g(), fam.g_inv(), fam.g0(), fam.lambda());
    let first = fam.s().iter().find(|&y| g.apply(g.apply(y)) != y);
    let second = || {
        f.elements().find(|&x| {
            let l = lam[x.index()];
            let t = gi.apply(f.sub(x, g0[g.apply(l).index()]));
            !f.sub(f.sub(t, g.apply(x)), g0[l.index()]).is_zero()
        })
    };
    Ok(CriterionReport::build(fam.ctx(), fam.f_table(), first, second))
}

/// (1) `theta(theta(y) y) theta(y) = 1` for nonzero `y` in `lambda(F)`;
/// (2) `h(g(y)) h(y) = 1` on `lambda(F^*)`.
pub fn check_hybrid_involution(fam: &HybridScaleFamily) -> CriterionReport {
    let f = &**fam.ctx();
    let h = fam.h();
    let first = fam.image().iter().filter(|y| !y.is_zero()).find(|&y| {
        let th = fam.theta(y);
        f.mul(fam.theta(f.mul(th, y)), th) != Elem::ONE
    });
    let second = || {
        let lam = fam.lambda();
        let mut image: Vec<Elem> = f.nonzero_elements().map(|x| lam[x.index()]).collect();
        image.sort_unstable();
        image.dedup();
        image.into_iter().find(|&y| {
            let gy = fam.g().get(y).expect("y lies in lambda(F)");
            f.mul(h[gy.index()], h[y.index()]) != Elem::ONE
        })
    };
    CriterionReport::build(fam.ctx(), fam.f_table(), first, second)
}

/// (1) `b G(y) + b G(y + b G(y)) = 0` on `lambda(F)`; (2) `b != 0`, or
/// characteristic 2, or `G(lambda(x)) = 0` for all `x`.
pub fn check_translator_involution(fam: &TranslatorFamily) -> Result<CriterionReport> {
    if fam.gamma().is_zero() {
        return Err(Error::GammaZero);
    }
    let f = &**fam.ctx();
    let (b, big_g) = (fam.b(), fam.big_g());
    let bg = |y: Elem| f.mul(b, big_g[y.index()]);
    let first = fam
        .image()
        .iter()
        .find(|&y| !f.add(bg(y), bg(f.add(y, bg(y)))).is_zero());
    let second = || {
        if !b.is_zero() || f.p() == 2 {
            None
        } else {
            let lam = fam.lambda();
            f.elements().find(|x| !big_g[lam[x.index()].index()].is_zero())
        }
    };
    Ok(CriterionReport::build(fam.ctx(), fam.f_table(), first, second))
}

/// `f = x^{q^2-2} h(x^{q-1})` over `F_{q^2}`, `q = 2^{n/2}`, with
/// `h = gamma (x^{-1} + beta x^{-k-1} + beta x^{k-1})`.
pub fn make_kuozhan(ctx: &Arc<FieldCtx>, k: u64, gamma: Elem, beta: Elem) -> Result<MulFamily> {
    if ctx.p() != 2 {
        return Err(Error::OddChar);
    }
    if !ctx.n().is_multiple_of(2) {
        return Err(Error::OddN);
    }
    let half = ctx.n() / 2;
    let q = 1u64 << half;
    if gcd(k, q + 1) != 1 {
        return Err(Error::BadK { k });
    }
    for e in [gamma, beta] {
        ctx.elem(e.0 as u64)?;
        if e.is_zero() || !ctx.in_subfield(e, half) {
            return Err(Error::NotInSubfield(e.0));
        }
    }
    if !ctx.frob_sum(beta, 1, half).is_zero() {
        return Err(Error::TraceNonzero);
    }
    let k = (k % (q + 1)) as i64;
    let h = PolyFq::monomial_signed(ctx, Elem::ONE, -1)
        .add(&PolyFq::monomial_signed(ctx, beta, -k - 1))?
        .add(&PolyFq::monomial_signed(ctx, beta, k - 1))?
        .scale(gamma);
    MulFamily::new(ctx, q * q - 2, q - 1, h.tabulate())
}

/// `f = x + g0(Tr(x))` with `Tr` the trace to `F_q`, `q = p^d`; needs `p = 2`
/// and an even degree `n / d`.
pub fn make_trace_gadget(ctx: &Arc<FieldCtx>, base_degree: u32, g0: Table) -> Result<AddFamily> {
    check_table(ctx, &g0)?;
    ctx.check_subfield_degree(base_degree)?;
    if ctx.p() != 2 {
        return Err(Error::OddChar);
    }
    if !(ctx.n() / base_degree).is_multiple_of(2) {
        return Err(Error::OddN);
    }
    let sub = ctx.subfield(base_degree)?;
    if let Some(y) = sub.iter().find(|y| !ctx.in_subfield(g0[y.index()], base_degree)) {
        return Err(Error::condition("g0 does not map F_q into F_q", Some(y.0)));
    }
    let tr: Table = ctx
        .elements()
        .map(|x| ctx.rel_trace(base_degree, x))
        .collect::<Result<_>>()?;
    AddFamily::new(ctx, PermTable::identity(ctx).into_images(), g0, tr.clone(), tr)
}

/// Coefficients of `lambda = sum_{1 <= i < j <= m} beta (x^{q^i} + x^{q^j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaCoeffs {
    /// `beta_i`, `i = 1..m-1`, as printed.
    Single(Vec<Elem>),
    /// `beta_{ij}` at `[i - 1][j - 1]`; entries with `j <= i` are ignored.
    Double(Vec<Vec<Elem>>),
}

impl BetaCoeffs {
    fn get(&self, i: usize, j: usize) -> Elem {
        let pick = |v: Option<&Elem>| v.copied().unwrap_or(Elem::ZERO);
        match self {
            BetaCoeffs::Single(v) => pick(v.get(i - 1)),
            BetaCoeffs::Double(m) => pick(m.get(i - 1).and_then(|r| r.get(j - 1))),
        }
    }
}

/// The `lambda` above as a table over `F_{q^m}`, `q = p^d`.
pub fn zero_translator_lambda(ctx: &FieldCtx, base_degree: u32, beta: &BetaCoeffs) -> Table {
    let m = (ctx.n() / base_degree) as usize;
    ctx.elements()
        .map(|x| {
            let mut acc = Elem::ZERO;
            for i in 1..=m {
                for j in i + 1..=m {
                    let c = beta.get(i, j);
                    if c.is_zero() {
                        continue;
                    }
                    let xi = ctx.frob(x, base_degree * i as u32);
                    let xj = ctx.frob(x, base_degree * j as u32);
                    acc = ctx.add(acc, ctx.mul(c, ctx.add(xi, xj)));
                }
            }
            acc
        })
        .collect()
}

/// `f = x + gamma G(lambda(x))` with `gamma` a 0-linear translator of
/// `lambda` with respect to `F_q`; needs characteristic 2.
pub fn make_zero_translator(
    ctx: &Arc<FieldCtx>,
    base_degree: u32,
    beta: &BetaCoeffs,
    big_g: Table,
    gamma: Elem,
) -> Result<TranslatorFamily> {
    ctx.check_subfield_degree(base_degree)?;
    if ctx.p() != 2 {
        return Err(Error::OddChar);
    }
    if gamma.is_zero() {
        return Err(Error::GammaZero);
    }
    for c in match beta {
        BetaCoeffs::Single(v) => v.clone(),
        BetaCoeffs::Double(m) => m.concat(),
    } {
        ctx.elem(c.0 as u64)?;
    }
    let lambda = zero_translator_lambda(ctx, base_degree, beta);
    let s = ctx.subfield(base_degree)?.into_iter().collect();
    TranslatorFamily::new(ctx, lambda, Some(s), gamma, Some(Elem::ZERO), big_g)
}
