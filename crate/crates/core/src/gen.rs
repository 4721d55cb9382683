//! Seeded random instances: valid family members, AGW diagrams, linearized
//! permutations, tables and coefficient vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::agw::{AddFamily, HybridScaleFamily, MulFamily, TranslatorFamily};
use crate::error::Result;
use crate::gf::{divisors, gcd, Elem, FieldCtx};
use crate::perm::{AgwDiagram, ElemSet, PermTable, SubsetMap, Table};
use crate::poly::LinearizedPoly;

pub fn random_elem<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx) -> Elem {
    Elem(rng.gen_range(0..ctx.q()))
}

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx) -> Elem {
    Elem(rng.gen_range(1..ctx.q()))
}

pub fn random_table<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx) -> Table {
    ctx.elements().map(|_| random_elem(rng, ctx)).collect()
}

pub fn random_coeffs<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx, len: usize) -> Vec<Elem> {
    (0..len).map(|_| random_elem(rng, ctx)).collect()
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, ctx: &Arc<FieldCtx>) -> PermTable {
    let mut v: Vec<Elem> = ctx.elements().collect();
    v.shuffle(rng);
    PermTable::as_permutation(ctx, v).expect("a shuffle is a permutation")
}

/// A random divisor `d < n` of `n`, or `1` over a prime field.
fn random_subfield_degree<R: Rng + ?Sized>(rng: &mut R, ctx: &FieldCtx) -> u32 {
    let n = ctx.n();
    let ds: Vec<u32> = divisors(n as u64)
        .into_iter()
        .map(|d| d as u32)
        .filter(|&d| d < n || n == 1)
        .collect();
    *ds.choose(rng).expect("1 divides n")
}

fn trace_of(ctx: &FieldCtx, d: u32, a: Elem) -> Table {
    ctx.elements()
        .map(|x| ctx.rel_trace(d, ctx.mul(a, x)).expect("d divides n"))
        .collect()
}

fn subfield_set(ctx: &FieldCtx, d: u32) -> Vec<Elem> {
    ctx.subfield(d).expect("d divides n")
}

/// `x^r h(x^s)` with `g` drawn as a uniform permutation of `mu_l` and `h`
/// solved from `h(z)^s = g(z) z^{-r}`.
pub fn random_mul<R: Rng + ?Sized>(rng: &mut R, ctx: &Arc<FieldCtx>) -> Result<MulFamily> {
    let order = (ctx.q() - 1) as u64;
    let s = *divisors(order).choose(rng).expect("1 divides q - 1");
    let r = loop {
        let r = rng.gen_range(1..=2 * order);
        if gcd(r, s) == 1 {
            break r;
        }
    };
    let ell = order / s;
    let mu = ctx.mu_subgroup(ell)?;
    let mut images = mu.elements.clone();
    images.shuffle(rng);
    let mut h: Table = ctx.elements().map(|_| random_elem(rng, ctx)).collect();
    for (&z, &gz) in mu.elements.iter().zip(&images) {
        let target = ctx.mul(gz, ctx.pow(z, -(r as i64)));
        let l = ctx.log(target).expect("target is nonzero") as u64;
        debug_assert_eq!(l % s, 0);
        let j = rng.gen_range(0..s);
        h[z.index()] = ctx.exp(l / s + j * ell);
    }
    MulFamily::new(ctx, r, s, h)
}

/// `g = c x^{p^k}` with `c` in `F_{p^d}`, `lambda = Tr_d(a x)`,
/// `lambda_bar = Tr_d(a^{p^k} x)` or `lambda = lambda_bar = x^{p^d} - x`,
/// and `g0` landing in the kernel of `lambda_bar` on `S`.
pub fn random_add<R: Rng + ?Sized>(rng: &mut R, ctx: &Arc<FieldCtx>) -> Result<AddFamily> {
    let d = random_subfield_degree(rng, ctx);
    let k = rng.gen_range(0..ctx.n());
    let sub = subfield_set(ctx, d);
    let c = *sub[1..].choose(rng).expect("subfield has a nonzero element");
    let g: Table = ctx.elements().map(|x| ctx.mul(c, ctx.frob(x, k))).collect();
    let (lambda, lambda_bar) = if rng.gen_bool(0.5) {
        let a = random_nonzero(rng, ctx);
        (trace_of(ctx, d, a), trace_of(ctx, d, ctx.frob(a, k)))
    } else {
        let l: Table = ctx.elements().map(|x| ctx.sub(ctx.frob(x, d), x)).collect();
        (l.clone(), l)
    };
    let kernel: Vec<Elem> = ctx
        .elements()
        .filter(|x| lambda_bar[x.index()].is_zero())
        .collect();
    let s = ElemSet::image_of(&lambda);
    let g0 = ctx
        .elements()
        .map(|y| {
            if s.contains(y) {
                *kernel.choose(rng).expect("0 is in the kernel")
            } else {
                random_elem(rng, ctx)
            }
        })
        .collect();
    AddFamily::new(ctx, g, g0, lambda, lambda_bar)
}

/// `lambda = Tr_d(x^m)`, `k = x^m`, `S = F_{p^d}`, and `h` sampled on
/// `lambda(F)` until `y h(y)^m` permutes it (falling back to `h = 1` there).
pub fn random_hybrid<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Arc<FieldCtx>,
) -> Result<HybridScaleFamily> {
    let d = random_subfield_degree(rng, ctx);
    let m = rng.gen_range(1..ctx.q()) as u64;
    let lambda: Table = ctx
        .elements()
        .map(|x| ctx.rel_trace(d, ctx.pow_u(x, m)).expect("d divides n"))
        .collect();
    let k: Table = ctx.elements().map(|x| ctx.pow_u(x, m)).collect();
    let sub = subfield_set(ctx, d);
    let image = ElemSet::image_of(&lambda);
    let mut h: Table = ctx.elements().map(|_| random_nonzero(rng, ctx)).collect();
    let permutes = |h: &Table| {
        SubsetMap::from_fn(image.clone(), |y| ctx.mul(y, ctx.pow_u(h[y.index()], m)))
            .is_permutation()
    };
    let mut found = false;
    for _ in 0..64 {
        for y in image.iter() {
            h[y.index()] = *sub[1..].choose(rng).expect("nonzero subfield element");
        }
        if permutes(&h) {
            found = true;
            break;
        }
    }
    if !found {
        for y in image.iter() {
            h[y.index()] = Elem::ONE;
        }
    }
    HybridScaleFamily::new(ctx, h, k, lambda, Some(sub.into_iter().collect()))
}

/// `lambda = Tr_d(a x)`, `gamma` random, `b = Tr_d(a gamma)`, and `G` chosen
/// on `S = F_{p^d}` so that `y + b G(y)` is a uniform permutation of `S`.
pub fn random_translator<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Arc<FieldCtx>,
) -> Result<TranslatorFamily> {
    let d = random_subfield_degree(rng, ctx);
    let a = random_nonzero(rng, ctx);
    let lambda = trace_of(ctx, d, a);
    let gamma = random_nonzero(rng, ctx);
    let b = ctx.rel_trace(d, ctx.mul(a, gamma))?;
    let sub = subfield_set(ctx, d);
    let mut big_g: Table = ctx.elements().map(|_| random_elem(rng, ctx)).collect();
    let mut perm = sub.clone();
    perm.shuffle(rng);
    for (&y, &py) in sub.iter().zip(&perm) {
        big_g[y.index()] = if b.is_zero() {
            *sub.choose(rng).expect("nonempty")
        } else {
            ctx.div(ctx.sub(py, y), b)
        };
    }
    let s = sub.into_iter().collect();
    TranslatorFamily::new(ctx, lambda, Some(s), gamma, Some(b), big_g)
}

/// A commuting diagram over `lambda = lambda_bar = Tr_d(a x)`. With
/// `bijective`, `g` permutes `S` and `f` maps fibers bijectively; otherwise
/// either `g` collapses two points or one fiber map is not injective.
pub fn random_diagram<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Arc<FieldCtx>,
    bijective: bool,
) -> AgwDiagram {
    let d = random_subfield_degree(rng, ctx);
    let a = random_nonzero(rng, ctx);
    let lambda = trace_of(ctx, d, a);
    let sub = subfield_set(ctx, d);
    let mut fibers: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    for x in ctx.elements() {
        fibers.entry(lambda[x.index()]).or_default().push(x);
    }
    let fiber_size = ctx.q() as usize / sub.len();
    let collapse_g = !bijective && (fiber_size == 1 || rng.gen_bool(0.5));
    let mut targets = sub.clone();
    targets.shuffle(rng);
    if collapse_g {
        let i = rng.gen_range(0..targets.len());
        let mut j = rng.gen_range(0..targets.len() - 1);
        if j >= i {
            j += 1;
        }
        targets[j] = targets[i];
    }
    let g_of: BTreeMap<Elem, Elem> = sub.iter().copied().zip(targets).collect();
    let bad_fiber = (!bijective && !collapse_g).then(|| *sub.choose(rng).expect("nonempty"));
    let mut f = vec![Elem::ZERO; ctx.q() as usize];
    for (s, xs) in &fibers {
        let mut dest = fibers[&g_of[s]].clone();
        dest.shuffle(rng);
        if bad_fiber == Some(*s) {
            dest[1] = dest[0];
        }
        for (x, y) in xs.iter().zip(dest) {
            f[x.index()] = y;
        }
    }
    let set: ElemSet = sub.iter().copied().collect();
    AgwDiagram {
        f,
        lambda: lambda.clone(),
        lambda_bar: lambda,
        s: set.clone(),
        s_bar: set.clone(),
        g: SubsetMap::from_fn(set, |y| g_of[&y]),
    }
}

/// Bijective `sum c_i x^{p^{d i}}` by rejection sampling.
pub fn random_linearized_perm<R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &Arc<FieldCtx>,
    d: u32,
) -> Result<LinearizedPoly> {
    let m = (ctx.n() / d) as usize;
    loop {
        let l = LinearizedPoly::new(ctx, d, random_coeffs(rng, ctx, m))?;
        if PermTable::as_permutation(ctx, l.table()).is_ok() {
            return Ok(l);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::perm::agw_verify;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ctx(p: u64, n: u32) -> Arc<FieldCtx> {
        Arc::new(build_field(p, n, None).unwrap())
    }

    #[test]
    fn generators_produce_valid_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, n) in [(2, 2), (5, 1), (3, 2), (2, 4), (3, 3)] {
            let c = ctx(p, n);
            for _ in 0..10 {
                random_mul(&mut rng, &c).unwrap();
                random_add(&mut rng, &c).unwrap();
                random_hybrid(&mut rng, &c).unwrap();
                random_translator(&mut rng, &c).unwrap();
                random_linearized_perm(&mut rng, &c, 1).unwrap();
            }
        }
    }

    #[test]
    fn diagrams_have_requested_bijectivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, n) in [(2, 3), (7, 1), (3, 2)] {
            let c = ctx(p, n);
            for bij in [true, false] {
                let r = agw_verify(&random_diagram(&mut rng, &c, bij)).unwrap();
                assert!(r.premises_hold());
                assert_eq!(r.f_bijective, bij);
            }
        }
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let c = ctx(3, 2);
        let a = random_table(&mut ChaCha8Rng::seed_from_u64(1), &c);
        let b = random_table(&mut ChaCha8Rng::seed_from_u64(1), &c);
        assert_eq!(a, b);
    }
}
