//! Permutation tables, brute-force inversion, cycle types, and the
//! diagram checker for the AGW criterion.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::poly::PolyFq;

/// Values of a map on every field element, in index order.
pub type Table = Vec<Elem>;

/// First pair `(i, j)`, `i < j`, with `map[i] == map[j]`, scanning `j` upward.
pub fn first_collision(map: &[Elem], q: u32) -> Option<(u32, u32)> {
    let mut seen = vec![u32::MAX; q as usize];
    for (j, y) in map.iter().enumerate() {
        let slot = &mut seen[y.index()];
        if *slot != u32::MAX {
            return Some((*slot, j as u32));
        }
        *slot = j as u32;
    }
    None
}

pub(crate) fn check_table(ctx: &FieldCtx, map: &[Elem]) -> Result<()> {
    let q = ctx.q();
    if map.len() != q as usize {
        return Err(Error::LengthMismatch {
            expected: q as usize,
            got: map.len(),
        });
    }
    if let Some(bad) = map.iter().find(|y| y.0 >= q) {
        return Err(Error::ElemOutOfRange {
            value: bad.0 as u64,
            q,
        });
    }
    Ok(())
}

/// A bijection of F_q stored by images.
#[derive(Clone, PartialEq, Eq)]
pub struct PermTable {
    ctx: Arc<FieldCtx>,
    images: Vec<Elem>,
}

impl std::fmt::Debug for PermTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("PermTable").field(&self.images).finish()
    }
}

impl PermTable {
    /// Accepts `map` iff it is a bijection; otherwise reports the first
    /// collision in index order.
    pub fn as_permutation(ctx: &Arc<FieldCtx>, map: Vec<Elem>) -> Result<Self> {
        check_table(ctx, &map)?;
        if let Some((first, second)) = first_collision(&map, ctx.q()) {
            return Err(Error::NotBijective { first, second });
        }
        Ok(PermTable {
            ctx: ctx.clone(),
            images: map,
        })
    }

    pub fn from_poly(p: &PolyFq) -> Result<Self> {
        Self::as_permutation(p.ctx(), p.tabulate())
    }

    pub fn identity(ctx: &Arc<FieldCtx>) -> Self {
        PermTable {
            ctx: ctx.clone(),
            images: ctx.elements().collect(),
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn into_images(self) -> Vec<Elem> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x.index()]
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &PermTable) -> Result<PermTable> {
        if !crate::poly::same_field(&self.ctx, &other.ctx) {
            return Err(Error::CtxMismatch);
        }
        Ok(PermTable {
            ctx: self.ctx.clone(),
            images: other.images.iter().map(|&y| self.apply(y)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, y)| y.index() == i)
    }

    /// First `x` with `self(x) != x`.
    pub fn first_moved(&self) -> Option<Elem> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, y)| y.index() != *i)
            .map(|(i, _)| Elem(i as u32))
    }

    pub fn inverse(&self) -> PermTable {
        brute_inverse(self)
    }

    pub fn cycle_structure(&self) -> CycleType {
        cycle_structure(self)
    }

    pub fn to_poly(&self) -> PolyFq {
        crate::poly::interpolate(&self.ctx, &self.images).expect("table has length q")
    }
}

pub fn as_permutation(ctx: &Arc<FieldCtx>, map: Vec<Elem>) -> Result<PermTable> {
    PermTable::as_permutation(ctx, map)
}

pub fn brute_inverse(t: &PermTable) -> PermTable {
    let mut inv = vec![Elem::ZERO; t.images.len()];
    for (i, y) in t.images.iter().enumerate() {
        inv[y.index()] = Elem(i as u32);
    }
    PermTable {
        ctx: t.ctx.clone(),
        images: inv,
    }
}

/// Cycle lengths with multiplicities; fixed points count as 1-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleType {
    pub cycles: BTreeMap<usize, usize>,
    pub fixed_points: usize,
    pub is_involution: bool,
}

impl CycleType {
    pub fn total(&self) -> usize {
        self.cycles.iter().map(|(l, m)| l * m).sum()
    }
}

pub fn cycle_structure(t: &PermTable) -> CycleType {
    let q = t.images.len();
    let mut seen = vec![false; q];
    let mut cycles = BTreeMap::new();
    for start in 0..q {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = t.images[x].index();
            len += 1;
        }
        *cycles.entry(len).or_insert(0) += 1;
    }
    let fixed_points = cycles.get(&1).copied().unwrap_or(0);
    let is_involution = cycles.keys().all(|&l| l <= 2);
    CycleType {
        cycles,
        fixed_points,
        is_involution,
    }
}

/// A finite set of field elements, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ElemSet(Vec<Elem>);

impl ElemSet {
    pub fn new(mut v: Vec<Elem>) -> Self {
        v.sort_unstable();
        v.dedup();
        ElemSet(v)
    }

    /// Image set of a table.
    pub fn image_of(table: &[Elem]) -> Self {
        Self::new(table.to_vec())
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn position(&self, x: Elem) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// A map defined on a finite set of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetMap {
    domain: ElemSet,
    values: Vec<Elem>,
}

impl SubsetMap {
    pub fn from_fn(domain: ElemSet, f: impl Fn(Elem) -> Elem) -> Self {
        let values = domain.iter().map(f).collect();
        SubsetMap { domain, values }
    }

    /// Restriction of a full-field table.
    pub fn restrict(domain: ElemSet, table: &[Elem]) -> Self {
        Self::from_fn(domain, |x| table[x.index()])
    }

    pub fn domain(&self) -> &ElemSet {
        &self.domain
    }

    pub fn get(&self, x: Elem) -> Option<Elem> {
        self.domain.position(x).map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.domain.iter().zip(self.values.iter().copied())
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::new(self.values.clone())
    }

    /// First pair of domain points with the same image.
    pub fn first_collision(&self) -> Option<(Elem, Elem)> {
        let mut seen: BTreeMap<Elem, Elem> = BTreeMap::new();
        for (x, y) in self.iter() {
            if let Some(&prev) = seen.get(&y) {
                return Some((prev, x));
            }
            seen.insert(y, x);
        }
        None
    }

    /// True when the map is a bijection from its domain onto `codomain`.
    pub fn is_bijection_onto(&self, codomain: &ElemSet) -> bool {
        self.domain.len() == codomain.len()
            && self.first_collision().is_none()
            && self.values.iter().all(|&y| codomain.contains(y))
    }

    /// True when the map permutes its own domain.
    pub fn is_permutation(&self) -> bool {
        self.is_bijection_onto(&self.domain)
    }

    /// Inverse by exhaustive search over the domain.
    pub fn inverse(&self) -> Result<SubsetMap> {
        if let Some((a, b)) = self.first_collision() {
            return Err(Error::NotBijective {
                first: a.0,
                second: b.0,
            });
        }
        let mut pairs: Vec<(Elem, Elem)> = self.iter().map(|(x, y)| (y, x)).collect();
        pairs.sort_unstable();
        let (domain, values) = pairs.into_iter().unzip();
        Ok(SubsetMap {
            domain: ElemSet(domain),
            values,
        })
    }
}

/// `lambda_bar ∘ f = g ∘ lambda` with `lambda: F -> S`, `lambda_bar: F -> S_bar`.
#[derive(Clone, Debug)]
pub struct AgwDiagram {
    pub f: Table,
    pub lambda: Table,
    pub lambda_bar: Table,
    pub s: ElemSet,
    pub s_bar: ElemSet,
    pub g: SubsetMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub lambda_surjective: bool,
    pub lambda_bar_surjective: bool,
    pub commutes: bool,
    pub g_bijective: bool,
    pub fiber_injective: bool,
    pub f_bijective: bool,
}

impl VerificationReport {
    pub fn premises_hold(&self) -> bool {
        self.lambda_surjective && self.lambda_bar_surjective && self.commutes
    }

    /// Under the premises, `f` is bijective exactly when `g` is bijective
    /// and `f` is injective on every fiber of `lambda`.
    pub fn lemma_consistent(&self) -> bool {
        !self.premises_hold() || self.f_bijective == (self.g_bijective && self.fiber_injective)
    }
}

pub fn agw_verify(d: &AgwDiagram) -> Result<VerificationReport> {
    if d.s.len() != d.s_bar.len() {
        return Err(Error::SizeMismatch {
            s: d.s.len(),
            s_bar: d.s_bar.len(),
        });
    }
    let q = d.f.len();
    for t in [&d.lambda, &d.lambda_bar] {
        if t.len() != q {
            return Err(Error::LengthMismatch {
                expected: q,
                got: t.len(),
            });
        }
    }
    let onto = |t: &Table, set: &ElemSet| ElemSet::image_of(t) == *set;
    let lambda_surjective = onto(&d.lambda, &d.s);
    let lambda_bar_surjective = onto(&d.lambda_bar, &d.s_bar);
    let commutes = (0..q).all(|x| {
        let lhs = d.lambda_bar[d.f[x].index()];
        d.g.get(d.lambda[x]) == Some(lhs)
    });
    let g_bijective = *d.g.domain() == d.s && d.g.is_bijection_onto(&d.s_bar);

    // f injective on each fiber lambda^{-1}(s)
    let mut fibers: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    for x in 0..q {
        fibers.entry(d.lambda[x]).or_default().push(d.f[x]);
    }
    let fiber_injective = fibers.values_mut().all(|v| {
        let n = v.len();
        v.sort_unstable();
        v.dedup();
        v.len() == n
    });
    let f_bijective = q > 0 && first_collision(&d.f, q as u32).is_none();
    Ok(VerificationReport {
        lambda_surjective,
        lambda_bar_surjective,
        commutes,
        g_bijective,
        fiber_injective,
        f_bijective,
    })
}
