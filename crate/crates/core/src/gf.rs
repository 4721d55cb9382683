//! Arithmetic in GF(p^n).
//!
//! Elements are packed integer indices: the coefficient vector
//! `(a_0, ..., a_{n-1})` of `a_0 + a_1 t + ... + a_{n-1} t^{n-1}` modulo the
//! field's defining polynomial is stored as `sum a_i p^i`. Index 0 is zero and
//! index 1 is one. Multiplication goes through discrete log/exp tables built
//! once from a primitive element; addition in odd characteristic uses a Zech
//! logarithm table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field size the brute-force machinery accepts unless overridden.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its packed coefficient index.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// User-facing description of a field: characteristic, degree and an
/// optional defining polynomial (coefficients low-to-high, monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub n: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn new(p: u64, n: u32) -> Self {
        FieldSpec {
            p,
            n,
            modulus: None,
        }
    }

    pub fn with_modulus(p: u64, n: u32, modulus: Vec<u64>) -> Self {
        FieldSpec {
            p,
            n,
            modulus: Some(modulus),
        }
    }
}

/// Immutable arithmetic context for one finite field.
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

/// The subgroup of `ell`-th roots of unity in F_q^*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuSubgroup {
    pub ell: u64,
    pub elements: Vec<Elem>,
}

impl MuSubgroup {
    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Builds `GF(p^n)`; see [`FieldCtx::build`].
pub fn build_field(p: u64, n: u32, modulus: Option<Vec<u64>>) -> Result<FieldCtx> {
    FieldCtx::build(&FieldSpec { p, n, modulus })
}

impl FieldCtx {
    pub fn build(spec: &FieldSpec) -> Result<Self> {
        Self::build_with_bound(spec, DEFAULT_ENUMERATION_BOUND)
    }

    /// Builds the field, refusing sizes above `bound`.
    ///
    /// Without an explicit modulus the lexicographically least monic
    /// irreducible is used, comparing coefficients from the constant term up.
    pub fn build_with_bound(spec: &FieldSpec, bound: u64) -> Result<Self> {
        let p = spec.p;
        let n = spec.n;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        let q128 = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if q128 > bound as u128 || q128 > u32::MAX as u128 / 2 {
            return Err(Error::TooLarge { q: q128, bound });
        }
        let p = p as u32;
        let q = q128 as u32;

        let modulus: Vec<u32> = match &spec.modulus {
            Some(m) => {
                if m.len() != n as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        n + 1,
                        m.len()
                    )));
                }
                if m[n as usize] != 1 {
                    return Err(Error::BadModulus("leading coefficient must be 1".into()));
                }
                if let Some(c) = m.iter().find(|&&c| c >= p as u64) {
                    return Err(Error::BadModulus(format!("coefficient {c} not below p")));
                }
                let m: Vec<u32> = m.iter().map(|&c| c as u32).collect();
                if !is_irreducible(&m, p) {
                    return Err(Error::Reducible { p: p as u64 });
                }
                m
            }
            None => first_irreducible(p, n),
        };

        let mut ctx = FieldCtx {
            p,
            n,
            q,
            modulus,
            primitive: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        let generator = (1..self.q)
            .map(Elem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.slow_pow(g, order / r) != Elem::ONE)
            })
            .expect("finite field has a primitive element");
        self.primitive = generator;

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NO_LOG; self.q as usize];
        let mut cur = Elem::ONE;
        for i in 0..order as u32 {
            exp.push(cur.0);
            log[cur.index()] = i;
            cur = self.slow_mul(cur, generator);
        }
        self.exp = exp;
        self.log = log;

        if self.p != 2 && self.n > 1 {
            let zech = (0..order as usize)
                .map(|l| {
                    let s = self.digit_add(Elem::ONE, Elem(self.exp[l]));
                    if s.is_zero() {
                        NO_LOG
                    } else {
                        self.log[s.index()]
                    }
                })
                .collect();
            self.zech = zech;
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p as u64,
            n: self.n,
            modulus: Some(self.modulus.iter().map(|&c| c as u64).collect()),
        }
    }

    /// Iterates all q elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index >= self.q as u64 {
            Err(Error::ElemOutOfRange {
                value: index,
                q: self.q,
            })
        } else {
            Ok(Elem(index as u32))
        }
    }

    /// The prime-field element `k mod p`.
    pub fn from_int(&self, k: i64) -> Elem {
        Elem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, x: Elem) -> Vec<u32> {
        let mut v = x.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Elem {
        Elem(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.n == 1 {
            return Elem((a.0 + b.0) % self.p);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let order = self.q - 1;
        let la = self.log[a.index()];
        let lb = self.log[b.index()];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Elem::ZERO
        } else {
            Elem(self.exp[((la as u64 + z as u64) % order as u64) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        if self.n == 1 {
            return Elem(self.p - a.0);
        }
        let order = self.q - 1;
        let l = self.log[a.index()] as u64 + (order / 2) as u64;
        Elem(self.exp[(l % order as u64) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.index()] as u64 + self.log[b.index()] as u64;
        Elem(self.exp[(l % order) as usize])
    }

    /// `x^{q-2}`: the multiplicative inverse, with `0 -> 0`.
    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        if x.is_zero() {
            return Elem::ZERO;
        }
        let order = self.q - 1;
        let l = self.log[x.index()];
        Elem(self.exp[((order - l) % order) as usize])
    }

    /// `a * b^{-1}` with the `0^{-1} = 0` convention.
    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    /// `x^e` for any integer `e`; nonzero bases reduce `e` modulo `q - 1`,
    /// and `0^0 = 1`, `0^e = 0` otherwise.
    pub fn pow(&self, x: Elem, e: i64) -> Elem {
        if x.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let order = (self.q - 1) as i128;
        let l = self.log[x.index()] as i128 * (e as i128).rem_euclid(order);
        Elem(self.exp[(l % order) as usize])
    }

    pub fn pow_u(&self, x: Elem, e: u64) -> Elem {
        if x.is_zero() {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let order = (self.q - 1) as u128;
        let l = self.log[x.index()] as u128 * (e as u128 % order);
        Elem(self.exp[(l % order) as usize])
    }

    /// Discrete log to the base of the primitive element, `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.index()])
        }
    }

    pub fn exp(&self, l: u64) -> Elem {
        Elem(self.exp[(l % (self.q - 1) as u64) as usize])
    }

    /// `x^{p^k}`.
    pub fn frob(&self, x: Elem, k: u32) -> Elem {
        if x.is_zero() {
            return x;
        }
        let order = (self.q - 1) as u64;
        let pk = mod_pow(self.p as u64, k as u64, order);
        let l = (self.log[x.index()] as u64 * pk) % order;
        Elem(self.exp[l as usize])
    }

    /// `sum_{i < count} x^{p^{step * i}}`.
    pub fn frob_sum(&self, x: Elem, step: u32, count: u32) -> Elem {
        (0..count).fold(Elem::ZERO, |acc, i| self.add(acc, self.frob(x, step * i)))
    }

    /// Relative trace onto the subfield of degree `d`:
    /// `sum_{i < n/d} x^{p^{d i}}`.
    pub fn rel_trace(&self, d: u32, x: Elem) -> Result<Elem> {
        self.check_subfield_degree(d)?;
        Ok(self.frob_sum(x, d, self.n / d))
    }

    pub fn check_subfield_degree(&self, d: u32) -> Result<()> {
        if d == 0 || !self.n.is_multiple_of(d) {
            Err(Error::NotDivisor {
                d: d as u64,
                n: self.n as u64,
            })
        } else {
            Ok(())
        }
    }

    pub fn in_subfield(&self, x: Elem, d: u32) -> bool {
        self.frob(x, d) == x
    }

    /// Elements of the subfield of degree `d`, sorted.
    pub fn subfield(&self, d: u32) -> Result<Vec<Elem>> {
        self.check_subfield_degree(d)?;
        Ok(self.elements().filter(|&x| self.in_subfield(x, d)).collect())
    }

    pub fn mu_subgroup(&self, ell: u64) -> Result<MuSubgroup> {
        let order = (self.q - 1) as u64;
        if ell == 0 || !order.is_multiple_of(ell) {
            return Err(Error::NotDivisor { d: ell, n: order });
        }
        let elements = self
            .nonzero_elements()
            .filter(|&x| self.pow_u(x, ell) == Elem::ONE)
            .collect();
        Ok(MuSubgroup { ell, elements })
    }

    fn digit_add(&self, a: Elem, b: Elem) -> Elem {
        let da = self.digits(a);
        let db = self.digits(b);
        let sum: Vec<u32> = da
            .iter()
            .zip(&db)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.from_digits(&sum)
    }

    /// Schoolbook multiply and reduce; only used while building tables.
    fn slow_mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let n = self.n as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
                }
            }
        }
        for deg in (n..2 * n).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (k, &m) in self.modulus[..n].iter().enumerate() {
                let idx = deg - n + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let digits: Vec<u32> = prod[..n].iter().map(|&c| c as u32).collect();
        self.from_digits(&digits)
    }

    fn slow_pow(&self, x: Elem, mut e: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Bezout pair `(a, b)` with `a s + b r = 1` and `0 <= a < r`.
pub fn ext_gcd(s: u64, r: u64) -> Result<(i64, i64)> {
    if s == 0 || r == 0 {
        return Err(Error::NotCoprime {
            a: s as i64,
            b: r as i64,
            gcd: s.max(r) as i64,
        });
    }
    let (g, x, _) = egcd(s as i128, r as i128);
    if g != 1 {
        return Err(Error::NotCoprime {
            a: s as i64,
            b: r as i64,
            gcd: g as i64,
        });
    }
    let a = x.rem_euclid(r as i128);
    let b = (1 - a * s as i128) / r as i128;
    Ok((a as i64, b as i64))
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
        (old_t, t) = (t, old_t - quot * t);
    }
    (old_r, old_s, old_t)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

pub(crate) fn mod_pow(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = base as u128 % m128;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    acc as u64
}

fn first_irreducible(p: u32, n: u32) -> Vec<u32> {
    let total = (p as u64).pow(n);
    for k in 0..total {
        // c_0 is the most significant digit of k, c_{n-1} the least.
        let mut coeffs = vec![0u32; n as usize + 1];
        let mut v = k;
        for i in (0..n as usize).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[n as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

/// Trial division by every monic polynomial of degree at most `deg / 2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut div = vec![0u32; d + 1];
            let mut v = k;
            for c in div.iter_mut().take(d) {
                *c = (v % p as u64) as u32;
                v /= p as u64;
            }
            div[d] = 1;
            if poly_rem_is_zero(m, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    let p64 = p as u64;
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let dd = den.len() - 1;
    for top in (dd..r.len()).rev() {
        let c = r[top];
        if c == 0 {
            continue;
        }
        for (k, &dc) in den.iter().enumerate() {
            let idx = top - dd + k;
            r[idx] = (r[idx] + (p64 - c) * dc as u64) % p64;
        }
    }
    r[..dd].iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, n: u32) -> FieldCtx {
        build_field(p, n, None).unwrap()
    }

    #[test]
    fn build_examples() {
        assert_eq!(field(2, 4).q(), 16);
        let f9 = build_field(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f9.q(), 9);
        assert_eq!(field(5, 1).modulus(), &[0, 1]);
        // default modulus of F_9 is t^2 + 1
        assert_eq!(field(3, 2).modulus(), &[1, 0, 1]);
        assert_eq!(field(2, 2).modulus(), &[1, 1, 1]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(build_field(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            build_field(3, 2, Some(vec![2, 0, 1])).unwrap_err(),
            Error::Reducible { p: 3 }
        );
        assert!(matches!(
            build_field(2, 21, None).unwrap_err(),
            Error::TooLarge { .. }
        ));
        let small = FieldCtx::build_with_bound(&FieldSpec::new(2, 5), 16);
        assert!(matches!(small.unwrap_err(), Error::TooLarge { .. }));
    }

    #[test]
    fn inverse_examples() {
        let f5 = field(5, 1);
        assert_eq!(f5.inv(Elem(0)), Elem(0));
        assert_eq!(f5.inv(Elem(1)), Elem(1));
        assert_eq!(f5.inv(Elem(2)), Elem(3));
    }

    #[test]
    fn pow_examples() {
        let f7 = field(7, 1);
        assert_eq!(f7.pow(Elem(3), 0), Elem::ONE);
        assert_eq!(f7.pow(Elem(3), -1), Elem(5));
        assert_eq!(f7.pow(Elem(0), 5), Elem(0));
        assert_eq!(f7.pow(Elem(0), 0), Elem(1));
    }

    #[test]
    fn trace_examples() {
        let f4 = field(2, 2);
        assert_eq!(f4.rel_trace(1, Elem(1)).unwrap(), Elem(0));
        let f9 = field(3, 2);
        assert_eq!(f9.rel_trace(1, Elem(2)).unwrap(), Elem(1));
        assert_eq!(f9.rel_trace(1, Elem(0)).unwrap(), Elem(0));
        assert_eq!(
            f9.rel_trace(3, Elem(1)).unwrap_err(),
            Error::NotDivisor { d: 3, n: 2 }
        );
    }

    #[test]
    fn mu_examples() {
        let f7 = field(7, 1);
        assert_eq!(f7.mu_subgroup(1).unwrap().elements, vec![Elem(1)]);
        assert_eq!(f7.mu_subgroup(2).unwrap().elements, vec![Elem(1), Elem(6)]);
        assert_eq!(
            f7.mu_subgroup(3).unwrap().elements,
            vec![Elem(1), Elem(2), Elem(4)]
        );
        assert!(f7.mu_subgroup(4).is_err());
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(ext_gcd(2, 3).unwrap(), (2, -1));
        assert_eq!(ext_gcd(3, 1).unwrap(), (0, 1));
        assert_eq!(ext_gcd(1, 1).unwrap(), (0, 1));
        assert!(matches!(ext_gcd(4, 6), Err(Error::NotCoprime { gcd: 2, .. })));
    }

    /// Exhaustive field axioms against schoolbook digit arithmetic.
    #[test]
    fn axioms_exhaustive_small_fields() {
        for (p, n) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 2), (2, 6), (3, 3)] {
            let f = field(p, n);
            if f.q() > 64 {
                continue;
            }
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a)), Elem::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.digit_add(a, b));
                    assert_eq!(f.mul(a, b), f.slow_mul(a, b));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.frob(f.add(a, b), 1), f.add(f.frob(a, 1), f.frob(b, 1)));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn trace_is_linear_and_frobenius_invariant() {
        let f = field(2, 6);
        for d in [1, 2, 3] {
            for x in f.elements() {
                let t = f.rel_trace(d, x).unwrap();
                assert!(f.in_subfield(t, d));
                assert_eq!(f.rel_trace(d, f.frob(x, d)).unwrap(), t);
            }
        }
        let f = field(3, 2);
        let sub = f.subfield(1).unwrap();
        for x in f.elements() {
            for y in f.elements() {
                for &c in &sub {
                    let lhs = f.rel_trace(1, f.add(f.mul(c, x), y)).unwrap();
                    let rhs = f.add(
                        f.mul(c, f.rel_trace(1, x).unwrap()),
                        f.rel_trace(1, y).unwrap(),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn mu_subgroup_is_kernel() {
        let f = field(2, 6);
        for ell in divisors(63) {
            let mu = f.mu_subgroup(ell).unwrap();
            assert_eq!(mu.len() as u64, ell);
            for &a in &mu.elements {
                for &b in &mu.elements {
                    assert!(mu.contains(f.mul(a, b)));
                }
            }
        }
    }
}
