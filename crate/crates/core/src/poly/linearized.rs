//! Linearized polynomials `L(x) = sum_{i<m} c_i x^{q0^i}` over F_{q0^m}.

use std::sync::Arc;

use super::PolyFq;
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizedPoly {
    ctx: Arc<FieldCtx>,
    base_degree: u32,
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    /// `base_degree` is `d` with `q0 = p^d`; `coeffs` must have `n / d`
    /// entries (missing high coefficients may be omitted).
    pub fn new(ctx: &Arc<FieldCtx>, base_degree: u32, mut coeffs: Vec<Elem>) -> Result<Self> {
        ctx.check_subfield_degree(base_degree)?;
        let m = (ctx.n() / base_degree) as usize;
        if coeffs.len() > m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: coeffs.len(),
            });
        }
        if let Some(bad) = coeffs.iter().find(|c| c.0 >= ctx.q()) {
            return Err(Error::ElemOutOfRange {
                value: bad.0 as u64,
                q: ctx.q(),
            });
        }
        coeffs.resize(m, Elem::ZERO);
        Ok(LinearizedPoly {
            ctx: ctx.clone(),
            base_degree,
            coeffs,
        })
    }

    /// Reads a polynomial as `q0`-linearized if its support is on the
    /// exponents `q0^i`.
    pub fn from_poly(p: &PolyFq, base_degree: u32) -> Result<Option<Self>> {
        let ctx = p.ctx();
        ctx.check_subfield_degree(base_degree)?;
        let m = ctx.n() / base_degree;
        let q0 = (ctx.p() as u64).pow(base_degree);
        let exps: Vec<usize> = (0..m).map(|i| q0.pow(i) as usize).collect();
        for (e, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() && !exps.contains(&e) {
                return Ok(None);
            }
        }
        let coeffs = exps.iter().map(|&e| p.coeff(e)).collect();
        Self::new(ctx, base_degree, coeffs).map(Some)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &*self.ctx;
        self.coeffs
            .iter()
            .enumerate()
            .fold(Elem::ZERO, |acc, (i, &c)| {
                f.add(acc, f.mul(c, f.frob(x, self.base_degree * i as u32)))
            })
    }

    pub fn table(&self) -> Vec<Elem> {
        self.ctx.elements().map(|x| self.eval(x)).collect()
    }

    pub fn to_poly(&self) -> PolyFq {
        let f = &*self.ctx;
        let q0 = (f.p() as u64).pow(self.base_degree);
        let mut raw = vec![Elem::ZERO; f.q() as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            raw[q0.pow(i as u32) as usize] = c;
        }
        PolyFq::from_coeffs(&self.ctx, raw)
    }

    /// `D[i][j] = c_{(j - i) mod m}^{q0^i}`; composition of linearized
    /// polynomials corresponds to the product of these matrices.
    fn dickson_matrix(&self) -> Vec<Vec<Elem>> {
        let m = self.coeffs.len();
        let f = &*self.ctx;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| f.frob(self.coeffs[(j + m - i) % m], self.base_degree * i as u32))
                    .collect()
            })
            .collect()
    }
}

/// Compositional inverse of a bijective linearized polynomial, read off the
/// first row of the inverse Dickson matrix.
pub fn linearized_inverse(l: &LinearizedPoly) -> Result<LinearizedPoly> {
    let f = &*l.ctx;
    let m = l.coeffs.len();
    let mut a = l.dickson_matrix();
    let mut inv: Vec<Vec<Elem>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = f.inv(a[col][col]);
        for j in 0..m {
            a[col][j] = f.mul(a[col][j], s);
            inv[col][j] = f.mul(inv[col][j], s);
        }
        for r in 0..m {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col];
            for j in 0..m {
                a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                inv[r][j] = f.sub(inv[r][j], f.mul(factor, inv[col][j]));
            }
        }
    }
    LinearizedPoly::new(&l.ctx, l.base_degree, inv.swap_remove(0))
}
