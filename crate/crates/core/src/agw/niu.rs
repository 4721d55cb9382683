//! `f(x) = g(x^{q^i} - x + delta) + c x` over `F_{q^m}`, `q = p^d`.

use std::sync::Arc;

use super::{certify, Inverse};
use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, FieldCtx};
use crate::perm::{check_table, PermTable, Table};

#[derive(Clone, Debug)]
pub struct NiuInstance {
    ctx: Arc<FieldCtx>,
    g: Table,
    base_degree: u32,
    i: u32,
    c: Elem,
    delta: Elem,
    h: PermTable,
    h_inv: PermTable,
    f: Table,
}

impl NiuInstance {
    /// `base_degree` is `d` with `q = p^d`; `c` must be a nonzero element of
    /// `F_{q^gcd(i, m)}`. `H` is the brute-force inverse of
    /// `h = g^{q^i} - g + c x + (1 - c) delta`.
    pub fn new(
        ctx: &Arc<FieldCtx>,
        g: Table,
        base_degree: u32,
        i: u32,
        c: Elem,
        delta: Elem,
    ) -> Result<Self> {
        check_table(ctx, &g)?;
        ctx.check_subfield_degree(base_degree)?;
        ctx.elem(c.0 as u64)?;
        ctx.elem(delta.0 as u64)?;
        let fld = &**ctx;
        let m = fld.n() / base_degree;
        let sub = base_degree * gcd(i as u64, m as u64) as u32;
        if c.is_zero() || !fld.in_subfield(c, sub) {
            return Err(Error::NotInSubfield(c.0));
        }
        let k = base_degree * i;
        let one_c_delta = fld.mul(fld.sub(Elem::ONE, c), delta);
        let h: Table = ctx
            .elements()
            .map(|x| {
                let gx = g[x.index()];
                let t = fld.sub(fld.frob(gx, k), gx);
                fld.add(fld.add(t, fld.mul(c, x)), one_c_delta)
            })
            .collect();
        let h = PermTable::as_permutation(ctx, h).map_err(|_| {
            Error::NotPermutation("g^{q^i} - g + c x + (1 - c) delta is not bijective".into())
        })?;
        let h_inv = h.inverse();
        let f = ctx
            .elements()
            .map(|x| {
                let w = fld.add(fld.sub(fld.frob(x, k), x), delta);
                fld.add(g[w.index()], fld.mul(c, x))
            })
            .collect();
        Ok(NiuInstance {
            ctx: ctx.clone(),
            g,
            base_degree,
            i,
            c,
            delta,
            h,
            h_inv,
            f,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn g(&self) -> &[Elem] {
        &self.g
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn c(&self) -> Elem {
        self.c
    }

    pub fn delta(&self) -> Elem {
        self.delta
    }

    pub fn h(&self) -> &PermTable {
        &self.h
    }

    pub fn h_inv(&self) -> &PermTable {
        &self.h_inv
    }

    /// `x^{q^i}`.
    pub fn frob(&self, x: Elem) -> Elem {
        self.ctx.frob(x, self.base_degree * self.i)
    }

    pub fn f_table(&self) -> &[Elem] {
        &self.f
    }
}

/// `f^{-1}(x) = c^{-1} x^{q^i} - c^{-1} g(H(w))^{q^i} - H(w) + delta` with
/// `w = x^{q^i} - x + delta`.
pub fn invert_niu(inst: &NiuInstance) -> Result<Inverse> {
    let f = &*inst.ctx;
    let ci = f.inv(inst.c);
    let table = f
        .elements()
        .map(|x| {
            let xq = inst.frob(x);
            let w = f.add(f.sub(xq, x), inst.delta);
            let hw = inst.h_inv.apply(w);
            let t = f.mul(ci, f.sub(xq, inst.frob(inst.g[hw.index()])));
            f.add(f.sub(t, hw), inst.delta)
        })
        .collect();
    certify(&inst.ctx, &inst.f, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agw::test_support::*;

    #[test]
    fn neutral_parameters() {
        let c = ctx(3, 2);
        let inst = NiuInstance::new(&c, t(&c, "0"), 1, 1, Elem::ONE, Elem::ZERO).unwrap();
        assert!(invert_niu(&inst).unwrap().table.is_identity());
    }

    #[test]
    fn frobenius_shift_over_f4() {
        let c = ctx(2, 2);
        for d in 0..4 {
            let inst = NiuInstance::new(&c, t(&c, "x"), 1, 1, Elem::ONE, Elem(d)).unwrap();
            assert_eq!(inst.f_table(), t(&c, &format!("x^2 + {d}")).as_slice());
            let inv = invert_niu(&inst).unwrap();
            let dd = c.mul(Elem(d), Elem(d));
            assert_eq!(inv.table.images(), t(&c, &format!("x^2 + {}", dd.0)).as_slice());
        }
    }

    #[test]
    fn x_cubed_plus_x_is_not_a_permutation_of_f9() {
        // -1 is a square in F_9, so x^3 + x has a nonzero root
        let c = ctx(3, 2);
        assert!(matches!(
            NiuInstance::new(&c, t(&c, "x"), 1, 1, Elem(2), Elem::ZERO),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn all_quadratic_g_over_f9_agree_with_oracle() {
        let c = ctx(3, 2);
        let mut certified = 0;
        for g in ["x^2", "x^2 + x", "2*x^2 + 3", "x^4", "x^2 + 5*x", "x^5"] {
            for cc in [1, 2] {
                for delta in 0..9 {
                    match NiuInstance::new(&c, t(&c, g), 1, 1, Elem(cc), Elem(delta)) {
                        Ok(inst) => {
                            let inv = invert_niu(&inst).unwrap();
                            let fp = PermTable::as_permutation(&c, inst.f_table().to_vec())
                                .unwrap();
                            assert_eq!(inv.table, fp.inverse());
                            certified += 1;
                        }
                        Err(Error::NotPermutation(_)) => {}
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
        assert!(certified > 0);
    }

    #[test]
    fn subfield_degree_two_over_f16() {
        // q = 4, m = 2, i = 1, c in F_4
        let c = ctx(2, 4);
        let f4 = c.subfield(2).unwrap();
        let mut certified = 0;
        for g in ["x^3", "x^2 + x", "x^10"] {
            for &cc in f4.iter().filter(|e| !e.is_zero()) {
                if let Ok(inst) = NiuInstance::new(&c, t(&c, g), 2, 1, cc, Elem(7)) {
                    assert!(invert_niu(&inst).unwrap().certified);
                    certified += 1;
                }
            }
        }
        assert!(certified > 0);
    }

    #[test]
    fn c_outside_subfield() {
        let c = ctx(2, 4);
        let outside = c.nonzero_elements().find(|&e| !c.in_subfield(e, 2)).unwrap();
        assert_eq!(
            NiuInstance::new(&c, t(&c, "x"), 2, 1, outside, Elem::ZERO).unwrap_err(),
            Error::NotInSubfield(outside.0)
        );
        assert_eq!(
            NiuInstance::new(&c, t(&c, "x"), 1, 1, Elem::ZERO, Elem::ZERO).unwrap_err(),
            Error::NotInSubfield(0)
        );
        assert!(matches!(
            NiuInstance::new(&c, t(&c, "x"), 3, 1, Elem::ONE, Elem::ZERO),
            Err(Error::NotDivisor { .. })
        ));
    }
}
