//! Compositional inverses of AGW-type permutation polynomials: the four
//! closed-form families, the subfield-shift example, and the generic
//! `phi^{-1} ∘ psi^{-1} ∘ phi_bar` pipeline.

mod add;
mod generic;
mod hybrid;
mod mul;
mod niu;
mod translator;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::perm::{check_table, PermTable, Table};
use crate::poly::{PolyFq, parse_poly_expr};

pub use add::{invert_additive, AddFamily};
pub use generic::{
    add_diagram, build_phi_add, build_phi_mul, generic_inverse, hybrid_diagram, mul_diagram,
    niu_diagram, translator_diagram, GenericDiagram, Pair, PairMap,
};
pub use hybrid::{invert_hybrid_scale, HybridScaleFamily};
pub use mul::{closed_form_mul, invert_multiplicative, ClosedFormMul, MulFamily};
pub use niu::{invert_niu, NiuInstance};
pub use translator::{invert_translator, invert_translator_linear, TranslatorFamily};

/// An inverse table that has been composed against the forward map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inverse {
    pub table: PermTable,
    pub certified: bool,
}

impl Inverse {
    pub fn polynomial(&self) -> PolyFq {
        self.table.to_poly()
    }
}

/// Accepts `inv` only if `inv(f(x)) = x` for every `x`.
pub(crate) fn certify(ctx: &Arc<FieldCtx>, f: &[Elem], inv: Table) -> Result<Inverse> {
    check_table(ctx, &inv)?;
    if let Some(x) = (0..f.len()).find(|&x| inv[f[x].index()].index() != x) {
        return Err(Error::OracleMismatch { witness: x as u32 });
    }
    Ok(Inverse {
        table: PermTable::as_permutation(ctx, inv)?,
        certified: true,
    })
}

/// Tabulates a polynomial given in the expression grammar.
pub fn table_of(ctx: &Arc<FieldCtx>, expr: &str) -> Result<Table> {
    Ok(parse_poly_expr(expr, ctx)?.tabulate())
}

/// First `x` where two tables differ.
pub(crate) fn first_difference(a: &[Elem], b: &[Elem]) -> Option<u32> {
    a.iter().zip(b).position(|(x, y)| x != y).map(|i| i as u32)
}
