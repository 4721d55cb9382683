//! JSON family and diagram descriptors.
//!
//! Maps are given either as an expression string or as a table of element
//! indices; scalars are element indices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::agw::{
    add_diagram, closed_form_mul, hybrid_diagram, invert_additive, invert_hybrid_scale,
    invert_multiplicative, invert_niu, invert_translator, mul_diagram, niu_diagram,
    translator_diagram, AddFamily, ClosedFormMul, GenericDiagram, HybridScaleFamily, Inverse,
    MulFamily, NiuInstance, TranslatorFamily,
};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx, FieldSpec};
use crate::involution::{
    check_add_involution, check_hybrid_involution, check_mul_involution,
    check_translator_involution, make_kuozhan, make_trace_gadget, make_zero_translator,
    BetaCoeffs, CriterionReport,
};
use crate::perm::{check_table, AgwDiagram, ElemSet, SubsetMap, Table};
use crate::poly::parse_poly_expr;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapSpec {
    Expr(String),
    Table(Vec<u64>),
}

impl MapSpec {
    pub fn table(&self, ctx: &Arc<FieldCtx>) -> Result<Table> {
        match self {
            MapSpec::Expr(e) => Ok(parse_poly_expr(e, ctx)?.tabulate()),
            MapSpec::Table(v) => {
                let t = v.iter().map(|&i| ctx.elem(i)).collect::<Result<Table>>()?;
                check_table(ctx, &t)?;
                Ok(t)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BetaSpec {
    Single(Vec<u64>),
    Double(Vec<Vec<u64>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyParams {
    Mul {
        r: u64,
        s: u64,
        h: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n_exp: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<u64>,
    },
    Add {
        g: MapSpec,
        g0: MapSpec,
        lambda: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda_bar: Option<MapSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g_inv: Option<MapSpec>,
    },
    Hybrid {
        h: MapSpec,
        k: MapSpec,
        lambda: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<Vec<u64>>,
    },
    Translator {
        lambda: MapSpec,
        gamma: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        b: Option<u64>,
        #[serde(rename = "G")]
        big_g: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        s: Option<Vec<u64>>,
    },
    Niu {
        g: MapSpec,
        i: u32,
        c: u64,
        delta: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_degree: Option<u32>,
    },
    Kuozhan {
        k: u64,
        gamma: u64,
        beta: u64,
    },
    TraceGadget {
        g0: MapSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_degree: Option<u32>,
    },
    ZeroTranslator {
        beta: BetaSpec,
        #[serde(rename = "G")]
        big_g: MapSpec,
        gamma: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_degree: Option<u32>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub field: FieldSpec,
    #[serde(flatten)]
    pub params: FamilyParams,
}

#[derive(Clone, Debug)]
pub enum Family {
    Mul(MulFamily),
    Add(AddFamily),
    Hybrid(HybridScaleFamily),
    Translator(TranslatorFamily),
    Niu(NiuInstance),
}

fn set_of(ctx: &FieldCtx, v: &Option<Vec<u64>>) -> Result<Option<ElemSet>> {
    v.as_ref()
        .map(|v| v.iter().map(|&i| ctx.elem(i)).collect::<Result<ElemSet>>())
        .transpose()
}

impl FamilyDescriptor {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn family_name(&self) -> &'static str {
        match self.params {
            FamilyParams::Mul { .. } => "mul",
            FamilyParams::Add { .. } => "add",
            FamilyParams::Hybrid { .. } => "hybrid",
            FamilyParams::Translator { .. } => "translator",
            FamilyParams::Niu { .. } => "niu",
            FamilyParams::Kuozhan { .. } => "kuozhan",
            FamilyParams::TraceGadget { .. } => "trace_gadget",
            FamilyParams::ZeroTranslator { .. } => "zero_translator",
        }
    }

    pub fn build(&self) -> Result<(Arc<FieldCtx>, Family)> {
        let ctx = Arc::new(FieldCtx::build(&self.field)?);
        let fam = self.build_in(&ctx)?;
        Ok((ctx, fam))
    }

    pub fn build_in(&self, ctx: &Arc<FieldCtx>) -> Result<Family> {
        let el = |i: u64| ctx.elem(i);
        Ok(match &self.params {
            FamilyParams::Mul { r, s, h, .. } => Family::Mul(MulFamily::new(ctx, *r, *s, h.table(ctx)?)?),
            FamilyParams::Add {
                g,
                g0,
                lambda,
                lambda_bar,
                g_inv,
            } => {
                let lam = lambda.table(ctx)?;
                let lam_bar = match lambda_bar {
                    Some(m) => m.table(ctx)?,
                    None => lam.clone(),
                };
                let mut fam = AddFamily::new(ctx, g.table(ctx)?, g0.table(ctx)?, lam, lam_bar)?;
                if let Some(gi) = g_inv {
                    fam = fam.with_g_inverse(gi.table(ctx)?)?;
                }
                Family::Add(fam)
            }
            FamilyParams::Hybrid { h, k, lambda, s } => Family::Hybrid(HybridScaleFamily::new(
                ctx,
                h.table(ctx)?,
                k.table(ctx)?,
                lambda.table(ctx)?,
                set_of(ctx, s)?,
            )?),
            FamilyParams::Translator {
                lambda,
                gamma,
                b,
                big_g,
                s,
            } => Family::Translator(TranslatorFamily::new(
                ctx,
                lambda.table(ctx)?,
                set_of(ctx, s)?,
                el(*gamma)?,
                b.map(el).transpose()?,
                big_g.table(ctx)?,
            )?),
            FamilyParams::Niu {
                g,
                i,
                c,
                delta,
                base_degree,
            } => Family::Niu(NiuInstance::new(
                ctx,
                g.table(ctx)?,
                base_degree.unwrap_or(1),
                *i,
                el(*c)?,
                el(*delta)?,
            )?),
            FamilyParams::Kuozhan { k, gamma, beta } => {
                Family::Mul(make_kuozhan(ctx, *k, el(*gamma)?, el(*beta)?)?)
            }
            FamilyParams::TraceGadget { g0, base_degree } => Family::Add(make_trace_gadget(
                ctx,
                base_degree.unwrap_or(1),
                g0.table(ctx)?,
            )?),
            FamilyParams::ZeroTranslator {
                beta,
                big_g,
                gamma,
                base_degree,
            } => {
                let beta = match beta {
                    BetaSpec::Single(v) => {
                        BetaCoeffs::Single(v.iter().map(|&i| el(i)).collect::<Result<_>>()?)
                    }
                    BetaSpec::Double(m) => BetaCoeffs::Double(
                        m.iter()
                            .map(|row| row.iter().map(|&i| el(i)).collect::<Result<_>>())
                            .collect::<Result<_>>()?,
                    ),
                };
                Family::Translator(make_zero_translator(
                    ctx,
                    base_degree.unwrap_or(1),
                    &beta,
                    big_g.table(ctx)?,
                    el(*gamma)?,
                )?)
            }
        })
    }

    /// `(n_exp, t)` when the descriptor asks for the multiplicative closed form.
    pub fn closed_form_request(&self) -> Option<(i64, Option<u64>)> {
        match &self.params {
            FamilyParams::Mul { n_exp: Some(n), t, .. } => Some((*n, *t)),
            _ => None,
        }
    }
}

impl Family {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        match self {
            Family::Mul(f) => f.ctx(),
            Family::Add(f) => f.ctx(),
            Family::Hybrid(f) => f.ctx(),
            Family::Translator(f) => f.ctx(),
            Family::Niu(f) => f.ctx(),
        }
    }

    pub fn f_table(&self) -> &[Elem] {
        match self {
            Family::Mul(f) => f.f_table(),
            Family::Add(f) => f.f_table(),
            Family::Hybrid(f) => f.f_table(),
            Family::Translator(f) => f.f_table(),
            Family::Niu(f) => f.f_table(),
        }
    }

    /// The family's own inverse formula, certified against `f`.
    pub fn invert(&self) -> Result<Inverse> {
        match self {
            Family::Mul(f) => invert_multiplicative(f),
            Family::Add(f) => invert_additive(f),
            Family::Hybrid(f) => invert_hybrid_scale(f),
            Family::Translator(f) => invert_translator(f),
            Family::Niu(f) => invert_niu(f),
        }
    }

    pub fn diagram(&self) -> Result<GenericDiagram> {
        match self {
            Family::Mul(f) => mul_diagram(f),
            Family::Add(f) => add_diagram(f),
            Family::Hybrid(f) => hybrid_diagram(f),
            Family::Translator(f) => translator_diagram(f),
            Family::Niu(f) => niu_diagram(f),
        }
    }

    /// `None` for the subfield-shift family, which has no criterion.
    pub fn involution(&self) -> Option<Result<CriterionReport>> {
        match self {
            Family::Mul(f) => Some(Ok(check_mul_involution(f))),
            Family::Add(f) => Some(check_add_involution(f)),
            Family::Hybrid(f) => Some(Ok(check_hybrid_involution(f))),
            Family::Translator(f) => Some(check_translator_involution(f)),
            Family::Niu(_) => None,
        }
    }

    pub fn closed_form(&self, n_exp: i64, t: Option<u64>) -> Result<ClosedFormMul> {
        match self {
            Family::Mul(f) => closed_form_mul(f, n_exp, t),
            _ => Err(Error::condition("closed form exists only for mul", None)),
        }
    }
}

/// An AGW diagram `lambda_bar ∘ f = g ∘ lambda`. `S` and `S_bar` default to
/// the images of `lambda` and `lambda_bar`; `lambda_bar` defaults to `lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDescriptor {
    pub field: FieldSpec,
    pub f: MapSpec,
    pub lambda: MapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_bar: Option<MapSpec>,
    pub g: MapSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_bar: Option<Vec<u64>>,
}

impl DiagramDescriptor {
    pub fn build(&self) -> Result<(Arc<FieldCtx>, AgwDiagram)> {
        let ctx = Arc::new(FieldCtx::build(&self.field)?);
        let lambda = self.lambda.table(&ctx)?;
        let lambda_bar = match &self.lambda_bar {
            Some(m) => m.table(&ctx)?,
            None => lambda.clone(),
        };
        let s = set_of(&ctx, &self.s)?.unwrap_or_else(|| ElemSet::image_of(&lambda));
        let s_bar = set_of(&ctx, &self.s_bar)?.unwrap_or_else(|| ElemSet::image_of(&lambda_bar));
        let g = SubsetMap::restrict(s.clone(), &self.g.table(&ctx)?);
        let d = AgwDiagram {
            f: self.f.table(&ctx)?,
            lambda,
            lambda_bar,
            s,
            s_bar,
            g,
        };
        Ok((ctx, d))
    }
}
