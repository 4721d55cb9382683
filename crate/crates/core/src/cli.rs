//! The `ppinv` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::agw::generic_inverse;
use crate::descriptor::{BetaSpec, DiagramDescriptor, FamilyDescriptor, FamilyParams, MapSpec};
use crate::error::Error;
use crate::gf::{divisors, FieldCtx, FieldSpec};
use crate::json;
use crate::perm::{agw_verify, first_collision, PermTable};
use crate::poly::{interpolate, parse_poly_expr};

#[derive(Parser, Debug)]
#[command(name = "ppinv", version, about = "Permutation polynomials over finite fields: inverses and involutions")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Mul,
    Add,
    Hybrid,
    Translator,
    Niu,
    Kuozhan,
    TraceGadget,
    ZeroTranslator,
}

impl FamilyKind {
    fn name(self) -> &'static str {
        match self {
            FamilyKind::Mul => "mul",
            FamilyKind::Add => "add",
            FamilyKind::Hybrid => "hybrid",
            FamilyKind::Translator => "translator",
            FamilyKind::Niu => "niu",
            FamilyKind::Kuozhan => "kuozhan",
            FamilyKind::TraceGadget => "trace_gadget",
            FamilyKind::ZeroTranslator => "zero_translator",
        }
    }

    /// The family a constructor produces.
    fn base(name: &str) -> &str {
        match name {
            "kuozhan" => "mul",
            "trace_gadget" => "add",
            "zero_translator" => "translator",
            other => other,
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long)]
    n: Option<u32>,
    /// Monic defining polynomial, coefficients low to high, comma separated.
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

#[derive(Args, Debug, Clone, Default)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    /// Family descriptor JSON file (carries its own field).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    h: Option<String>,
    /// Map for hybrid, integer for kuozhan.
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    g0: Option<String>,
    #[arg(long)]
    g_inv: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    lambda_bar: Option<String>,
    #[arg(long = "G", alias = "big-g")]
    big_g: Option<String>,
    #[arg(long)]
    gamma: Option<u64>,
    #[arg(long)]
    b: Option<u64>,
    #[arg(long)]
    beta: Option<String>,
    /// Scalar set `S`, comma separated element indices.
    #[arg(long, value_delimiter = ',')]
    scalars: Option<Vec<u64>>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long)]
    delta: Option<u64>,
    #[arg(long)]
    base_degree: Option<u32>,
    /// Exponent `n` with `h(z)^s = z^n`, requests the closed form (mul).
    #[arg(long, allow_hyphen_values = true)]
    n_exp: Option<i64>,
    /// Inverse exponent for the closed form.
    #[arg(long)]
    t: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a field summary.
    Field {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Decide whether an expression permutes the field.
    CheckPp {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        expr: String,
    },
    /// Inverse of a family member: table, polynomial, certification flag.
    Invert {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        family: FamilyArgs,
        /// Use the generic phi^{-1} ∘ psi^{-1} ∘ phi_bar pipeline.
        #[arg(long)]
        generic: bool,
    },
    /// Involution criterion report.
    Involution {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Check an AGW diagram lambda_bar ∘ f = g ∘ lambda.
    AgwVerify {
        #[command(flatten)]
        field: FieldArgs,
        /// Diagram descriptor JSON file.
        #[arg(long)]
        file: Option<PathBuf>,
        /// `f`.
        #[arg(long)]
        expr: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        lambda_bar: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long, value_delimiter = ',')]
        scalars: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',')]
        scalars_bar: Option<Vec<u64>>,
    },
    /// Interpolating polynomial of a value table.
    Interpolate {
        #[command(flatten)]
        field: FieldArgs,
        /// Values at 0, 1, ..., q-1, comma separated or as a JSON list.
        #[arg(long)]
        table: String,
    },
    /// Bounded scan for valid family instances.
    Search {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum)]
        family: FamilyKind,
        /// Number of candidates to examine.
        #[arg(long)]
        limit: u64,
        /// Sample candidates at random with this seed instead of scanning in order.
        #[arg(long)]
        seed: Option<u64>,
        /// Stop after this many hits.
        #[arg(long, default_value_t = 10)]
        max_found: usize,
    },
}

const SEARCH_LIMIT_CAP: u64 = 10_000_000;

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_mathematical() {
            Failure::Math(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn field_spec(a: &FieldArgs) -> std::result::Result<FieldSpec, Failure> {
    match (a.p, a.n) {
        (Some(p), Some(n)) => Ok(FieldSpec {
            p,
            n,
            modulus: a.modulus.clone(),
        }),
        (None, _) => Err(usage("missing --p")),
        (_, None) => Err(usage("missing --n")),
    }
}

fn field_ctx(a: &FieldArgs) -> std::result::Result<Arc<FieldCtx>, Failure> {
    Ok(Arc::new(FieldCtx::build(&field_spec(a)?)?))
}

fn has_field_flags(a: &FieldArgs) -> bool {
    a.p.is_some() || a.n.is_some() || a.modulus.is_some()
}

fn read_file(path: &PathBuf) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("--file {}: {e}", path.display())))
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.clone().ok_or_else(|| usage(format!("missing --{flag}")))
}

fn expr(v: &Option<String>, flag: &str) -> std::result::Result<MapSpec, Failure> {
    need(v, flag).map(MapSpec::Expr)
}

fn parse_beta(text: &str) -> std::result::Result<BetaSpec, Failure> {
    let t = text.trim();
    if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| usage(format!("--beta: {e}")))
    } else {
        t.split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(BetaSpec::Single)
            .map_err(|e| usage(format!("--beta: {e}")))
    }
}

fn descriptor(field: &FieldArgs, a: &FamilyArgs) -> std::result::Result<FamilyDescriptor, Failure> {
    if let Some(path) = &a.file {
        if has_field_flags(field) {
            return Err(usage("give the field either by --p/--n or inside --file, not both"));
        }
        let d = FamilyDescriptor::from_json(&read_file(path)?)
            .map_err(|e| usage(format!("--file {}: {e}", path.display())))?;
        if let Some(kind) = a.family {
            let (want, got) = (kind.name(), d.family_name());
            if want != got && FamilyKind::base(got) != want {
                return Err(usage(format!("--family {want} does not match file family {got}")));
            }
        }
        return Ok(d);
    }
    let kind = need(&a.family, "family")?;
    let params = match kind {
        FamilyKind::Mul => FamilyParams::Mul {
            r: need(&a.r, "r")?,
            s: need(&a.s, "s")?,
            h: expr(&a.h, "h")?,
            n_exp: a.n_exp,
            t: a.t,
        },
        FamilyKind::Add => FamilyParams::Add {
            g: expr(&a.g, "g")?,
            g0: expr(&a.g0, "g0")?,
            lambda: expr(&a.lambda, "lambda")?,
            lambda_bar: a.lambda_bar.clone().map(MapSpec::Expr),
            g_inv: a.g_inv.clone().map(MapSpec::Expr),
        },
        FamilyKind::Hybrid => FamilyParams::Hybrid {
            h: expr(&a.h, "h")?,
            k: expr(&a.k, "k")?,
            lambda: expr(&a.lambda, "lambda")?,
            s: a.scalars.clone(),
        },
        FamilyKind::Translator => FamilyParams::Translator {
            lambda: expr(&a.lambda, "lambda")?,
            gamma: need(&a.gamma, "gamma")?,
            b: a.b,
            big_g: expr(&a.big_g, "G")?,
            s: a.scalars.clone(),
        },
        FamilyKind::Niu => FamilyParams::Niu {
            g: expr(&a.g, "g")?,
            i: need(&a.i, "i")?,
            c: need(&a.c, "c")?,
            delta: need(&a.delta, "delta")?,
            base_degree: a.base_degree,
        },
        FamilyKind::Kuozhan => FamilyParams::Kuozhan {
            k: need(&a.k, "k")?
                .trim()
                .parse()
                .map_err(|e| usage(format!("--k: {e}")))?,
            gamma: need(&a.gamma, "gamma")?,
            beta: need(&a.beta, "beta")?
                .trim()
                .parse()
                .map_err(|e| usage(format!("--beta: {e}")))?,
        },
        FamilyKind::TraceGadget => FamilyParams::TraceGadget {
            g0: expr(&a.g0, "g0")?,
            base_degree: a.base_degree,
        },
        FamilyKind::ZeroTranslator => FamilyParams::ZeroTranslator {
            beta: parse_beta(&need(&a.beta, "beta")?)?,
            big_g: expr(&a.big_g, "G")?,
            gamma: need(&a.gamma, "gamma")?,
            base_degree: a.base_degree,
        },
    };
    Ok(FamilyDescriptor {
        field: field_spec(field)?,
        params,
    })
}

fn indices(t: &[crate::gf::Elem]) -> Vec<u32> {
    t.iter().map(|e| e.0).collect()
}

fn cmd_field(field: &FieldArgs) -> Outcome {
    let ctx = field_ctx(field)?;
    Ok((
        json!({
            "p": ctx.p(),
            "n": ctx.n(),
            "q": ctx.q(),
            "modulus": ctx.modulus(),
            "primitive_element": ctx.primitive_element().0,
        }),
        true,
    ))
}

fn cmd_check_pp(field: &FieldArgs, e: &str) -> Outcome {
    let ctx = field_ctx(field)?;
    let t = parse_poly_expr(e, &ctx)?.tabulate();
    let collision = first_collision(&t, ctx.q());
    Ok((
        json!({
            "is_permutation": collision.is_none(),
            "collision": collision.map(|(a, b)| vec![a, b]),
        }),
        collision.is_none(),
    ))
}

fn cmd_invert(field: &FieldArgs, a: &FamilyArgs, generic: bool) -> Outcome {
    let d = descriptor(field, a)?;
    let (_, fam) = d.build()?;
    let (table, certified) = if generic {
        let f = PermTable::as_permutation(fam.ctx(), fam.f_table().to_vec())?;
        (generic_inverse(&fam.diagram()?, &f)?, true)
    } else {
        let inv = fam.invert()?;
        (inv.table, inv.certified)
    };
    let mut out = json!({
        "table": indices(table.images()),
        "poly": table.to_poly().to_string(),
        "certified": certified,
    });
    if let Some((n_exp, t)) = d.closed_form_request() {
        let cf = fam.closed_form(n_exp, t)?;
        out["closed_form"] = serde_json::to_value(&cf).expect("plain struct");
    }
    Ok((out, true))
}

fn cmd_involution(field: &FieldArgs, a: &FamilyArgs) -> Outcome {
    let d = descriptor(field, a)?;
    let (_, fam) = d.build()?;
    let rep = fam
        .involution()
        .ok_or_else(|| usage(format!("no involution criterion for family {}", d.family_name())))??;
    let ok = rep.is_involution;
    Ok((serde_json::to_value(rep).expect("plain struct"), ok))
}

#[allow(clippy::too_many_arguments)]
fn cmd_agw_verify(
    field: &FieldArgs,
    file: &Option<PathBuf>,
    f: &Option<String>,
    lambda: &Option<String>,
    lambda_bar: &Option<String>,
    g: &Option<String>,
    scalars: &Option<Vec<u64>>,
    scalars_bar: &Option<Vec<u64>>,
) -> Outcome {
    let d = match file {
        Some(path) => {
            if has_field_flags(field) {
                return Err(usage("give the field either by --p/--n or inside --file, not both"));
            }
            serde_json::from_str::<DiagramDescriptor>(&read_file(path)?)
                .map_err(|e| usage(format!("--file {}: {e}", path.display())))?
        }
        None => DiagramDescriptor {
            field: field_spec(field)?,
            f: expr(f, "expr")?,
            lambda: expr(lambda, "lambda")?,
            lambda_bar: lambda_bar.clone().map(MapSpec::Expr),
            g: expr(g, "g")?,
            s: scalars.clone(),
            s_bar: scalars_bar.clone(),
        },
    };
    let (_, dg) = d.build()?;
    let r = agw_verify(&dg)?;
    let mut out = serde_json::to_value(r).expect("plain struct");
    out["premises_hold"] = r.premises_hold().into();
    out["lemma_consistent"] = r.lemma_consistent().into();
    Ok((out, r.f_bijective))
}

fn cmd_interpolate(field: &FieldArgs, table: &str) -> Outcome {
    let ctx = field_ctx(field)?;
    let t = table.trim();
    let raw: Vec<u64> = if t.starts_with('[') {
        serde_json::from_str(t).map_err(|e| usage(format!("--table: {e}")))?
    } else {
        t.split(',')
            .map(|s| s.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| usage(format!("--table: {e}")))?
    };
    let values = MapSpec::Table(raw).table(&ctx)?;
    let poly = interpolate(&ctx, &values)?;
    Ok((
        json!({
            "poly": poly.to_string(),
            "coeffs": indices(poly.coeffs()),
        }),
        true,
    ))
}

/// Mixed-radix candidate space for `search`.
struct Space {
    radices: Vec<u64>,
}

impl Space {
    fn size(&self) -> u64 {
        self.radices
            .iter()
            .try_fold(1u64, |acc, &r| acc.checked_mul(r))
            .unwrap_or(u64::MAX)
    }

    fn digits(&self, mut idx: u64) -> Vec<u64> {
        self.radices
            .iter()
            .map(|&r| {
                let d = idx % r;
                idx /= r;
                d
            })
            .collect()
    }
}

fn cmd_search(field: &FieldArgs, kind: FamilyKind, limit: u64, seed: Option<u64>, max_found: usize) -> Outcome {
    if limit == 0 || limit > SEARCH_LIMIT_CAP {
        return Err(usage(format!("--limit must be between 1 and {SEARCH_LIMIT_CAP}")));
    }
    let spec = field_spec(field)?;
    let ctx = Arc::new(FieldCtx::build(&spec)?);
    let q = ctx.q() as u64;
    let n = ctx.n();
    let proper: Vec<u32> = divisors(n as u64)
        .into_iter()
        .map(|d| d as u32)
        .filter(|&d| d < n || n == 1)
        .collect();
    let sub_of = |d: u32| ctx.subfield(d).expect("d divides n");
    let divs = divisors(q - 1);
    let max_sub = sub_of(*proper.last().expect("nonempty")).len() as u64;
    // each builder maps digits to a descriptor, or None for an out-of-range digit
    type Build<'a> = Box<dyn Fn(&[u64]) -> Option<FamilyParams> + 'a>;
    let (space, build): (Space, Build) = match kind {
        FamilyKind::Mul => (
            Space {
                radices: vec![divs.len() as u64, q - 1, q - 1, q],
            },
            Box::new(|d: &[u64]| {
                Some(FamilyParams::Mul {
                    r: d[1] + 1,
                    s: divs[d[0] as usize],
                    h: MapSpec::Expr(format!("{}*x + {}", d[3], d[2] + 1)),
                    n_exp: None,
                    t: None,
                })
            }),
        ),
        FamilyKind::Add => (
            Space {
                radices: vec![proper.len() as u64, n as u64, max_sub, q],
            },
            Box::new(|d: &[u64]| {
                let deg = proper[d[0] as usize];
                let sub = sub_of(deg);
                let c = *sub.get(d[2] as usize + 1)?;
                Some(FamilyParams::Add {
                    g: MapSpec::Expr(format!("{}*x^{}", c.0, (ctx.p() as u64).pow(d[1] as u32))),
                    g0: MapSpec::Expr(format!("{}*x", d[3])),
                    lambda: MapSpec::Expr(format!("Tr{{{deg}}}(x)")),
                    lambda_bar: None,
                    g_inv: None,
                })
            }),
        ),
        FamilyKind::Hybrid => (
            Space {
                radices: vec![proper.len() as u64, q - 1, max_sub, max_sub],
            },
            Box::new(|d: &[u64]| {
                let deg = proper[d[0] as usize];
                let sub = sub_of(deg);
                let c0 = *sub.get(d[2] as usize + 1)?;
                let c1 = *sub.get(d[3] as usize)?;
                let m = d[1] + 1;
                Some(FamilyParams::Hybrid {
                    h: MapSpec::Expr(format!("{}*x + {}", c1.0, c0.0)),
                    k: MapSpec::Expr(format!("x^{m}")),
                    lambda: MapSpec::Expr(format!("Tr{{{deg}}}(x^{m})")),
                    s: Some(sub.iter().map(|e| e.0 as u64).collect()),
                })
            }),
        ),
        FamilyKind::Translator => (
            Space {
                radices: vec![proper.len() as u64, q - 1, max_sub, max_sub],
            },
            Box::new(|d: &[u64]| {
                let deg = proper[d[0] as usize];
                let sub = sub_of(deg);
                let c0 = *sub.get(d[2] as usize)?;
                let c1 = *sub.get(d[3] as usize)?;
                Some(FamilyParams::Translator {
                    lambda: MapSpec::Expr(format!("Tr{{{deg}}}(x)")),
                    gamma: d[1] + 1,
                    b: None,
                    big_g: MapSpec::Expr(format!("{}*x + {}", c1.0, c0.0)),
                    s: Some(sub.iter().map(|e| e.0 as u64).collect()),
                })
            }),
        ),
        other => {
            return Err(usage(format!(
                "search supports mul, add, hybrid and translator, not {}",
                other.name()
            )))
        }
    };
    let total = space.size();
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut examined = 0u64;
    let mut found = Vec::new();
    while examined < limit && found.len() < max_found {
        let idx = match rng.as_mut() {
            Some(r) => r.gen_range(0..total),
            None if examined < total => examined,
            None => break,
        };
        examined += 1;
        let Some(params) = build(&space.digits(idx)) else {
            continue;
        };
        let d = FamilyDescriptor {
            field: spec.clone(),
            params,
        };
        if d.build_in(&ctx).is_ok() {
            found.push(serde_json::to_value(&d).expect("plain struct"));
        }
    }
    Ok((
        json!({
            "family": kind.name(),
            "limit": limit,
            "examined": examined,
            "space": total,
            "exhausted": seed.is_none() && examined >= total,
            "found": found,
        }),
        true,
    ))
}

fn render(v: &Value, format: Format) -> String {
    match (format, v) {
        (Format::Text, Value::Object(m)) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {}", json::to_string(other)),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        _ => json::to_string(v),
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Field { field } => cmd_field(field),
        Command::CheckPp { field, expr } => cmd_check_pp(field, expr),
        Command::Invert {
            field,
            family,
            generic,
        } => cmd_invert(field, family, *generic),
        Command::Involution { field, family } => cmd_involution(field, family),
        Command::AgwVerify {
            field,
            file,
            expr,
            lambda,
            lambda_bar,
            g,
            scalars,
            scalars_bar,
        } => cmd_agw_verify(field, file, expr, lambda, lambda_bar, g, scalars, scalars_bar),
        Command::Interpolate { field, table } => cmd_interpolate(field, table),
        Command::Search {
            field,
            family,
            limit,
            seed,
            max_found,
        } => cmd_search(field, *family, *limit, *seed, *max_found),
    }
}

/// Runs one invocation; returns the exit code (0 ok, 1 negative verdict or
/// mathematical rejection, 2 usage or parse error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(&cli) {
        Ok((value, ok)) => {
            let _ = writeln!(out, "{}", render(&value, cli.format));
            if ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Math(e)) => {
            let value = json!({
                "error": e.name(),
                "message": e.to_string(),
                "witness": e.witness(),
            });
            let _ = writeln!(out, "{}", render(&value, cli.format));
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
