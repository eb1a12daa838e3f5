//! Command-line surface: coefficients by any of the three routes, tables,
//! tableau dumps, verification suites and slide traces.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on bad
//! flags or invalid shapes.

pub mod verify;

use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::eqinc::ty_terms;
use crate::error::{Error, Result};
use crate::genomic::{Content, GenomicTableau};
use crate::jdt::{bundled_tableaux, slide_trace, GoodTableau, TraceStage};
use crate::laurent::LaurentPoly;
use crate::oracles::recurrence_solve;
use crate::rule::{structure_constant, z_certificate, ZFactor};
use crate::shapes::{GrassCtx, Partition, SkewShape};
use crate::weights::{weight, WeightContext, WeightMode};

/// Top-level command line.
#[derive(Parser, Debug)]
#[command(name = "kgrass", version, about = "Equivariant K-theory structure constants of Grassmannians")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print one structure constant K_{λ,μ}^ν.
    Coeff(CoeffArgs),
    /// Print every nonzero K_{λ,μ}^ν for fixed λ and μ.
    Table(TableArgs),
    /// Dump the tableaux summed by a route, with their weights, as JSON lines.
    Tableaux(TableauxArgs),
    /// Run a verification suite; exit 1 if any check fails.
    Verify(verify::VerifyArgs),
    /// Trace the slides of the bundled tableaux of ν/ρ into ρ/λ.
    SlideTrace(SlideTraceArgs),
}

/// The Grassmannian `Gr_k(C^n)`.
#[derive(Args, Debug, Clone, Copy)]
pub struct CtxArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

impl CtxArgs {
    fn ctx(self) -> Result<GrassCtx> {
        GrassCtx::new(self.k, self.n)
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Human-readable polynomial in t_1..t_n.
    Text,
    /// Canonical JSON of the Laurent polynomial.
    LaurentJson,
    /// JSON of the expansion in z_i = t_i/t_{i+1} - 1.
    ZPoly,
    /// One LaTeX line per tableau with its factored weight.
    Latex,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Sum of genomic tableau weights.
    Rule,
    /// The key recurrence seeded by set-valued tableaux.
    Recurrence,
    /// Equivariant increasing tableaux and K-theoretic rectification.
    Ty,
}

#[derive(Args, Debug)]
pub struct CoeffArgs {
    #[command(flatten)]
    pub ctx: CtxArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Route::Rule)]
    pub route: Route,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub ctx: CtxArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Route::Rule)]
    pub route: Route,
}

#[derive(Args, Debug)]
pub struct TableauxArgs {
    #[command(flatten)]
    pub ctx: CtxArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    /// `rule` dumps genomic tableaux with d, factors and weight; `ty` dumps
    /// the sgn/wt_K ledger of the increasing tableaux.
    #[arg(long, value_enum, default_value_t = Route::Rule)]
    pub route: Route,
    /// Dump the bundled tableaux with their bundled weights instead.
    #[arg(long)]
    pub bundled: bool,
}

#[derive(Args, Debug)]
pub struct SlideTraceArgs {
    #[command(flatten)]
    pub ctx: CtxArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Inner shape of the tableaux being slid; ρ/λ are the slide boxes.
    #[arg(long, allow_hyphen_values = true)]
    pub rho: String,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    #[arg(long, allow_hyphen_values = true)]
    pub nu: String,
    /// Trace only the tableau with this index among the bundled tableaux.
    #[arg(long)]
    pub index: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

/// Parses arguments and runs, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut out = String::new();
    let code = match run(&cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    code
}

/// Runs one command, appending its output to `out`.
pub fn run(cmd: &Command, out: &mut String) -> Result<i32> {
    match cmd {
        Command::Coeff(a) => run_coeff(a, out).map(|_| 0),
        Command::Table(a) => run_table(a, out).map(|_| 0),
        Command::Tableaux(a) => run_tableaux(a, out).map(|_| 0),
        Command::Verify(a) => {
            let report = verify::run_verify(a)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json()).expect("json")).expect("write");
            if a.timing {
                eprintln!("{}: {:.3}s", report.suite, report.elapsed.as_secs_f64());
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::SlideTrace(a) => run_slide_trace(a, out).map(|_| 0),
    }
}

fn part(s: &str) -> Result<Partition> {
    Partition::parse(s)
}

fn checked(p: Partition, ctx: GrassCtx) -> Result<Partition> {
    if p.fits(&ctx) {
        Ok(p)
    } else {
        Err(Error::Shape(format!("{p} does not fit in the {}x{} rectangle", ctx.k(), ctx.cols())))
    }
}

/// Comma-separated form of a partition, as accepted on the command line.
pub fn part_str(p: &Partition) -> String {
    p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `K_{λ,μ}^ν` by the chosen route.
pub fn coefficient(route: Route, lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    match route {
        Route::Rule => structure_constant(lambda, mu, nu, ctx),
        Route::Recurrence => recurrence_solve(lambda, mu, nu, ctx),
        Route::Ty => crate::eqinc::ty_coefficient(lambda, mu, nu, ctx),
    }
}

fn run_coeff(a: &CoeffArgs, out: &mut String) -> Result<()> {
    let ctx = a.ctx.ctx()?;
    let (lambda, mu, nu) = (checked(part(&a.lambda)?, ctx)?, checked(part(&a.mu)?, ctx)?, checked(part(&a.nu)?, ctx)?);
    if a.format == Format::Latex && a.route == Route::Rule {
        for line in latex_lines(&lambda, &mu, &nu, ctx)? {
            writeln!(out, "{line}").expect("write");
        }
        return Ok(());
    }
    let k = coefficient(a.route, &lambda, &mu, &nu, ctx)?;
    writeln!(out, "{}", render(&k, a.format)?).expect("write");
    Ok(())
}

fn render(k: &LaurentPoly, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => k.to_string(),
        Format::LaurentJson => k.to_json_string(),
        Format::ZPoly => k.z_expand()?.to_json().to_string(),
        Format::Latex => latex_poly(k),
    })
}

fn run_table(a: &TableArgs, out: &mut String) -> Result<()> {
    let ctx = a.ctx.ctx()?;
    let (lambda, mu) = (checked(part(&a.lambda)?, ctx)?, checked(part(&a.mu)?, ctx)?);
    for nu in ctx.partitions() {
        let k = coefficient(a.route, &lambda, &mu, &nu, ctx)?;
        if k.is_zero() {
            continue;
        }
        let line = match a.format {
            Format::Text | Format::Latex => format!("{nu}\t{}", render(&k, a.format)?),
            Format::LaurentJson => json!({"nu": part_str(&nu), "coefficient": k.to_json()}).to_string(),
            Format::ZPoly => json!({"nu": part_str(&nu), "coefficient": k.z_expand()?.to_json()}).to_string(),
        };
        writeln!(out, "{line}").expect("write");
    }
    Ok(())
}

fn run_tableaux(a: &TableauxArgs, out: &mut String) -> Result<()> {
    let ctx = a.ctx.ctx()?;
    let (lambda, mu, nu) = (checked(part(&a.lambda)?, ctx)?, checked(part(&a.mu)?, ctx)?, checked(part(&a.nu)?, ctx)?);
    let wc = WeightContext::new(ctx, Content::from_partition(&mu));
    match (a.route, a.bundled) {
        (_, true) => {
            if !nu.contains(&lambda) {
                return Ok(());
            }
            let shape = SkewShape::new(ctx, nu.clone(), lambda.clone())?;
            for t in bundled_tableaux(&shape, &Content::from_partition(&mu)) {
                let w = weight(&t, &wc, WeightMode::Bundled)?;
                let virtuals: Vec<Value> = t
                    .virtual_labels()
                    .iter()
                    .flat_map(|(e, gs)| gs.iter().map(move |g| json!({"edge": [e.row, e.col], "gene": g.to_string()})))
                    .collect();
                let line = json!({"tableau": t.to_json(), "virtuals": virtuals, "weight": w.to_json()});
                writeln!(out, "{line}").expect("write");
            }
        }
        (Route::Rule, false) => {
            for cert in z_certificate(&lambda, &mu, &nu, ctx)? {
                let factors: Vec<String> = cert.factors.iter().map(|f| factor_text(*f)).collect();
                let line = json!({
                    "tableau": cert.tableau.to_json(),
                    "d": cert.d,
                    "factors": factors,
                    "weight": weight(&cert.tableau, &wc, WeightMode::Plain)?.to_json(),
                });
                writeln!(out, "{line}").expect("write");
            }
        }
        (Route::Ty, false) => {
            for term in ty_terms(&lambda, &mu, &nu, ctx)? {
                let sgn = crate::eqinc::ty_sign(&term.tableau);
                let line = json!({"tableau": term.tableau.to_json(), "sgn": sgn, "signed_wt_K": term.weight.to_json()});
                writeln!(out, "{line}").expect("write");
            }
        }
        (Route::Recurrence, false) => {
            return Err(Error::Parse("the recurrence route has no tableaux; use rule or ty".into()));
        }
    }
    Ok(())
}

fn factor_text(f: ZFactor) -> String {
    match f {
        ZFactor::NegZ(i, j) => format!("1 - t{i}/t{j}"),
        ZFactor::OnePlusZ(i, j) => format!("t{i}/t{j}"),
    }
}

/// One line per rule tableau: its sign and factored weight, then the sum.
fn latex_lines(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<Vec<String>> {
    let mut lines = Vec::new();
    let mut total = LaurentPoly::zero(ctx.n());
    for cert in z_certificate(lambda, mu, nu, ctx)? {
        let sign = if cert.d % 2 == 0 { "+" } else { "-" };
        let body: Vec<String> = cert
            .factors
            .iter()
            .map(|f| match *f {
                ZFactor::NegZ(i, j) => format!("\\left(1 - \\frac{{t_{{{i}}}}}{{t_{{{j}}}}}\\right)"),
                ZFactor::OnePlusZ(i, j) => format!("\\frac{{t_{{{i}}}}}{{t_{{{j}}}}}"),
            })
            .collect();
        let body = if body.is_empty() { "1".to_string() } else { body.join(" ") };
        lines.push(format!("{sign} {body} % {}", cert.tableau));
        total += &cert.value(ctx.n())?;
    }
    lines.push(format!("= {}", latex_poly(&total)));
    Ok(lines)
}

/// LaTeX for a Laurent polynomial, terms in the order of its text form.
pub fn latex_poly(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    let mut terms: Vec<_> = p.terms().collect();
    terms.reverse();
    for (k, (exp, c)) in terms.into_iter().enumerate() {
        let neg = c.sign() == num_bigint::Sign::Minus;
        let mag = c.magnitude().to_string();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let vars: Vec<String> = exp
            .iter()
            .enumerate()
            .filter(|(_, e)| **e != 0)
            .map(|(i, e)| if *e == 1 { format!("t_{{{}}}", i + 1) } else { format!("t_{{{}}}^{{{e}}}", i + 1) })
            .collect();
        if vars.is_empty() || mag != "1" {
            s.push_str(&mag);
        }
        s.push_str(&vars.join(" "));
    }
    s
}

fn run_slide_trace(a: &SlideTraceArgs, out: &mut String) -> Result<()> {
    let ctx = a.ctx.ctx()?;
    let lambda = checked(part(&a.lambda)?, ctx)?;
    let rho = checked(part(&a.rho)?, ctx)?;
    let mu = checked(part(&a.mu)?, ctx)?;
    let nu = checked(part(&a.nu)?, ctx)?;
    let corners = SkewShape::new(ctx, rho.clone(), lambda.clone())?.boxes();
    let shape = SkewShape::new(ctx, nu.clone(), rho.clone())?;
    let all = bundled_tableaux(&shape, &Content::from_partition(&mu));
    let chosen: Vec<(usize, &GenomicTableau)> = match a.index {
        Some(i) => vec![(i, all.get(i).ok_or_else(|| Error::Parse(format!("only {} tableaux", all.len())))?)],
        None => all.iter().enumerate().collect(),
    };
    for (i, t) in chosen {
        let trace = slide_trace(t, &corners)?;
        if a.json {
            let line = json!({"index": i, "tableau": t.to_json(), "stages": trace_json(&trace)});
            writeln!(out, "{line}").expect("write");
        } else {
            writeln!(out, "tableau {i}: {t}").expect("write");
            write_trace_text(&trace, out);
        }
    }
    Ok(())
}

fn good_json(u: &GoodTableau) -> Value {
    json!({"active": u.active().to_string(), "tableau": u.tableau().to_json()})
}

fn trace_json(trace: &[TraceStage]) -> Value {
    let stages: Vec<Value> = trace
        .iter()
        .map(|st| {
            let steps: Vec<Value> = st
                .steps
                .iter()
                .map(|(u, c, step)| {
                    let snakes: Vec<Value> = step
                        .snakes
                        .iter()
                        .map(|(sn, tags)| {
                            let boxes: Vec<[usize; 2]> = sn.boxes.iter().map(|b| [b.row, b.col]).collect();
                            json!({"boxes": boxes, "tags": tags.to_string()})
                        })
                        .collect();
                    let result: Vec<Value> = step
                        .result
                        .iter()
                        .map(|(v, d)| json!({"tableau": good_json(v), "coefficient": d.to_json()}))
                        .collect();
                    json!({"input": good_json(u), "coefficient": c.to_json(), "snakes": snakes, "result": result})
                })
                .collect();
            json!({"gene": st.gene.to_string(), "steps": steps})
        })
        .collect();
    Value::Array(stages)
}

fn write_trace_text(trace: &[TraceStage], out: &mut String) {
    for st in trace {
        writeln!(out, "  swap {}", st.gene).expect("write");
        for (u, c, step) in &st.steps {
            let tags: Vec<String> = step.snakes.iter().map(|(_, t)| t.to_string()).collect();
            writeln!(out, "    [{c}] {u}  snakes {}", tags.join(" ")).expect("write");
            for (v, d) in step.result.iter() {
                writeln!(out, "      -> [{d}] {v}").expect("write");
            }
        }
    }
}
