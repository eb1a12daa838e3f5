//! Verification suites run by `kgrass verify`.
//!
//! Each suite walks a family of instances and records named checks. A
//! failing instance is reported with enough JSON to replay it.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use clap::{Args, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::eqinc::ty_coefficient;
use crate::error::Result;
use crate::genomic::{enumerate_semistandard, random_semistandard, BallotMode, Content, GenomicTableau};
use crate::jdt::{harvest_good_tableaux, lambda_identities, revswap, swap};
use crate::oracles::{basecase_oracle, recurrence_check, recurrence_solve};
use crate::rule::{positivity_sign, structure_constant, z_certificate};
use crate::shapes::{GrassCtx, Partition, SkewShape};

use super::part_str;

/// Failures kept per check.
const MAX_FAILURES: usize = 5;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Recurrence,
    Basecase,
    JdtInverse,
    LambdaIdentity,
    WeightPreservation,
    Positivity,
    TyRule,
    BallotOracle,
    Symmetry,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Recurrence => "recurrence",
            Suite::Basecase => "basecase",
            Suite::JdtInverse => "jdt-inverse",
            Suite::LambdaIdentity => "lambda-identity",
            Suite::WeightPreservation => "weight-preservation",
            Suite::Positivity => "positivity",
            Suite::TyRule => "ty-rule",
            Suite::BallotOracle => "ballot-oracle",
            Suite::Symmetry => "symmetry",
            Suite::All => "all",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    pub suite: Suite,
    /// Defaults to 4 (6 for ballot-oracle).
    #[arg(long)]
    pub n: Option<usize>,
    /// Defaults to 2 (3 for ballot-oracle).
    #[arg(long)]
    pub k: Option<usize>,
    /// Bound on |ν| (on |μ| for ballot-oracle, default 5).
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Random instances for the randomized suites; for lambda-identity and
    /// weight-preservation, a number of seeded triples instead of all.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Print the wall-clock time to stderr.
    #[arg(long)]
    pub timing: bool,
}

/// Pass/fail of one named check with replayable counterexamples.
#[derive(Clone, Debug, Default)]
pub struct Check {
    pub cases: usize,
    pub failures: Vec<Value>,
    pub failed: usize,
}

/// The outcome of a suite.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: String,
    pub params: Value,
    pub checks: BTreeMap<String, Check>,
    pub elapsed: Duration,
}

impl VerifyReport {
    fn new(suite: &str, params: Value) -> Self {
        VerifyReport { suite: suite.into(), params, checks: BTreeMap::new(), elapsed: Duration::ZERO }
    }

    /// Records one case of `name`; `payload` is only built on failure.
    pub fn record(&mut self, name: &str, ok: bool, payload: impl FnOnce() -> Value) {
        let c = self.checks.entry(name.to_string()).or_default();
        c.cases += 1;
        if !ok {
            c.failed += 1;
            if c.failures.len() < MAX_FAILURES {
                c.failures.push(payload());
            }
        }
    }

    fn merge(&mut self, other: VerifyReport) {
        for (name, c) in other.checks {
            let mine = self.checks.entry(format!("{}: {name}", other.suite)).or_default();
            mine.cases += c.cases;
            mine.failed += c.failed;
            mine.failures.extend(c.failures);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|c| c.failed == 0)
    }

    /// Deterministic JSON (no timing).
    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|(name, c)| {
                json!({"check": name, "pass": c.failed == 0, "cases": c.cases, "failed": c.failed, "failures": c.failures})
            })
            .collect();
        json!({"suite": self.suite, "params": self.params, "pass": self.passed(), "checks": checks})
    }
}

fn triple_json(ctx: GrassCtx, l: &Partition, m: &Partition, n: &Partition) -> Value {
    json!({"k": ctx.k(), "n": ctx.n(), "lambda": part_str(l), "mu": part_str(m), "nu": part_str(n)})
}

/// Every `(λ, μ, ν)` in `ctx` with `|ν| ≤ max`.
pub fn triples(ctx: GrassCtx, max: Option<usize>) -> Vec<(Partition, Partition, Partition)> {
    let parts = ctx.partitions();
    let mut out = Vec::new();
    for l in &parts {
        for m in &parts {
            for n in parts.iter().filter(|n| max.is_none_or(|b| n.size() <= b)) {
                out.push((l.clone(), m.clone(), n.clone()));
            }
        }
    }
    out
}

/// Applies `f` to every item on `jobs` threads, keeping the input order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    if jobs <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Runs the suite named in `a`.
pub fn run_verify(a: &VerifyArgs) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut report = match a.suite {
        Suite::All => {
            let mut all = VerifyReport::new("all", params(a, Suite::All)?);
            for s in [
                Suite::Recurrence,
                Suite::Basecase,
                Suite::JdtInverse,
                Suite::LambdaIdentity,
                Suite::WeightPreservation,
                Suite::Positivity,
                Suite::TyRule,
                Suite::BallotOracle,
                Suite::Symmetry,
            ] {
                let sub = VerifyArgs { suite: s, ..a.clone() };
                all.merge(run_one(&sub)?);
            }
            all
        }
        _ => run_one(a)?,
    };
    report.elapsed = start.elapsed();
    Ok(report)
}

fn ctx_of(a: &VerifyArgs) -> Result<GrassCtx> {
    let (dk, dn) = if a.suite == Suite::BallotOracle { (3, 6) } else { (2, 4) };
    GrassCtx::new(a.k.unwrap_or(dk), a.n.unwrap_or(dn))
}

fn params(a: &VerifyArgs, suite: Suite) -> Result<Value> {
    let ctx = ctx_of(&VerifyArgs { suite, ..a.clone() })?;
    Ok(json!({
        "k": ctx.k(),
        "n": ctx.n(),
        "max_size": a.max_size,
        "seed": a.seed,
        "samples": a.samples,
    }))
}

fn run_one(a: &VerifyArgs) -> Result<VerifyReport> {
    let ctx = ctx_of(a)?;
    let mut r = VerifyReport::new(a.suite.name(), params(a, a.suite)?);
    match a.suite {
        Suite::Recurrence => recurrence(&mut r, ctx, a)?,
        Suite::Basecase => basecase(&mut r, ctx, a)?,
        Suite::JdtInverse => jdt_inverse(&mut r, ctx, a)?,
        Suite::LambdaIdentity => identities(&mut r, ctx, a, false)?,
        Suite::WeightPreservation => identities(&mut r, ctx, a, true)?,
        Suite::Positivity => positivity(&mut r, ctx, a)?,
        Suite::TyRule => ty_rule(&mut r, ctx, a)?,
        Suite::BallotOracle => ballot_oracle(&mut r, ctx, a)?,
        Suite::Symmetry => symmetry(&mut r, ctx, a)?,
        Suite::All => unreachable!("handled by run_verify"),
    }
    Ok(r)
}

fn recurrence(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let work: Vec<_> = triples(ctx, a.max_size).into_iter().filter(|(l, _, n)| n.contains(l) && n != l).collect();
    let rule = |l: &Partition, m: &Partition, n: &Partition| structure_constant(l, m, n, ctx);
    let results = par_map(&work, a.jobs, |(l, m, n)| -> Result<(bool, std::result::Result<bool, String>)> {
        let holds = recurrence_check(l, m, n, ctx, &rule)?;
        let solved = match recurrence_solve(l, m, n, ctx) {
            Ok(k) => Ok(k == structure_constant(l, m, n, ctx)?),
            Err(e) => Err(e.to_string()),
        };
        Ok((holds, solved))
    });
    for ((l, m, n), res) in work.iter().zip(results) {
        let (holds, solved) = res?;
        let here = || triple_json(ctx, l, m, n);
        r.record("recurrence holds for the rule", holds, here);
        r.record("division leaves no remainder", solved.is_ok(), || json!({"triple": here(), "error": solved.clone().err()}));
        r.record("recurrence solution = rule", solved.unwrap_or(true), here);
    }
    Ok(())
}

fn basecase(r: &mut VerifyReport, ctx: GrassCtx, _a: &VerifyArgs) -> Result<()> {
    for l in ctx.partitions() {
        for m in ctx.partitions() {
            let ok = basecase_oracle(&l, &m, ctx)? == structure_constant(&l, &m, &l, ctx)?;
            r.record("basecase oracle = rule at ν = λ", ok, || triple_json(ctx, &l, &m, &l));
        }
    }
    Ok(())
}

fn jdt_inverse(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let sample = harvest_good_tableaux(ctx, a.samples.unwrap_or(1000), a.seed)?;
    let tab = |t: &crate::jdt::GoodTableau| json!({"active": t.active().to_string(), "tableau": t.tableau().to_json()});
    for t in &sample {
        if t.content().contains(t.active()) {
            for u in swap(t)?.support() {
                let back = revswap(u)?;
                r.record("U ∈ swap(T) implies T ∈ revswap(U)", back.contains(t), || json!({"T": tab(t), "U": tab(u)}));
            }
        }
        if t.active().pred(t.content()).is_some() {
            for s in revswap(t)?.support() {
                let fwd = swap(s)?;
                r.record("T ∈ revswap(U) implies U ∈ swap(T)", fwd.contains(t), || json!({"T": tab(s), "U": tab(t)}));
            }
        }
    }
    Ok(())
}

fn identities(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs, weights: bool) -> Result<()> {
    let mut work: Vec<_> = triples(ctx, a.max_size)
        .into_iter()
        .filter(|(l, m, n)| n.contains(l) && n.size() >= l.size() + m.size())
        .collect();
    if let Some(s) = a.samples {
        work.shuffle(&mut ChaCha8Rng::seed_from_u64(a.seed));
        work.truncate(s);
        work.sort();
    }
    let results = par_map(&work, a.jobs, |(l, m, n)| lambda_identities(l, m, n, ctx));
    for ((l, m, n), rep) in work.iter().zip(results) {
        let rep = rep?;
        for (name, ok) in &rep.checks {
            if name.starts_with("wt ") != weights {
                continue;
            }
            let fails: Vec<&String> = rep.failures.iter().filter(|f| f.starts_with(name.as_str())).take(3).collect();
            r.record(name, *ok, || json!({"triple": triple_json(ctx, l, m, n), "details": fails}));
        }
    }
    Ok(())
}

fn positivity(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let n = ctx.n();
    for (l, m, nu) in triples(ctx, a.max_size) {
        let k = structure_constant(&l, &m, &nu, ctx)?;
        if k.is_zero() {
            continue;
        }
        let here = || triple_json(ctx, &l, &m, &nu);
        let signed = &crate::laurent::LaurentPoly::constant(n, positivity_sign(&l, &m, &nu)) * &k;
        r.record("signed coefficient is z-nonnegative", signed.z_expand()?.is_nonnegative(), here);
        let certs = z_certificate(&l, &m, &nu, ctx)?;
        let mut sum = crate::laurent::LaurentPoly::zero(n);
        for c in &certs {
            r.record("certificate is square-free", c.is_square_free(), || {
                json!({"triple": here(), "tableau": c.tableau.to_json()})
            });
            sum += &c.value(n)?;
        }
        r.record("certificates sum to the coefficient", sum == k, here);
    }
    Ok(())
}

fn ty_rule(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let work = triples(ctx, a.max_size);
    let results = par_map(&work, a.jobs, |(l, m, n)| -> Result<[String; 3]> {
        Ok([
            structure_constant(l, m, n, ctx)?.to_json_string(),
            recurrence_solve(l, m, n, ctx)?.to_json_string(),
            ty_coefficient(l, m, n, ctx)?.to_json_string(),
        ])
    });
    for ((l, m, n), res) in work.iter().zip(results) {
        let [rule, rec, ty] = res?;
        let here = || json!({"triple": triple_json(ctx, l, m, n), "rule": rule, "recurrence": rec, "ty": ty});
        r.record("rule = recurrence (canonical JSON)", rule == rec, here);
        r.record("rule = ty (canonical JSON)", rule == ty, here);
    }
    Ok(())
}

/// Partitions with at most `rows` parts and size at most `max`.
fn small_contents(rows: usize, max: usize) -> Vec<Partition> {
    fn rec(rows: usize, left: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).expect("decreasing"));
        if cur.len() == rows {
            return;
        }
        for p in 1..=left.min(cap) {
            cur.push(p);
            rec(rows, left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, max, max, &mut Vec::new(), &mut out);
    out
}

fn ballot_case(r: &mut VerifyReport, t: &GenomicTableau, kind: &str) {
    let fast = t.is_ballot(BallotMode::Fast);
    let slow = t.is_ballot(BallotMode::Bruteforce);
    r.record(kind, fast == slow, || json!({"tableau": t.to_json(), "fast": fast, "bruteforce": slow}));
}

fn ballot_oracle(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let max = a.max_size.unwrap_or(5);
    let contents = small_contents(ctx.k(), max);
    let parts = ctx.partitions();
    for outer in &parts {
        for inner in parts.iter().filter(|i| outer.contains(i)) {
            let shape = SkewShape::new(ctx, outer.clone(), inner.clone())?;
            for mu in &contents {
                for t in enumerate_semistandard(&shape, &Content::from_partition(mu)) {
                    ballot_case(r, &t, "fast = bruteforce (exhaustive)");
                }
            }
        }
    }
    // Random instances in the next larger rectangle.
    let big = GrassCtx::new(ctx.k() + 1, ctx.n() + 2)?;
    let big_parts = big.partitions();
    let big_contents = small_contents(big.k(), max + 3);
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let want = a.samples.unwrap_or(10_000);
    let mut found = 0;
    let mut attempts = 0;
    while found < want && attempts < 50 * want {
        attempts += 1;
        let outer = &big_parts[rng.gen_range(0..big_parts.len())];
        let inners: Vec<&Partition> = big_parts.iter().filter(|i| outer.contains(i) && *i != outer).collect();
        let Some(inner) = inners.choose(&mut rng) else { continue };
        let shape = SkewShape::new(big, outer.clone(), (*inner).clone())?;
        let fitting: Vec<&Partition> = big_contents.iter().filter(|m| m.size() <= shape.size()).collect();
        let Some(mu) = fitting.choose(&mut rng) else { continue };
        if let Some(t) = random_semistandard(&shape, &Content::from_partition(mu), &mut rng, 500) {
            found += 1;
            ballot_case(r, &t, "fast = bruteforce (random)");
        }
    }
    r.record("random instances generated", found == want, || json!({"found": found, "wanted": want}));
    Ok(())
}

fn symmetry(r: &mut VerifyReport, ctx: GrassCtx, a: &VerifyArgs) -> Result<()> {
    let n = ctx.n();
    let one = crate::laurent::LaurentPoly::one(n);
    let zero = crate::laurent::LaurentPoly::zero(n);
    for (l, m, nu) in triples(ctx, a.max_size) {
        let here = || triple_json(ctx, &l, &m, &nu);
        let k = structure_constant(&l, &m, &nu, ctx)?;
        r.record("L(λ,μ,ν) = L(μ,λ,ν)", k == structure_constant(&m, &l, &nu, ctx)?, here);
        if l.is_empty() {
            r.record("L(∅,μ,ν) = δ", k == if m == nu { one.clone() } else { zero.clone() }, here);
        }
        if m.is_empty() {
            r.record("L(λ,∅,ν) = δ", k == if l == nu { one.clone() } else { zero.clone() }, here);
        }
    }
    Ok(())
}
