//! The genomic rule: `K_{λ,μ}^ν` as the sum of the weights of the ballot
//! semistandard tableaux of shape `ν/λ` and content `μ`, structure tables,
//! and per-tableau square-free `z_{ij}` certificates of positivity.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::genomic::{enumerate_ballotgen, Content, GenomicTableau};
use crate::laurent::{LaurentPoly, ZPoly};
use crate::shapes::{GrassCtx, Partition, SkewShape};
use crate::weights::{productive_plain, weight, WeightContext, WeightMode};

type CacheKey = (GrassCtx, Partition, Partition, Partition);

fn cache() -> &'static Mutex<HashMap<CacheKey, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_fits(p: &Partition, ctx: GrassCtx) -> Result<()> {
    if p.fits(&ctx) {
        Ok(())
    } else {
        Err(Error::Shape(format!("{p} does not fit in the {}x{} rectangle", ctx.k(), ctx.cols())))
    }
}

/// The tableaux summed by the rule, in canonical order. Empty when `λ ⊄ ν`.
pub fn rule_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<Vec<GenomicTableau>> {
    check_fits(lambda, ctx)?;
    check_fits(nu, ctx)?;
    if !nu.contains(lambda) {
        return Ok(Vec::new());
    }
    let shape = SkewShape::new(ctx, nu.clone(), lambda.clone())?;
    Ok(enumerate_ballotgen(&shape, &Content::from_partition(mu)))
}

/// `L_{λ,μ}^ν = Σ_T wt(T)`, which equals `K_{λ,μ}^ν`. Results are cached for
/// the lifetime of the process.
pub fn structure_constant(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    check_fits(mu, ctx)?;
    let key = (ctx, lambda.clone(), mu.clone(), nu.clone());
    if let Some(v) = cache().lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let wc = WeightContext::new(ctx, Content::from_partition(mu));
    let mut sum = LaurentPoly::zero(ctx.n());
    for t in rule_tableaux(lambda, mu, nu, ctx)? {
        sum += &weight(&t, &wc, WeightMode::Plain)?;
    }
    cache().lock().expect("cache lock").insert(key, sum.clone());
    Ok(sum)
}

/// Every nonzero `K_{λ,μ}^ν` for `ν` in the rectangle.
pub fn structure_table(lambda: &Partition, mu: &Partition, ctx: GrassCtx) -> Result<BTreeMap<Partition, LaurentPoly>> {
    let mut out = BTreeMap::new();
    for nu in ctx.partitions() {
        let k = structure_constant(lambda, mu, &nu, ctx)?;
        if !k.is_zero() {
            out.insert(nu, k);
        }
    }
    Ok(out)
}

/// One factor of a tableau weight, named by its `(i, j)` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ZFactor {
    /// `-z_{ij} = 1 - t_i / t_j`, from an edge label.
    NegZ(usize, usize),
    /// `z_{ij} + 1 = t_i / t_j`, from a productive box.
    OnePlusZ(usize, usize),
}

impl ZFactor {
    pub fn pair(self) -> (usize, usize) {
        match self {
            ZFactor::NegZ(i, j) | ZFactor::OnePlusZ(i, j) => (i, j),
        }
    }
}

/// The factorization of one tableau's weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZCertificate {
    pub tableau: GenomicTableau,
    /// `d(T)`; the weight is `(-1)^d` times the product of the factors.
    pub d: usize,
    pub factors: Vec<ZFactor>,
}

/// `z_{ij} = prod_{k=i}^{j-1} (z_k + 1) - 1` in `m` variables.
fn z_pair(i: usize, j: usize, m: usize) -> ZPoly {
    let mut p = ZPoly::one(m);
    for k in i..j {
        p = p.mul(&ZPoly::var(k, m).expect("index in range").add(&ZPoly::one(m)));
    }
    p.add(&ZPoly::one(m).neg())
}

impl ZCertificate {
    /// Every `(i, j)` occurs at most once.
    pub fn is_square_free(&self) -> bool {
        let mut pairs: Vec<(usize, usize)> = self.factors.iter().map(|f| f.pair()).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    /// The tableau weight rebuilt from the factors.
    pub fn value(&self, n: usize) -> Result<LaurentPoly> {
        let mut w = LaurentPoly::constant(n, if self.d.is_multiple_of(2) { 1 } else { -1 });
        for f in &self.factors {
            let p = match *f {
                ZFactor::NegZ(i, j) => LaurentPoly::one_minus_ratio(i, j, n)?,
                ZFactor::OnePlusZ(i, j) => LaurentPoly::ratio_monomial(i, j, n)?,
            };
            w = &w * &p;
        }
        Ok(w)
    }

    /// `prod z_{ij} · prod (z_{ij} + 1)` expanded in `z_1..z_{n-1}`: the
    /// weight times `(-1)^{#edge labels}`, a polynomial with nonnegative
    /// coefficients.
    pub fn positive_z(&self, n: usize) -> ZPoly {
        let m = n - 1;
        let mut p = ZPoly::one(m);
        for f in &self.factors {
            let q = match *f {
                ZFactor::NegZ(i, j) => z_pair(i, j, m),
                ZFactor::OnePlusZ(i, j) => z_pair(i, j, m).add(&ZPoly::one(m)),
            };
            p = p.mul(&q);
        }
        p
    }
}

/// Per-tableau certificates. Box factors equal to 1 (`t_i / t_i`) are
/// omitted. A factor `t_i / t_j` with `i > j` is reported as an error.
pub fn z_certificate(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<Vec<ZCertificate>> {
    let wc = WeightContext::new(ctx, Content::from_partition(mu));
    let mut out = Vec::new();
    for t in rule_tableaux(lambda, mu, nu, ctx)? {
        let mut factors = Vec::new();
        for (e, labels) in t.edges() {
            for &g in labels {
                let (a, b) = wc.edge_ratio(*e, g)?;
                if a >= b {
                    return Err(Error::Tableau(format!("edge factor 1 - t{a}/t{b} in {t}")));
                }
                factors.push(ZFactor::NegZ(a, b));
            }
        }
        for (x, entry) in t.boxes() {
            if productive_plain(&t, *x) {
                let (a, b) = wc.box_ratio(*x, entry.gene())?;
                if a > b {
                    return Err(Error::Tableau(format!("box factor t{a}/t{b} in {t}")));
                }
                if a < b {
                    factors.push(ZFactor::OnePlusZ(a, b));
                }
            }
        }
        factors.sort();
        let d = t.d();
        out.push(ZCertificate { tableau: t, d, factors });
    }
    Ok(out)
}

/// `(-1)^{|ν|-|λ|-|μ|}` as an integer sign.
pub fn positivity_sign(lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    let e = nu.size() as i64 - lambda.size() as i64 - mu.size() as i64;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
