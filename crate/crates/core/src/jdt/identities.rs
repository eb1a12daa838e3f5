//! The formal sums `Λ⁺`, `Λ`, `Λ⁻` and the identities tying them together
//! through slides, reversal trees and weights.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Result;
use crate::genomic::{enumerate_ballotgen, Content, Gene, GenomicTableau};
use crate::laurent::LaurentPoly;
use crate::shapes::{lambda_plus, nu_minus, wt_skew, BoxPos, GrassCtx, Partition, SkewShape};
use crate::weights::{weight, WeightContext, WeightMode};

use super::{reversal_tree, slide_stages, FormalSum, GoodTableau};

/// The bundled members of `BallotGen(shape)` with the given content.
pub fn bundled_tableaux(shape: &SkewShape, content: &Content) -> Vec<GenomicTableau> {
    enumerate_ballotgen(shape, content).into_iter().filter(|t| t.is_bundled()).collect()
}

/// The terms of `Λ⁺`: `(ρ, T, (-1)^{|ρ/λ|+1})` for `ρ ∈ λ⁺` inside `ν` and
/// bundled `T` of shape `ν/ρ`.
pub fn lambda_plus_terms(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ctx: GrassCtx,
) -> Result<Vec<(Partition, GenomicTableau, i64)>> {
    let content = Content::from_partition(mu);
    let mut out = Vec::new();
    for rho in lambda_plus(lambda, ctx) {
        if !nu.contains(&rho) {
            continue;
        }
        let sign = if (rho.size() - lambda.size()) % 2 == 1 { 1 } else { -1 };
        let shape = SkewShape::new(ctx, nu.clone(), rho.clone())?;
        for t in bundled_tableaux(&shape, &content) {
            out.push((rho.clone(), t, sign));
        }
    }
    Ok(out)
}

/// Outcome of [`lambda_identities`]: named checks and a description of
/// every failure.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct IdentityReport {
    pub checks: Vec<(String, bool)>,
    pub failures: Vec<String>,
    /// `wt P_G` for each stage gene, in order.
    pub stage_weights: Vec<(Gene, LaurentPoly)>,
    /// Number of reversal trees built.
    pub trees: usize,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if let Some(entry) = self.checks.iter_mut().find(|(n, _)| n == name) {
            entry.1 &= ok;
        } else {
            self.checks.push((name.to_string(), ok));
        }
        if !ok {
            self.failures.push(format!("{name}: {}", detail()));
        }
    }
}

fn sign_poly(n: usize, s: i64) -> LaurentPoly {
    LaurentPoly::constant(n, s)
}

fn parity_sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Verifies, for one triple:
/// (a) `slide(Λ⁺) = Λ + Λ⁻` termwise;
/// (b) every reversal tree is a tree whose leaves are `U` (when `α = ν`)
///     and the `Λ⁺` tableaux whose slide contains `U`, with path
///     coefficients equal to the slide coefficients;
/// (c) the per-node and leaf-sum identities;
/// (d) `wt P_G` is the same at every stage, equal to `wt Λ⁺` and to
///     `wt(Λ + Λ⁻)`, using fine weights for the stages.
pub fn lambda_identities(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<IdentityReport> {
    let mut report = IdentityReport::default();
    if !nu.contains(lambda) {
        return Ok(report);
    }
    let n = ctx.n();
    let content = Content::from_partition(mu);
    let wc = WeightContext::new(ctx, content.clone());

    // Λ⁺ and the slide of each term.
    let plus = lambda_plus_terms(lambda, mu, nu, ctx)?;
    let mut slides: Vec<FormalSum<GenomicTableau>> = Vec::new();
    let mut stage_sums: Vec<FormalSum<GoodTableau>> = Vec::new();
    let mut lhs = FormalSum::zero(n);
    for (rho, t, s) in &plus {
        let corners: Vec<BoxPos> =
            SkewShape::new(ctx, rho.clone(), lambda.clone())?.boxes().into_iter().collect::<Vec<_>>();
        let stages = slide_stages(t, &corners)?;
        if stage_sums.is_empty() {
            stage_sums = vec![FormalSum::zero(n); stages.len()];
        }
        for (acc, st) in stage_sums.iter_mut().zip(&stages) {
            acc.add_scaled(st, &sign_poly(n, *s));
        }
        let sl = stages
            .last()
            .expect("one stage")
            .map_linear(|u| Ok(FormalSum::single(n, u.delete_bullets(true)?)))?;
        lhs.add_scaled(&sl, &sign_poly(n, *s));
        slides.push(sl);
    }

    // Λ + Λ⁻.
    let mut rhs = FormalSum::zero(n);
    let mut roots: Vec<(Partition, GenomicTableau)> = Vec::new();
    let full = SkewShape::new(ctx, nu.clone(), lambda.clone())?;
    let lam_coeff = &LaurentPoly::one(n) - &wt_skew(nu, lambda, ctx)?;
    for u in bundled_tableaux(&full, &content) {
        rhs.add_term(u.clone(), &lam_coeff);
        roots.push((nu.clone(), u));
    }
    for delta in nu_minus(nu) {
        if !delta.contains(lambda) {
            continue;
        }
        let c = &sign_poly(n, parity_sign(nu.size() - delta.size() + 1)) * &wt_skew(&delta, lambda, ctx)?;
        let shape = SkewShape::new(ctx, delta.clone(), lambda.clone())?;
        for u in bundled_tableaux(&shape, &content) {
            rhs.add_term(u.clone(), &c);
            roots.push((delta.clone(), u));
        }
    }
    report.check("slide(Λ⁺) = Λ + Λ⁻", lhs == rhs, || {
        let keys: BTreeSet<&GenomicTableau> = lhs.support().chain(rhs.support()).collect();
        let bad: Vec<String> = keys
            .into_iter()
            .filter(|k| lhs.coefficient(k) != rhs.coefficient(k))
            .map(|k| format!("{k}: slide {} vs {}", lhs.coefficient(k), rhs.coefficient(k)))
            .collect();
        format!("λ={lambda} μ={mu} ν={nu}: {}", bad.join("; "))
    });

    // Reversal trees.
    let leaf_index: HashMap<&GenomicTableau, usize> = plus.iter().enumerate().map(|(i, (_, t, _))| (t, i)).collect();
    for (alpha, u) in &roots {
        report.trees += 1;
        let tree = reversal_tree(u, nu)?;
        let here = || format!("U={u} ν={nu}");
        // Tree property: nodes of one depth are distinct.
        let mut per_depth: BTreeMap<usize, BTreeSet<&GoodTableau>> = BTreeMap::new();
        let mut distinct = true;
        for node in &tree.nodes {
            distinct &= per_depth.entry(node.depth).or_default().insert(&node.tableau);
        }
        report.check("reversal tree is a tree", distinct, here);

        // Leaves against Λ⁺ preimages.
        let mut leaf_set: BTreeSet<usize> = BTreeSet::new();
        let mut saw_u = false;
        let mut leaf_sum = LaurentPoly::zero(n);
        for (idx, node) in tree.nodes.iter().enumerate() {
            if node.depth != tree.families {
                continue;
            }
            let leaf = tree.leaf_tableau(idx)?;
            let path = tree.path_coeff(idx);
            if leaf == *u {
                saw_u = true;
                leaf_sum -= &path;
                report.check("leaf U has coefficient 1", alpha == nu && path.is_one(), here);
                continue;
            }
            match leaf_index.get(&leaf) {
                None => report.check("leaves lie in Λ⁺", false, || format!("{} leaf {leaf}", here())),
                Some(&i) => {
                    leaf_set.insert(i);
                    let c = slides[i].coefficient(u);
                    report.check("path coefficient = slide coefficient", c == path, || {
                        format!("{} leaf {leaf}: path {path} vs slide {c}", here())
                    });
                    leaf_sum += &(&sign_poly(n, plus[i].2) * &c);
                }
            }
        }
        report.check("U is a leaf when α = ν", saw_u == (alpha == nu), here);
        let preimages: BTreeSet<usize> = (0..plus.len()).filter(|&i| slides[i].contains(u)).collect();
        report.check("every Λ⁺ preimage is a leaf", preimages.is_subset(&leaf_set), || {
            let missing: Vec<String> = preimages.difference(&leaf_set).map(|i| plus[*i].1.to_string()).collect();
            format!("{}: missing {}", here(), missing.join(", "))
        });
        let expect = &sign_poly(n, parity_sign(nu.size() - alpha.size() + 1)) * &wt_skew(alpha, lambda, ctx)?;
        report.check("leaf sum = wt(α/λ)(-1)^{|ν/α|+1}", leaf_sum == expect, || {
            format!("{}: {leaf_sum} vs {expect}", here())
        });

        // Per-node identity.
        for node in tree.nodes.iter().filter(|nd| nd.depth < tree.families) {
            let i = tree.family_at(node.depth);
            let gamma: Vec<BoxPos> =
                u.boxes().iter().filter(|(_, e)| e.gene().family == i).map(|(b, _)| *b).collect();
            let mut lhs_node = LaurentPoly::zero(n);
            for &c in &node.children {
                let child = &tree.nodes[c];
                let s = parity_sign(1 + child.tableau.tableau().bullets().len());
                lhs_node += &(&sign_poly(n, s) * &child.coeff);
            }
            let s = parity_sign(1 + node.tableau.tableau().bullets().len());
            let rhs_node = &sign_poly(n, s) * &crate::shapes::wt_region(&gamma, ctx)?;
            report.check("node sum = ±wt Γ", lhs_node == rhs_node, || {
                format!("{} node {}: {lhs_node} vs {rhs_node}", here(), node.tableau)
            });
        }
    }

    // Weights.
    let mut cache: HashMap<GoodTableau, LaurentPoly> = HashMap::new();
    let mut fine = |t: &GoodTableau| -> Result<LaurentPoly> {
        if let Some(w) = cache.get(t) {
            return Ok(w.clone());
        }
        let v = t.virtuals();
        let w = weight(t.tableau(), &wc, WeightMode::Fine { virtuals: &v })?;
        cache.insert(t.clone(), w.clone());
        Ok(w)
    };
    let mut plus_weight = LaurentPoly::zero(n);
    for (_, t, s) in &plus {
        plus_weight += &(&sign_poly(n, *s) * &weight(t, &wc, WeightMode::Bundled)?);
    }
    let mut rhs_weight = LaurentPoly::zero(n);
    for (t, c) in rhs.iter() {
        rhs_weight += &(c * &weight(t, &wc, WeightMode::Bundled)?);
    }
    let mut genes = vec![Gene::new(1, 1)];
    for g in content.genes() {
        genes.push(g.succ(&content));
    }
    for (g, st) in genes.iter().zip(&stage_sums) {
        let mut w = LaurentPoly::zero(n);
        for (t, c) in st.iter() {
            w += &(c * &fine(t)?);
        }
        report.check("wt P_G = wt Λ⁺", w == plus_weight, || {
            format!("λ={lambda} μ={mu} ν={nu} stage {g}: {w} vs {plus_weight}")
        });
        report.stage_weights.push((*g, w));
    }
    report.check("wt Λ⁺ = wt(Λ + Λ⁻)", plus_weight == rhs_weight, || {
        format!("λ={lambda} μ={mu} ν={nu}: {plus_weight} vs {rhs_weight}")
    });
    Ok(report)
}
