//! Independent routes to the structure constants: the diagonal case
//! `K_{λ,μ}^λ` from set-valued tableaux and a Grassmannian permutation, the
//! bijection between its edge tableaux and those set-valued tableaux, and the
//! Chevalley-type recurrence, both as an identity check and as a solver.
//!
//! Inside this module columns of the rectangle are also indexed from the
//! right, `1..=n-k`, matching the set-valued labels; conversion to the usual
//! left-based indexing happens in [`xi_map`] and [`xi_inverse`].

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::genomic::{Gene, GenomicTableau};
use crate::laurent::LaurentPoly;
use crate::shapes::{grassmannian_permutation, lambda_plus, nu_minus, wt_skew, BoxPos, GrassCtx, Partition, SkewShape};

/// A set-valued filling of a straight shape with entries in `1..=max`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetValuedTableau {
    pub shape: Partition,
    pub boxes: BTreeMap<BoxPos, BTreeSet<usize>>,
}

impl SetValuedTableau {
    /// Rows weakly increase and columns strictly increase, comparing the
    /// maximum of one box with the minimum of the next.
    pub fn is_semistandard(&self) -> bool {
        let cells = self.shape.cells();
        if cells.iter().any(|b| self.boxes.get(b).is_none_or(|s| s.is_empty())) {
            return false;
        }
        cells.iter().all(|&b| {
            let s = &self.boxes[&b];
            let max = *s.iter().next_back().expect("nonempty");
            let right_ok = self.boxes.get(&b.east()).is_none_or(|t| max <= *t.iter().next().expect("nonempty"));
            let below_ok = self.boxes.get(&b.south()).is_none_or(|t| max < *t.iter().next().expect("nonempty"));
            right_ok && below_ok
        })
    }

    pub fn num_labels(&self) -> usize {
        self.boxes.values().map(|s| s.len()).sum()
    }

    /// `(-1)^{|L| - |shape|} prod (1 - x_ℓ / y_{ℓ + col - row})` after
    /// `x_j -> t_{w(j)}` and `y_j -> t_j`.
    pub fn eq_weight(&self, w: &[usize], n: usize) -> Result<LaurentPoly> {
        let sign = if (self.num_labels() - self.shape.size()).is_multiple_of(2) { 1 } else { -1 };
        let mut out = LaurentPoly::constant(n, sign);
        for (b, s) in &self.boxes {
            for &l in s {
                let y = (l + b.col).checked_sub(b.row).filter(|&y| y >= 1 && y <= n);
                let y = y.ok_or_else(|| Error::Shape(format!("subscript out of range at {b}")))?;
                let x = *w.get(l - 1).ok_or_else(|| Error::Shape(format!("entry {l} beyond permutation")))?;
                out = &out * &LaurentPoly::one_minus_ratio(x, y, n)?;
            }
        }
        Ok(out)
    }
}

/// All set-valued semistandard tableaux of straight shape `shape` with entries
/// in `1..=max`, in a deterministic order.
pub fn enumerate_set_valued(shape: &Partition, max: usize) -> Vec<SetValuedTableau> {
    let cells = shape.cells();
    let mut out = Vec::new();
    let mut cur: BTreeMap<BoxPos, BTreeSet<usize>> = BTreeMap::new();
    fn rec(
        k: usize,
        cells: &[BoxPos],
        max: usize,
        cur: &mut BTreeMap<BoxPos, BTreeSet<usize>>,
        shape: &Partition,
        out: &mut Vec<SetValuedTableau>,
    ) {
        if k == cells.len() {
            out.push(SetValuedTableau { shape: shape.clone(), boxes: cur.clone() });
            return;
        }
        let b = cells[k];
        let lo_row = b.west().and_then(|w| cur.get(&w)).map_or(1, |s| *s.iter().next_back().expect("nonempty"));
        let lo_col = b.north().and_then(|u| cur.get(&u)).map_or(1, |s| *s.iter().next_back().expect("nonempty") + 1);
        let lo = lo_row.max(lo_col);
        if lo > max {
            return;
        }
        let span = max - lo + 1;
        for mask in 1u32..(1 << span) {
            let set: BTreeSet<usize> = (0..span).filter(|i| mask & (1 << i) != 0).map(|i| lo + i).collect();
            cur.insert(b, set);
            rec(k + 1, cells, max, cur, shape, out);
        }
        cur.remove(&b);
    }
    rec(0, &cells, max, &mut cur, shape, &mut out);
    out
}

/// `w'`: the Grassmannian permutation of `λ'` inside the transposed
/// `(n-k) x k` rectangle.
pub fn conjugate_permutation(lambda: &Partition, ctx: GrassCtx) -> Result<Vec<usize>> {
    let tctx = GrassCtx::new(ctx.cols(), ctx.n())?;
    grassmannian_permutation(&lambda.conjugate(), tctx)
}

/// The set-valued tableaux of shape `μ'` with nonzero equivariant weight,
/// each paired with that weight before the bar involution.
pub fn basecase_terms(lambda: &Partition, mu: &Partition, ctx: GrassCtx) -> Result<Vec<(SetValuedTableau, LaurentPoly)>> {
    let w = conjugate_permutation(lambda, ctx)?;
    let mut out = Vec::new();
    for u in enumerate_set_valued(&mu.conjugate(), ctx.cols()) {
        let wt = u.eq_weight(&w, ctx.n())?;
        if !wt.is_zero() {
            out.push((u, wt));
        }
    }
    Ok(out)
}

/// `K_{λ,μ}^λ` as the bar image (`t_j -> t_{n+1-j}`) of the sum of the
/// equivariant weights of set-valued tableaux of shape `μ'`.
pub fn basecase_oracle(lambda: &Partition, mu: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    if !lambda.fits(&ctx) || !mu.fits(&ctx) {
        return Err(Error::Shape(format!("{lambda} or {mu} does not fit in the rectangle")));
    }
    let mut sum = LaurentPoly::zero(ctx.n());
    for (_, w) in basecase_terms(lambda, mu, ctx)? {
        sum += &w;
    }
    Ok(sum.bar())
}

/// `ξ`: an edge tableau of shape `λ/λ` with content `μ` to a set-valued
/// tableau of shape `μ'`. A label `i_j` in right-indexed column `c` becomes
/// an entry `c` at position `(μ_i + 1 - j, i)`.
pub fn xi_map(t: &GenomicTableau, mu: &Partition) -> Result<SetValuedTableau> {
    let shape = t.shape();
    if shape.size() != 0 || !t.boxes().is_empty() {
        return Err(Error::Tableau("xi expects an edge tableau of shape lambda/lambda".into()));
    }
    let cols = t.ctx().cols();
    let mut boxes: BTreeMap<BoxPos, BTreeSet<usize>> = BTreeMap::new();
    for (e, labels) in t.edges() {
        let c = cols + 1 - e.col;
        for g in labels {
            let count = mu.part(g.family);
            if g.index == 0 || g.index > count {
                return Err(Error::Tableau(format!("gene {g} outside content {mu}")));
            }
            boxes.entry(BoxPos::new(count + 1 - g.index, g.family)).or_default().insert(c);
        }
    }
    let u = SetValuedTableau { shape: mu.conjugate(), boxes };
    if !u.is_semistandard() {
        return Err(Error::Tableau("image is not a set-valued semistandard tableau".into()));
    }
    Ok(u)
}

/// `ξ⁻¹`: an entry `c` at `(r, i)` becomes `i_{μ_i + 1 - r}` on the edge at the
/// bottom of right-indexed column `c` of `λ/λ`.
pub fn xi_inverse(u: &SetValuedTableau, lambda: &Partition, mu: &Partition, ctx: GrassCtx) -> Result<GenomicTableau> {
    let shape = SkewShape::new(ctx, lambda.clone(), lambda.clone())?;
    let cols = ctx.cols();
    let mut t = GenomicTableau::empty(shape.clone());
    for (b, s) in &u.boxes {
        let count = mu.part(b.col);
        if b.row > count {
            return Err(Error::Tableau(format!("entry at {b} outside shape of {mu}'")));
        }
        let g = Gene::new(b.col, count + 1 - b.row);
        for &c in s {
            if c == 0 || c > cols {
                return Err(Error::Tableau(format!("entry {c} outside 1..={cols}")));
            }
            let left = cols + 1 - c;
            let e = BoxPos::new(lambda.col_len(left), left);
            if !shape.is_allowed_edge(e) {
                return Err(Error::Tableau(format!("column {left} of {lambda} has no bottom edge")));
            }
            t.insert_edge_label(e, g);
        }
    }
    Ok(t)
}

/// A source of structure constants `(λ, μ, ν) -> K`.
pub type CoefficientSource<'a> = dyn Fn(&Partition, &Partition, &Partition) -> Result<LaurentPoly> + 'a;

/// Both sides of the recurrence for `λ ⊊ ν`:
/// `Σ_{ρ∈λ⁺} (-1)^{|ρ/λ|+1} K^ν_{ρ,μ}` and
/// `K^ν_{λ,μ}(1 - wt ν/λ) + Σ_{δ∈ν⁻} (-1)^{|ν/δ|+1} K^δ_{λ,μ} wt δ/λ`.
pub fn recurrence_sides(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ctx: GrassCtx,
    k: &CoefficientSource<'_>,
) -> Result<(LaurentPoly, LaurentPoly)> {
    if !nu.contains(lambda) || nu == lambda {
        return Err(Error::Shape(format!("recurrence needs {lambda} strictly inside {nu}")));
    }
    let n = ctx.n();
    let mut lhs = LaurentPoly::zero(n);
    for rho in lambda_plus(lambda, ctx) {
        let term = k(&rho, mu, nu)?;
        if (rho.size() - lambda.size()) % 2 == 1 {
            lhs += &term;
        } else {
            lhs -= &term;
        }
    }
    let one = LaurentPoly::one(n);
    let mut rhs = &k(lambda, mu, nu)? * &(&one - &wt_skew(nu, lambda, ctx)?);
    for delta in nu_minus(nu) {
        if !delta.contains(lambda) {
            continue;
        }
        let term = &k(lambda, mu, &delta)? * &wt_skew(&delta, lambda, ctx)?;
        if (nu.size() - delta.size()) % 2 == 1 {
            rhs += &term;
        } else {
            rhs -= &term;
        }
    }
    Ok((lhs, rhs))
}

/// Whether the recurrence holds exactly for `(λ, μ, ν)` with coefficients
/// drawn from `k`.
pub fn recurrence_check(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    ctx: GrassCtx,
    k: &CoefficientSource<'_>,
) -> Result<bool> {
    let (l, r) = recurrence_sides(lambda, mu, nu, ctx, k)?;
    Ok(l == r)
}

/// Solves for `K_{λ,μ}^ν` by induction on `|ν/λ|`: the diagonal case from
/// [`basecase_oracle`], then exact division by `1 - wt ν/λ`. Memoized.
#[derive(Debug)]
pub struct RecurrenceSolver {
    ctx: GrassCtx,
    memo: HashMap<(Partition, Partition, Partition), LaurentPoly>,
}

impl RecurrenceSolver {
    pub fn new(ctx: GrassCtx) -> Self {
        RecurrenceSolver { ctx, memo: HashMap::new() }
    }

    pub fn solve(&mut self, lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<LaurentPoly> {
        let ctx = self.ctx;
        let n = ctx.n();
        if !nu.contains(lambda) || mu.size() > nu.size() {
            return Ok(LaurentPoly::zero(n));
        }
        let key = (lambda.clone(), mu.clone(), nu.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let value = if lambda == nu {
            basecase_oracle(lambda, mu, ctx)?
        } else {
            let mut acc = LaurentPoly::zero(n);
            for rho in lambda_plus(lambda, ctx) {
                let term = self.solve(&rho, mu, nu)?;
                if (rho.size() - lambda.size()) % 2 == 1 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            for delta in nu_minus(nu) {
                if !delta.contains(lambda) {
                    continue;
                }
                let term = &self.solve(lambda, mu, &delta)? * &wt_skew(&delta, lambda, ctx)?;
                if (nu.size() - delta.size()) % 2 == 1 {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            let m = wt_skew(nu, lambda, ctx)?;
            let (exp, _) = m.as_monomial().ok_or_else(|| Error::Division("wt(nu/lambda) is not a monomial".into()))?;
            acc.divide_by_one_minus_monomial(&exp.clone())?
        };
        self.memo.insert(key, value.clone());
        Ok(value)
    }
}

/// One-shot [`RecurrenceSolver::solve`].
pub fn recurrence_solve(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    RecurrenceSolver::new(ctx).solve(lambda, mu, nu)
}

/// The genomic tableaux of shape `λ/λ` and content `μ` obtained as `ξ⁻¹` of
/// the nonzero-weight set-valued tableaux.
pub fn basecase_edge_tableaux(lambda: &Partition, mu: &Partition, ctx: GrassCtx) -> Result<Vec<GenomicTableau>> {
    basecase_terms(lambda, mu, ctx)?.iter().map(|(u, _)| xi_inverse(u, lambda, mu, ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rule::structure_constant;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn om(i: usize, j: usize, n: usize) -> LaurentPoly {
        LaurentPoly::one_minus_ratio(i, j, n).unwrap()
    }

    fn worked_example() -> (GrassCtx, Partition, Partition, GenomicTableau) {
        let ctx = GrassCtx::new(3, 7).unwrap();
        let lambda = p("4,2,1");
        let mu = p("3,2");
        let shape = SkewShape::new(ctx, lambda.clone(), lambda.clone()).unwrap();
        let g = Gene::new;
        let t = GenomicTableau::from_labels(
            shape,
            &[],
            &[
                ((3, 1), &[g(1, 1), g(2, 1)]),
                ((2, 2), &[g(1, 2), g(2, 2)]),
                ((1, 3), &[g(1, 2)]),
                ((1, 4), &[g(1, 3)]),
            ],
        )
        .unwrap();
        (ctx, lambda, mu, t)
    }

    #[test]
    fn worked_base_case_example() {
        let (ctx, lambda, mu, t) = worked_example();
        assert!(t.is_ballotgen());
        let u = xi_map(&t, &mu).unwrap();
        let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
        let expect: BTreeMap<BoxPos, BTreeSet<usize>> = [
            (BoxPos::new(1, 1), set(&[1])),
            (BoxPos::new(1, 2), set(&[3])),
            (BoxPos::new(2, 1), set(&[2, 3])),
            (BoxPos::new(2, 2), set(&[4])),
            (BoxPos::new(3, 1), set(&[4])),
        ]
        .into_iter()
        .collect();
        assert_eq!(u.boxes, expect);
        let w = conjugate_permutation(&lambda, ctx).unwrap();
        assert_eq!(w, vec![2, 3, 5, 7, 1, 4, 6]);
        let eq = u.eq_weight(&w, 7).unwrap();
        let expect_eq = -(om(7, 2, 7) * om(5, 2, 7) * om(3, 1, 7) * om(2, 1, 7) * om(7, 4, 7) * om(5, 4, 7));
        assert_eq!(eq, expect_eq);
        let expect_wt = -(om(1, 6, 7) * om(3, 6, 7) * om(5, 7, 7) * om(6, 7, 7) * om(1, 4, 7) * om(3, 4, 7));
        assert_eq!(eq.bar(), expect_wt);
        let wc = crate::weights::WeightContext::new(ctx, crate::genomic::Content::from_partition(&mu));
        assert_eq!(crate::weights::weight(&t, &wc, crate::weights::WeightMode::Plain).unwrap(), expect_wt);
        assert_eq!(xi_inverse(&u, &lambda, &mu, ctx).unwrap(), t);
    }

    #[test]
    fn small_cases() {
        let c12 = GrassCtx::new(1, 2).unwrap();
        assert_eq!(basecase_oracle(&p("1"), &p("1"), c12).unwrap(), om(1, 2, 2));
        assert_eq!(basecase_oracle(&p("1"), &p(""), c12).unwrap(), LaurentPoly::one(2));
        let c13 = GrassCtx::new(1, 3).unwrap();
        assert_eq!(
            recurrence_solve(&p("1"), &p("1"), &p("2"), c13).unwrap(),
            LaurentPoly::ratio_monomial(1, 2, 3).unwrap()
        );
        let f = |l: &Partition, m: &Partition, n: &Partition| structure_constant(l, m, n, c13);
        assert!(recurrence_check(&p("1"), &p("1"), &p("2"), c13, &f).unwrap());
    }

    #[test]
    fn rule_matches_recurrence_small() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 6)] {
            let ctx = GrassCtx::new(k, n).unwrap();
            let mut solver = RecurrenceSolver::new(ctx);
            let parts = ctx.partitions();
            for l in &parts {
                for m in &parts {
                    for nu in &parts {
                        if nu.size() > 6 && k == 3 {
                            continue;
                        }
                        let a = structure_constant(l, m, nu, ctx).unwrap();
                        let b = solver.solve(l, m, nu).unwrap();
                        assert_eq!(a, b, "{k} {n} {l} {m} {nu}");
                    }
                }
            }
        }
    }

    #[test]
    fn example_1_5_by_recurrence() {
        let ctx = GrassCtx::new(2, 4).unwrap();
        let k = recurrence_solve(&p("2"), &p("2,1"), &p("2,2"), ctx).unwrap();
        assert_eq!(k, structure_constant(&p("2"), &p("2,1"), &p("2,2"), ctx).unwrap());
    }
}
