//! Genomic jeu de taquin: good tableaux, snakes and miniswaps, `swap_G`,
//! `slide`, ladders and reverse swaps, reversal trees, and the identity
//! checks relating `slide(Λ⁺)` to `Λ + Λ⁻`.
//!
//! A [`GoodTableau`] is a [`GenomicTableau`] whose boxes may hold bullets
//! `•_G` for a single active gene `G`. Marks are never stored: a label is
//! marked when it is `≺ G` and lies southeast of a bullet.

mod good;
mod identities;
mod ladder;
mod snake;
mod tree;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Content, Gene, GenomicTableau, Pos};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, EdgePos, GrassCtx, SkewShape};

pub use good::{validate_good, Condition, GoodReport};
pub use identities::{bundled_tableaux, lambda_identities, lambda_plus_terms, IdentityReport};
pub use ladder::{ladders, revswap, Ladder, LadderRow};
pub use snake::{
    slide, slide_stages, slide_trace, snakes, swap, swap_detailed, BodyCase, HeadCase, SectionTags, Snake, SwapStep,
    TailCase, TraceStage,
};
pub use tree::{reversal_tree, walkway_is_well_formed, walkways, ReversalTree, TreeNode};

/// A tableau at one stage of jeu de taquin. Every bullet is `•_G` for the
/// active gene `G`; the content is fixed for the whole slide.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GoodTableau {
    tableau: GenomicTableau,
    active: Gene,
    content: Content,
}

impl GoodTableau {
    /// Wraps `tableau`, checking that all bullets carry `active`. Goodness
    /// itself is checked by [`validate_good`].
    pub fn new(tableau: GenomicTableau, active: Gene, content: Content) -> Result<Self> {
        if let Some((b, g)) = tableau.bullets().into_iter().find(|&(_, g)| g != active) {
            return Err(Error::Jdt(format!("bullet •_{g} at {b} differs from the active gene {active}")));
        }
        Ok(GoodTableau { tableau, active, content })
    }

    pub fn tableau(&self) -> &GenomicTableau {
        &self.tableau
    }

    pub fn into_tableau(self) -> GenomicTableau {
        self.tableau
    }

    pub fn active(&self) -> Gene {
        self.active
    }

    pub fn content(&self) -> &Content {
        &self.content
    }

    /// Whether the label `g` at `p` is marked.
    pub fn is_marked(&self, p: Pos, g: Gene) -> bool {
        self.tableau.is_marked(p, g)
    }

    /// Virtual labels per V.1 to V.3.
    pub fn virtuals(&self) -> BTreeMap<EdgePos, BTreeSet<Gene>> {
        good::virtual_labels(self)
    }

    /// The bullet-free tableau left after deleting bullets: the bullet
    /// boxes leave the diagram. `outer` selects whether they come off the
    /// outer partition (end of a slide) or join the inner one (start of a
    /// slide, as for reversal-tree leaves).
    fn delete_bullets(&self, outer: bool) -> Result<GenomicTableau> {
        let cells: Vec<BoxPos> = self.tableau.bullets().into_iter().map(|(b, _)| b).collect();
        let shape = self.tableau.shape();
        let (o, i) = if outer {
            (shape.outer().remove_cells(&cells)?, shape.inner().clone())
        } else {
            let mut parts = shape.inner().parts().to_vec();
            for b in &cells {
                if parts.len() < b.row {
                    parts.resize(b.row, 0);
                }
                parts[b.row - 1] += 1;
            }
            (shape.outer().clone(), crate::shapes::Partition::new(parts)?)
        };
        let new_shape = crate::shapes::SkewShape::new(shape.ctx(), o, i)?;
        let mut t = self.tableau.clone();
        for b in &cells {
            t.set_entry(*b, None);
        }
        t.with_shape(new_shape)
    }
}

impl fmt::Display for GoodTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[active {}] {}", self.active, self.tableau)
    }
}

/// A finite formal sum `Σ c_K K` with Laurent polynomial coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<K: Ord> {
    n: usize,
    terms: BTreeMap<K, LaurentPoly>,
}

impl<K: Ord + Clone> FormalSum<K> {
    /// The empty sum over `t_1..t_n`.
    pub fn zero(n: usize) -> Self {
        FormalSum { n, terms: BTreeMap::new() }
    }

    /// `1 · k`.
    pub fn single(n: usize, k: K) -> Self {
        let mut s = FormalSum::zero(n);
        s.add_term(k, &LaurentPoly::one(n));
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c · k`, dropping the key if the coefficient cancels.
    pub fn add_term(&mut self, k: K, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_insert_with(|| LaurentPoly::zero(self.n));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Adds `c · other`.
    pub fn add_scaled(&mut self, other: &FormalSum<K>, c: &LaurentPoly) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    /// The coefficient of `k` (zero when absent).
    pub fn coefficient(&self, k: &K) -> LaurentPoly {
        self.terms.get(k).cloned().unwrap_or_else(|| LaurentPoly::zero(self.n))
    }

    pub fn contains(&self, k: &K) -> bool {
        self.terms.contains_key(k)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Result<FormalSum<L>>) -> Result<FormalSum<L>> {
        let mut out = FormalSum::zero(self.n);
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

/// A seeded sample of `count` distinct good tableaux met along the slides of
/// the `Λ⁺` terms of every triple in `ctx` (all stages, all active genes).
/// The sample is drawn from the whole harvest, so it depends only on `ctx`,
/// `count` and `seed`.
pub fn harvest_good_tableaux(ctx: GrassCtx, count: usize, seed: u64) -> Result<Vec<GoodTableau>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut pool: BTreeSet<GoodTableau> = BTreeSet::new();
    let parts = ctx.partitions();
    for lambda in &parts {
        for mu in parts.iter().filter(|m| !m.is_empty()) {
            for nu in parts.iter().filter(|nu| nu.contains(lambda) && nu.size() >= lambda.size() + mu.size()) {
                for (rho, t, _) in lambda_plus_terms(lambda, mu, nu, ctx)? {
                    let corners = SkewShape::new(ctx, rho, lambda.clone())?.boxes();
                    for stage in slide_stages(&t, &corners)? {
                        pool.extend(stage.support().cloned());
                    }
                }
            }
        }
    }
    let mut all: Vec<GoodTableau> = pool.into_iter().collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    all.shuffle(&mut rng);
    all.truncate(count);
    Ok(all)
}

/// Edge-connected components of a set of boxes, each sorted.
pub(crate) fn components(cells: &BTreeSet<BoxPos>) -> Vec<BTreeSet<BoxPos>> {
    let mut seen: BTreeSet<BoxPos> = BTreeSet::new();
    let mut out = Vec::new();
    for &start in cells {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(b) = stack.pop() {
            comp.insert(b);
            let nbrs = [Some(b.east()), b.west(), b.north(), Some(b.south())];
            for q in nbrs.into_iter().flatten() {
                if cells.contains(&q) && seen.insert(q) {
                    stack.push(q);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// A set of boxes is a short ribbon: edge-connected with no 2×2 square.
pub(crate) fn is_short_ribbon(cells: &BTreeSet<BoxPos>) -> bool {
    let square = cells.iter().any(|b| {
        cells.contains(&b.east()) && cells.contains(&b.south()) && cells.contains(&b.south().east())
    });
    !square && components(cells).len() <= 1
}

/// Rows of a box set: `(row, boxes west to east)`, north to south.
pub(crate) fn rows_of(cells: &BTreeSet<BoxPos>) -> Vec<(usize, Vec<BoxPos>)> {
    let mut rows: BTreeMap<usize, Vec<BoxPos>> = BTreeMap::new();
    for b in cells {
        rows.entry(b.row).or_default().push(*b);
    }
    rows.into_iter().collect()
}

/// One elementary change to a tableau.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) enum Op {
    Set(BoxPos, CellEntry),
    AddEdge(EdgePos, Gene),
    RemoveEdge(EdgePos, Gene),
}

pub(crate) fn apply_ops(t: &mut GenomicTableau, ops: &[Op]) -> Result<()> {
    for op in ops {
        match *op {
            Op::Set(b, e) => t.set_entry(b, Some(e)),
            Op::AddEdge(e, g) => {
                if !t.shape().is_allowed_edge(e) {
                    return Err(Error::Jdt(format!("edge under {e} is not allowed")));
                }
                t.insert_edge_label(e, g)
            }
            Op::RemoveEdge(e, g) => {
                if !t.remove_edge_label(e, g) {
                    return Err(Error::Jdt(format!("no {g} on the edge under {e}")));
                }
            }
        }
    }
    Ok(())
}

/// Relabels every bullet of `t` as `•_g`.
pub(crate) fn rebullet(t: &mut GenomicTableau, g: Gene) {
    for (b, _) in t.bullets() {
        t.set_entry(b, Some(CellEntry::Bullet(g)));
    }
}

#[cfg(test)]
mod tests;
