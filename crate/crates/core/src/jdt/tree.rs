//! Walkways and reversal trees.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Content, Gene, GenomicTableau, Pos};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, Partition, SkewShape};

use super::{components, is_short_ribbon, revswap, swap, FormalSum, GoodTableau};

/// The `i`-walkways of an `(i+1)_1`-good tableau: components of the boxes
/// holding a bullet or an unmarked label of family `i`.
pub fn walkways(t: &GoodTableau, i: usize) -> Vec<BTreeSet<BoxPos>> {
    let tab = t.tableau();
    let cells: BTreeSet<BoxPos> = tab
        .boxes()
        .iter()
        .filter(|(b, e)| match e {
            CellEntry::Bullet(_) => true,
            CellEntry::Label(g) => g.family == i && !t.is_marked(Pos::Box(**b), *g),
        })
        .map(|(b, _)| *b)
        .collect();
    components(&cells)
}

/// Checks the shape of a walkway: columns have at most two boxes with a
/// bullet in the lower one, there is no 2×2 square, and bullets sit at
/// outer corners of the walkway.
pub fn walkway_is_well_formed(t: &GoodTableau, w: &BTreeSet<BoxPos>) -> bool {
    let tab = t.tableau();
    let is_bullet = |b: BoxPos| matches!(tab.entry(b), Some(CellEntry::Bullet(_)));
    let columns_ok = w.iter().all(|b| {
        let below = b.south();
        if w.contains(&below) {
            is_bullet(below) && !w.contains(&below.south())
        } else {
            true
        }
    });
    let corners_ok = w.iter().filter(|b| is_bullet(**b)).all(|b| !w.contains(&b.east()) && !w.contains(&b.south()));
    columns_ok && corners_ok && is_short_ribbon(w)
}

/// A node of a reversal tree.
#[derive(Clone, PartialEq, Debug)]
pub struct TreeNode {
    pub tableau: GoodTableau,
    pub parent: Option<usize>,
    /// The coefficient of the parent in the forward swaps of this node
    /// (1 at the root).
    pub coeff: LaurentPoly,
    pub children: Vec<usize>,
    /// Number of families reversed to reach this node.
    pub depth: usize,
}

/// The reversal tree of a bundled tableau: nodes in breadth-first order,
/// root first.
#[derive(Clone, PartialEq, Debug)]
pub struct ReversalTree {
    pub nodes: Vec<TreeNode>,
    pub families: usize,
}

impl ReversalTree {
    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(move |n| n.depth == self.families)
    }

    /// The family reversed between a node at `depth` and its children.
    pub fn family_at(&self, depth: usize) -> usize {
        self.families - depth
    }

    /// Product of the coefficients from a node up to the root.
    pub fn path_coeff(&self, mut i: usize) -> LaurentPoly {
        let mut c = self.nodes[i].coeff.clone();
        while let Some(p) = self.nodes[i].parent {
            c = &c * &self.nodes[p].coeff;
            i = p;
        }
        c
    }

    /// The tableau of a leaf with its bullets removed: they join the inner
    /// shape.
    pub fn leaf_tableau(&self, i: usize) -> Result<GenomicTableau> {
        self.nodes[i].tableau.delete_bullets(false)
    }
}

/// Applies `swap` to a formal sum.
fn swap_sum(s: &FormalSum<GoodTableau>) -> Result<FormalSum<GoodTableau>> {
    s.map_linear(swap)
}

/// Builds the reversal tree of `u` (bundled, shape `α/λ`) inside `ν ⊇ α`.
pub fn reversal_tree(u: &GenomicTableau, nu: &Partition) -> Result<ReversalTree> {
    let shape = u.shape();
    if !nu.contains(shape.outer()) {
        return Err(Error::Jdt(format!("{nu} does not contain {}", shape.outer())));
    }
    let (content, _) = u.content_stats()?;
    let families = content.families();
    let top = Gene::new(families + 1, 1);
    let outer_shape = SkewShape::new(shape.ctx(), nu.clone(), shape.inner().clone())?;
    let extra = SkewShape::new(shape.ctx(), nu.clone(), shape.outer().clone())?.boxes();
    let mut root = u.clone().with_shape(outer_shape)?;
    for b in extra {
        root.set_entry(b, Some(CellEntry::Bullet(top)));
    }
    let root = GoodTableau::new(root, top, content.clone())?;
    let n = shape.ctx().n();
    let mut nodes =
        vec![TreeNode { tableau: root, parent: None, coeff: LaurentPoly::one(n), children: vec![], depth: 0 }];
    let mut level: Vec<usize> = vec![0];
    for depth in 0..families {
        let i = families - depth;
        let mut next_level = Vec::new();
        for &p in &level {
            let parent = nodes[p].tableau.clone();
            let kids = reverse_family(&parent, i, &content)?;
            for v in kids {
                let mut fwd = FormalSum::single(n, v.clone());
                for _ in 0..content.count(i) {
                    fwd = swap_sum(&fwd)?;
                }
                let coeff = fwd.coefficient(&parent);
                let id = nodes.len();
                nodes.push(TreeNode { tableau: v, parent: Some(p), coeff, children: vec![], depth: depth + 1 });
                nodes[p].children.push(id);
                next_level.push(id);
            }
        }
        level = next_level;
    }
    Ok(ReversalTree { nodes, families })
}

/// The support of `revswap_{i_2} ∘ ... ∘ revswap_{(i+1)_1}` applied to an
/// `(i+1)_1`-good tableau.
fn reverse_family(t: &GoodTableau, i: usize, content: &Content) -> Result<Vec<GoodTableau>> {
    let n = t.tableau().ctx().n();
    let mut cur = FormalSum::single(n, t.clone());
    for _ in 0..content.count(i) {
        let mut next = FormalSum::zero(n);
        for v in cur.support() {
            for w in revswap(v)?.support() {
                if !next.contains(w) {
                    next.add_term(w.clone(), &LaurentPoly::one(n));
                }
            }
        }
        cur = next;
    }
    Ok(cur.support().cloned().collect())
}
