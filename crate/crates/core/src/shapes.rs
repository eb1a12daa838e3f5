//! Partitions inside the `k x (n-k)` rectangle, skew shapes, Manhattan
//! distances, corner moves, region weights and Grassmannian permutations.
//!
//! Boxes are addressed `(row, col)`, 1-based, rows counted from the top.
//! Horizontal edges are addressed by the cell directly above them: the edge
//! `underline(r, c)` is the lower edge of cell `(r, c)`, and the upper edge of
//! `(r, c)` is `underline(r - 1, c)`. Row 0 names the top edge of the rectangle.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// The Grassmannian `Gr_k(C^n)`: a `k`-row, `(n-k)`-column rectangle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GrassCtx {
    k: usize,
    n: usize,
}

impl GrassCtx {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Context { k, n });
        }
        Ok(GrassCtx { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of columns `n - k`.
    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    pub fn contains_box(&self, b: BoxPos) -> bool {
        (1..=self.k).contains(&b.row) && (1..=self.cols()).contains(&b.col)
    }

    /// Every partition fitting in the rectangle, ordered by size then
    /// lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(ctx: &GrassCtx, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            out.push(Partition::new(cur.clone()).expect("weakly decreasing"));
            if cur.len() == ctx.k {
                return;
            }
            for p in 1..=max {
                cur.push(p);
                rec(ctx, p, cur, out);
                cur.pop();
            }
        }
        rec(self, self.cols(), &mut cur, &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        out
    }

    /// `Man(x) = k - row + col`: the length of a north-east lattice path from
    /// the south-west corner of the rectangle to the north-west corner of `x`.
    /// Also defined for row 0 and row `k + 1`, which edge formulas touch.
    pub fn man(&self, b: BoxPos) -> Result<usize> {
        if b.row > self.k + 1 || b.col == 0 || b.col > self.cols() {
            return Err(Error::Shape(format!("box {b} outside the {}x{} rectangle", self.k, self.cols())));
        }
        Ok(self.k + b.col - b.row)
    }

    /// The rectangle-wide weight `t_{Man(x)} / t_{Man(x)+1}` of a single box.
    pub fn box_ratio(&self, b: BoxPos) -> Result<LaurentPoly> {
        let m = self.man(b)?;
        LaurentPoly::ratio_monomial(m, m + 1, self.n)
    }
}

impl fmt::Display for GrassCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr_{}(C^{})", self.k, self.n)
    }
}

/// A box (or the cell above an edge), 1-based, rows from the top.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BoxPos {
    pub row: usize,
    pub col: usize,
}

/// A horizontal edge, named by the cell above it (`underline(row, col)`).
pub type EdgePos = BoxPos;

impl BoxPos {
    pub const fn new(row: usize, col: usize) -> Self {
        BoxPos { row, col }
    }

    pub fn east(self) -> BoxPos {
        BoxPos::new(self.row, self.col + 1)
    }

    pub fn west(self) -> Option<BoxPos> {
        (self.col > 1).then(|| BoxPos::new(self.row, self.col - 1))
    }

    pub fn north(self) -> Option<BoxPos> {
        (self.row > 1).then(|| BoxPos::new(self.row - 1, self.col))
    }

    pub fn south(self) -> BoxPos {
        BoxPos::new(self.row + 1, self.col)
    }

    /// The upper edge of this box, i.e. `underline(row - 1, col)`.
    pub fn over(self) -> EdgePos {
        BoxPos::new(self.row - 1, self.col)
    }
}

impl fmt::Display for BoxPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A partition stored as a weakly decreasing list with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Partition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parses a comma-separated list such as `"2,1"`; the empty string is the
    /// empty partition.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The `r`-th part (1-based); zero beyond the length.
    pub fn part(&self, r: usize) -> usize {
        if r == 0 {
            return usize::MAX;
        }
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// Height of column `c` (1-based).
    pub fn col_len(&self, c: usize) -> usize {
        self.0.iter().filter(|&&p| p >= c).count()
    }

    pub fn contains_cell(&self, b: BoxPos) -> bool {
        b.row >= 1 && b.col >= 1 && self.part(b.row) >= b.col
    }

    /// Containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn fits(&self, ctx: &GrassCtx) -> bool {
        self.0.len() <= ctx.k() && self.part(1) <= ctx.cols()
    }

    /// Cells of the Young diagram in row-major order.
    pub fn cells(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for (r, &p) in self.0.iter().enumerate() {
            for c in 1..=p {
                out.push(BoxPos::new(r + 1, c));
            }
        }
        out
    }

    /// Cells that can be added (one at a time) within `ctx`.
    pub fn addable_cells(&self, ctx: &GrassCtx) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for r in 1..=ctx.k() {
            let c = self.part(r) + 1;
            if c <= ctx.cols() && (r == 1 || self.part(r - 1) >= c) {
                out.push(BoxPos::new(r, c));
            }
        }
        out
    }

    /// Cells whose removal leaves a partition: the maximally south-east boxes.
    pub fn removable_cells(&self) -> Vec<BoxPos> {
        let mut out = Vec::new();
        for r in 1..=self.len() {
            let p = self.part(r);
            if self.part(r + 1) < p {
                out.push(BoxPos::new(r, p));
            }
        }
        out
    }

    fn with_cells_added(&self, cells: &[BoxPos]) -> Partition {
        let mut parts = self.0.clone();
        for b in cells {
            if parts.len() < b.row {
                parts.resize(b.row, 0);
            }
            parts[b.row - 1] += 1;
        }
        Partition::new(parts).expect("adding corners keeps a partition")
    }

    fn with_cells_removed(&self, cells: &[BoxPos]) -> Partition {
        let mut parts = self.0.clone();
        for b in cells {
            parts[b.row - 1] -= 1;
        }
        Partition::new(parts).expect("removing corners keeps a partition")
    }

    /// Removes the given removable cells.
    pub fn remove_cells(&self, cells: &[BoxPos]) -> Result<Partition> {
        let corners = self.removable_cells();
        if let Some(b) = cells.iter().find(|b| !corners.contains(b)) {
            return Err(Error::Shape(format!("{b} is not a removable cell of {self}")));
        }
        Ok(self.with_cells_removed(cells))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A skew shape `outer / inner` inside the rectangle of `ctx`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SkewShape {
    ctx: GrassCtx,
    outer: Partition,
    inner: Partition,
}

/// Checks `inner ⊆ outer ⊆ k x (n-k)` and builds the skew shape.
pub fn validate_shape(inner: &Partition, outer: &Partition, ctx: GrassCtx) -> Result<SkewShape> {
    SkewShape::new(ctx, outer.clone(), inner.clone())
}

impl SkewShape {
    pub fn new(ctx: GrassCtx, outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.fits(&ctx) {
            return Err(Error::Shape(format!("{outer} does not fit in the {}x{} rectangle", ctx.k(), ctx.cols())));
        }
        if !outer.contains(&inner) {
            return Err(Error::Shape(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewShape { ctx, outer, inner })
    }

    pub fn ctx(&self) -> GrassCtx {
        self.ctx
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn contains_box(&self, b: BoxPos) -> bool {
        self.outer.contains_cell(b) && !self.inner.contains_cell(b)
    }

    /// Boxes of the skew shape in row-major order.
    pub fn boxes(&self) -> Vec<BoxPos> {
        self.outer.cells().into_iter().filter(|b| !self.inner.contains_cell(*b)).collect()
    }

    /// Boxes of column `c`, top to bottom.
    pub fn column_boxes(&self, c: usize) -> std::ops::RangeInclusive<usize> {
        (self.inner.col_len(c) + 1)..=self.outer.col_len(c)
    }

    /// Edges that may carry labels: `underline(r, c)` for `(r, c)` a cell of
    /// the outer diagram (boxes of the shape or of `inner`) with `(r+1, c)`
    /// outside `inner`. These are the edges weakly below the border of `inner`.
    pub fn allowed_edge_positions(&self) -> BTreeSet<EdgePos> {
        let mut out = BTreeSet::new();
        for c in 1..=self.ctx.cols() {
            for r in self.column_edge_rows(c) {
                out.insert(BoxPos::new(r, c));
            }
        }
        out
    }

    /// Rows `r` such that `underline(r, c)` is an allowed edge, top to bottom.
    pub fn column_edge_rows(&self, c: usize) -> std::ops::RangeInclusive<usize> {
        let top = self.inner.col_len(c).max(1);
        top..=self.outer.col_len(c)
    }

    pub fn is_allowed_edge(&self, e: EdgePos) -> bool {
        e.col >= 1 && e.col <= self.ctx.cols() && self.column_edge_rows(e.col).contains(&e.row)
    }

    /// Removable cells of the inner shape: the places a slide may start.
    pub fn inner_corners(&self) -> Vec<BoxPos> {
        self.inner.removable_cells()
    }

    /// Removable cells of the outer shape (that are boxes of the shape).
    pub fn outer_corners(&self) -> Vec<BoxPos> {
        self.outer.removable_cells().into_iter().filter(|b| !self.inner.contains_cell(*b)).collect()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} in {}", self.outer, self.inner, self.ctx)
    }
}

/// Result of [`corner_moves`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CornerMoves {
    /// `ρ ⊋ λ` inside the rectangle with `ρ/λ` having no two boxes in a row or
    /// column.
    pub lambda_plus: Vec<Partition>,
    /// `δ ⊊ ν` with `ν/δ` having no two boxes in a row or column.
    pub nu_minus: Vec<Partition>,
    pub inner_corners: Vec<BoxPos>,
    pub outer_corners: Vec<BoxPos>,
}

/// Enumerates `λ⁺`, `ν⁻` and the inner and outer corners of `ν/λ`.
pub fn corner_moves(lambda: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<CornerMoves> {
    let shape = SkewShape::new(ctx, nu.clone(), lambda.clone())?;
    Ok(CornerMoves {
        lambda_plus: lambda_plus(lambda, ctx),
        nu_minus: nu_minus(nu),
        inner_corners: shape.inner_corners(),
        outer_corners: shape.outer_corners(),
    })
}

/// Nonempty subsets of a list, as index masks in increasing order.
fn nonempty_subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (1u32..(1 << items.len()))
        .map(|mask| {
            items.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, x)| x.clone()).collect()
        })
        .collect()
}

/// `λ⁺`: partitions obtained by adding a nonempty set of addable cells.
pub fn lambda_plus(lambda: &Partition, ctx: GrassCtx) -> Vec<Partition> {
    let mut out: Vec<Partition> = nonempty_subsets(&lambda.addable_cells(&ctx))
        .iter()
        .map(|cells| lambda.with_cells_added(cells))
        .collect();
    out.sort();
    out
}

/// `ν⁻`: partitions obtained by removing a nonempty set of removable cells.
pub fn nu_minus(nu: &Partition) -> Vec<Partition> {
    let mut out: Vec<Partition> = nonempty_subsets(&nu.removable_cells())
        .iter()
        .map(|cells| nu.with_cells_removed(cells))
        .collect();
    out.sort();
    out
}

/// `wt D = prod_{x in D} t_{Man(x)} / t_{Man(x)+1}`.
pub fn wt_region(cells: &[BoxPos], ctx: GrassCtx) -> Result<LaurentPoly> {
    let mut e = vec![0i32; ctx.n()];
    for &b in cells {
        if !ctx.contains_box(b) {
            return Err(Error::Shape(format!("box {b} outside the rectangle")));
        }
        let m = ctx.man(b)?;
        e[m - 1] += 1;
        e[m] -= 1;
    }
    Ok(LaurentPoly::monomial(e, 1))
}

/// `wt(outer/inner)` for partitions `inner ⊆ outer`.
pub fn wt_skew(outer: &Partition, inner: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    let shape = SkewShape::new(ctx, outer.clone(), inner.clone())?;
    wt_region(&shape.boxes(), ctx)
}

/// The Grassmannian permutation of `λ ⊆ k x (n-k)` in one-line notation:
/// `π(i) = i + λ_{k-i+1}` for `i <= k`, the remaining values increasing.
pub fn grassmannian_permutation(lambda: &Partition, ctx: GrassCtx) -> Result<Vec<usize>> {
    if !lambda.fits(&ctx) {
        return Err(Error::Shape(format!("{lambda} does not fit in the {}x{} rectangle", ctx.k(), ctx.cols())));
    }
    let k = ctx.k();
    let mut perm: Vec<usize> = (1..=k).map(|i| i + lambda.part(k - i + 1)).collect();
    let used: BTreeSet<usize> = perm.iter().copied().collect();
    perm.extend((1..=ctx.n()).filter(|v| !used.contains(v)));
    Ok(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    fn ctx(k: usize, n: usize) -> GrassCtx {
        GrassCtx::new(k, n).unwrap()
    }

    #[test]
    fn contexts_and_partitions() {
        assert!(GrassCtx::new(0, 3).is_err());
        assert!(GrassCtx::new(3, 3).is_err());
        assert_eq!(p("3,2,0"), p("3,2"));
        assert!(Partition::parse("1,2").is_err());
        assert!(p("").is_empty());
        assert_eq!(p("3,1,1").conjugate(), p("3,1,1"));
        assert_eq!(p("4,2,1").conjugate(), p("3,2,1,1"));
        assert_eq!(ctx(2, 4).partitions().len(), 6);
        assert_eq!(ctx(3, 6).partitions().len(), 20);
    }

    #[test]
    fn validate_shape_examples() {
        assert!(validate_shape(&p("2"), &p("2,2"), ctx(2, 4)).is_ok());
        assert!(validate_shape(&p("2,2"), &p("2"), ctx(2, 4)).is_err());
        assert!(validate_shape(&p("3"), &p("3,1"), ctx(2, 4)).is_err());
    }

    #[test]
    fn manhattan_distance() {
        assert_eq!(ctx(1, 2).man(BoxPos::new(1, 1)).unwrap(), 1);
        assert_eq!(ctx(2, 4).man(BoxPos::new(2, 2)).unwrap(), 2);
        // Bottom of the column with right-indexed label c' for λ = (4,2,1):
        // Man = (n-k-c') + (k - λ'_{n-k+1-c'} + 1).
        let g = ctx(3, 7);
        let lam = p("4,2,1");
        let conj = lam.conjugate();
        for cp in 1..=4 {
            let col = 5 - cp;
            let bottom = BoxPos::new(conj.part(col), col);
            assert_eq!(g.man(bottom).unwrap(), (4 - cp) + (3 - conj.part(col) + 1));
        }
        for r in 1..=3 {
            for c in 1..=4 {
                let m = g.man(BoxPos::new(r, c)).unwrap();
                if c < 4 {
                    assert_eq!(g.man(BoxPos::new(r, c + 1)).unwrap(), m + 1);
                }
                if r > 1 {
                    assert_eq!(g.man(BoxPos::new(r - 1, c)).unwrap(), m + 1);
                }
            }
        }
    }

    /// λ⁺ by brute force: every ρ ⊋ λ in the rectangle whose difference has
    /// no two boxes in one row or column.
    fn brute_plus(lambda: &Partition, g: GrassCtx) -> Vec<Partition> {
        let mut out: Vec<Partition> = g
            .partitions()
            .into_iter()
            .filter(|rho| rho != lambda && rho.contains(lambda))
            .filter(|rho| {
                let cells: Vec<BoxPos> =
                    rho.cells().into_iter().filter(|b| !lambda.contains_cell(*b)).collect();
                let rows: BTreeSet<usize> = cells.iter().map(|b| b.row).collect();
                let cols: BTreeSet<usize> = cells.iter().map(|b| b.col).collect();
                rows.len() == cells.len() && cols.len() == cells.len()
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn corner_move_examples() {
        assert_eq!(lambda_plus(&p("2"), ctx(2, 4)), vec![p("2,1")]);
        assert_eq!(nu_minus(&p("2,2")), vec![p("2,1")]);
        assert_eq!(lambda_plus(&p(""), ctx(1, 2)), vec![p("1")]);
        for g in [ctx(2, 4), ctx(2, 5), ctx(3, 6)] {
            for lam in g.partitions() {
                let plus = lambda_plus(&lam, g);
                assert_eq!(plus, brute_plus(&lam, g));
                for rho in &plus {
                    assert!(rho.size() - lam.size() <= g.k().min(g.cols()));
                }
            }
        }
        let m = corner_moves(&p("1"), &p("3,2"), ctx(2, 5)).unwrap();
        assert_eq!(m.inner_corners, vec![BoxPos::new(1, 1)]);
        assert_eq!(m.outer_corners, vec![BoxPos::new(1, 3), BoxPos::new(2, 2)]);
    }

    #[test]
    fn region_weights() {
        let g = ctx(2, 4);
        assert!(wt_region(&[], g).unwrap().is_one());
        let d = wt_skew(&p("2,2"), &p("2"), g).unwrap();
        assert_eq!(d, LaurentPoly::ratio_monomial(1, 3, 4).unwrap());
        assert_eq!(
            wt_region(&[BoxPos::new(1, 1)], ctx(1, 2)).unwrap(),
            LaurentPoly::ratio_monomial(1, 2, 2).unwrap()
        );
    }

    #[test]
    fn grassmannian_permutations() {
        // λ' = (3,2,1,1) in the 4x3 rectangle of the conjugate Grassmannian.
        let w = grassmannian_permutation(&p("3,2,1,1"), ctx(4, 7)).unwrap();
        assert_eq!(w, vec![2, 3, 5, 7, 1, 4, 6]);
        assert_eq!(grassmannian_permutation(&p(""), ctx(2, 5)).unwrap(), vec![1, 2, 3, 4, 5]);
        let full = grassmannian_permutation(&p("3,3"), ctx(2, 5)).unwrap();
        assert_eq!(full, vec![4, 5, 1, 2, 3]);
        assert!(grassmannian_permutation(&p("4"), ctx(2, 5)).is_err());
    }

    #[test]
    fn allowed_edges() {
        let s = validate_shape(&p("1"), &p("1"), ctx(1, 2)).unwrap();
        assert_eq!(s.allowed_edge_positions().into_iter().collect::<Vec<_>>(), vec![BoxPos::new(1, 1)]);
        let s = validate_shape(&p("2"), &p("2,2"), ctx(2, 4)).unwrap();
        let expect: BTreeSet<_> =
            [(1, 1), (1, 2), (2, 1), (2, 2)].iter().map(|&(r, c)| BoxPos::new(r, c)).collect();
        assert_eq!(s.allowed_edge_positions(), expect);
        let s = validate_shape(&p("4,2,1"), &p("4,2,1"), ctx(3, 7)).unwrap();
        let expect: BTreeSet<_> =
            [(3, 1), (2, 2), (1, 3), (1, 4)].iter().map(|&(r, c)| BoxPos::new(r, c)).collect();
        assert_eq!(s.allowed_edge_positions(), expect);
        for g in [ctx(2, 4), ctx(3, 6)] {
            for nu in g.partitions() {
                for lam in g.partitions().into_iter().filter(|l| nu.contains(l)) {
                    let s = validate_shape(&lam, &nu, g).unwrap();
                    let edges = s.allowed_edge_positions();
                    assert!(s.boxes().iter().all(|b| edges.contains(b)));
                }
            }
        }
    }
}
