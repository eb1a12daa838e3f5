//! Equivariant increasing tableaux and their K-theoretic rectification.
//!
//! An increasing tableau fills a skew shape with integers `1..=m` (boxes and
//! lower edges) so that box labels strictly increase along rows and all
//! labels strictly increase down columns. Boxes may carry stars. Slides are
//! performed by switching a bullet past each label value in turn, and the
//! coefficient sums signed products of per-label factors over the tableaux
//! that rectify to the superstandard tableau `T_μ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Gene, GenomicTableau, Pos};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, EdgePos, GrassCtx, Partition, SkewShape};

/// An edge-labeled increasing filling with optional stars on boxes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct EqIncTableau {
    pub shape: SkewShape,
    pub boxes: BTreeMap<BoxPos, usize>,
    pub stars: BTreeSet<BoxPos>,
    pub edges: BTreeMap<EdgePos, BTreeSet<usize>>,
    /// Labels are drawn from `1..=m`.
    pub m: usize,
}

impl EqIncTableau {
    /// A star-free tableau; empty edge sets are dropped.
    pub fn new(
        shape: SkewShape,
        boxes: BTreeMap<BoxPos, usize>,
        edges: BTreeMap<EdgePos, BTreeSet<usize>>,
        m: usize,
    ) -> Self {
        let edges = edges.into_iter().filter(|(_, s)| !s.is_empty()).collect();
        EqIncTableau { shape, boxes, stars: BTreeSet::new(), edges, m }
    }

    pub fn ctx(&self) -> GrassCtx {
        self.shape.ctx()
    }

    /// The superstandard tableau of shape `μ`: row `i` holds `μ[i]`.
    pub fn superstandard(mu: &Partition, ctx: GrassCtx) -> Result<Self> {
        let shape = SkewShape::new(ctx, mu.clone(), Partition::empty())?;
        let mut boxes = BTreeMap::new();
        let mut next = 1;
        for (i, &len) in mu.parts().iter().enumerate() {
            for c in 1..=len {
                boxes.insert(BoxPos::new(i + 1, c), next);
                next += 1;
            }
        }
        Ok(EqIncTableau::new(shape, boxes, BTreeMap::new(), mu.size()))
    }

    /// Total number of labels, box and edge.
    pub fn num_labels(&self) -> usize {
        self.boxes.len() + self.edges.values().map(|s| s.len()).sum::<usize>()
    }

    /// Labels of column `c` from top to bottom, edge labels in increasing order.
    pub fn column_sequence(&self, c: usize) -> Vec<(Pos, usize)> {
        let mut out = Vec::new();
        let rows = self.shape.outer().col_len(c);
        for r in 0..=rows {
            if r >= 1 {
                if let Some(&v) = self.boxes.get(&BoxPos::new(r, c)) {
                    out.push((Pos::Box(BoxPos::new(r, c)), v));
                }
            }
            if let Some(s) = self.edges.get(&BoxPos::new(r, c)) {
                out.extend(s.iter().map(|&v| (Pos::Edge(BoxPos::new(r, c)), v)));
            }
        }
        out
    }

    /// Box `x` may carry a star unless `lab(x) + 1` is a box label of the same row.
    pub fn star_allowed(&self, x: BoxPos) -> bool {
        match self.boxes.get(&x) {
            None => false,
            Some(&v) => !self.boxes.iter().any(|(b, &w)| b.row == x.row && w == v + 1),
        }
    }

    /// Violations of the increasing and star conditions; empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let cells: BTreeSet<BoxPos> = self.shape.boxes().into_iter().collect();
        let filled: BTreeSet<BoxPos> = self.boxes.keys().copied().collect();
        if cells != filled {
            out.push("box labels do not fill the shape exactly".to_string());
        }
        for (e, s) in &self.edges {
            if !s.is_empty() && !self.shape.is_allowed_edge(*e) {
                out.push(format!("edge under {e} is not allowed"));
            }
        }
        let all = self.boxes.values().chain(self.edges.values().flatten());
        if all.clone().any(|&v| v == 0 || v > self.m) {
            out.push(format!("label outside 1..={}", self.m));
        }
        for (b, &v) in &self.boxes {
            if let Some(&w) = self.boxes.get(&b.east()) {
                if v >= w {
                    out.push(format!("row not increasing at {b}"));
                }
            }
        }
        for c in 1..=self.ctx().cols() {
            let seq = self.column_sequence(c);
            if seq.windows(2).any(|w| w[0].1 >= w[1].1) {
                out.push(format!("column {c} not increasing"));
            }
        }
        for x in &self.stars {
            if !self.star_allowed(*x) {
                out.push(format!("star at {x} not allowed"));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// Every box that may legally carry a star.
    pub fn starrable_boxes(&self) -> Vec<BoxPos> {
        self.boxes.keys().copied().filter(|&b| self.star_allowed(b)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.ctx().k(),
            "n": self.ctx().n(),
            "outer": self.shape.outer().parts(),
            "inner": self.shape.inner().parts(),
            "m": self.m,
            "boxes": self.boxes.iter().map(|(b, v)| json!({"r": b.row, "c": b.col, "label": v, "star": self.stars.contains(b)})).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(e, s)| json!({"r": e.row, "c": e.col, "labels": s.iter().collect::<Vec<_>>()})).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for EqIncTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .boxes
            .iter()
            .map(|(b, v)| format!("{b}={v}{}", if self.stars.contains(b) { "*" } else { "" }))
            .chain(self.edges.iter().map(|(e, s)| format!("_{e}={s:?}")))
            .collect();
        write!(f, "{} [{}]", self.shape, parts.join(" "))
    }
}

/// `μ[i]`: the labels `μ_1 + … + μ_{i-1} + 1 ..= μ_1 + … + μ_i`.
fn label_gene(mu: &Partition, v: usize) -> Option<Gene> {
    let mut start = 0;
    for (i, &len) in mu.parts().iter().enumerate() {
        if v > start && v <= start + len {
            return Some(Gene::new(i + 1, v - start));
        }
        start += len;
    }
    None
}

fn gene_label(mu: &Partition, g: Gene) -> Option<usize> {
    if g.family == 0 || g.family > mu.len() || g.index == 0 || g.index > mu.part(g.family) {
        return None;
    }
    Some(mu.parts()[..g.family - 1].iter().sum::<usize>() + g.index)
}

/// `Φ`: forget stars and replace the labels of `μ[i]` by `i_1, i_2, …`.
pub fn phi(t: &EqIncTableau, mu: &Partition) -> Result<GenomicTableau> {
    let conv = |v: usize| label_gene(mu, v).ok_or_else(|| Error::Tableau(format!("label {v} exceeds |{mu}|")));
    let mut boxes = BTreeMap::new();
    for (b, &v) in &t.boxes {
        boxes.insert(*b, CellEntry::Label(conv(v)?));
    }
    let mut edges = BTreeMap::new();
    for (e, s) in &t.edges {
        edges.insert(*e, s.iter().map(|&v| conv(v)).collect::<Result<BTreeSet<Gene>>>()?);
    }
    GenomicTableau::new(t.shape.clone(), boxes, edges)
}

/// `Ψ`: the star-free increasing tableau whose `Φ` image is `b`.
pub fn psi(b: &GenomicTableau, mu: &Partition) -> Result<EqIncTableau> {
    let conv = |g: Gene| gene_label(mu, g).ok_or_else(|| Error::Tableau(format!("gene {g} outside content {mu}")));
    let mut boxes = BTreeMap::new();
    for (x, entry) in b.boxes() {
        let g = entry.label().ok_or_else(|| Error::Tableau("bullet in standardization input".into()))?;
        boxes.insert(*x, conv(g)?);
    }
    let mut edges = BTreeMap::new();
    for (e, s) in b.edges() {
        edges.insert(*e, s.iter().map(|&g| conv(g)).collect::<Result<BTreeSet<usize>>>()?);
    }
    Ok(EqIncTableau::new(b.shape().clone(), boxes, edges, mu.size()))
}

/// Contents of a box during a slide.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slot {
    Bullet,
    Num(usize),
}

/// One tableau `V_j` of a switch sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SwitchState {
    pub boxes: BTreeMap<BoxPos, Slot>,
    pub edges: BTreeMap<EdgePos, BTreeSet<usize>>,
    /// `j`: labels below `j` have been switched past.
    pub step: usize,
}

impl SwitchState {
    fn holds(&self, b: BoxPos, s: Slot) -> bool {
        self.boxes.get(&b) == Some(&s)
    }

    fn edge_has(&self, e: EdgePos, v: usize) -> bool {
        self.edges.get(&e).is_some_and(|s| s.contains(&v))
    }

    /// Switches the bullets with the label `j` on every alternating ribbon at once.
    fn switch(&mut self, j: usize) {
        let old = self.boxes.clone();
        let old_state = SwitchState { boxes: old.clone(), edges: BTreeMap::new(), step: self.step };
        for (&b, &s) in &old {
            match s {
                Slot::Bullet => {
                    let from_edge = self.edge_has(b, j);
                    if old_state.holds(b.east(), Slot::Num(j)) || old_state.holds(b.south(), Slot::Num(j)) || from_edge {
                        self.boxes.insert(b, Slot::Num(j));
                        if from_edge {
                            let e = self.edges.get_mut(&b).expect("edge present");
                            e.remove(&j);
                            if e.is_empty() {
                                self.edges.remove(&b);
                            }
                        }
                    }
                }
                Slot::Num(v) if v == j => {
                    let west = b.west().is_some_and(|w| old_state.holds(w, Slot::Bullet));
                    let north = b.north().is_some_and(|u| old_state.holds(u, Slot::Bullet));
                    if west || north {
                        self.boxes.insert(b, Slot::Bullet);
                    }
                }
                _ => {}
            }
        }
        self.step = j + 1;
    }

    /// The numbered positions with their labels, edges included.
    fn numbered(&self) -> Vec<(Pos, usize)> {
        let mut out: Vec<(Pos, usize)> = self
            .boxes
            .iter()
            .filter_map(|(b, s)| match s {
                Slot::Num(v) => Some((Pos::Box(*b), *v)),
                Slot::Bullet => None,
            })
            .collect();
        for (e, s) in &self.edges {
            out.extend(s.iter().map(|&v| (Pos::Edge(*e), v)));
        }
        out
    }

    /// Rows and columns strictly increase ignoring bullets; labels weakly
    /// south-east of a bullet are at least `j` and those weakly north-west
    /// of a bullet are below `j`.
    pub fn check_invariants(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::Jdt(format!("switch invariant {what} fails at step {}", self.step)));
        let nums = self.numbered();
        let bullets: Vec<BoxPos> = self.boxes.iter().filter(|(_, s)| **s == Slot::Bullet).map(|(b, _)| *b).collect();
        for &(p, v) in &nums {
            for &(q, w) in &nums {
                if let (Pos::Box(a), Pos::Box(b)) = (p, q) {
                    if a.row == b.row && a.col < b.col && v >= w {
                        return bad("(I)");
                    }
                }
                if p.col() == q.col() && p.height_key() < q.height_key() && v >= w {
                    return bad("(II)");
                }
            }
            for &x in &bullets {
                let se = p.col() >= x.col && p.height_key() > 2 * x.row;
                let nw = p.col() <= x.col && p.height_key() < 2 * x.row;
                if se && v < self.step {
                    return bad("(III)");
                }
                if nw && v >= self.step {
                    return bad("(IV)");
                }
            }
        }
        Ok(())
    }
}

/// The pass-through record of one label instance during rectification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabelTrace {
    pub start: Pos,
    pub value: usize,
    /// `x_1, …, x_s`: boxes entered by north moves within the starting column.
    pub passes: Vec<BoxPos>,
    /// `y_1, …, y_t`: numbered boxes east of `x_s` in its row once the
    /// column's rectification is over.
    pub east: Vec<BoxPos>,
}

impl LabelTrace {
    /// `1 - prod β̂(x_i) prod β̂(y_j)`, or `0` if the label never moved.
    pub fn factor(&self, ctx: GrassCtx) -> Result<LaurentPoly> {
        if self.passes.is_empty() {
            return Ok(LaurentPoly::zero(ctx.n()));
        }
        let mut m = LaurentPoly::one(ctx.n());
        for b in self.passes.iter().chain(self.east.iter()) {
            m = &m * &ctx.box_ratio(*b)?;
        }
        Ok(&LaurentPoly::one(ctx.n()) - &m)
    }
}

struct Tracked {
    trace: LabelTrace,
    cur: Pos,
    block: usize,
    active: bool,
}

/// A tableau mid-rectification together with its shape.
struct Grid {
    ctx: GrassCtx,
    inner: Partition,
    outer: Partition,
    state: SwitchState,
    m: usize,
}

impl Grid {
    fn from_tableau(t: &EqIncTableau) -> Self {
        Grid {
            ctx: t.ctx(),
            inner: t.shape.inner().clone(),
            outer: t.shape.outer().clone(),
            state: SwitchState {
                boxes: t.boxes.iter().map(|(b, v)| (*b, Slot::Num(*v))).collect(),
                edges: t.edges.clone(),
                step: 1,
            },
            m: t.m,
        }
    }

    fn to_tableau(&self) -> Result<EqIncTableau> {
        let shape = SkewShape::new(self.ctx, self.outer.clone(), self.inner.clone())?;
        let mut boxes = BTreeMap::new();
        for (b, s) in &self.state.boxes {
            match s {
                Slot::Num(v) => {
                    boxes.insert(*b, *v);
                }
                Slot::Bullet => return Err(Error::Jdt(format!("bullet left at {b}"))),
            }
        }
        Ok(EqIncTableau::new(shape, boxes, self.state.edges.clone(), self.m))
    }

    fn finalize(&self, t: &mut Tracked) {
        if !t.active {
            return;
        }
        t.active = false;
        if let Some(&last) = t.trace.passes.last() {
            t.trace.east = self
                .state
                .boxes
                .iter()
                .filter(|(b, s)| b.row == last.row && b.col > last.col && matches!(s, Slot::Num(_)))
                .map(|(b, _)| *b)
                .collect();
        }
    }

    /// `KEqjdt_x`, updating traces and optionally recording each `V_j`.
    fn slide(&mut self, x: BoxPos, tracked: &mut [Tracked], mut record: Option<&mut Vec<SwitchState>>) -> Result<()> {
        if !self.inner.removable_cells().contains(&x) {
            return Err(Error::Jdt(format!("{x} is not an inner corner of {}", self.inner)));
        }
        for t in tracked.iter_mut() {
            if x.col < t.block {
                self.finalize(t);
            }
        }
        self.state.boxes.insert(x, Slot::Bullet);
        self.state.step = 1;
        if let Some(r) = record.as_deref_mut() {
            r.push(self.state.clone());
        }
        for j in 1..=self.m {
            self.state.switch(j);
            for t in tracked.iter_mut().filter(|t| t.active && t.trace.value == j) {
                match t.cur {
                    Pos::Edge(e) => {
                        if !self.state.edge_has(e, j) {
                            t.cur = Pos::Box(e);
                            t.trace.passes.push(e);
                        }
                    }
                    Pos::Box(b) => {
                        if !self.state.holds(b, Slot::Num(j)) {
                            match b.north() {
                                Some(u) if self.state.holds(u, Slot::Num(j)) => {
                                    t.cur = Pos::Box(u);
                                    t.trace.passes.push(u);
                                }
                                _ => {
                                    let Some(w) = b.west().filter(|w| self.state.holds(*w, Slot::Num(j))) else {
                                        return Err(Error::Jdt(format!("label {j} at {b} vanished")));
                                    };
                                    self.finalize(t);
                                    t.cur = Pos::Box(w);
                                }
                            }
                        }
                    }
                }
            }
            if let Some(r) = record.as_deref_mut() {
                r.push(self.state.clone());
            }
        }
        let gone: Vec<BoxPos> = self.state.boxes.iter().filter(|(_, s)| **s == Slot::Bullet).map(|(b, _)| *b).collect();
        for b in &gone {
            self.state.boxes.remove(b);
        }
        self.inner = self.inner.remove_cells(&[x])?;
        self.outer = self.outer.remove_cells(&gone)?;
        Ok(())
    }
}

/// `KEqjdt_x(T)`: stars are erased and a bullet placed at the inner corner `x`
/// is switched past every label value in increasing order.
pub fn keqjdt(t: &EqIncTableau, x: BoxPos) -> Result<EqIncTableau> {
    let mut g = Grid::from_tableau(t);
    g.slide(x, &mut [], None)?;
    g.to_tableau()
}

/// The switch sequence `V_1, V_2, …` of `(T, x)`, with every state checked
/// against the switch invariants.
pub fn switch_sequence(t: &EqIncTableau, x: BoxPos) -> Result<Vec<SwitchState>> {
    let mut g = Grid::from_tableau(t);
    let mut seq = Vec::new();
    g.slide(x, &mut [], Some(&mut seq))?;
    for s in &seq {
        s.check_invariants()?;
    }
    Ok(seq)
}

/// The outcome of column rectification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rectification {
    pub rectified: EqIncTableau,
    /// One trace per label instance of the input, box labels first.
    pub traces: Vec<LabelTrace>,
}

impl Rectification {
    pub fn trace_at(&self, start: Pos, value: usize) -> Option<&LabelTrace> {
        self.traces.iter().find(|t| t.start == start && t.value == value)
    }
}

/// `KEqrect(T)`: slides into the eastmost inner corner until none is left,
/// tracing every label. With `check`, each switch state is verified.
pub fn keqrect_with(t: &EqIncTableau, check: bool) -> Result<Rectification> {
    let mut g = Grid::from_tableau(t);
    let mut tracked: Vec<Tracked> = Vec::new();
    let mut add = |p: Pos, v: usize| {
        tracked.push(Tracked {
            trace: LabelTrace { start: p, value: v, passes: Vec::new(), east: Vec::new() },
            cur: p,
            block: p.col(),
            active: true,
        })
    };
    for (b, &v) in &t.boxes {
        add(Pos::Box(*b), v);
    }
    for (e, s) in &t.edges {
        for &v in s {
            add(Pos::Edge(*e), v);
        }
    }
    while let Some(x) = g.inner.removable_cells().into_iter().max_by_key(|b| b.col) {
        if check {
            let mut seq = Vec::new();
            g.slide(x, &mut tracked, Some(&mut seq))?;
            for s in &seq {
                s.check_invariants()?;
            }
        } else {
            g.slide(x, &mut tracked, None)?;
        }
    }
    for tr in tracked.iter_mut() {
        g.finalize(tr);
    }
    Ok(Rectification { rectified: g.to_tableau()?, traces: tracked.into_iter().map(|t| t.trace).collect() })
}

pub fn keqrect(t: &EqIncTableau) -> Result<Rectification> {
    keqrect_with(t, false)
}

/// `sgn(T) = (-1)^{|μ| - #stars - #labels}`.
pub fn ty_sign(t: &EqIncTableau) -> i64 {
    let e = t.m as i64 - t.stars.len() as i64 - t.num_labels() as i64;
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `sgn(T) · wt_K(T)`, the product running over edge labels and starred boxes.
pub fn ty_weight(t: &EqIncTableau, rect: &Rectification) -> Result<LaurentPoly> {
    let ctx = t.ctx();
    let mut w = LaurentPoly::constant(ctx.n(), ty_sign(t));
    let missing = || Error::Jdt("trace missing for a special label".into());
    for (e, s) in &t.edges {
        for &v in s {
            w = &w * &rect.trace_at(Pos::Edge(*e), v).ok_or_else(missing)?.factor(ctx)?;
        }
    }
    for b in &t.stars {
        let v = t.boxes[b];
        w = &w * &rect.trace_at(Pos::Box(*b), v).ok_or_else(missing)?.factor(ctx)?;
    }
    Ok(w)
}

/// One member of `𝒜` with its signed weight.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TyTerm {
    pub tableau: EqIncTableau,
    pub weight: LaurentPoly,
}

fn family_of_label(mu: &Partition, v: usize) -> usize {
    label_gene(mu, v).map_or(usize::MAX, |g| g.family)
}

/// Star-free increasing fillings of `ν/λ` with labels `1..=|μ|` that can
/// rectify to `T_μ`: each label is used, no label of `μ[i]` sits above row
/// `i` (slides only move labels north and west), and each `μ[i]` forms a
/// horizontal strip (a property preserved by every switch and held by `T_μ`).
pub fn enumerate_skeletons(shape: &SkewShape, mu: &Partition) -> Vec<EqIncTableau> {
    let m = mu.size();
    let ctx = shape.ctx();
    let mut slots: Vec<Pos> = Vec::new();
    for c in 1..=ctx.cols() {
        let mut col: Vec<Pos> = shape.column_boxes(c).map(|r| Pos::Box(BoxPos::new(r, c))).collect();
        col.extend(shape.column_edge_rows(c).map(|r| Pos::Edge(BoxPos::new(r, c))));
        col.sort_by_key(|p| p.height_key());
        slots.extend(col);
    }
    struct S<'a> {
        slots: Vec<Pos>,
        mu: &'a Partition,
        m: usize,
        boxes: BTreeMap<BoxPos, usize>,
        edges: BTreeMap<EdgePos, BTreeSet<usize>>,
        used: Vec<usize>,
        strip: Vec<Option<(usize, usize, usize)>>,
        out: Vec<EqIncTableau>,
        shape: SkewShape,
    }
    impl S<'_> {
        fn column_max(&self, upto: usize) -> usize {
            let p = self.slots[upto];
            let mut best = 0;
            for q in self.slots[..upto].iter().rev() {
                if q.col() != p.col() {
                    break;
                }
                let v = match q {
                    Pos::Box(b) => self.boxes.get(b).copied().unwrap_or(0),
                    Pos::Edge(e) => self.edges.get(e).and_then(|s| s.iter().next_back().copied()).unwrap_or(0),
                };
                best = best.max(v);
            }
            best
        }

        /// Whether `v` at `p` keeps `μ[family(v)]` a horizontal strip: one
        /// label per column, weakly increasing and weakly rising from west
        /// to east.
        fn strip_ok(&self, v: usize, p: Pos) -> bool {
            let f = family_of_label(self.mu, v);
            match self.strip[f] {
                None => true,
                Some((c, h, w)) => c < p.col() && w <= v && h >= p.height_key(),
            }
        }

        fn place(&mut self, v: usize, p: Pos) -> Option<(usize, usize, usize)> {
            let f = family_of_label(self.mu, v);
            self.used[v] += 1;
            self.strip[f].replace((p.col(), p.height_key(), v))
        }

        fn unplace(&mut self, v: usize, prev: Option<(usize, usize, usize)>) {
            let f = family_of_label(self.mu, v);
            self.used[v] -= 1;
            self.strip[f] = prev;
        }

        fn rec(&mut self, i: usize) {
            if i == self.slots.len() {
                if self.used[1..].iter().all(|&u| u > 0) {
                    self.out.push(EqIncTableau::new(self.shape.clone(), self.boxes.clone(), self.edges.clone(), self.m));
                }
                return;
            }
            let lo = self.column_max(i) + 1;
            let p = self.slots[i];
            match p {
                Pos::Box(b) => {
                    let west = b.west().and_then(|w| self.boxes.get(&w).copied()).unwrap_or(0);
                    for v in lo.max(west + 1)..=self.m {
                        if family_of_label(self.mu, v) > b.row || !self.strip_ok(v, p) {
                            continue;
                        }
                        self.boxes.insert(b, v);
                        let prev = self.place(v, p);
                        self.rec(i + 1);
                        self.unplace(v, prev);
                    }
                    self.boxes.remove(&b);
                }
                Pos::Edge(e) => {
                    let cand: Vec<usize> =
                        (lo..=self.m).filter(|&v| family_of_label(self.mu, v) <= e.row && self.strip_ok(v, p)).collect();
                    'masks: for mask in 0u64..(1 << cand.len()) {
                        let set: Vec<usize> =
                            cand.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &v)| v).collect();
                        for w in set.windows(2) {
                            if family_of_label(self.mu, w[0]) == family_of_label(self.mu, w[1]) {
                                continue 'masks;
                            }
                        }
                        let prevs: Vec<_> = set.iter().map(|&v| self.place(v, p)).collect();
                        if !set.is_empty() {
                            self.edges.insert(e, set.iter().copied().collect());
                        }
                        self.rec(i + 1);
                        self.edges.remove(&e);
                        for (&v, prev) in set.iter().zip(prevs).rev() {
                            self.unplace(v, prev);
                        }
                    }
                }
            }
        }
    }
    let mut s = S {
        slots,
        mu,
        m,
        boxes: BTreeMap::new(),
        edges: BTreeMap::new(),
        used: vec![0; m + 1],
        strip: vec![None; mu.len() + 1],
        out: Vec::new(),
        shape: shape.clone(),
    };
    s.rec(0);
    s.out
}

/// Every `T ∈ 𝒜`: increasing tableaux of `ν/λ` rectifying to `T_μ`, with all
/// legal star subsets, paired with `sgn(T) · wt_K(T)`. Zero terms are kept.
pub fn ty_terms(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<Vec<TyTerm>> {
    if !nu.contains(lambda) || !mu.fits(&ctx) {
        return Ok(Vec::new());
    }
    let shape = SkewShape::new(ctx, nu.clone(), lambda.clone())?;
    let target = EqIncTableau::superstandard(mu, ctx)?;
    let mut out = Vec::new();
    for skel in enumerate_skeletons(&shape, mu) {
        let rect = keqrect(&skel)?;
        if rect.rectified != target {
            continue;
        }
        let starrable = skel.starrable_boxes();
        for mask in 0u64..(1 << starrable.len()) {
            let mut t = skel.clone();
            t.stars = starrable.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, b)| *b).collect();
            let weight = ty_weight(&t, &rect)?;
            out.push(TyTerm { tableau: t, weight });
        }
    }
    Ok(out)
}

/// `Σ_{T ∈ 𝒜} sgn(T) · wt_K(T)`.
pub fn ty_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition, ctx: GrassCtx) -> Result<LaurentPoly> {
    let mut sum = LaurentPoly::zero(ctx.n());
    for term in ty_terms(lambda, mu, nu, ctx)? {
        sum += &term.weight;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genomic::Content;
    use crate::rule::{rule_tableaux, structure_constant};
    use crate::weights::{box_weight, productive_plain, weight, WeightContext, WeightMode};

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn superstandard_is_valid_and_fixed() {
        let ctx = GrassCtx::new(2, 5).unwrap();
        let t = EqIncTableau::superstandard(&p("3,1"), ctx).unwrap();
        assert!(t.is_valid());
        let r = keqrect(&t).unwrap();
        assert_eq!(r.rectified, t);
        assert!(r.traces.iter().all(|tr| tr.passes.is_empty()));
    }

    #[test]
    fn star_rule() {
        let ctx = GrassCtx::new(1, 4).unwrap();
        let mut t = EqIncTableau::superstandard(&p("2"), ctx).unwrap();
        t.stars.insert(BoxPos::new(1, 1));
        assert!(!t.is_valid());
        t.stars = [BoxPos::new(1, 2)].into_iter().collect();
        assert!(t.is_valid());
    }

    #[test]
    fn switch_ribbon_example() {
        // Bullets play one symbol and the label 1 the other.
        let mut s = SwitchState {
            boxes: [
                (BoxPos::new(1, 2), Slot::Bullet),
                (BoxPos::new(1, 3), Slot::Num(1)),
                (BoxPos::new(2, 1), Slot::Bullet),
                (BoxPos::new(2, 2), Slot::Num(1)),
            ]
            .into_iter()
            .collect(),
            edges: [(BoxPos::new(2, 1), [1].into_iter().collect())].into_iter().collect(),
            step: 1,
        };
        s.switch(1);
        let expect: BTreeMap<BoxPos, Slot> = [
            (BoxPos::new(1, 2), Slot::Num(1)),
            (BoxPos::new(1, 3), Slot::Bullet),
            (BoxPos::new(2, 1), Slot::Num(1)),
            (BoxPos::new(2, 2), Slot::Bullet),
        ]
        .into_iter()
        .collect();
        assert_eq!(s.boxes, expect);
        assert!(s.edges.is_empty());
        let mut lone = SwitchState { boxes: [(BoxPos::new(1, 1), Slot::Bullet)].into_iter().collect(), edges: BTreeMap::new(), step: 1 };
        lone.switch(1);
        assert_eq!(lone.boxes[&BoxPos::new(1, 1)], Slot::Bullet);
    }

    #[test]
    fn psi_phi_round_trip() {
        let ctx = GrassCtx::new(2, 4).unwrap();
        let mu = p("2,1");
        for b in rule_tableaux(&p("2"), &mu, &p("2,2"), ctx).unwrap() {
            let a = psi(&b, &mu).unwrap();
            assert!(a.is_valid(), "{a}");
            assert_eq!(phi(&a, &mu).unwrap(), b);
            let r = keqrect_with(&a, true).unwrap();
            assert_eq!(r.rectified, EqIncTableau::superstandard(&mu, ctx).unwrap());
        }
        let shape = SkewShape::new(ctx, p("2,2"), p("2")).unwrap();
        let g = Gene::new;
        let t1 = GenomicTableau::from_labels(shape, &[((2, 1), g(1, 1)), ((2, 2), g(1, 2))], &[((2, 1), &[g(2, 1)])]).unwrap();
        let a = psi(&t1, &mu).unwrap();
        assert_eq!(a.boxes.values().copied().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(a.edges[&BoxPos::new(2, 1)], [3].into_iter().collect());
    }

    #[test]
    fn factors_match_genomic_weights() {
        let ctx = GrassCtx::new(2, 4).unwrap();
        let mu = p("2,1");
        let wc = WeightContext::new(ctx, Content::from_partition(&mu));
        for b in rule_tableaux(&p("2"), &mu, &p("2,2"), ctx).unwrap() {
            let a = psi(&b, &mu).unwrap();
            let r = keqrect(&a).unwrap();
            for (e, s) in b.edges() {
                for &gene in s {
                    let v = gene_label(&mu, gene).unwrap();
                    let f = r.trace_at(Pos::Edge(*e), v).unwrap().factor(ctx).unwrap();
                    assert_eq!(f, wc.edge_factor(*e, gene).unwrap());
                }
            }
            let mut starred = LaurentPoly::zero(4);
            let star = a.starrable_boxes();
            for mask in 0u64..(1 << star.len()) {
                let mut term = LaurentPoly::one(4);
                for (k, x) in star.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        term = -(&term * &r.trace_at(Pos::Box(*x), a.boxes[x]).unwrap().factor(ctx).unwrap());
                    }
                }
                starred += &term;
            }
            assert_eq!(starred, box_weight(&b, &wc, productive_plain).unwrap());
            let full: LaurentPoly = {
                let mut s = LaurentPoly::zero(4);
                for mask in 0u64..(1 << star.len()) {
                    let mut t = a.clone();
                    t.stars = star.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, x)| *x).collect();
                    s += &ty_weight(&t, &r).unwrap();
                }
                s
            };
            assert_eq!(full, weight(&b, &wc, WeightMode::Plain).unwrap());
        }
    }

    #[test]
    fn small_coefficients() {
        let c12 = GrassCtx::new(1, 2).unwrap();
        assert_eq!(ty_coefficient(&p("1"), &p("1"), &p("1"), c12).unwrap(), LaurentPoly::one_minus_ratio(1, 2, 2).unwrap());
        let c24 = GrassCtx::new(2, 4).unwrap();
        for mu in c24.partitions() {
            assert_eq!(ty_coefficient(&p(""), &mu, &mu, c24).unwrap(), LaurentPoly::one(4));
        }
        assert_eq!(
            ty_coefficient(&p("2"), &p("2,1"), &p("2,2"), c24).unwrap(),
            structure_constant(&p("2"), &p("2,1"), &p("2,2"), c24).unwrap()
        );
    }

    #[test]
    fn matches_rule_small_contexts() {
        for (k, n) in [(1, 3), (2, 4)] {
            let ctx = GrassCtx::new(k, n).unwrap();
            let parts = ctx.partitions();
            for l in &parts {
                for m in &parts {
                    for nu in &parts {
                        let a = ty_coefficient(l, m, nu, ctx).unwrap();
                        let b = structure_constant(l, m, nu, ctx).unwrap();
                        assert_eq!(a, b, "Gr({k},{n}) {l} {m} {nu}");
                    }
                }
            }
        }
    }
}
