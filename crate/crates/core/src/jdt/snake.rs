//! Snakes, their sections, miniswaps, `swap_G` and `slide`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Gene, GenomicTableau, Pos};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, EdgePos, SkewShape};

use super::{apply_ops, components, rebullet, rows_of, FormalSum, GoodTableau, Op};

/// A snake with its sections. Each list is sorted north to south, then
/// west to east.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Snake {
    pub boxes: Vec<BoxPos>,
    pub head: Vec<BoxPos>,
    pub body: Vec<BoxPos>,
    pub tail: Vec<BoxPos>,
}

/// Miniswap applied to a head.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HeadCase {
    Empty,
    H1,
    H2,
    H3,
    H4,
    H5_1,
    H5_2,
    H5_3,
    H6,
    H7,
    H8,
    H9,
}

/// Miniswap applied to a body.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BodyCase {
    Empty,
    B1,
    B2,
    B3,
}

/// Miniswap applied to a tail.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TailCase {
    Empty,
    T1,
    T2,
    T3,
    T4_1,
    T4_2,
    T4_3,
    T5,
    T6,
}

/// The three section tags of a snake, shown as `head/body/tail`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SectionTags {
    pub head: HeadCase,
    pub body: BodyCase,
    pub tail: TailCase,
}

impl fmt::Display for SectionTags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let h = match self.head {
            HeadCase::Empty => "∅",
            HeadCase::H1 => "H1",
            HeadCase::H2 => "H2",
            HeadCase::H3 => "H3",
            HeadCase::H4 => "H4",
            HeadCase::H5_1 => "H5.1",
            HeadCase::H5_2 => "H5.2",
            HeadCase::H5_3 => "H5.3",
            HeadCase::H6 => "H6",
            HeadCase::H7 => "H7",
            HeadCase::H8 => "H8",
            HeadCase::H9 => "H9",
        };
        let b = match self.body {
            BodyCase::Empty => "∅",
            BodyCase::B1 => "B1",
            BodyCase::B2 => "B2",
            BodyCase::B3 => "B3",
        };
        let t = match self.tail {
            TailCase::Empty => "∅",
            TailCase::T1 => "T1",
            TailCase::T2 => "T2",
            TailCase::T3 => "T3",
            TailCase::T4_1 => "T4.1",
            TailCase::T4_2 => "T4.2",
            TailCase::T4_3 => "T4.3",
            TailCase::T5 => "T5",
            TailCase::T6 => "T6",
        };
        write!(f, "{h}/{b}/{t}")
    }
}

/// Derived data shared by snake finding and miniswaps.
struct View<'a> {
    t: &'a GoodTableau,
    virtuals: BTreeMap<EdgePos, BTreeSet<Gene>>,
}

impl<'a> View<'a> {
    fn new(t: &'a GoodTableau) -> Self {
        View { t, virtuals: t.virtuals() }
    }

    fn tab(&self) -> &GenomicTableau {
        self.t.tableau()
    }

    fn g(&self) -> Gene {
        self.t.active()
    }

    /// `G⁺`, when it has the same family as `G`.
    fn g_plus_same_family(&self) -> Option<Gene> {
        let p = self.g().succ(self.t.content());
        (p.family == self.g().family).then_some(p)
    }

    fn is_bullet(&self, b: BoxPos) -> bool {
        matches!(self.tab().entry(b), Some(CellEntry::Bullet(_)))
    }

    fn marked_box(&self, b: BoxPos) -> Option<Gene> {
        self.tab().label(b).filter(|&g| self.t.is_marked(Pos::Box(b), g))
    }

    fn is_virtual(&self, e: EdgePos, g: Gene) -> bool {
        self.virtuals.get(&e).is_some_and(|s| s.contains(&g))
    }

    /// Where a label `H` with `family(H) = family(of) + 1` and
    /// `N_H = N_of` sits on `underline(e)`: really, virtually, or not at all.
    fn partner(&self, e: EdgePos, of: Gene) -> (bool, bool) {
        let c = self.t.content();
        let fits = |h: &Gene| h.family == of.family + 1 && c.n_of(*h) == c.n_of(of);
        let real = self.tab().edge_labels(e).any(|h| fits(&h));
        let virt = self.virtuals.get(&e).is_some_and(|s| s.iter().any(fits));
        (real, virt)
    }

    fn beta_hat(&self, x: BoxPos) -> Result<LaurentPoly> {
        self.tab().ctx().box_ratio(x)
    }

    fn beta(&self, x: BoxPos) -> Result<LaurentPoly> {
        Ok(&LaurentPoly::one(self.n()) - &self.beta_hat(x)?)
    }

    fn n(&self) -> usize {
        self.tab().ctx().n()
    }
}

fn find_snakes(v: &View<'_>) -> Result<Vec<Snake>> {
    let t = v.tab();
    let g = v.g();
    let cells: BTreeSet<BoxPos> = t
        .boxes()
        .iter()
        .filter(|(_, e)| matches!(e, CellEntry::Bullet(_)) || **e == CellEntry::Label(g))
        .map(|(b, _)| *b)
        .collect();
    let mut out = Vec::new();
    for pre in components(&cells) {
        let mut s = pre.clone();
        // R.1
        if let Some(b) = pre.iter().filter(|b| v.is_bullet(**b)).min_by_key(|b| b.row) {
            if let Some(gp) = v.g_plus_same_family() {
                if t.label(b.east()) == Some(gp) {
                    s.insert(b.east());
                }
            }
        }
        // R.2
        if let Some(b) = pre.iter().filter(|b| t.label(**b) == Some(g)).max_by_key(|b| b.row) {
            if let Some(w) = b.west() {
                if v.marked_box(w).is_some() {
                    s.insert(w);
                }
            }
        }
        // R.3
        let north = pre.iter().map(|b| b.row).min().expect("nonempty component");
        for b in pre.iter().filter(|b| b.row == north && v.is_bullet(**b)) {
            let e = b.east();
            if v.marked_box(e).is_some() && (t.edge_has(e, g) || v.is_virtual(e, g)) {
                s.insert(e);
            }
        }
        out.push(sections(v, &s)?);
    }
    Ok(out)
}

fn sections(v: &View<'_>, s: &BTreeSet<BoxPos>) -> Result<Snake> {
    let rows = rows_of(s);
    let boxes: Vec<BoxPos> = rows.iter().flat_map(|(_, r)| r.iter().copied()).collect();
    let mut snake = Snake { boxes, head: vec![], body: vec![], tail: vec![] };
    if rows.iter().any(|(_, r)| r.len() > 2) {
        return Err(Error::Jdt(format!("snake row with more than two boxes: {boxes:?}", boxes = snake.boxes)));
    }
    if rows.len() >= 2 {
        let (_, south) = rows.last().expect("two rows");
        let (_, north) = &rows[0];
        snake.tail = north.clone();
        let (middle_end, head) = if south.len() == 2 { (rows.len() - 1, south.clone()) } else { (rows.len(), vec![]) };
        snake.head = head;
        snake.body = rows[1..middle_end].iter().flat_map(|(_, r)| r.iter().copied()).collect();
    } else {
        match snake.boxes.as_slice() {
            [x] if v.tab().label(*x) == Some(v.g()) => snake.body = vec![*x],
            [x, y] if v.is_bullet(*x) && v.marked_box(*y).is_some() => snake.tail = vec![*x, *y],
            _ => snake.head = snake.boxes.clone(),
        }
    }
    Ok(snake)
}

/// One local output: coefficient, edits, and the column checked by `α`.
struct Choice {
    coeff: LaurentPoly,
    ops: Vec<Op>,
    alpha_col: Option<usize>,
}

impl Choice {
    fn new(coeff: LaurentPoly, ops: Vec<Op>) -> Self {
        Choice { coeff, ops, alpha_col: None }
    }
}

fn one(v: &View<'_>) -> LaurentPoly {
    LaurentPoly::one(v.n())
}

fn head_case(v: &View<'_>, head: &[BoxPos]) -> Result<(HeadCase, Vec<Choice>)> {
    use CellEntry::{Bullet, Label};
    let t = v.tab();
    let g = v.g();
    let gp = g.succ(v.t.content());
    let bad = || Error::Jdt(format!("unclassified head {head:?} in {}", v.t));
    match head {
        [] => Ok((HeadCase::Empty, vec![Choice::new(one(v), vec![])])),
        [x] => {
            let x = *x;
            if !v.is_bullet(x) {
                return Err(bad());
            }
            if t.edge_has(x, g) {
                let mut c = vec![Choice::new(v.beta(x)?, vec![Op::Set(x, Label(g)), Op::RemoveEdge(x, g)])];
                if x.row != g.family {
                    c.push(Choice::new(one(v), vec![Op::RemoveEdge(x, g), Op::AddEdge(x.over(), g)]));
                }
                Ok((HeadCase::H1, c))
            } else if v.is_virtual(x, g) {
                Ok((HeadCase::H2, vec![Choice::new(one(v), vec![]), Choice::new(v.beta(x)?, vec![Op::Set(x, Label(g))])]))
            } else {
                Ok((HeadCase::H3, vec![Choice::new(one(v), vec![])]))
            }
        }
        [x, y] => {
            let (x, y) = (*x, *y);
            if v.marked_box(x).is_some() && t.label(y) == Some(g) {
                return Ok((HeadCase::H9, vec![Choice::new(one(v), vec![])]));
            }
            if !v.is_bullet(x) {
                return Err(bad());
            }
            let bh = v.beta_hat(x)?;
            if t.label(y) == Some(g) {
                if t.edge_has(x, g) {
                    return Ok((HeadCase::H4, vec![]));
                }
                let (real, virt) = v.partner(y, g);
                let swapped = vec![Op::Set(x, Label(g)), Op::Set(y, Bullet(gp))];
                if real {
                    Ok((HeadCase::H5_1, vec![Choice::new(one(v), vec![])]))
                } else if virt {
                    Ok((HeadCase::H5_2, vec![Choice::new(one(v), vec![]), Choice::new(bh, swapped)]))
                } else {
                    Ok((HeadCase::H5_3, vec![Choice::new(bh, swapped)]))
                }
            } else if Some(gp) == t.label(y) && gp.family == g.family {
                let moved = |from_edge: bool| {
                    let mut ops = vec![Op::Set(x, Label(g))];
                    if from_edge {
                        ops.push(Op::RemoveEdge(x, g));
                    }
                    ops.extend([Op::Set(y, Bullet(gp)), Op::AddEdge(y, gp)]);
                    ops
                };
                if t.edge_has(x, g) {
                    let a = Choice { coeff: bh, ops: moved(true), alpha_col: Some(y.col) };
                    Ok((HeadCase::H6, vec![Choice::new(v.beta(x)?, vec![Op::Set(x, Label(g)), Op::RemoveEdge(x, g)]), a]))
                } else if v.is_virtual(x, g) {
                    let a = Choice { coeff: bh, ops: moved(false), alpha_col: Some(y.col) };
                    Ok((
                        HeadCase::H7,
                        vec![Choice::new(one(v), vec![]), Choice::new(v.beta(x)?, vec![Op::Set(x, Label(g))]), a],
                    ))
                } else {
                    Ok((HeadCase::H8, vec![Choice::new(one(v), vec![])]))
                }
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}

fn body_case(v: &View<'_>, s: &Snake) -> Result<(BodyCase, Vec<Choice>)> {
    use CellEntry::{Bullet, Label};
    if s.body.is_empty() {
        return Ok((BodyCase::Empty, vec![Choice::new(one(v), vec![])]));
    }
    if s.body.len() == s.boxes.len() {
        return Ok((BodyCase::B1, vec![Choice::new(one(v), vec![])]));
    }
    let g = v.g();
    let gp = g.succ(v.t.content());
    let mut coeff = one(v);
    let mut ops = Vec::new();
    for &b in &s.body {
        match v.tab().entry(b) {
            Some(CellEntry::Bullet(_)) => {
                coeff = &coeff * &v.beta_hat(b)?;
                ops.push(Op::Set(b, Label(g)));
            }
            Some(CellEntry::Label(h)) if h == g => ops.push(Op::Set(b, Bullet(gp))),
            _ => return Err(Error::Jdt(format!("unexpected body box {b} in {}", v.t))),
        }
    }
    let south = s.body.iter().map(|b| b.row).max().expect("nonempty body");
    if s.body.iter().filter(|b| b.row == south).count() == 2 {
        Ok((BodyCase::B2, vec![Choice::new(coeff, ops)]))
    } else {
        Ok((BodyCase::B3, vec![Choice::new(-coeff, ops)]))
    }
}

fn tail_case(v: &View<'_>, tail: &[BoxPos]) -> Result<(TailCase, Vec<Choice>)> {
    use CellEntry::{Bullet, Label};
    let t = v.tab();
    let g = v.g();
    let gp = g.succ(v.t.content());
    let bad = || Error::Jdt(format!("unclassified tail {tail:?} in {}", v.t));
    match tail {
        [] => Ok((TailCase::Empty, vec![Choice::new(one(v), vec![])])),
        [x] => {
            if !v.is_bullet(*x) {
                return Err(bad());
            }
            Ok((TailCase::T1, vec![Choice::new(-v.beta_hat(*x)?, vec![Op::Set(*x, Label(g))])]))
        }
        [x, y] => {
            let (x, y) = (*x, *y);
            if !v.is_bullet(x) {
                return Err(bad());
            }
            let bh = v.beta_hat(x)?;
            let swapped = vec![Op::Set(x, Label(g)), Op::Set(y, Bullet(gp))];
            if t.label(y) == Some(g) {
                return Ok((TailCase::T2, vec![Choice::new(bh, swapped)]));
            }
            if t.label(y) == Some(gp) && gp.family == g.family {
                let mut ops = swapped;
                ops.push(Op::AddEdge(y, gp));
                let a = Choice { coeff: bh.clone(), ops, alpha_col: Some(y.col) };
                return Ok((TailCase::T3, vec![Choice::new(-bh, vec![Op::Set(x, Label(g))]), a]));
            }
            let Some(f) = v.marked_box(y) else { return Err(bad()) };
            let z: Vec<Gene> = t.edge_labels(y).filter(|l| f < *l && *l < g).collect();
            let moved = |real_g: bool| {
                let mut ops = vec![Op::Set(x, Label(g))];
                if real_g {
                    ops.push(Op::RemoveEdge(y, g));
                }
                ops.extend([Op::Set(y, Bullet(gp)), Op::AddEdge(x.over(), f)]);
                for &l in &z {
                    ops.extend([Op::RemoveEdge(y, l), Op::AddEdge(x.over(), l)]);
                }
                ops
            };
            if t.edge_has(y, g) {
                let (real, virt) = v.partner(y, g);
                if real {
                    Ok((TailCase::T4_1, vec![Choice::new(one(v), vec![])]))
                } else if virt {
                    Ok((TailCase::T4_2, vec![Choice::new(one(v), vec![]), Choice::new(bh, moved(true))]))
                } else {
                    Ok((TailCase::T4_3, vec![Choice::new(bh, moved(true))]))
                }
            } else if v.is_virtual(y, g) {
                if t.edge_has(x, g) {
                    Ok((TailCase::T6, vec![]))
                } else {
                    Ok((TailCase::T5, vec![Choice::new(bh, moved(false))]))
                }
            } else {
                Err(bad())
            }
        }
        _ => Err(bad()),
    }
}

/// Snakes of a good tableau with their sections.
pub fn snakes(t: &GoodTableau) -> Result<Vec<Snake>> {
    find_snakes(&View::new(t))
}

/// The result of one swap with the classification of every snake.
#[derive(Clone, PartialEq, Debug)]
pub struct SwapStep {
    pub snakes: Vec<(Snake, SectionTags)>,
    pub result: FormalSum<GoodTableau>,
}

/// `swap_G(T)` with the snake decomposition and section tags.
pub fn swap_detailed(t: &GoodTableau) -> Result<SwapStep> {
    let v = View::new(t);
    let g = v.g();
    let gp = g.succ(t.content());
    let mut tagged = Vec::new();
    let mut partial: Vec<(LaurentPoly, Vec<Op>, Vec<usize>)> = vec![(one(&v), vec![], vec![])];
    for s in find_snakes(&v)? {
        let (hc, hs) = head_case(&v, &s.head)?;
        let (bc, bs) = body_case(&v, &s)?;
        let (tc, ts) = tail_case(&v, &s.tail)?;
        tagged.push((s, SectionTags { head: hc, body: bc, tail: tc }));
        for choices in [hs, bs, ts] {
            let mut next = Vec::new();
            for (c, ops, cols) in &partial {
                for ch in &choices {
                    let mut o = ops.clone();
                    o.extend(ch.ops.iter().copied());
                    let mut cl = cols.clone();
                    cl.extend(ch.alpha_col);
                    next.push((c * &ch.coeff, o, cl));
                }
            }
            partial = next;
        }
    }
    let mut result = FormalSum::zero(v.n());
    for (c, ops, cols) in partial {
        let mut u = t.tableau().clone();
        apply_ops(&mut u, &ops)?;
        let bullet_cols: Vec<usize> = u.bullets().iter().map(|(b, _)| b.col).collect();
        if cols.iter().any(|c| bullet_cols.iter().filter(|d| *d == c).count() >= 2) {
            continue;
        }
        rebullet(&mut u, gp);
        result.add_term(GoodTableau::new(u, gp, t.content().clone())?, &c);
    }
    Ok(SwapStep { snakes: tagged, result })
}

/// `swap_G(T)` for the active gene `G` of `T`.
pub fn swap(t: &GoodTableau) -> Result<FormalSum<GoodTableau>> {
    Ok(swap_detailed(t)?.result)
}

/// `T^{(1_1)}`: `T` with `•_{1_1}` placed at the chosen inner corners.
fn start(t: &GenomicTableau, corners: &[BoxPos]) -> Result<GoodTableau> {
    if !t.bullets().is_empty() || !t.is_bundled() {
        return Err(Error::Jdt(format!("slide needs a bundled tableau without bullets: {t}")));
    }
    let shape = t.shape();
    let inner_corners = shape.inner_corners();
    if let Some(b) = corners.iter().find(|b| !inner_corners.contains(b)) {
        return Err(Error::Jdt(format!("{b} is not an inner corner of {shape}")));
    }
    let (content, _) = t.content_stats()?;
    let inner = shape.inner().remove_cells(corners)?;
    let mut u = t.clone().with_shape(SkewShape::new(shape.ctx(), shape.outer().clone(), inner)?)?;
    for &b in corners {
        u.set_entry(b, Some(CellEntry::Bullet(Gene::new(1, 1))));
    }
    GoodTableau::new(u, Gene::new(1, 1), content)
}

/// The stages `P_{1_1}, P_{1_1⁺}, ..., P_{G_max⁺}` of a slide of one
/// tableau, before the final bullets are deleted.
pub fn slide_stages(t: &GenomicTableau, corners: &[BoxPos]) -> Result<Vec<FormalSum<GoodTableau>>> {
    let s = start(t, corners)?;
    let n = t.ctx().n();
    let genes = s.content().genes();
    let mut stages = vec![FormalSum::single(n, s)];
    for _ in genes {
        let next = stages.last().expect("one stage").map_linear(swap)?;
        stages.push(next);
    }
    Ok(stages)
}

/// `slide(T)`: place `•_{1_1}` at the corners, apply every swap, and delete
/// the bullets, which leave the outer shape.
pub fn slide(t: &GenomicTableau, corners: &[BoxPos]) -> Result<FormalSum<GenomicTableau>> {
    let stages = slide_stages(t, corners)?;
    stages.last().expect("one stage").map_linear(|u| Ok(FormalSum::single(t.ctx().n(), u.delete_bullets(true)?)))
}

/// One stage of a slide trace: the gene swapped and, for every input term,
/// its section tags and the outputs with their coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct TraceStage {
    pub gene: Gene,
    pub steps: Vec<(GoodTableau, LaurentPoly, SwapStep)>,
}

/// The whole slide, swap by swap.
pub fn slide_trace(t: &GenomicTableau, corners: &[BoxPos]) -> Result<Vec<TraceStage>> {
    let s = start(t, corners)?;
    let n = t.ctx().n();
    let mut current = FormalSum::single(n, s.clone());
    let mut out = Vec::new();
    for gene in s.content().genes() {
        let mut steps = Vec::new();
        let mut next = FormalSum::zero(n);
        for (u, c) in current.iter() {
            let st = swap_detailed(u)?;
            next.add_scaled(&st.result, c);
            steps.push((u.clone(), c.clone(), st));
        }
        out.push(TraceStage { gene, steps });
        current = next;
    }
    Ok(out)
}
