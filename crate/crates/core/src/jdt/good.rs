//! Goodness conditions G.1 to G.13 and virtual labels V.1 to V.3.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::genomic::{BallotMode, CellEntry, Content, Gene, GenomicTableau, Pos};
use crate::shapes::{BoxPos, EdgePos};

use super::GoodTableau;

/// One of the goodness conditions, plus the structural requirement that
/// every box of the shape is filled.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Condition {
    Filled,
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
    G9,
    G10,
    G11,
    G12,
    G13,
}

impl Condition {
    pub const ALL: [Condition; 14] = [
        Condition::Filled,
        Condition::G1,
        Condition::G2,
        Condition::G3,
        Condition::G4,
        Condition::G5,
        Condition::G6,
        Condition::G7,
        Condition::G8,
        Condition::G9,
        Condition::G10,
        Condition::G11,
        Condition::G12,
        Condition::G13,
    ];

    /// The conditions that a virtual label must not break.
    pub const VIRTUAL: [Condition; 7] =
        [Condition::G1, Condition::G4, Condition::G5, Condition::G6, Condition::G8, Condition::G9, Condition::G12];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Filled => "filled",
            Condition::G1 => "G.1",
            Condition::G2 => "G.2",
            Condition::G3 => "G.3",
            Condition::G4 => "G.4",
            Condition::G5 => "G.5",
            Condition::G6 => "G.6",
            Condition::G7 => "G.7",
            Condition::G8 => "G.8",
            Condition::G9 => "G.9",
            Condition::G10 => "G.10",
            Condition::G11 => "G.11",
            Condition::G12 => "G.12",
            Condition::G13 => "G.13",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of [`validate_good`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GoodReport {
    pub good: bool,
    pub failed: Vec<Condition>,
    pub details: Vec<String>,
}

/// Checks every condition independently.
pub fn validate_good(t: &GoodTableau) -> GoodReport {
    let virtuals = t.virtuals();
    let mut report = GoodReport { good: true, ..GoodReport::default() };
    for c in Condition::ALL {
        let v = violations(t.tableau(), t.content(), c, Some(&virtuals));
        if !v.is_empty() {
            report.good = false;
            report.failed.push(c);
            report.details.extend(v.into_iter().map(|s| format!("{c}: {s}")));
        }
    }
    report
}

pub(crate) fn holds(t: &GenomicTableau, content: &Content, c: Condition) -> bool {
    violations(t, content, c, None).is_empty()
}

/// Bullet positions and their genes, precomputed once per check.
struct Ctx<'a> {
    t: &'a GenomicTableau,
    bullets: Vec<(BoxPos, Gene)>,
}

impl Ctx<'_> {
    fn marked(&self, p: Pos, g: Gene) -> bool {
        self.bullets.iter().any(|&(b, h)| g < h && crate::genomic::pos_southeast_of(p, b))
    }
}

fn violations(
    t: &GenomicTableau,
    content: &Content,
    c: Condition,
    virtuals: Option<&BTreeMap<EdgePos, BTreeSet<Gene>>>,
) -> Vec<String> {
    let cx = Ctx { t, bullets: t.bullets() };
    let mut v = Vec::new();
    match c {
        Condition::Filled => {
            for b in t.shape().boxes() {
                if t.entry(b).is_none() {
                    v.push(format!("box {b} is empty"));
                }
            }
        }
        Condition::G1 => v = t.too_high_violations(),
        Condition::G2 => {
            for &(a, _) in &cx.bullets {
                for &(b, _) in &cx.bullets {
                    if a != b && b.row >= a.row && b.col >= a.col {
                        v.push(format!("bullet {b} is southeast of bullet {a}"));
                    }
                }
            }
        }
        Condition::G3 => g3(&cx, &mut v),
        Condition::G4 => g4(&cx, &mut v),
        Condition::G5 => {
            for (e, labels) in t.edges() {
                let fams: BTreeSet<usize> = labels.iter().map(|g| g.family).collect();
                if fams.len() != labels.len() {
                    v.push(format!("edge under {e} repeats a family"));
                }
            }
        }
        Condition::G6 => {
            let inst = t.instances();
            for (pa, ga) in &inst {
                for (pb, gb) in &inst {
                    if ga.family == gb.family && pa.col() < pb.col() && ga.index > gb.index {
                        v.push(format!("{ga} at {pa} west of {gb} at {pb}"));
                    }
                }
            }
        }
        Condition::G7 => {
            for (e, labels) in t.edges() {
                for &g in labels {
                    if !t.is_westmost(Pos::Edge(*e), g) {
                        v.push(format!("{g} on the edge under {e} is not westmost"));
                    }
                }
            }
        }
        Condition::G8 => {
            if !t.is_ballot(BallotMode::Fast) {
                v.push("not ballot".to_string());
            }
        }
        Condition::G9 => {
            for &(b, h) in &cx.bullets {
                for (p, g) in t.instances() {
                    if p != Pos::Box(b) && p.height_key() <= 2 * b.row && p.col() <= b.col && g >= h {
                        v.push(format!("{g} at {p} is northwest of •_{h} at {b}"));
                    }
                }
            }
        }
        Condition::G10 => {
            for (p, g) in t.instances() {
                if cx.marked(p, g) && !cx.bullets.iter().any(|(b, _)| b.row == p.row()) {
                    v.push(format!("marked {g} at {p} has no bullet in its row"));
                }
            }
        }
        Condition::G11 => {
            for (p, g) in t.instances() {
                if cx.marked(p, g) && cx.bullets.iter().any(|(b, _)| b.col == p.col()) {
                    v.push(format!("marked {g} at {p} shares a column with a bullet"));
                }
            }
        }
        Condition::G12 => g12(&cx, &mut v),
        Condition::G13 => {
            let empty = BTreeMap::new();
            let virt = virtuals.unwrap_or(&empty);
            for (p, e) in t.instances() {
                if !cx.marked(p, e) {
                    continue;
                }
                let x = p.cell();
                let ok = t
                    .edge_labels(x)
                    .chain(virt.get(&x).into_iter().flat_map(|s| s.iter().copied()))
                    .any(|f| f.family == e.family + 1 && content.n_of(f) == content.n_of(e));
                if !ok {
                    v.push(format!("marked {e} at {p} has no partner under {x}"));
                }
            }
        }
    }
    v
}

/// Row labels `≺`-increase, ignoring bullets, except for the configuration
/// `H •  F!` with `family(H) > family(F)`.
fn g3(cx: &Ctx<'_>, v: &mut Vec<String>) {
    let t = cx.t;
    let mut rows: BTreeMap<usize, Vec<(usize, Gene)>> = BTreeMap::new();
    for (b, e) in t.boxes() {
        if let CellEntry::Label(g) = e {
            rows.entry(b.row).or_default().push((b.col, *g));
        }
    }
    for (r, labels) in rows {
        for w in labels.windows(2) {
            let ((c1, a), (c2, b)) = (w[0], w[1]);
            if a < b {
                continue;
            }
            let exceptional = c2 == c1 + 2
                && matches!(t.entry(BoxPos::new(r, c1 + 1)), Some(CellEntry::Bullet(_)))
                && a.family > b.family
                && cx.marked(Pos::Box(BoxPos::new(r, c2)), b);
            if !exceptional {
                v.push(format!("row {r}: {a} then {b}"));
            }
        }
    }
}

/// Column labels strictly increase in family, except for two copies of one
/// gene in adjacent boxes, the upper unmarked and the lower marked.
fn g4(cx: &Ctx<'_>, v: &mut Vec<String>) {
    let t = cx.t;
    for c in 1..=t.ctx().cols() {
        let col = t.column_labels(c);
        for w in col.windows(2) {
            let ((p1, a), (p2, b)) = (w[0], w[1]);
            if a.family < b.family {
                continue;
            }
            let exceptional = match (p1, p2) {
                (Pos::Box(x), Pos::Box(y)) => {
                    y.row == x.row + 1 && a == b && !cx.marked(p1, a) && cx.marked(p2, b)
                }
                _ => false,
            };
            if !exceptional {
                v.push(format!("column {c}: {a} at {p1} above {b} at {p2}"));
            }
        }
    }
}

/// For same-family labels `ℓ` at `p` strictly northwest of `ℓ'` at `p'`:
/// with `x` the box at `p` or just below the edge `p` and `z` the box of that
/// row in `p'`'s column, `p'` lies weakly above the edge under `z`, and a
/// bullet sits in that row strictly east of `x` and weakly west of `z`. When
/// `p` is a box, `p'` an edge, the bullet at `z`, and `z = x→`, the box
/// `z→` holds neither a marked label nor a label of the gene of `ℓ'`.
fn g12(cx: &Ctx<'_>, v: &mut Vec<String>) {
    let t = cx.t;
    let inst = t.instances();
    for &(p, l) in &inst {
        for &(q, l2) in &inst {
            if l.family != l2.family || p.height_key() >= q.height_key() || p.col() >= q.col() {
                continue;
            }
            let r = p.height_key().div_ceil(2);
            let x = BoxPos::new(r, p.col());
            let z = BoxPos::new(r, q.col());
            let mut ok = q.height_key() <= 2 * r + 1 && t.shape().contains_box(x) && t.shape().contains_box(z);
            if ok {
                let bullet = cx.bullets.iter().map(|(b, _)| *b).find(|b| b.row == r && b.col > x.col && b.col <= z.col);
                match bullet {
                    None => ok = false,
                    Some(y) => {
                        if !p.is_edge() && q.is_edge() && y == z && z == x.east() {
                            let ze = z.east();
                            let bad = match t.entry(ze) {
                                Some(CellEntry::Label(g)) => g == l2 || cx.marked(Pos::Box(ze), g),
                                _ => false,
                            };
                            ok = !bad;
                        }
                    }
                }
            }
            if !ok {
                v.push(format!("{l} at {p} and {l2} at {q}"));
            }
        }
    }
}

/// Virtual labels: every `◯H` on an allowed edge such that adding `H`
/// there leaves it unmarked and not westmost, and keeps each of the
/// conditions in [`Condition::VIRTUAL`] that `T` satisfies.
pub(crate) fn virtual_labels(t: &GoodTableau) -> BTreeMap<EdgePos, BTreeSet<Gene>> {
    let base = t.tableau();
    let held: Vec<Condition> =
        Condition::VIRTUAL.into_iter().filter(|&c| holds(base, t.content(), c)).collect();
    let present: BTreeSet<Gene> = base.instances().into_iter().map(|(_, g)| g).collect();
    let mut out: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
    for e in base.shape().allowed_edge_positions() {
        for &g in &present {
            if base.edge_has(e, g) {
                continue;
            }
            let mut u = base.clone();
            u.insert_edge_label(e, g);
            let p = Pos::Edge(e);
            if u.is_marked(p, g) || u.is_westmost(p, g) {
                continue;
            }
            if held.iter().all(|&c| holds(&u, t.content(), c)) {
                out.entry(e).or_default().insert(g);
            }
        }
    }
    out
}
