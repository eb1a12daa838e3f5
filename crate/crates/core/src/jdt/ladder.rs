//! Ladders and reverse miniswaps: `revswap_{G⁺}` undoes `swap_G`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Gene, Pos};
use crate::shapes::BoxPos;

use super::{apply_ops, components, rebullet, rows_of, FormalSum, GoodTableau, Op};

/// How a ladder row is reversed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LadderRow {
    L1_1,
    L1_2,
    L2_1,
    L2_2,
    L2_3,
    L3,
    L4_1,
    L4_2,
    L4_3,
    L4_4,
    L4_5,
}

impl LadderRow {
    pub fn name(self) -> &'static str {
        match self {
            LadderRow::L1_1 => "L1.1",
            LadderRow::L1_2 => "L1.2",
            LadderRow::L2_1 => "L2.1",
            LadderRow::L2_2 => "L2.2",
            LadderRow::L2_3 => "L2.3",
            LadderRow::L3 => "L3",
            LadderRow::L4_1 => "L4.1",
            LadderRow::L4_2 => "L4.2",
            LadderRow::L4_3 => "L4.3",
            LadderRow::L4_4 => "L4.4",
            LadderRow::L4_5 => "L4.5",
        }
    }
}

/// A ladder: a component of the boxes holding `•_{G⁺}` or an unmarked `G`,
/// with the classification of each of its rows (north to south).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ladder {
    pub boxes: Vec<BoxPos>,
    pub rows: Vec<(Vec<BoxPos>, LadderRow)>,
}

struct Rev<'a> {
    u: &'a GoodTableau,
    g: Gene,
}

impl Rev<'_> {
    fn bullet(&self, b: BoxPos) -> bool {
        matches!(self.u.tableau().entry(b), Some(CellEntry::Bullet(_)))
    }

    fn marked_g(&self, b: BoxPos) -> bool {
        self.u.tableau().label(b) == Some(self.g) && self.u.is_marked(Pos::Box(b), self.g)
    }

    /// Classifies a row and lists its outputs as edit sequences.
    fn row(&self, row: &[BoxPos]) -> Result<(LadderRow, Vec<Vec<Op>>)> {
        use CellEntry::{Bullet, Label};
        let t = self.u.tableau();
        let g = self.g;
        let c = self.u.content();
        let bad = || Error::Jdt(format!("unclassified ladder row {row:?} in {}", self.u));
        let x = row[0];
        let westmost = || t.is_westmost(Pos::Box(x), g);
        match row {
            [_] if self.bullet(x) => {
                let up = x.over();
                if x.row > 1 && t.edge_has(up, g) {
                    Ok((LadderRow::L3, vec![vec![Op::RemoveEdge(up, g), Op::AddEdge(x, g)]]))
                } else if x.north().and_then(|n| t.label(n)) == Some(g) {
                    Ok((LadderRow::L1_1, vec![vec![Op::Set(x, Label(g))]]))
                } else {
                    Ok((LadderRow::L1_2, vec![vec![]]))
                }
            }
            [_] => {
                let down = x.south();
                if self.bullet(down) || self.marked_g(down) {
                    Ok((LadderRow::L2_1, vec![vec![Op::Set(x, Bullet(g))]]))
                } else if westmost() {
                    Ok((LadderRow::L2_2, vec![vec![], vec![Op::Set(x, Bullet(g)), Op::AddEdge(x, g)]]))
                } else {
                    Ok((LadderRow::L2_3, vec![vec![], vec![Op::Set(x, Bullet(g))]]))
                }
            }
            [_, y] => {
                let y = *y;
                if t.label(x) != Some(g) || !self.bullet(y) {
                    return Err(bad());
                }
                let gp = g.succ(c);
                if gp.family == g.family && t.edge_has(y, gp) {
                    let down = x.south();
                    let mut ops = vec![Op::Set(x, Bullet(g)), Op::Set(y, Label(gp)), Op::RemoveEdge(y, gp)];
                    if self.bullet(down) || self.marked_g(down) {
                        Ok((LadderRow::L4_1, vec![ops]))
                    } else if westmost() {
                        ops.push(Op::AddEdge(x, g));
                        Ok((LadderRow::L4_2, vec![ops]))
                    } else {
                        Ok((LadderRow::L4_3, vec![ops]))
                    }
                } else {
                    let up = x.over();
                    let z: Vec<Gene> = if x.row > 1 {
                        t.edge_labels(up).filter(|e| c.n_of(*e) == c.n_of(g)).collect()
                    } else {
                        vec![]
                    };
                    // A bullet or marked G below x means x's column keeps a G
                    // after the reversal, so the G placed under y is not westmost.
                    let down = x.south();
                    let wm = westmost() && !(self.bullet(down) || self.marked_g(down));
                    let mut pool: BTreeSet<Gene> = z.iter().copied().collect();
                    if wm {
                        pool.insert(g);
                    }
                    let f = *z.iter().chain(std::iter::once(&g)).min().expect("G is a candidate");
                    pool.remove(&f);
                    let mut ops = vec![Op::Set(x, Bullet(g)), Op::Set(y, Label(f))];
                    for &e in &z {
                        ops.push(Op::RemoveEdge(up, e));
                    }
                    for &e in &pool {
                        ops.push(Op::AddEdge(y, e));
                    }
                    Ok((if wm { LadderRow::L4_4 } else { LadderRow::L4_5 }, vec![ops]))
                }
            }
            _ => Err(bad()),
        }
    }
}

fn ladder_cells(u: &GoodTableau, g: Gene) -> BTreeSet<BoxPos> {
    let t = u.tableau();
    t.boxes()
        .iter()
        .filter(|(b, e)| match e {
            CellEntry::Bullet(_) => true,
            CellEntry::Label(h) => *h == g && !u.is_marked(Pos::Box(**b), g),
        })
        .map(|(b, _)| *b)
        .collect()
}

fn prev_gene(u: &GoodTableau) -> Result<Gene> {
    u.active().pred(u.content()).ok_or_else(|| Error::Jdt(format!("no gene precedes {}", u.active())))
}

/// The ladders of a `G⁺`-good tableau, where `G⁺` is its active gene.
pub fn ladders(u: &GoodTableau) -> Result<Vec<Ladder>> {
    let g = prev_gene(u)?;
    let rev = Rev { u, g };
    let mut out = Vec::new();
    for comp in components(&ladder_cells(u, g)) {
        let mut rows = Vec::new();
        for (_, r) in rows_of(&comp) {
            let (tag, _) = rev.row(&r)?;
            rows.push((r, tag));
        }
        out.push(Ladder { boxes: comp.into_iter().collect(), rows });
    }
    Ok(out)
}

/// `revswap_{G⁺}(U)`: apply a reverse miniswap to every ladder row. Every
/// output has coefficient 1 and active gene `G`.
pub fn revswap(u: &GoodTableau) -> Result<FormalSum<GoodTableau>> {
    let g = prev_gene(u)?;
    let rev = Rev { u, g };
    let mut partial: Vec<Vec<Op>> = vec![vec![]];
    for comp in components(&ladder_cells(u, g)) {
        for (_, r) in rows_of(&comp) {
            let (_, outs) = rev.row(&r)?;
            let mut next = Vec::new();
            for p in &partial {
                for o in &outs {
                    let mut q = p.clone();
                    q.extend(o.iter().copied());
                    next.push(q);
                }
            }
            partial = next;
        }
    }
    let n = u.tableau().ctx().n();
    let mut out = FormalSum::zero(n);
    let one = crate::laurent::LaurentPoly::one(n);
    for ops in partial {
        let mut t = u.tableau().clone();
        apply_ops(&mut t, &ops)?;
        rebullet(&mut t, g);
        let v = GoodTableau::new(t, g, u.content().clone())?;
        if !out.contains(&v) {
            out.add_term(v, &one);
        }
    }
    Ok(out)
}
