//! Tableau weights: edge and box factors, the plain weight of a ballot
//! semistandard tableau, the product formula for bundled tableaux with
//! virtual labels, and the weight of fine (bulleted) tableaux.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::genomic::{CellEntry, Content, Gene, GenomicTableau, Pos};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, EdgePos, GrassCtx};

/// The data every weight formula needs besides the tableau.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightContext {
    pub ctx: GrassCtx,
    pub content: Content,
}

/// Which weight to compute; see [`weight`].
#[derive(Clone, Copy, Debug)]
pub enum WeightMode<'a> {
    /// `(-1)^d · boxwt · edgewt`, productive boxes by the no-bullet rule.
    Plain,
    /// The plain weight times `1 - edgefactor` for each virtual label, with
    /// the virtual labels computed from the tableau.
    Bundled,
    /// The fine weight of a tableau with bullets and marks, given its virtual
    /// labels.
    Fine { virtuals: &'a BTreeMap<EdgePos, BTreeSet<Gene>> },
}

/// The pair `(a, b)` of a factor `t_a / t_b`.
pub type Ratio = (usize, usize);

impl WeightContext {
    pub fn new(ctx: GrassCtx, content: Content) -> Self {
        WeightContext { ctx, content }
    }

    /// `r - i + N_G + 1 + Man(x)`, checked to name a variable.
    fn denominator(&self, x: BoxPos, g: Gene) -> Result<usize> {
        let man = self.ctx.man(x)? as i64;
        let d = x.row as i64 - g.family as i64 + self.content.n_of(g) as i64 + 1 + man;
        if d < 1 || d > self.ctx.n() as i64 {
            return Err(Error::Tableau(format!("factor index t_{d} out of range for {g} at {x}")));
        }
        Ok(d as usize)
    }

    /// Indices `(a, b)` with `edgefactor = 1 - t_a / t_b` for `g` on `underline(x)`.
    pub fn edge_ratio(&self, x: EdgePos, g: Gene) -> Result<Ratio> {
        Ok((self.ctx.man(x)?, self.denominator(x, g)?))
    }

    /// `edgefactor_{underline(x)}(g) = 1 - t_{Man(x)} / t_{r - i + N + 1 + Man(x)}`.
    pub fn edge_factor(&self, x: EdgePos, g: Gene) -> Result<LaurentPoly> {
        let (a, b) = self.edge_ratio(x, g)?;
        LaurentPoly::one_minus_ratio(a, b, self.ctx.n())
    }

    /// Indices `(a, b)` with `boxfactor = t_a / t_b` for `g ∈ x`.
    pub fn box_ratio(&self, x: BoxPos, g: Gene) -> Result<Ratio> {
        Ok((self.ctx.man(x)? + 1, self.denominator(x, g)?))
    }

    /// `boxfactor(x) = t_{Man(x)+1} / t_{r - i + N + 1 + Man(x)}` for `g ∈ x`.
    pub fn box_factor_value(&self, x: BoxPos, g: Gene) -> Result<LaurentPoly> {
        let (a, b) = self.box_ratio(x, g)?;
        LaurentPoly::ratio_monomial(a, b, self.ctx.n())
    }

    fn sign(&self, d: usize) -> LaurentPoly {
        LaurentPoly::constant(self.ctx.n(), if d.is_multiple_of(2) { 1 } else { -1 })
    }
}

/// Productivity of a box without bullets in play: `lab(x) < lab(x→)` in
/// the family order, or `x→` is not a box of the shape.
pub fn productive_plain(t: &GenomicTableau, x: BoxPos) -> bool {
    let Some(g) = t.label(x) else { return false };
    let east = x.east();
    if !t.shape().contains_box(east) {
        return true;
    }
    matches!(t.entry(east), Some(CellEntry::Label(h)) if g.family_lt(h))
}

/// Productivity in a fine tableau (rules P.1 to P.4).
pub fn productive_fine(t: &GenomicTableau, x: BoxPos) -> bool {
    let shape = t.shape();
    let east = x.east();
    let east_in = shape.contains_box(east);
    match t.entry(x) {
        None => false,
        Some(CellEntry::Label(g)) => {
            // A marked label directly under an unmarked label of its own gene
            // cannot acquire a virtual copy of that gene, so it is never
            // productive.
            if t.is_marked(Pos::Box(x), g) && x.north().and_then(|n| t.label(n)) == Some(g) {
                return false;
            }
            // P.1
            if !east_in || matches!(t.entry(east), Some(CellEntry::Label(h)) if g.family_lt(h)) {
                return true;
            }
            // P.3
            if let Some(CellEntry::Bullet(_)) = t.entry(east) {
                if t.edge_labels(east).all(|f| f.family != g.family) {
                    return true;
                }
            }
            // P.4
            if let (Some(CellEntry::Label(h)), Some(up)) = (t.entry(east), east.north()) {
                if h.family == g.family && h.index == g.index + 1 && t.entry(up) == Some(CellEntry::Bullet(h)) {
                    // Southeast in the same weak sense used for marks.
                    let se = t
                        .bullets()
                        .iter()
                        .any(|&(b, bg)| bg == h && crate::genomic::pos_southeast_of(Pos::Box(x), b));
                    if !se {
                        return true;
                    }
                }
            }
            false
        }
        Some(CellEntry::Bullet(h)) => {
            // P.2
            if h.index < 2 {
                return false;
            }
            let prev = Gene::new(h.family, h.index - 1);
            let west_ok = x.west().is_some_and(|w| t.label(w) == Some(prev));
            let edge_ok = t.edge_has(x, h);
            let east_ok = !east_in || t.entry(east).map(|e| e.gene().family) != Some(h.family);
            west_ok && edge_ok && east_ok
        }
    }
}

/// Product of the edge factors of all edge labels.
pub fn edge_weight(t: &GenomicTableau, wc: &WeightContext) -> Result<LaurentPoly> {
    let n = wc.ctx.n();
    let mut w = LaurentPoly::one(n);
    for (e, labels) in t.edges() {
        for &g in labels {
            w = &w * &wc.edge_factor(*e, g)?;
        }
    }
    Ok(w)
}

/// Product of box factors over the boxes selected by `productive`. Bullets
/// are evaluated like the gene they carry.
pub fn box_weight(
    t: &GenomicTableau,
    wc: &WeightContext,
    productive: impl Fn(&GenomicTableau, BoxPos) -> bool,
) -> Result<LaurentPoly> {
    let mut w = LaurentPoly::one(wc.ctx.n());
    for (x, entry) in t.boxes() {
        if productive(t, *x) {
            w = &w * &wc.box_factor_value(*x, entry.gene())?;
        }
    }
    Ok(w)
}

/// Virtual factor of `◯h` on `underline(x)`: `1 - edgefactor`, or
/// `-edgefactor` when `lab(x)` is marked and so is every label `F ≺ h` on
/// `underline(x)`.
pub fn virtual_factor(t: &GenomicTableau, wc: &WeightContext, x: EdgePos, h: Gene) -> Result<LaurentPoly> {
    let ef = wc.edge_factor(x, h)?;
    let funny = t.label(x).is_some_and(|lab| {
        t.is_marked(Pos::Box(x), lab) && t.edge_labels(x).filter(|f| *f < h).all(|f| t.is_marked(Pos::Edge(x), f))
    });
    if funny {
        Ok(-ef)
    } else {
        Ok(&LaurentPoly::one(wc.ctx.n()) - &ef)
    }
}

/// The weight of `t` in the given mode.
pub fn weight(t: &GenomicTableau, wc: &WeightContext, mode: WeightMode<'_>) -> Result<LaurentPoly> {
    let sign = wc.sign(t.d());
    match mode {
        WeightMode::Plain => {
            if !t.bullets().is_empty() {
                return Err(Error::Tableau("plain weight of a tableau with bullets".into()));
            }
            Ok(&(&sign * &edge_weight(t, wc)?) * &box_weight(t, wc, productive_plain)?)
        }
        WeightMode::Bundled => {
            if !t.bullets().is_empty() || !t.is_bundled() {
                return Err(Error::Tableau("bundled weight of a tableau that is not bundled".into()));
            }
            let mut w = weight(t, wc, WeightMode::Plain)?;
            for (e, hs) in t.virtual_labels() {
                for h in hs {
                    w = &w * &(&LaurentPoly::one(wc.ctx.n()) - &wc.edge_factor(e, h)?);
                }
            }
            Ok(w)
        }
        WeightMode::Fine { virtuals } => {
            let mut w = &(&sign * &edge_weight(t, wc)?) * &box_weight(t, wc, productive_fine)?;
            for (e, hs) in virtuals {
                for &h in hs {
                    w = &w * &virtual_factor(t, wc, *e, h)?;
                }
            }
            Ok(w)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genomic::enumerate_ballotgen;
    use crate::shapes::{Partition, SkewShape};

    fn g(f: usize, i: usize) -> Gene {
        Gene::new(f, i)
    }

    fn lp(terms: &[(&[i32], i64)]) -> LaurentPoly {
        let n = terms[0].0.len();
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            p += &LaurentPoly::monomial(e.to_vec(), *c);
        }
        p
    }

    fn r(i: usize, j: usize, n: usize) -> LaurentPoly {
        LaurentPoly::ratio_monomial(i, j, n).unwrap()
    }

    fn om(i: usize, j: usize, n: usize) -> LaurentPoly {
        LaurentPoly::one_minus_ratio(i, j, n).unwrap()
    }

    fn ex15() -> (SkewShape, WeightContext) {
        let ctx = GrassCtx::new(2, 4).unwrap();
        let s = SkewShape::new(ctx, Partition::parse("2,2").unwrap(), Partition::parse("2").unwrap()).unwrap();
        (s, WeightContext::new(ctx, Content::new(vec![2, 1])))
    }

    #[test]
    fn example_1_5_ledger() {
        let (s, wc) = ex15();
        let mk = |boxes: &[((usize, usize), Gene)], edges: &[((usize, usize), &[Gene])]| {
            GenomicTableau::from_labels(s.clone(), boxes, edges).unwrap()
        };
        let b12 = [((2, 1), g(1, 1)), ((2, 2), g(1, 2))];
        let b21 = [((2, 1), g(1, 1)), ((2, 2), g(2, 1))];
        let ledger = [
            (mk(&b12, &[((2, 1), &[g(2, 1)])]), om(1, 2, 4), r(3, 4, 4), 0),
            (mk(&b12, &[((2, 2), &[g(2, 1)])]), om(2, 3, 4), r(3, 4, 4), 0),
            (mk(&b12, &[((2, 1), &[g(2, 1)]), ((2, 2), &[g(2, 1)])]), om(1, 2, 4) * om(2, 3, 4), r(3, 4, 4), 1),
            (mk(&b21, &[((1, 2), &[g(1, 2)])]), om(3, 4, 4), r(2, 4, 4), 0),
            (mk(&b21, &[((1, 2), &[g(1, 2)]), ((2, 1), &[g(2, 1)])]), om(1, 2, 4) * om(3, 4, 4), r(2, 4, 4), 1),
        ];
        let all = enumerate_ballotgen(&s, &wc.content);
        assert_eq!(all.len(), 5);
        for (t, ew, bw, d) in &ledger {
            assert!(all.contains(t), "{t}");
            assert_eq!(&edge_weight(t, &wc).unwrap(), ew);
            assert_eq!(&box_weight(t, &wc, productive_plain).unwrap(), bw);
            assert_eq!(t.d(), *d);
        }
        let t3 = &ledger[2].0;
        assert_eq!(weight(t3, &wc, WeightMode::Plain).unwrap(), -(om(1, 2, 4) * om(2, 3, 4) * r(3, 4, 4)));
    }

    #[test]
    fn edge_factor_examples() {
        let ctx = GrassCtx::new(1, 2).unwrap();
        let wc = WeightContext::new(ctx, Content::new(vec![1]));
        assert_eq!(wc.edge_factor(BoxPos::new(1, 1), g(1, 1)).unwrap(), lp(&[(&[0, 0], 1), (&[1, -1], -1)]));
    }

    #[test]
    fn productive_same_family_row() {
        let ctx = GrassCtx::new(1, 3).unwrap();
        let s = SkewShape::new(ctx, Partition::parse("2").unwrap(), Partition::empty()).unwrap();
        let t = GenomicTableau::from_labels(s, &[((1, 1), g(1, 1)), ((1, 2), g(1, 2))], &[]).unwrap();
        assert!(!productive_plain(&t, BoxPos::new(1, 1)));
        assert!(productive_plain(&t, BoxPos::new(1, 2)));
    }

    #[test]
    fn bundled_example_tilde_weight() {
        let ctx = GrassCtx::new(5, 11).unwrap();
        let s = SkewShape::new(ctx, Partition::parse("6,4,3,2,1").unwrap(), Partition::parse("5,3,2,1").unwrap())
            .unwrap();
        let b = GenomicTableau::from_labels(
            s,
            &[((1, 6), g(1, 3)), ((2, 4), g(2, 1)), ((3, 3), g(1, 2)), ((4, 2), g(2, 1)), ((5, 1), g(3, 1))],
            &[((4, 1), &[g(1, 1)])],
        )
        .unwrap();
        let wc = WeightContext::new(ctx, Content::new(vec![3, 1, 1]));
        let n = 11;
        let boxes = [r(2, 4, n), r(4, 6, n), r(6, 9, n), r(8, 8, n), r(11, 11, n)];
        let virt = [r(3, 5, n), r(4, 9, n), r(5, 7, n), r(8, 10, n), r(9, 11, n)];
        let mut expect = -om(2, 8, n);
        for f in boxes.iter().chain(virt.iter()) {
            expect = &expect * f;
        }
        assert_eq!(weight(&b, &wc, WeightMode::Bundled).unwrap(), expect);
        let v = b.virtual_labels();
        assert_eq!(weight(&b, &wc, WeightMode::Fine { virtuals: &v }).unwrap(), expect);
    }

    #[test]
    fn fine_productivity_examples() {
        let ctx = GrassCtx::new(2, 6).unwrap();
        let one_row = |cells: &[CellEntry], edges: &[((usize, usize), &[Gene])]| {
            let s = SkewShape::new(ctx, Partition::new(vec![cells.len()]).unwrap(), Partition::empty()).unwrap();
            let boxes = cells.iter().enumerate().map(|(c, e)| (BoxPos::new(1, c + 1), *e)).collect();
            let mut em: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
            for &((r, c), ls) in edges {
                em.entry(BoxPos::new(r, c)).or_default().extend(ls.iter().copied());
            }
            GenomicTableau::new(s, boxes, em).unwrap()
        };
        use CellEntry::{Bullet as B, Label as L};
        let t = one_row(&[L(g(1, 1)), L(g(1, 2)), L(g(2, 1))], &[]);
        let prod: Vec<bool> = (1..=3).map(|c| productive_fine(&t, BoxPos::new(1, c))).collect();
        assert_eq!(prod, vec![false, true, true]);
        let t = one_row(&[L(g(1, 1)), B(g(1, 2))], &[((1, 2), &[g(1, 2)])]);
        let prod: Vec<bool> = (1..=2).map(|c| productive_fine(&t, BoxPos::new(1, c))).collect();
        assert_eq!(prod, vec![false, true]);
        let t = one_row(&[L(g(1, 1)), B(g(1, 2)), L(g(2, 1))], &[]);
        let prod: Vec<bool> = (1..=3).map(|c| productive_fine(&t, BoxPos::new(1, c))).collect();
        assert_eq!(prod, vec![true, false, true]);
        for (bullet, left_productive) in [(g(1, 2), true), (g(1, 1), false)] {
            let s = SkewShape::new(ctx, Partition::parse("2,2").unwrap(), Partition::parse("1").unwrap()).unwrap();
            let boxes = [
                (BoxPos::new(1, 2), B(bullet)),
                (BoxPos::new(2, 1), L(g(1, 1))),
                (BoxPos::new(2, 2), L(g(1, 2))),
            ]
            .into_iter()
            .collect();
            let t = GenomicTableau::new(s, boxes, BTreeMap::new()).unwrap();
            assert!(productive_fine(&t, BoxPos::new(2, 2)));
            assert_eq!(productive_fine(&t, BoxPos::new(2, 1)), left_productive);
        }
    }
}
