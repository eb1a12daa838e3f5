//! Genomic tableaux: genes, fillings of skew shapes with box and edge labels,
//! semistandardness, ballotness, content, bundling, virtual labels, and the
//! exhaustive enumeration of ballot semistandard tableaux of fixed content.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::shapes::{BoxPos, EdgePos, GrassCtx, Partition, SkewShape};

/// A gene `i_j`. The derived order is the lexicographic order `≺`; the
/// coarser family order `<` is [`Gene::family_lt`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Gene {
    pub family: usize,
    pub index: usize,
}

impl Gene {
    pub const fn new(family: usize, index: usize) -> Self {
        Gene { family, index }
    }

    /// `self < other`: strictly smaller family.
    pub fn family_lt(self, other: Gene) -> bool {
        self.family < other.family
    }

    /// Successor with respect to `≺` among the genes of content `mu`.
    /// The successor of the largest gene is `(ℓ(μ)+1)_1`.
    pub fn succ(self, mu: &Content) -> Gene {
        if self.index < mu.count(self.family) {
            Gene::new(self.family, self.index + 1)
        } else {
            let mut f = self.family + 1;
            while f <= mu.families() && mu.count(f) == 0 {
                f += 1;
            }
            Gene::new(f, 1)
        }
    }

    /// Predecessor with respect to `≺` among the genes of content `mu`.
    pub fn pred(self, mu: &Content) -> Option<Gene> {
        if self.index > 1 {
            return Some(Gene::new(self.family, self.index - 1));
        }
        let mut f = self.family.min(mu.families() + 1);
        while f > 1 {
            f -= 1;
            if mu.count(f) > 0 {
                return Some(Gene::new(f, mu.count(f)));
            }
        }
        None
    }
}

impl fmt::Display for Gene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

/// The content `(c_1, c_2, ...)`: `c_i` genes of family `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Content(Vec<usize>);

impl Content {
    /// Trailing zeros are stripped.
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Content(counts)
    }

    pub fn from_partition(mu: &Partition) -> Self {
        Content::new(mu.parts().to_vec())
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Number of families (the length of the content vector).
    pub fn families(&self) -> usize {
        self.0.len()
    }

    /// `c_i`, zero outside the stored range.
    pub fn count(&self, family: usize) -> usize {
        if family == 0 {
            return 0;
        }
        self.0.get(family - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `N_G`: the number of genes of `G`'s family that are `≻ G`.
    pub fn n_of(&self, g: Gene) -> usize {
        self.count(g.family).saturating_sub(g.index)
    }

    /// All genes in `≺` order.
    pub fn genes(&self) -> Vec<Gene> {
        let mut out = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            for j in 1..=c {
                out.push(Gene::new(i + 1, j));
            }
        }
        out
    }

    /// `G_max`, the `≺`-largest gene, if any.
    pub fn max_gene(&self) -> Option<Gene> {
        self.genes().last().copied()
    }

    pub fn contains(&self, g: Gene) -> bool {
        g.index >= 1 && g.index <= self.count(g.family)
    }
}

/// A box entry: a genetic label or a bullet `•_G`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CellEntry {
    Label(Gene),
    Bullet(Gene),
}

impl CellEntry {
    pub fn gene(self) -> Gene {
        match self {
            CellEntry::Label(g) | CellEntry::Bullet(g) => g,
        }
    }

    pub fn label(self) -> Option<Gene> {
        match self {
            CellEntry::Label(g) => Some(g),
            CellEntry::Bullet(_) => None,
        }
    }

    pub fn is_bullet(self) -> bool {
        matches!(self, CellEntry::Bullet(_))
    }
}

/// Where a genetic label sits: in a box or on the lower edge of a cell.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Pos {
    Box(BoxPos),
    Edge(EdgePos),
}

impl Pos {
    /// The box of the position; for an edge `underline(x)` this is `x`.
    pub fn cell(self) -> BoxPos {
        match self {
            Pos::Box(b) | Pos::Edge(b) => b,
        }
    }

    pub fn col(self) -> usize {
        self.cell().col
    }

    pub fn row(self) -> usize {
        self.cell().row
    }

    pub fn is_edge(self) -> bool {
        matches!(self, Pos::Edge(_))
    }

    /// Vertical order within a column: box `r` < edge `underline(r)` < box `r+1`.
    pub fn height_key(self) -> usize {
        match self {
            Pos::Box(b) => 2 * b.row,
            Pos::Edge(e) => 2 * e.row + 1,
        }
    }

    /// Reading order: columns right to left, each column top to bottom.
    pub fn reading_key(self) -> (std::cmp::Reverse<usize>, usize) {
        (std::cmp::Reverse(self.col()), self.height_key())
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pos::Box(b) => write!(f, "box{b}"),
            Pos::Edge(e) => write!(f, "edge{e}"),
        }
    }
}

/// An edge-labeled genomic filling of a skew shape. Boxes may hold bullets
/// during jeu de taquin; marks are derived from bullet positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GenomicTableau {
    shape: SkewShape,
    boxes: BTreeMap<BoxPos, CellEntry>,
    edges: BTreeMap<EdgePos, BTreeSet<Gene>>,
}

/// Outcome of [`GenomicTableau::validate_semistandard`].
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SemistandardReport {
    pub semistandard: bool,
    pub violations: Vec<String>,
}

impl GenomicTableau {
    /// Builds a tableau, checking that positions lie in the shape, edges are
    /// allowed, and no edge is empty (empty edges are dropped).
    pub fn new(
        shape: SkewShape,
        boxes: BTreeMap<BoxPos, CellEntry>,
        edges: BTreeMap<EdgePos, BTreeSet<Gene>>,
    ) -> Result<Self> {
        for b in boxes.keys() {
            if !shape.contains_box(*b) {
                return Err(Error::Tableau(format!("box {b} is not in {shape}")));
            }
        }
        for (e, labels) in &edges {
            if !labels.is_empty() && !shape.is_allowed_edge(*e) {
                return Err(Error::Tableau(format!("edge under {e} is not allowed in {shape}")));
            }
        }
        let edges = edges.into_iter().filter(|(_, l)| !l.is_empty()).collect();
        Ok(GenomicTableau { shape, boxes, edges })
    }

    /// Convenience constructor from label lists.
    pub fn from_labels(
        shape: SkewShape,
        boxes: &[((usize, usize), Gene)],
        edges: &[((usize, usize), &[Gene])],
    ) -> Result<Self> {
        let b = boxes.iter().map(|&((r, c), g)| (BoxPos::new(r, c), CellEntry::Label(g))).collect();
        let mut e: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
        for &((r, c), labels) in edges {
            e.entry(BoxPos::new(r, c)).or_default().extend(labels.iter().copied());
        }
        GenomicTableau::new(shape, b, e)
    }

    pub fn empty(shape: SkewShape) -> Self {
        GenomicTableau { shape, boxes: BTreeMap::new(), edges: BTreeMap::new() }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn ctx(&self) -> GrassCtx {
        self.shape.ctx()
    }

    pub fn boxes(&self) -> &BTreeMap<BoxPos, CellEntry> {
        &self.boxes
    }

    pub fn edges(&self) -> &BTreeMap<EdgePos, BTreeSet<Gene>> {
        &self.edges
    }

    pub fn entry(&self, b: BoxPos) -> Option<CellEntry> {
        self.boxes.get(&b).copied()
    }

    /// The genetic label in box `b`, if any.
    pub fn label(&self, b: BoxPos) -> Option<Gene> {
        self.entry(b).and_then(CellEntry::label)
    }

    /// Labels on `underline(e)`, in `≺` order.
    pub fn edge_labels(&self, e: EdgePos) -> impl Iterator<Item = Gene> + '_ {
        self.edges.get(&e).into_iter().flat_map(|s| s.iter().copied())
    }

    pub fn edge_has(&self, e: EdgePos, g: Gene) -> bool {
        self.edges.get(&e).is_some_and(|s| s.contains(&g))
    }

    pub fn set_entry(&mut self, b: BoxPos, entry: Option<CellEntry>) {
        match entry {
            Some(x) => {
                self.boxes.insert(b, x);
            }
            None => {
                self.boxes.remove(&b);
            }
        }
    }

    pub fn insert_edge_label(&mut self, e: EdgePos, g: Gene) {
        self.edges.entry(e).or_default().insert(g);
    }

    pub fn remove_edge_label(&mut self, e: EdgePos, g: Gene) -> bool {
        let removed = self.edges.get_mut(&e).is_some_and(|s| s.remove(&g));
        if self.edges.get(&e).is_some_and(|s| s.is_empty()) {
            self.edges.remove(&e);
        }
        removed
    }

    /// Replaces the shape (used when bullets leave the diagram).
    pub fn with_shape(mut self, shape: SkewShape) -> Result<Self> {
        let boxes = std::mem::take(&mut self.boxes);
        let edges = std::mem::take(&mut self.edges);
        GenomicTableau::new(shape, boxes, edges)
    }

    /// Every genetic label with its position, in reading order.
    pub fn instances(&self) -> Vec<(Pos, Gene)> {
        let mut out: Vec<(Pos, Gene)> = Vec::new();
        for (b, e) in &self.boxes {
            if let CellEntry::Label(g) = e {
                out.push((Pos::Box(*b), *g));
            }
        }
        for (e, labels) in &self.edges {
            for g in labels {
                out.push((Pos::Edge(*e), *g));
            }
        }
        out.sort_by(|a, b| a.0.reading_key().cmp(&b.0.reading_key()).then(a.1.cmp(&b.1)));
        out
    }

    /// Positions of each gene, keyed by gene.
    pub fn gene_positions(&self) -> BTreeMap<Gene, Vec<Pos>> {
        let mut out: BTreeMap<Gene, Vec<Pos>> = BTreeMap::new();
        for (p, g) in self.instances() {
            out.entry(g).or_default().push(p);
        }
        out
    }

    /// Positions of bullets.
    pub fn bullets(&self) -> Vec<(BoxPos, Gene)> {
        self.boxes
            .iter()
            .filter_map(|(b, e)| match e {
                CellEntry::Bullet(g) => Some((*b, *g)),
                CellEntry::Label(_) => None,
            })
            .collect()
    }

    /// Whether the label `g` at `p` is marked: `g ≺ H` for some `•_H` that
    /// `p` lies (weakly) southeast of. An edge `underline(x)` counts as lying
    /// below `x`.
    pub fn is_marked(&self, p: Pos, g: Gene) -> bool {
        self.bullets().iter().any(|&(b, h)| g < h && pos_southeast_of(p, b))
    }

    pub fn num_edge_labels(&self) -> usize {
        self.edges.values().map(|s| s.len()).sum()
    }

    /// `d(T) = Σ_G (|G| - 1)` over genes of genetic labels.
    pub fn d(&self) -> usize {
        self.gene_positions().values().map(|v| v.len() - 1).sum()
    }

    /// Content and `N_G` for each gene present. Errors when some family's
    /// indices are not an initial segment.
    pub fn content_stats(&self) -> Result<(Content, BTreeMap<Gene, usize>)> {
        let genes: BTreeSet<Gene> = self.instances().into_iter().map(|(_, g)| g).collect();
        let max_family = genes.iter().map(|g| g.family).max().unwrap_or(0);
        let mut counts = vec![0usize; max_family];
        for f in 1..=max_family {
            let idx: Vec<usize> = genes.iter().filter(|g| g.family == f).map(|g| g.index).collect();
            if idx.iter().enumerate().any(|(p, &j)| j != p + 1) {
                return Err(Error::Tableau(format!("indices of family {f} are not an initial segment: {idx:?}")));
            }
            counts[f - 1] = idx.len();
        }
        let content = Content::new(counts);
        let n = genes.iter().map(|&g| (g, content.n_of(g))).collect();
        Ok((content, n))
    }

    /// Checks (S.1)-(S.4), that every box is filled with a genetic label, and
    /// that no label is too high.
    pub fn validate_semistandard(&self) -> SemistandardReport {
        let mut v = Vec::new();
        for b in self.shape.boxes() {
            match self.entry(b) {
                None => v.push(format!("box {b} is empty")),
                Some(CellEntry::Bullet(_)) => v.push(format!("box {b} holds a bullet")),
                Some(CellEntry::Label(g)) => {
                    if let Some(Some(h)) = self.shape.contains_box(b.east()).then(|| self.label(b.east())) {
                        if g >= h {
                            v.push(format!("S.1 row {}: {g} then {h}", b.row));
                        }
                    }
                }
            }
        }
        for c in 1..=self.ctx().cols() {
            let col = self.column_labels(c);
            for (a, (pa, ga)) in col.iter().enumerate() {
                for (pb, gb) in &col[a + 1..] {
                    if pa.height_key() < pb.height_key() && ga.family >= gb.family {
                        v.push(format!("S.2 column {c}: {ga} at {pa} above {gb} at {pb}"));
                    }
                }
            }
        }
        for (e, labels) in &self.edges {
            let fams: BTreeSet<usize> = labels.iter().map(|g| g.family).collect();
            if fams.len() != labels.len() {
                v.push(format!("S.3 edge under {e}: repeated family"));
            }
        }
        let inst = self.instances();
        for (pa, ga) in &inst {
            for (pb, gb) in &inst {
                if ga.family == gb.family && pa.col() < pb.col() && ga.index > gb.index {
                    v.push(format!("S.4: {ga} at {pa} west of {gb} at {pb}"));
                }
            }
        }
        v.extend(self.too_high_violations());
        SemistandardReport { semistandard: v.is_empty(), violations: v }
    }

    /// Genetic labels too high for their row: family greater than the row of
    /// the box, or of the cell above the edge.
    pub fn too_high_violations(&self) -> Vec<String> {
        self.instances()
            .into_iter()
            .filter(|(p, g)| g.family > p.row())
            .map(|(p, g)| format!("too high: {g} at {p}"))
            .collect()
    }

    /// Genetic labels of column `c`, top to bottom (edge labels in `≺` order).
    pub fn column_labels(&self, c: usize) -> Vec<(Pos, Gene)> {
        let mut out: Vec<(Pos, Gene)> = self.instances().into_iter().filter(|(p, _)| p.col() == c).collect();
        out.sort_by_key(|(p, g)| (p.height_key(), *g));
        out
    }

    /// Ballotness of every genotype, decided by the per-prefix criterion
    /// (`fast`) or by enumerating all genotypes.
    pub fn is_ballot(&self, mode: BallotMode) -> bool {
        match mode {
            BallotMode::Fast => self.is_ballot_fast(),
            BallotMode::Bruteforce => self.is_ballot_bruteforce(),
        }
    }

    fn is_ballot_fast(&self) -> bool {
        let word = self.instances();
        let mut first: BTreeMap<Gene, usize> = BTreeMap::new();
        let mut last: BTreeMap<Gene, usize> = BTreeMap::new();
        for (k, (_, g)) in word.iter().enumerate() {
            first.entry(*g).or_insert(k);
            last.insert(*g, k);
        }
        let max_family = first.keys().map(|g| g.family).max().unwrap_or(0);
        for b in 1..=word.len() {
            for i in 1..max_family {
                let complete = last.iter().filter(|(g, &l)| g.family == i && l < b).count();
                let met = first.iter().filter(|(g, &f)| g.family == i + 1 && f < b).count();
                if complete < met {
                    return false;
                }
            }
        }
        true
    }

    fn is_ballot_bruteforce(&self) -> bool {
        let word = self.instances();
        let genes: Vec<(Gene, Vec<usize>)> = {
            let mut m: BTreeMap<Gene, Vec<usize>> = BTreeMap::new();
            for (k, (_, g)) in word.iter().enumerate() {
                m.entry(*g).or_default().push(k);
            }
            m.into_iter().collect()
        };
        let max_family = genes.iter().map(|(g, _)| g.family).max().unwrap_or(0);
        let mut choice = vec![0usize; genes.len()];
        loop {
            let mut picked: Vec<(usize, usize)> =
                genes.iter().zip(&choice).map(|((g, ps), &c)| (ps[c], g.family)).collect();
            picked.sort_unstable();
            let mut counts = vec![0i64; max_family + 2];
            for (_, f) in picked {
                counts[f] += 1;
                if f >= 2 && counts[f] > counts[f - 1] {
                    return false;
                }
            }
            let mut k = 0;
            loop {
                if k == genes.len() {
                    return true;
                }
                choice[k] += 1;
                if choice[k] < genes[k].1.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    /// Membership in `BallotGen(ν/λ)`: semistandard, ballot, nothing too high.
    pub fn is_ballotgen(&self) -> bool {
        self.validate_semistandard().semistandard && self.is_ballot_fast()
    }

    /// Whether the instance of `g` at `p` lies in the westmost column among
    /// the instances of `g`.
    pub fn is_westmost(&self, p: Pos, g: Gene) -> bool {
        self.instances().iter().all(|(q, h)| *h != g || q.col() >= p.col())
    }

    /// Every edge label is maximally west in its gene.
    pub fn is_bundled(&self) -> bool {
        self.edges.iter().all(|(e, ls)| ls.iter().all(|g| self.is_westmost(Pos::Edge(*e), *g)))
    }

    /// `Bun(T)`: delete each edge label that is not maximally west in its gene.
    pub fn bundle(&self) -> GenomicTableau {
        let mut out = self.clone();
        for (e, ls) in &self.edges {
            for g in ls {
                if !self.is_westmost(Pos::Edge(*e), *g) {
                    out.remove_edge_label(*e, *g);
                }
            }
        }
        out
    }

    /// Virtual labels of a bundled tableau: for each gene, the allowed edges
    /// where adding a non-westmost copy of it stays in `BallotGen`.
    pub fn virtual_labels(&self) -> BTreeMap<EdgePos, BTreeSet<Gene>> {
        let genes: BTreeSet<Gene> = self.instances().into_iter().map(|(_, g)| g).collect();
        let mut out: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
        for e in self.shape.allowed_edge_positions() {
            for &g in &genes {
                if self.edge_has(e, g) {
                    continue;
                }
                let mut t = self.clone();
                t.insert_edge_label(e, g);
                if !t.is_westmost(Pos::Edge(e), g) && t.is_ballotgen() {
                    out.entry(e).or_default().insert(g);
                }
            }
        }
        out
    }

    /// `Bun(T)` together with its virtual labels.
    pub fn bundle_and_virtuals(&self) -> (GenomicTableau, BTreeMap<EdgePos, BTreeSet<Gene>>) {
        let b = self.bundle();
        let v = b.virtual_labels();
        (b, v)
    }

    pub fn to_json(&self) -> Value {
        let ctx = self.ctx();
        let boxes: Vec<Value> = self
            .boxes
            .iter()
            .map(|(b, e)| match e {
                CellEntry::Label(g) => json!({"r": b.row, "c": b.col, "family": g.family, "index": g.index}),
                CellEntry::Bullet(g) => json!({"r": b.row, "c": b.col, "bullet": [g.family, g.index]}),
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|(e, ls)| {
                let labels: Vec<Value> = ls.iter().map(|g| json!([g.family, g.index])).collect();
                json!({"r": e.row, "c": e.col, "labels": labels})
            })
            .collect();
        json!({
            "k": ctx.k(),
            "n": ctx.n(),
            "outer": self.shape.outer().parts(),
            "inner": self.shape.inner().parts(),
            "boxes": boxes,
            "edges": edges,
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("tableau JSON: {what}"));
        let num = |v: &Value, key: &str| -> Result<usize> {
            v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(key))
        };
        let parts = |key: &str| -> Result<Partition> {
            let arr = v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?;
            let p: Option<Vec<usize>> = arr.iter().map(|x| x.as_u64().map(|y| y as usize)).collect();
            Partition::new(p.ok_or_else(|| bad(key))?)
        };
        let pair = |x: &Value| -> Result<Gene> {
            let a = x.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("gene pair"))?;
            let f = a[0].as_u64().ok_or_else(|| bad("family"))? as usize;
            let i = a[1].as_u64().ok_or_else(|| bad("index"))? as usize;
            Ok(Gene::new(f, i))
        };
        let ctx = GrassCtx::new(num(v, "k")?, num(v, "n")?)?;
        let shape = SkewShape::new(ctx, parts("outer")?, parts("inner")?)?;
        let mut boxes = BTreeMap::new();
        for b in v.get("boxes").and_then(Value::as_array).ok_or_else(|| bad("boxes"))? {
            let pos = BoxPos::new(num(b, "r")?, num(b, "c")?);
            let entry = match b.get("bullet") {
                Some(x) => CellEntry::Bullet(pair(x)?),
                None => CellEntry::Label(Gene::new(num(b, "family")?, num(b, "index")?)),
            };
            boxes.insert(pos, entry);
        }
        let mut edges: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
        for e in v.get("edges").and_then(Value::as_array).ok_or_else(|| bad("edges"))? {
            let pos = BoxPos::new(num(e, "r")?, num(e, "c")?);
            for l in e.get("labels").and_then(Value::as_array).ok_or_else(|| bad("labels"))? {
                edges.entry(pos).or_default().insert(pair(l)?);
            }
        }
        GenomicTableau::new(shape, boxes, edges)
    }
}

impl fmt::Display for GenomicTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outer = self.shape.outer();
        for r in 1..=outer.len() {
            if r > 1 {
                write!(f, " / ")?;
            }
            for c in 1..=outer.part(r) {
                let b = BoxPos::new(r, c);
                match self.entry(b) {
                    _ if !self.shape.contains_box(b) => write!(f, "[.]")?,
                    None => write!(f, "[ ]")?,
                    Some(CellEntry::Label(g)) => write!(f, "[{g}]")?,
                    Some(CellEntry::Bullet(g)) => write!(f, "[*{g}]")?,
                }
            }
        }
        for (e, ls) in &self.edges {
            let s: Vec<String> = ls.iter().map(|g| g.to_string()).collect();
            write!(f, " _{e}{{{}}}", s.join(","))?;
        }
        Ok(())
    }
}

/// `p` is weakly south and weakly east of box `b`, and is not `b` itself.
pub fn pos_southeast_of(p: Pos, b: BoxPos) -> bool {
    match p {
        Pos::Box(x) => x != b && x.row >= b.row && x.col >= b.col,
        Pos::Edge(e) => e.row >= b.row && e.col >= b.col,
    }
}

/// How [`GenomicTableau::is_ballot`] decides ballotness.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BallotMode {
    Fast,
    Bruteforce,
}

/// All members of `BallotGen(ν/λ)` with content `mu`, each once, sorted by
/// the canonical tableau order.
///
/// The search fills positions in reading order (columns right to left, each
/// column top to bottom). Going west, the indices of a family weakly
/// decrease and may drop by at most one, so the first instance of family `i`
/// met is `i_{μ_i}` and the search ends when every family has reached index 1.
pub fn enumerate_ballotgen(shape: &SkewShape, mu: &Content) -> Vec<GenomicTableau> {
    let mut out = Search::new(shape, mu, true, None).run();
    out.sort();
    out
}

/// All semistandard genomic tableaux of `shape` with content `mu` and no
/// label too high, ballot or not, sorted.
pub fn enumerate_semistandard(shape: &SkewShape, mu: &Content) -> Vec<GenomicTableau> {
    let mut out = Search::new(shape, mu, false, None).run();
    out.sort();
    out
}

/// A semistandard tableau of `shape` with content `mu` found by a search
/// that tries choices in random order. `None` when the search visits
/// `budget` partial fillings without success.
pub fn random_semistandard(
    shape: &SkewShape,
    mu: &Content,
    rng: &mut dyn rand::RngCore,
    budget: usize,
) -> Option<GenomicTableau> {
    let mut search = Search::new(shape, mu, false, Some(rng));
    search.budget = budget;
    search.run().pop()
}

struct Search<'a> {
    shape: &'a SkewShape,
    mu: &'a Content,
    /// Keep only ballot tableaux, pruning with the prefix bound.
    ballot: bool,
    /// When set, choices are shuffled and the search stops at the first hit.
    rng: Option<&'a mut dyn rand::RngCore>,
    /// Remaining number of search nodes.
    budget: usize,
    positions: Vec<Pos>,
    boxes: BTreeMap<BoxPos, CellEntry>,
    edges: BTreeMap<EdgePos, BTreeSet<Gene>>,
    /// Smallest index placed so far per family (0 = none yet).
    cur_min: Vec<usize>,
    out: Vec<GenomicTableau>,
}

impl<'a> Search<'a> {
    fn new(shape: &'a SkewShape, mu: &'a Content, ballot: bool, rng: Option<&'a mut dyn rand::RngCore>) -> Self {
        let mut positions = Vec::new();
        for c in (1..=shape.ctx().cols()).rev() {
            let mut col = Vec::new();
            for r in shape.column_boxes(c) {
                col.push(Pos::Box(BoxPos::new(r, c)));
            }
            for r in shape.column_edge_rows(c) {
                col.push(Pos::Edge(BoxPos::new(r, c)));
            }
            col.sort_by_key(|p| p.height_key());
            positions.extend(col);
        }
        Search {
            shape,
            mu,
            ballot,
            rng,
            budget: usize::MAX,
            positions,
            boxes: BTreeMap::new(),
            edges: BTreeMap::new(),
            cur_min: vec![0; mu.families() + 2],
            out: Vec::new(),
        }
    }

    fn run(mut self) -> Vec<GenomicTableau> {
        self.rec(0);
        self.out
    }

    fn done(&self) -> bool {
        self.rng.is_some() && !self.out.is_empty()
    }

    fn shuffle<T>(&mut self, v: &mut [T]) {
        if let Some(rng) = self.rng.as_mut() {
            use rand::seq::SliceRandom;
            v.shuffle(rng);
        }
    }

    /// Index choices for the next westward instance of `family`.
    fn index_options(&self, family: usize) -> Vec<usize> {
        match self.cur_min[family] {
            0 => vec![self.mu.count(family)],
            1 => vec![1],
            m => vec![m, m - 1],
        }
    }

    /// Genes of family `i` met so far (all indices from the first one down
    /// to the current minimum).
    fn met(&self, family: usize) -> usize {
        match self.cur_min[family] {
            0 => 0,
            m => self.mu.count(family) + 1 - m,
        }
    }

    /// Necessary prefix condition: at most one family-`i` gene met so far may
    /// still gain instances, so `met(i+1) <= met(i)`.
    fn prefix_ok(&self) -> bool {
        !self.ballot || (1..self.mu.families()).all(|i| self.met(i + 1) <= self.met(i))
    }

    /// Largest family among positions of column `c` above height `h`.
    fn column_max_above(&self, p: Pos) -> usize {
        let c = p.col();
        let h = p.height_key();
        let mut m = 0;
        for (b, e) in self.boxes.range(BoxPos::new(0, c)..BoxPos::new(usize::MAX, c)) {
            if b.col == c && 2 * b.row < h {
                m = m.max(e.gene().family);
            }
        }
        for (e, ls) in self.edges.range(BoxPos::new(0, c)..BoxPos::new(usize::MAX, c)) {
            if e.col == c && 2 * e.row + 1 < h {
                m = m.max(ls.iter().map(|g| g.family).max().unwrap_or(0));
            }
        }
        m
    }

    fn rec(&mut self, k: usize) {
        if self.done() || self.budget == 0 {
            return;
        }
        self.budget -= 1;
        if k == self.positions.len() {
            if (1..=self.mu.families()).all(|f| self.cur_min[f] == 1 || self.mu.count(f) == 0) {
                let t = GenomicTableau {
                    shape: self.shape.clone(),
                    boxes: self.boxes.clone(),
                    edges: self.edges.clone(),
                };
                if !self.ballot || t.is_ballot_fast() {
                    self.out.push(t);
                }
            }
            return;
        }
        let p = self.positions[k];
        let above = self.column_max_above(p);
        let top = p.row().min(self.mu.families());
        match p {
            Pos::Box(b) => {
                let east = b.east();
                let east_label = if self.shape.contains_box(east) { self.boxes.get(&east).map(|e| e.gene()) } else { None };
                let mut options: Vec<Gene> = ((above + 1)..=top)
                    .filter(|&f| self.mu.count(f) > 0)
                    .flat_map(|f| self.index_options(f).into_iter().map(move |i| Gene::new(f, i)))
                    .collect();
                self.shuffle(&mut options);
                for g in options {
                    let (family, index) = (g.family, g.index);
                    {
                        if east_label.is_some_and(|h| g >= h) {
                            continue;
                        }
                        let saved = self.cur_min[family];
                        self.cur_min[family] = index;
                        if self.prefix_ok() {
                            self.boxes.insert(b, CellEntry::Label(g));
                            self.rec(k + 1);
                            self.boxes.remove(&b);
                        }
                        self.cur_min[family] = saved;
                    }
                }
            }
            Pos::Edge(e) => {
                let fams: Vec<usize> = ((above + 1)..=top).filter(|&f| self.mu.count(f) > 0).collect();
                let mut masks: Vec<u32> = (0u32..(1 << fams.len())).collect();
                self.shuffle(&mut masks);
                for mask in masks {
                    if mask == 0 {
                        self.rec(k + 1);
                        continue;
                    }
                    let chosen: Vec<usize> =
                        fams.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &f)| f).collect();
                    self.edge_choices(k, e, &chosen, 0, &mut BTreeSet::new());
                }
            }
        }
    }

    fn edge_choices(&mut self, k: usize, e: EdgePos, fams: &[usize], at: usize, acc: &mut BTreeSet<Gene>) {
        if at == fams.len() {
            if self.prefix_ok() {
                self.edges.insert(e, acc.clone());
                self.rec(k + 1);
                self.edges.remove(&e);
            }
            return;
        }
        let family = fams[at];
        let mut options = self.index_options(family);
        self.shuffle(&mut options);
        for index in options {
            let saved = self.cur_min[family];
            self.cur_min[family] = index;
            acc.insert(Gene::new(family, index));
            self.edge_choices(k, e, fams, at + 1, acc);
            acc.remove(&Gene::new(family, index));
            self.cur_min[family] = saved;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: usize, i: usize) -> Gene {
        Gene::new(f, i)
    }

    fn shape(k: usize, n: usize, outer: &str, inner: &str) -> SkewShape {
        let ctx = GrassCtx::new(k, n).unwrap();
        SkewShape::new(ctx, Partition::parse(outer).unwrap(), Partition::parse(inner).unwrap()).unwrap()
    }

    fn example_1_1(with_edge_32: bool) -> GenomicTableau {
        let s = shape(5, 11, "6,5,4,3,2", "4,2,2,1");
        let e42: &[Gene] = if with_edge_32 { &[g(2, 1), g(3, 2)] } else { &[g(2, 1)] };
        GenomicTableau::from_labels(
            s,
            &[
                ((1, 5), g(1, 2)),
                ((1, 6), g(1, 3)),
                ((2, 3), g(1, 2)),
                ((2, 4), g(2, 1)),
                ((2, 5), g(2, 2)),
                ((3, 3), g(2, 1)),
                ((3, 4), g(3, 2)),
                ((4, 2), g(1, 1)),
                ((4, 3), g(3, 2)),
                ((5, 1), g(2, 1)),
                ((5, 2), g(3, 2)),
            ],
            &[((4, 2), e42), ((4, 3), &[g(4, 2)]), ((5, 1), &[g(3, 1)]), ((5, 2), &[g(4, 1)])],
        )
        .unwrap()
    }

    #[test]
    fn example_1_1_semistandardness() {
        let t = example_1_1(true);
        let rep = t.validate_semistandard();
        assert!(!rep.semistandard);
        assert!(rep.violations.iter().all(|v| v.starts_with("S.2 column 2")), "{:?}", rep.violations);
        assert!(t.too_high_violations().is_empty());
        let fixed = example_1_1(false);
        assert!(fixed.validate_semistandard().semistandard);
    }

    #[test]
    fn example_1_1_content() {
        let (content, n) = example_1_1(true).content_stats().unwrap();
        assert_eq!(content.counts(), &[3, 2, 2, 2]);
        assert_eq!(n[&g(1, 1)], 2);
        let single = GenomicTableau::from_labels(shape(1, 2, "1", ""), &[((1, 1), g(1, 1))], &[]).unwrap();
        let (c, n) = single.content_stats().unwrap();
        assert_eq!(c.counts(), &[1]);
        assert_eq!(n[&g(1, 1)], 0);
    }

    #[test]
    fn example_1_3_ballot() {
        let s = shape(2, 4, "2,2", "1");
        let t = GenomicTableau::from_labels(s.clone(), &[((1, 2), g(1, 2)), ((2, 1), g(1, 1)), ((2, 2), g(2, 1))], &[])
            .unwrap();
        let word: Vec<Gene> = t.instances().into_iter().map(|(_, g)| g).collect();
        assert_eq!(word, vec![g(1, 2), g(2, 1), g(1, 1)]);
        assert!(t.is_ballot(BallotMode::Fast));
        assert!(t.is_ballot(BallotMode::Bruteforce));
        let u = GenomicTableau::from_labels(s, &[((1, 2), g(1, 1)), ((2, 1), g(1, 1)), ((2, 2), g(2, 1))], &[]).unwrap();
        assert!(!u.is_ballot(BallotMode::Fast));
        assert!(!u.is_ballot(BallotMode::Bruteforce));
    }

    #[test]
    fn example_1_5_enumeration() {
        let s = shape(2, 4, "2,2", "2");
        let all = enumerate_ballotgen(&s, &Content::new(vec![2, 1]));
        assert_eq!(all.len(), 5);
        let t3 = GenomicTableau::from_labels(
            s.clone(),
            &[((2, 1), g(1, 1)), ((2, 2), g(1, 2))],
            &[((2, 1), &[g(2, 1)]), ((2, 2), &[g(2, 1)])],
        )
        .unwrap();
        let t1 =
            GenomicTableau::from_labels(s.clone(), &[((2, 1), g(1, 1)), ((2, 2), g(1, 2))], &[((2, 1), &[g(2, 1)])])
                .unwrap();
        assert!(all.contains(&t3));
        assert!(!t3.is_bundled());
        assert_eq!(t3.bundle(), t1);
        assert_eq!(all.iter().filter(|t| !t.is_bundled()).count(), 1);
    }

    #[test]
    fn small_enumerations() {
        let s = shape(1, 3, "2", "1");
        let all = enumerate_ballotgen(&s, &Content::new(vec![1]));
        assert_eq!(all.len(), 2);
        let s = shape(2, 4, "1", "1");
        let all = enumerate_ballotgen(&s, &Content::new(vec![]));
        assert_eq!(all, vec![GenomicTableau::empty(s)]);
    }

    #[test]
    fn semistandard_enumeration_contains_ballotgen() {
        use rand::SeedableRng;
        let s = shape(2, 4, "2,2", "1");
        let mu = Content::new(vec![1, 1]);
        let all = enumerate_semistandard(&s, &mu);
        let ballot = enumerate_ballotgen(&s, &mu);
        assert!(all.iter().all(|t| t.validate_semistandard().semistandard));
        assert_eq!(all.iter().filter(|t| t.is_ballot(BallotMode::Fast)).cloned().collect::<Vec<_>>(), ballot);
        assert!(all.len() > ballot.len());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let t = random_semistandard(&s, &mu, &mut rng, 1000).unwrap();
            assert!(all.contains(&t), "{t}");
        }
    }

    #[test]
    fn bundled_example_virtuals() {
        let s = shape(5, 11, "6,4,3,2,1", "5,3,2,1");
        let b = GenomicTableau::from_labels(
            s,
            &[((1, 6), g(1, 3)), ((2, 4), g(2, 1)), ((3, 3), g(1, 2)), ((4, 2), g(2, 1)), ((5, 1), g(3, 1))],
            &[((4, 1), &[g(1, 1)])],
        )
        .unwrap();
        assert!(b.is_ballotgen());
        assert!(b.is_bundled());
        let v = b.virtual_labels();
        let mut expect: BTreeMap<EdgePos, BTreeSet<Gene>> = BTreeMap::new();
        for (r, c, gene) in [(4, 2, g(3, 1)), (3, 2, g(1, 1)), (3, 3, g(2, 1)), (1, 4, g(1, 2)), (1, 5, g(1, 2))] {
            expect.entry(BoxPos::new(r, c)).or_default().insert(gene);
        }
        assert_eq!(v, expect);
    }

    #[test]
    fn json_round_trip() {
        let t = example_1_1(false);
        let s = t.to_json_string();
        let back = GenomicTableau::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn gene_succ_pred() {
        let mu = Content::new(vec![2, 1]);
        assert_eq!(g(1, 1).succ(&mu), g(1, 2));
        assert_eq!(g(1, 2).succ(&mu), g(2, 1));
        assert_eq!(g(2, 1).succ(&mu), g(3, 1));
        assert_eq!(g(2, 1).pred(&mu), Some(g(1, 2)));
        assert_eq!(g(1, 1).pred(&mu), None);
        assert_eq!(mu.max_gene(), Some(g(2, 1)));
    }
}
