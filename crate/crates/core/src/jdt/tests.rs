use std::collections::{BTreeMap, BTreeSet};

use super::*;
use crate::genomic::{CellEntry, Content, Gene, GenomicTableau};
use crate::laurent::LaurentPoly;
use crate::shapes::{BoxPos, GrassCtx, Partition, SkewShape};

fn g(f: usize, i: usize) -> Gene {
    Gene::new(f, i)
}

fn p(s: &str) -> Partition {
    Partition::parse(s).unwrap()
}

fn r(i: usize, j: usize, n: usize) -> LaurentPoly {
    LaurentPoly::ratio_monomial(i, j, n).unwrap()
}

fn om(i: usize, j: usize, n: usize) -> LaurentPoly {
    LaurentPoly::one_minus_ratio(i, j, n).unwrap()
}

/// A box entry in fixtures: `L(g)` a label, `B` a bullet of the active gene.
#[derive(Clone, Copy)]
enum E {
    L(Gene),
    B,
}

struct Fixture {
    ctx: GrassCtx,
    outer: &'static str,
    inner: &'static str,
    content: Vec<usize>,
}

impl Fixture {
    fn tableau(&self, boxes: &[((usize, usize), E)], edges: &[((usize, usize), &[Gene])], active: Gene) -> GenomicTableau {
        let shape = SkewShape::new(self.ctx, p(self.outer), p(self.inner)).unwrap();
        let b: BTreeMap<BoxPos, CellEntry> = boxes
            .iter()
            .map(|&((r, c), e)| {
                let entry = match e {
                    E::L(x) => CellEntry::Label(x),
                    E::B => CellEntry::Bullet(active),
                };
                (BoxPos::new(r, c), entry)
            })
            .collect();
        let mut em: BTreeMap<BoxPos, BTreeSet<Gene>> = BTreeMap::new();
        for &((r, c), ls) in edges {
            em.entry(BoxPos::new(r, c)).or_default().extend(ls.iter().copied());
        }
        GenomicTableau::new(shape, b, em).unwrap()
    }

    fn good(&self, boxes: &[((usize, usize), E)], edges: &[((usize, usize), &[Gene])], active: Gene) -> GoodTableau {
        GoodTableau::new(self.tableau(boxes, edges, active), active, Content::new(self.content.clone())).unwrap()
    }
}

fn tags(step: &SwapStep) -> Vec<String> {
    step.snakes.iter().map(|(_, t)| t.to_string()).collect()
}

#[test]
fn good_examples() {
    use E::{L, B};
    let f = Fixture { ctx: GrassCtx::new(2, 6).unwrap(), outer: "3,3", inner: "3", content: vec![2, 2] };
    let t = f.good(&[((2, 1), L(g(2, 1))), ((2, 2), B), ((2, 3), L(g(1, 2)))], &[((1, 1), &[g(1, 1)]), ((2, 3), &[g(2, 2)])], g(2, 2));
    let rep = validate_good(&t);
    assert!(rep.good, "{:?}", rep.details);

    let f = Fixture { ctx: GrassCtx::new(2, 5).unwrap(), outer: "3,2", inner: "1", content: vec![1, 1] };
    let t = f.good(&[((1, 2), L(g(1, 1))), ((1, 3), B), ((2, 1), B), ((2, 2), L(g(1, 1)))], &[((2, 2), &[g(2, 1)])], g(2, 1));
    let rep = validate_good(&t);
    assert!(rep.good, "{:?}", rep.details);
}

#[test]
fn not_good_examples() {
    use E::{L, B};
    let f = Fixture { ctx: GrassCtx::new(2, 6).unwrap(), outer: "4,1", inner: "1", content: vec![2, 1] };
    let t = f.good(&[((1, 2), L(g(1, 1))), ((1, 3), B), ((1, 4), L(g(1, 2))), ((2, 1), L(g(2, 1)))], &[((1, 2), &[g(2, 1)])], g(1, 2));
    let rep = validate_good(&t);
    assert!(rep.failed.contains(&Condition::G1) && rep.failed.contains(&Condition::G7), "{:?}", rep.failed);

    let f = Fixture { ctx: GrassCtx::new(3, 6).unwrap(), outer: "2,1", inner: "", content: vec![1, 1, 1] };
    let t = f.good(&[((1, 1), B), ((1, 2), L(g(1, 1))), ((2, 1), L(g(2, 1)))], &[((1, 2), &[g(3, 1)])], g(2, 1));
    assert!(validate_good(&t).failed.contains(&Condition::G8));

    let f = Fixture { ctx: GrassCtx::new(2, 5).unwrap(), outer: "3,2", inner: "1", content: vec![2, 1] };
    let t = f.good(&[((1, 2), B), ((1, 3), L(g(1, 2))), ((2, 1), B), ((2, 2), L(g(1, 1)))], &[((2, 2), &[g(2, 1)])], g(2, 1));
    let rep = validate_good(&t);
    assert!(rep.failed.contains(&Condition::G13) && rep.failed.contains(&Condition::G11), "{:?}", rep.failed);

    let f = Fixture { ctx: GrassCtx::new(2, 5).unwrap(), outer: "2,2", inner: "2", content: vec![2] };
    let t = f.good(&[((2, 1), B), ((2, 2), L(g(1, 2)))], &[((1, 1), &[g(1, 1)])], g(1, 2));
    assert!(validate_good(&t).failed.contains(&Condition::G12));
}

#[test]
fn bundled_tableaux_are_good_for_every_gene() {
    let ctx = GrassCtx::new(2, 5).unwrap();
    let content = Content::new(vec![2, 1]);
    for nu in ctx.partitions() {
        for lam in ctx.partitions() {
            if !nu.contains(&lam) {
                continue;
            }
            let shape = SkewShape::new(ctx, nu.clone(), lam.clone()).unwrap();
            for t in bundled_tableaux(&shape, &content) {
                for gene in content.genes() {
                    let u = GoodTableau::new(t.clone(), gene, content.clone()).unwrap();
                    let rep = validate_good(&u);
                    assert!(rep.good, "{t} {gene}: {:?}", rep.details);
                }
            }
        }
    }
}

#[test]
fn snakes_share_a_row() {
    use E::{L, B};
    let f = Fixture { ctx: GrassCtx::new(3, 6).unwrap(), outer: "3,2,1", inner: "1", content: vec![2] };
    let t = f.good(&[((1, 2), B), ((1, 3), L(g(1, 2))), ((2, 1), B), ((2, 2), L(g(1, 2))), ((3, 1), L(g(1, 1)))], &[], g(1, 1));
    let s = snakes(&t).unwrap();
    let sets: Vec<Vec<BoxPos>> = s.iter().map(|x| x.boxes.clone()).collect();
    assert_eq!(sets.len(), 2);
    assert!(sets.contains(&vec![BoxPos::new(1, 2), BoxPos::new(1, 3)]));
    assert!(sets.contains(&vec![BoxPos::new(2, 1), BoxPos::new(2, 2), BoxPos::new(3, 1)]));
}

#[test]
fn trace_single_term() {
    use E::L;
    let ctx = GrassCtx::new(2, 4).unwrap();
    let f = Fixture { ctx, outer: "2,2", inner: "2,1", content: vec![1, 1] };
    let t = f.tableau(&[((2, 2), L(g(1, 1)))], &[((2, 2), &[g(2, 1)])], g(1, 1));
    let trace = slide_trace(&t, &[BoxPos::new(2, 1)]).unwrap();
    assert_eq!(tags(&trace[0].steps[0].2), vec!["H5.1/∅/∅"]);
    assert_eq!(tags(&trace[1].steps[0].2), vec!["∅/∅/T4.3"]);
    let out = slide(&t, &[BoxPos::new(2, 1)]).unwrap();
    let expect = Fixture { ctx, outer: "2,1", inner: "2", content: vec![1, 1] }
        .tableau(&[((2, 1), L(g(2, 1)))], &[((1, 1), &[g(1, 1)])], g(1, 1));
    assert_eq!(out.len(), 1);
    assert_eq!(out.coefficient(&expect), r(1, 2, 4));
}

#[test]
fn trace_two_terms() {
    use E::L;
    let ctx = GrassCtx::new(3, 5).unwrap();
    let f = Fixture { ctx, outer: "2,2,1", inner: "2,1", content: vec![1, 1] };
    let t = f.tableau(&[((2, 2), L(g(1, 1))), ((3, 1), L(g(2, 1)))], &[], g(1, 1));
    let out = slide(&t, &[BoxPos::new(2, 1)]).unwrap();
    let a = Fixture { ctx, outer: "2,1,1", inner: "2", content: vec![1, 1] }
        .tableau(&[((2, 1), L(g(1, 1))), ((3, 1), L(g(2, 1)))], &[], g(1, 1));
    let b = Fixture { ctx, outer: "2,1", inner: "2", content: vec![1, 1] }
        .tableau(&[((2, 1), L(g(2, 1)))], &[((1, 1), &[g(1, 1)])], g(1, 1));
    assert_eq!(out.len(), 2, "{out:?}");
    assert_eq!(out.coefficient(&a), r(2, 3, 5));
    assert_eq!(out.coefficient(&b), -r(2, 3, 5));
}

#[test]
fn trace_one_row_h6() {
    use E::L;
    let ctx = GrassCtx::new(1, 4).unwrap();
    let f = Fixture { ctx, outer: "3", inner: "1", content: vec![3] };
    let t = f.tableau(&[((1, 2), L(g(1, 2))), ((1, 3), L(g(1, 3)))], &[((1, 1), &[g(1, 1)])], g(1, 1));
    let out = slide(&t, &[BoxPos::new(1, 1)]).unwrap();
    let full = Fixture { ctx, outer: "3", inner: "", content: vec![3] }
        .tableau(&[((1, 1), L(g(1, 1))), ((1, 2), L(g(1, 2))), ((1, 3), L(g(1, 3)))], &[], g(1, 1));
    assert_eq!(out.len(), 1, "{out:?}");
    assert_eq!(out.coefficient(&full), om(1, 4, 4));
}

#[test]
fn trace_marked_chain() {
    use E::L;
    let ctx = GrassCtx::new(2, 5).unwrap();
    let f = Fixture { ctx, outer: "3,3", inner: "3,1", content: vec![2, 2] };
    let t = f.tableau(&[((2, 2), L(g(1, 1))), ((2, 3), L(g(1, 2)))], &[((2, 2), &[g(2, 1)]), ((2, 3), &[g(2, 2)])], g(1, 1));
    let trace = slide_trace(&t, &[BoxPos::new(2, 1)]).unwrap();
    let all: Vec<Vec<String>> = trace.iter().map(|s| tags(&s.steps[0].2)).collect();
    assert_eq!(all[0], vec!["H5.1/∅/∅"]);
    assert_eq!(all[2], vec!["∅/∅/T4.3"]);
    assert_eq!(all[3], vec!["∅/∅/T4.3"]);
    let out = slide(&t, &[BoxPos::new(2, 1)]).unwrap();
    let expect = Fixture { ctx, outer: "3,2", inner: "3", content: vec![2, 2] }
        .tableau(&[((2, 1), L(g(2, 1))), ((2, 2), L(g(2, 2)))], &[((1, 1), &[g(1, 1)]), ((1, 2), &[g(1, 2)])], g(1, 1));
    assert_eq!(out.len(), 1);
    assert_eq!(out.coefficient(&expect), r(1, 3, 5));
}

#[test]
fn identities_hold_on_gr24() {
    let ctx = GrassCtx::new(2, 4).unwrap();
    for lam in ctx.partitions() {
        for mu in ctx.partitions() {
            for nu in ctx.partitions() {
                let rep = lambda_identities(&lam, &mu, &nu, ctx).unwrap();
                assert!(rep.ok(), "{lam} {mu} {nu}: {:?}", rep.failures);
            }
        }
    }
}

#[test]
fn marked_label_under_its_gene_is_unproductive() {
    use E::{L, B};
    // 1_1 over a marked 1_1 at the end of row 2: the lower box would be
    // productive by the east-boundary rule alone.
    let f = Fixture { ctx: GrassCtx::new(2, 4).unwrap(), outer: "2,2", inner: "1", content: vec![1, 1] };
    let t = f.good(&[((1, 2), L(g(1, 1))), ((2, 1), B), ((2, 2), L(g(1, 1)))], &[((2, 2), &[g(2, 1)])], g(2, 1));
    assert!(t.is_marked(crate::genomic::Pos::Box(BoxPos::new(2, 2)), g(1, 1)));
    assert!(!crate::weights::productive_fine(t.tableau(), BoxPos::new(2, 2)));
    assert!(crate::weights::productive_fine(t.tableau(), BoxPos::new(1, 2)));
}

#[test]
fn swap_outputs_are_good_and_revswap_inverts() {
    let ctx = GrassCtx::new(2, 5).unwrap();
    let mut checked = 0;
    for t in harvest_good_tableaux(ctx, 200, 7).unwrap() {
        if t.active().family > t.content().families() {
            continue;
        }
        checked += 1;
        let out = swap(&t).unwrap();
        for u in out.support() {
            let rep = validate_good(u);
            assert!(rep.good, "swap({t}) gave {u}: {:?}", rep.details);
            assert_eq!(u.tableau().content_stats().unwrap().0, *t.content(), "{u}");
            let back = revswap(u).unwrap();
            assert!(back.contains(&t), "revswap({u}) misses {t}");
            for v in back.support() {
                assert!(validate_good(v).good, "revswap({u}) gave {v}");
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn slides_end_with_bullets_at_outer_corners() {
    let ctx = GrassCtx::new(2, 5).unwrap();
    let content = Content::new(vec![2, 1]);
    let shape = SkewShape::new(ctx, p("3,2"), p("2")).unwrap();
    for t in bundled_tableaux(&shape, &content) {
        let stages = slide_stages(&t, &[BoxPos::new(1, 2)]).unwrap();
        for u in stages.last().unwrap().support() {
            let outer = u.tableau().shape().outer().clone();
            for (b, _) in u.tableau().bullets() {
                assert!(outer.removable_cells().contains(&b), "{u}");
            }
        }
    }
}

#[test]
fn tree_walkways_are_well_formed() {
    let ctx = GrassCtx::new(2, 5).unwrap();
    let content = Content::new(vec![2, 1]);
    let shape = SkewShape::new(ctx, p("3,2"), p("1")).unwrap();
    for u in bundled_tableaux(&shape, &content) {
        let tree = reversal_tree(&u, &p("3,2")).unwrap();
        for node in tree.nodes.iter().filter(|nd| nd.depth < tree.families) {
            let i = tree.family_at(node.depth);
            let walks = walkways(&node.tableau, i);
            assert!(walks.iter().all(|w| walkway_is_well_formed(&node.tableau, w)), "{}", node.tableau);
        }
    }
}

#[test]
fn reversal_tree_example() {
    use E::L;
    let ctx = GrassCtx::new(2, 5).unwrap();
    let f = Fixture { ctx, outer: "3,2", inner: "1", content: vec![2, 1] };
    let u = f.tableau(&[((1, 2), L(g(1, 1))), ((1, 3), L(g(1, 2))), ((2, 1), L(g(1, 1))), ((2, 2), L(g(2, 1)))], &[], g(1, 1));
    let tree = reversal_tree(&u, &p("3,2")).unwrap();
    let kids = |i: usize| -> Vec<LaurentPoly> {
        let mut v: Vec<LaurentPoly> = tree.nodes[i].children.iter().map(|&c| tree.nodes[c].coeff.clone()).collect();
        v.sort_by_key(|x| x.to_string());
        v
    };
    let one = LaurentPoly::one(5);
    let mut root = vec![one.clone(), om(2, 3, 5)];
    root.sort_by_key(|x| x.to_string());
    assert_eq!(kids(0), root);
    let first = tree.nodes[0].children[0];
    let mut want = vec![one.clone(), om(1, 2, 5), om(3, 5, 5), &om(1, 2, 5) * &om(3, 5, 5)];
    want.sort_by_key(|x| x.to_string());
    assert_eq!(kids(first), want);
    assert_eq!(tree.leaves().count(), 5);

    // The node identity for the family-1 walkway of the first child.
    let lhs = &(&(&om(1, 2, 5) + &om(3, 5, 5)) - &(&om(1, 2, 5) * &om(3, 5, 5)))
        + &(&(&r(1, 2, 5) * &r(3, 5, 5)) * &om(2, 3, 5));
    assert_eq!(lhs, om(1, 5, 5));
}
