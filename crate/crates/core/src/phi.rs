//! The family Φ: drawings obtained from B1 and B2 by repeated 4-joins on
//! twin faces, in both directions, kept up to drawing isomorphism.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::chordal::is_simplicial;
use crate::embedding::catalog::catalog;
use crate::embedding::{drawing_code, four_join, Drawing, DrawingCode, TwinPair, Violation};

/// How a member was produced: `parent ⊕ (twin.f1, twin.f2)`, faces
/// numbered as in `parent.faces()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParentLink {
    pub parent: DrawingCode,
    pub twin: TwinPair,
}

#[derive(Clone, Debug)]
pub struct PhiMember {
    pub drawing: Drawing,
    /// `None` for the seeds B1 and B2.
    pub parent: Option<ParentLink>,
    /// Catalog name for seeds.
    pub seed: Option<&'static str>,
}

#[derive(Clone, Debug, Default)]
pub struct PhiAtlas {
    pub by_order: BTreeMap<usize, BTreeMap<DrawingCode, PhiMember>>,
}

pub const SEEDS: [&str; 2] = ["B1", "B2"];
pub const DEFAULT_MAX_ORDER: usize = 12;

fn seed_level() -> BTreeMap<DrawingCode, PhiMember> {
    SEEDS
        .iter()
        .map(|&name| {
            let d = catalog(name).expect("seed in catalog");
            let code = drawing_code(&d).expect("seed is connected");
            (code, PhiMember { drawing: d, parent: None, seed: Some(name) })
        })
        .collect()
}

/// All 4-joins of `d`, one per ordered twin pair.
pub fn joins(d: &Drawing) -> Vec<(TwinPair, Drawing)> {
    let fs = d.faces();
    d.twin_faces(&fs)
        .into_iter()
        .map(|t| {
            let child = four_join(d, &fs, t.f1, t.f2).expect("twin faces admit a 4-join");
            (t, child)
        })
        .collect()
}

/// Breadth-first closure of {B1, B2} under 4-joins up to `max_order`
/// vertices. Within a level, parents expand in parallel; the first child
/// per code in (parent code, twin pair) order is kept.
pub fn generate_phi(max_order: usize) -> PhiAtlas {
    let mut atlas = PhiAtlas::default();
    if max_order < 7 {
        return atlas;
    }
    atlas.by_order.insert(7, seed_level());
    for order in 8..=max_order {
        let prev: Vec<(&DrawingCode, &PhiMember)> = atlas.by_order[&(order - 1)].iter().collect();
        let children: Vec<Vec<(DrawingCode, PhiMember)>> = prev
            .par_iter()
            .map(|(code, m)| {
                joins(&m.drawing)
                    .into_iter()
                    .map(|(twin, child)| {
                        let c = drawing_code(&child).expect("joins stay connected");
                        let link = ParentLink { parent: (*code).clone(), twin };
                        (c, PhiMember { drawing: child, parent: Some(link), seed: None })
                    })
                    .collect()
            })
            .collect();
        let mut level = BTreeMap::new();
        for (c, m) in children.into_iter().flatten() {
            level.entry(c).or_insert(m);
        }
        log::info!("phi order {order}: {} drawings", level.len());
        atlas.by_order.insert(order, level);
    }
    atlas
}

impl PhiAtlas {
    pub fn members(&self) -> impl Iterator<Item = (usize, &DrawingCode, &PhiMember)> {
        self.by_order.iter().flat_map(|(&n, lvl)| lvl.iter().map(move |(c, m)| (n, c, m)))
    }

    pub fn count(&self, order: usize) -> usize {
        self.by_order.get(&order).map_or(0, BTreeMap::len)
    }

    pub fn get(&self, code: &DrawingCode) -> Option<&PhiMember> {
        self.by_order.values().find_map(|lvl| lvl.get(code))
    }

    /// Underlying graphs per order, up to isomorphism.
    pub fn graph_classes(&self) -> BTreeMap<usize, BTreeSet<CanonicalForm>> {
        self.by_order
            .iter()
            .map(|(&n, lvl)| (n, lvl.values().map(|m| canonical_form(m.drawing.graph())).collect()))
            .collect()
    }
}

/// Underlying graphs of Φ up to `max_order`, up to isomorphism.
pub fn phi_graphs(max_order: usize) -> BTreeSet<CanonicalForm> {
    generate_phi(max_order).graph_classes().into_values().flatten().collect()
}

/// One peel: `removed` (a vertex of the drawing with code `code`) was the
/// vertex added by the 4-join.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStep {
    pub order: usize,
    pub code: DrawingCode,
    pub removed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    /// From the input drawing down to order 8.
    pub chain: Vec<PeelStep>,
    /// B1 or B2.
    pub seed: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    #[error("not a valid drawing: {0}")]
    Invalid(Violation),
    #[error("order {n} is below 7")]
    TooSmall { n: usize },
    #[error("disconnected drawing")]
    Disconnected,
    #[error("order 7 drawing is not B1 or B2")]
    NotSeed { code: DrawingCode },
    #[error("order {order}: no simplicial degree-4 vertex undoes a 4-join")]
    NoPeel { order: usize },
}

struct Peeler {
    seeds: Vec<(DrawingCode, &'static str)>,
    memo: HashMap<DrawingCode, Result<Membership, Rejection>>,
}

/// If removing `x` undoes a 4-join, the smaller drawing.
fn unjoin(d: &Drawing, x: usize, code: &DrawingCode) -> Option<Drawing> {
    let g = d.graph();
    if g.degree(x) != 4 || !is_simplicial(g, x) {
        return None;
    }
    let nb: Vec<usize> = g.neighbors(x).collect();
    let crossed: Vec<usize> = nb.iter().copied().filter(|&y| d.is_edge_crossed(x, y)).collect();
    if crossed.len() != 1 {
        return None;
    }
    let (smaller, new_to_old) = d.remove_vertices(&[x]);
    if smaller.crossing_count() + 1 != d.crossing_count() {
        return None;
    }
    let mut old_to_new = vec![usize::MAX; d.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = i;
    }
    let v2 = old_to_new[crossed[0]];
    let rest: Vec<usize> = nb.iter().filter(|&&y| y != crossed[0]).map(|&y| old_to_new[y]).collect();
    let fs = smaller.faces();
    smaller
        .twin_faces(&fs)
        .into_iter()
        .filter(|t| t.v2 == v2 && rest.contains(&t.v1) && rest.contains(&t.a) && rest.contains(&t.b))
        .any(|t| {
            four_join(&smaller, &fs, t.f1, t.f2)
                .ok()
                .and_then(|j| drawing_code(&j))
                .is_some_and(|c| &c == code)
        })
        .then_some(smaller)
}

impl Peeler {
    fn peel(&mut self, d: &Drawing) -> Result<Membership, Rejection> {
        let code = drawing_code(d).ok_or(Rejection::Disconnected)?;
        if let Some(r) = self.memo.get(&code) {
            return r.clone();
        }
        let r = self.peel_uncached(d, &code);
        self.memo.insert(code, r.clone());
        r
    }

    fn peel_uncached(&mut self, d: &Drawing, code: &DrawingCode) -> Result<Membership, Rejection> {
        let n = d.n();
        if n < 7 {
            return Err(Rejection::TooSmall { n });
        }
        if n == 7 {
            return match self.seeds.iter().find(|(c, _)| c == code) {
                Some(&(_, seed)) => Ok(Membership { chain: Vec::new(), seed }),
                None => Err(Rejection::NotSeed { code: code.clone() }),
            };
        }
        let mut first_err = None;
        for x in 0..n {
            let Some(smaller) = unjoin(d, x, code) else { continue };
            match self.peel(&smaller) {
                Ok(mut m) => {
                    m.chain.insert(0, PeelStep { order: n, code: code.clone(), removed: x });
                    return Ok(m);
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        Err(first_err.unwrap_or(Rejection::NoPeel { order: n }))
    }
}

/// Decides whether `d` is isomorphic to a member of Φ by peeling off
/// 4-join vertices down to order 7. Every simplicial degree-4 vertex is
/// tried before rejecting.
pub fn phi_membership(d: &Drawing) -> Result<Membership, Rejection> {
    d.validate().map_err(Rejection::Invalid)?;
    let seeds = SEEDS
        .iter()
        .map(|&s| (drawing_code(&catalog(s).unwrap()).unwrap(), s))
        .collect();
    Peeler { seeds, memo: HashMap::new() }.peel(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{is_k_tree, simplicial_vertices};

    #[test]
    fn seeds_only_at_order_seven() {
        let a = generate_phi(7);
        assert_eq!(a.count(7), 2);
        assert!(generate_phi(6).by_order.is_empty());
    }

    /// Regression values found by running the generator, not known counts.
    #[test]
    fn frozen_counts_to_order_twelve() {
        let a = generate_phi(DEFAULT_MAX_ORDER);
        let drawings: Vec<usize> = (7..=12).map(|n| a.count(n)).collect();
        assert_eq!(drawings, vec![2, 3, 6, 10, 20, 36]);
        let graphs: Vec<usize> = a.graph_classes().values().map(BTreeSet::len).collect();
        assert_eq!(graphs, vec![1, 1, 2, 3, 6, 10]);
    }

    #[test]
    fn b1_b2_b3_draw_one_graph() {
        let forms: BTreeSet<CanonicalForm> =
            ["B1", "B2", "B3"].iter().map(|n| canonical_form(catalog(n).unwrap().graph())).collect();
        assert_eq!(forms.len(), 1);
        assert_eq!(generate_phi(7).graph_classes()[&7], forms);
    }

    #[test]
    fn order_eight_members_are_joins_of_seeds() {
        let a = generate_phi(8);
        assert!(a.count(8) > 0);
        for (_, code, m) in a.members() {
            m.drawing.validate().unwrap();
            assert_eq!(&drawing_code(&m.drawing).unwrap(), code);
            assert!(is_k_tree(m.drawing.graph(), 4).is_some());
            assert_eq!(simplicial_vertices(m.drawing.graph()).len(), 2);
            if let Some(link) = &m.parent {
                let p = &a.get(&link.parent).unwrap().drawing;
                assert_eq!(p.n() + 1, m.drawing.n());
                assert_eq!(p.crossing_count() + 1, m.drawing.crossing_count());
            }
        }
    }

    #[test]
    fn membership_round_trip_and_rejections() {
        let a = generate_phi(9);
        for (_, _, m) in a.members() {
            let r = phi_membership(&m.drawing).unwrap();
            assert_eq!(r.chain.len(), m.drawing.n() - 7);
            // relabelled copies are members too
            let perm: Vec<usize> = (0..m.drawing.n()).rev().collect();
            assert!(phi_membership(&m.drawing.relabel(&perm)).is_ok());
        }
        let b3 = catalog("B3").unwrap();
        assert!(matches!(phi_membership(&b3), Err(Rejection::NotSeed { .. })));
        let k6 = catalog("K6").unwrap();
        assert_eq!(phi_membership(&k6), Err(Rejection::TooSmall { n: 6 }));
    }
}
