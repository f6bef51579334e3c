//! 1-planarity testing and drawing enumeration by search over crossing sets.
//!
//! Edges are decided in index order: each is either drawn uncrossed or
//! paired with a later, vertex-disjoint edge. Every partial decision is
//! checked for planarity of its *gadget graph*: the planarization of the
//! decided edges in which each crossing node `c` of edges `ab`, `pq` gets its
//! four arms subdivided by rim nodes joined in the cycle `a p b q`. The hub
//! and rim form a wheel, whose rotation is fixed up to reflection, so the
//! gadget graph is planar exactly when the planarization has an embedding
//! in which the arms alternate at every crossing.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::chordal::mcs_order;
use crate::connectivity::vertex_connectivity;
use crate::embedding::{drawing_code, Drawing, DrawingCode};
use crate::error::ScaleExceeded;
use crate::graph::Graph;
use crate::planarity::{is_planar, Rotation};

/// Why a graph has no 1-planar drawing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// `m` exceeds the edge bound for 1-planar graphs on `n` vertices.
    EdgeBound { n: usize, m: usize, bound: usize, rule: &'static str },
    /// Every crossing set was ruled out.
    SearchExhausted { nodes: u64 },
}

#[derive(Clone, Debug)]
pub enum OnePlanarity {
    Drawing(Drawing),
    Impossible(Refutation),
    /// The node budget ran out before a verdict.
    Exhausted { nodes: u64 },
}

impl OnePlanarity {
    pub fn drawing(&self) -> Option<&Drawing> {
        match self {
            OnePlanarity::Drawing(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_impossible(&self) -> bool {
        matches!(self, OnePlanarity::Impossible(_))
    }
}

/// The edge-count refutation, if it applies: `4n - 8` for `n >= 3`, and
/// `4n - 9` when `n` is 7 or 9.
pub fn edge_bound_refutation(g: &Graph) -> Option<Refutation> {
    let (n, m) = (g.n(), g.m());
    if n < 3 {
        return None;
    }
    let (bound, rule) = if n == 7 || n == 9 { (4 * n - 9, "4n-9") } else { (4 * n - 8, "4n-8") };
    (m > bound).then_some(Refutation::EdgeBound { n, m, bound, rule })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Decision {
    Open,
    Plain,
    Crossed,
}

/// The planarization of plain edges `plain` and crossing pairs `pairs`;
/// pair `k` becomes node `n + k`.
fn planarization_graph(g: &Graph, plain: &[usize], pairs: &[(usize, usize)]) -> Graph {
    let n = g.n();
    let edges = g.edges();
    let mut out: Vec<(usize, usize)> = plain.iter().map(|&e| edges[e]).collect();
    for (k, &(e1, e2)) in pairs.iter().enumerate() {
        let (a, b) = edges[e1];
        let (p, q) = edges[e2];
        out.extend([a, p, b, q].map(|x| (x, n + k)));
    }
    Graph::from_edge_list(n + pairs.len(), &out).expect("planarization is simple")
}

/// The gadget graph for plain edges `plain` and crossing pairs `pairs`
/// (edge indices). Pair `k` owns nodes `n + 5k` (hub) and the next four
/// (rim nodes for `a`, `p`, `b`, `q`).
fn gadget_graph(g: &Graph, plain: &[usize], pairs: &[(usize, usize)]) -> Graph {
    let n = g.n();
    let edges = g.edges();
    let mut out: Vec<(usize, usize)> = plain.iter().map(|&e| edges[e]).collect();
    for (k, &(e1, e2)) in pairs.iter().enumerate() {
        let (a, b) = edges[e1];
        let (p, q) = edges[e2];
        let hub = n + 5 * k;
        for (i, end) in [a, p, b, q].into_iter().enumerate() {
            let rim = hub + 1 + i;
            out.push((hub, rim));
            out.push((end, rim));
            out.push((rim, hub + 1 + (i + 1) % 4));
        }
    }
    Graph::from_edge_list(n + 5 * pairs.len(), &out).expect("gadget graph is simple")
}

/// Reads a drawing off a planar embedding of the gadget graph.
fn drawing_from_gadget(g: &Graph, pairs: &[(usize, usize)], rot: &[Vec<usize>]) -> Drawing {
    let n = g.n();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    order.sort_by_key(|&k| norm(pairs[k]));
    let mut slot = vec![0; pairs.len()];
    for (i, &k) in order.iter().enumerate() {
        slot[k] = i;
    }
    let edges = g.edges();
    // gadget node -> drawing node, for rim nodes seen from an endpoint
    let rim_owner = |x: usize| n + slot[(x - n) / 5];
    let mut out = vec![Vec::new(); n + pairs.len()];
    for v in 0..n {
        out[v] = rot[v].iter().map(|&x| if x < n { x } else { rim_owner(x) }).collect();
    }
    for (k, &(e1, e2)) in pairs.iter().enumerate() {
        let (a, b) = edges[e1];
        let (p, q) = edges[e2];
        let ends = [a, p, b, q];
        let hub = n + 5 * k;
        out[n + slot[k]] = rot[hub].iter().map(|&r| ends[r - hub - 1]).collect();
    }
    let crossings = order.iter().map(|&k| norm(pairs[k])).collect();
    Drawing::from_parts(g.clone(), crossings, out)
}

/// Adds edges from `hub` (a new node, or `None` for the single edge
/// `ends[0] ends[1]`) to `ends` inside one face of the planar rotation
/// `rot`, if some face meets every non-isolated end. A sufficient test
/// only: `None` says nothing about planarity.
fn insert_in_face(rot: &[Vec<usize>], ends: &[usize], hub: Option<usize>) -> Option<Vec<Vec<usize>>> {
    let attached: Vec<usize> = ends.iter().copied().filter(|&x| !rot[x].is_empty()).collect();
    let mut out = rot.to_vec();
    if hub.is_some() {
        out.push(Vec::new());
    }
    // (end, predecessor on the chosen face), in face order
    let mut corners: Vec<(usize, Option<usize>)> = Vec::new();
    if !attached.is_empty() {
        let face = crate::planarity::faces_of(rot).into_iter().find(|f| attached.iter().all(|x| f.contains(x)))?;
        let mut at: Vec<(usize, usize)> = attached
            .iter()
            .map(|&x| (face.iter().position(|&y| y == x).unwrap(), x))
            .collect();
        at.sort_unstable();
        let k = face.len();
        corners = at.into_iter().map(|(i, x)| (x, Some(face[(i + k - 1) % k]))).collect();
    }
    corners.extend(ends.iter().filter(|x| rot[**x].is_empty()).map(|&x| (x, None)));
    let link = |out: &mut Vec<Vec<usize>>, x: usize, pred: Option<usize>, y: usize| match pred {
        Some(w) => {
            let i = out[x].iter().position(|&z| z == w).unwrap();
            out[x].insert(i + 1, y);
        }
        None => out[x].push(y),
    };
    match hub {
        Some(h) => {
            for &(x, pred) in &corners {
                link(&mut out, x, pred, h);
            }
            out[h] = corners.iter().rev().map(|&(x, _)| x).collect();
        }
        None => {
            let (u, pu) = corners[0];
            let (v, pv) = corners[1];
            link(&mut out, u, pu, v);
            link(&mut out, v, pv, u);
        }
    }
    Some(out)
}

enum Mode {
    /// Branch and bound for the fewest crossings, below `best` if set.
    Min { best: Option<usize>, floor: usize },
    /// Collect every feasible crossing set.
    All,
}

struct Search<'a> {
    g: &'a Graph,
    /// Decision order: edge indices, densest part of the graph first.
    order: Vec<usize>,
    /// Decision per position in `order`.
    state: Vec<Decision>,
    plain: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    /// Planar rotations of the current planarization, one per depth.
    rot: Vec<Vec<Vec<usize>>>,
    mode: Mode,
    nodes: u64,
    budget: u64,
    /// Crossing pairs with the rotation of their planarization.
    found: Vec<(Vec<(usize, usize)>, Rotation)>,
}

enum Step {
    Continue,
    Stop,
    OutOfBudget,
}

/// Edges sorted by their later endpoint in a maximum cardinality search,
/// so that dense cores are decided (and refuted) early.
fn decision_order(g: &Graph) -> Vec<usize> {
    let mut rank = vec![0; g.n()];
    for (i, v) in mcs_order(g).into_iter().enumerate() {
        rank[v] = i;
    }
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = g.edges()[e];
        (rank[u].max(rank[v]), rank[u].min(rank[v]))
    });
    order
}

impl Search<'_> {
    /// After pushing a decision onto `plain`/`pairs`: a planar rotation of
    /// the new planarization, pushed onto the stack, or `false`.
    fn push_embedding(&mut self) -> bool {
        let cur = self.rot.last().expect("root embedding");
        let edges = self.g.edges();
        let fast = if cur.len() == self.g.n() + self.pairs.len() {
            let (u, v) = edges[*self.plain.last().unwrap()];
            insert_in_face(cur, &[u, v], None)
        } else {
            let &(e1, e2) = self.pairs.last().unwrap();
            let (a, b) = edges[e1];
            let (p, q) = edges[e2];
            insert_in_face(cur, &[a, p, b, q], Some(cur.len()))
        };
        match fast.or_else(|| is_planar(&planarization_graph(self.g, &self.plain, &self.pairs))) {
            Some(r) => {
                self.rot.push(r);
                true
            }
            None => false,
        }
    }

    /// Every open edge must end up plain or crossed, and either way the
    /// current planarization plus that edge (possibly subdivided) is
    /// planar. Checks this for all open edges at once.
    fn open_edges_addable(&self) -> bool {
        let cur = self.rot.last().expect("root embedding");
        let faces = crate::planarity::faces_of(cur);
        let words = faces.len().div_ceil(64).max(1);
        let mut on: Vec<Vec<u64>> = vec![vec![0; words]; cur.len()];
        for (f, face) in faces.iter().enumerate() {
            for &x in face {
                on[x][f / 64] |= 1 << (f % 64);
            }
        }
        let edges = self.g.edges();
        let mut plain = self.plain.clone();
        for (pos, &e) in self.order.iter().enumerate() {
            if self.state[pos] != Decision::Open {
                continue;
            }
            let (u, v) = edges[e];
            if cur[u].is_empty() || cur[v].is_empty() || on[u].iter().zip(&on[v]).any(|(a, b)| a & b != 0) {
                continue;
            }
            plain.push(e);
            let ok = is_planar(&planarization_graph(self.g, &plain, &self.pairs)).is_some();
            plain.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn explore(&mut self, next: usize) -> Step {
        if self.push_embedding() {
            let step = self.run(next);
            self.rot.pop();
            step
        } else {
            Step::Continue
        }
    }

    fn disjoint(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.g.edges()[e];
        let (p, q) = self.g.edges()[f];
        a != p && a != q && b != p && b != q
    }

    /// All edges are decided and the planarization is planar.
    fn leaf(&mut self) -> Step {
        match &mut self.mode {
            Mode::Min { best, floor } => {
                let c = self.pairs.len();
                *best = Some(c);
                self.found = vec![(self.pairs.clone(), Vec::new())];
                if c <= *floor {
                    Step::Stop
                } else {
                    Step::Continue
                }
            }
            Mode::All => {
                if let Some(rot) = is_planar(&gadget_graph(self.g, &self.plain, &self.pairs)) {
                    self.found.push((self.pairs.clone(), rot));
                }
                Step::Continue
            }
        }
    }

    fn run(&mut self, from: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        let m = self.g.m();
        if let Mode::Min { best: Some(b), .. } = self.mode {
            if self.pairs.len() >= b {
                return Step::Continue;
            }
        }
        let Some(i) = (from..m).find(|&i| self.state[i] == Decision::Open) else {
            return self.leaf();
        };
        if !self.open_edges_addable() {
            return Step::Continue;
        }
        let ei = self.order[i];
        self.state[i] = Decision::Plain;
        self.plain.push(ei);
        let step = self.explore(i + 1);
        self.plain.pop();
        self.state[i] = Decision::Open;
        if !matches!(step, Step::Continue) {
            return step;
        }
        if let Mode::Min { best: Some(b), .. } = self.mode {
            if self.pairs.len() + 1 >= b {
                return Step::Continue;
            }
        }
        for j in i + 1..m {
            let ej = self.order[j];
            if self.state[j] != Decision::Open || !self.disjoint(ei, ej) {
                continue;
            }
            self.state[i] = Decision::Crossed;
            self.state[j] = Decision::Crossed;
            self.pairs.push((ei, ej));
            let step = self.explore(i + 1);
            self.pairs.pop();
            self.state[i] = Decision::Open;
            self.state[j] = Decision::Open;
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }
}

fn new_search(g: &Graph, mode: Mode, budget: u64) -> Search<'_> {
    Search {
        g,
        order: decision_order(g),
        state: vec![Decision::Open; g.m()],
        plain: Vec::new(),
        pairs: Vec::new(),
        rot: vec![vec![Vec::new(); g.n()]],
        mode,
        nodes: 0,
        budget,
        found: Vec::new(),
    }
}

/// Fewest crossings any 1-planar drawing of `g` could have: the
/// planarization has `n + c` nodes and `m + 2c` edges.
pub fn crossing_lower_bound(g: &Graph) -> usize {
    if g.n() < 3 {
        return 0;
    }
    (g.m() + 6).saturating_sub(3 * g.n())
}

/// Node budget used by the command line and the verification report.
pub const DEFAULT_BUDGET: u64 = 1 << 32;

/// Decides 1-planarity within `budget` search nodes. A returned drawing
/// has the fewest crossings possible.
///
/// The search only asks for a planar planarization. That suffices: in a
/// planarization with fewest crossings every crossing alternates, since a
/// non-alternating one could be pulled apart into a smaller crossing set.
pub fn is_one_planar(g: &Graph, budget: u64) -> OnePlanarity {
    if let Some(r) = edge_bound_refutation(g) {
        return OnePlanarity::Impossible(r);
    }
    let mut s = new_search(g, Mode::Min { best: None, floor: crossing_lower_bound(g) }, budget);
    if let Step::OutOfBudget = s.run(0) {
        return OnePlanarity::Exhausted { nodes: budget };
    }
    let nodes = s.nodes;
    let Some((pairs, _)) = s.found.pop() else {
        return OnePlanarity::Impossible(Refutation::SearchExhausted { nodes });
    };
    let edges: std::collections::BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let plain: Vec<usize> = (0..g.m()).filter(|e| !edges.contains(e)).collect();
    let rot = is_planar(&gadget_graph(g, &plain, &pairs)).expect("fewest-crossing planarizations alternate");
    let d = drawing_from_gadget(g, &pairs, &rot);
    debug_assert!(d.validate().is_ok(), "{:?}", d.validate());
    log::debug!("1-planar with {} crossings after {nodes} nodes", pairs.len());
    OnePlanarity::Drawing(d)
}

/// Largest order accepted by [`enumerate_drawings`].
pub const ENUMERATION_LIMIT: usize = 8;

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// One representative per drawing-isomorphism class, by code.
    pub classes: Vec<(DrawingCode, Drawing)>,
    /// Feasible crossing sets (sorted edge-index pairs) whose planarization
    /// is not 3-connected; their other embeddings were not explored.
    pub incomplete: Vec<Vec<(usize, usize)>>,
    pub crossing_sets: usize,
}

impl Enumeration {
    pub fn is_complete(&self) -> bool {
        self.incomplete.is_empty()
    }

    pub fn codes(&self) -> Vec<DrawingCode> {
        self.classes.iter().map(|(c, _)| c.clone()).collect()
    }
}

/// All 1-planar drawings of a connected graph up to drawing isomorphism,
/// complete whenever every feasible planarization is 3-connected.
pub fn enumerate_drawings(g: &Graph) -> Result<Enumeration, ScaleExceeded> {
    ScaleExceeded::check("enumerate_drawings", g.n(), ENUMERATION_LIMIT)?;
    let mut s = new_search(g, Mode::All, u64::MAX);
    if edge_bound_refutation(g).is_none() {
        s.run(0);
    }
    let mut classes: BTreeMap<DrawingCode, Drawing> = BTreeMap::new();
    let mut incomplete = Vec::new();
    let crossing_sets = s.found.len();
    for (pairs, rot) in s.found {
        let d = drawing_from_gadget(g, &pairs, &rot);
        debug_assert!(d.validate().is_ok());
        let p = d.planarization();
        if p.n() > 3 && vertex_connectivity(&p).0 < 3 {
            incomplete.push(d.crossings().to_vec());
        }
        if let Some(code) = drawing_code(&d) {
            classes.entry(code).or_insert(d);
        }
    }
    Ok(Enumeration { classes: classes.into_iter().collect(), incomplete, crossing_sets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::catalog::catalog;
    use proptest::prelude::*;

    /// Unpruned oracle: `g` is 1-planar iff for some set of pairwise
    /// disjoint crossable edge pairs the plain planarization is planar. A
    /// non-alternating crossing node can be pulled apart, so alternation
    /// needs no separate check.
    fn oracle(g: &Graph) -> bool {
        let m = g.m();
        let edges = g.edges().to_vec();
        fn rec(i: usize, used: &mut Vec<bool>, pairs: &mut Vec<(usize, usize)>, g: &Graph, edges: &[(usize, usize)]) -> bool {
            if i == edges.len() {
                let n = g.n();
                let mut out = Vec::new();
                for (e, &(u, v)) in edges.iter().enumerate() {
                    if !used[e] {
                        out.push((u, v));
                    }
                }
                for (k, &(e, f)) in pairs.iter().enumerate() {
                    for x in [edges[e].0, edges[e].1, edges[f].0, edges[f].1] {
                        out.push((x, n + k));
                    }
                }
                let p = Graph::from_edge_list(n + pairs.len(), &out).unwrap();
                return is_planar(&p).is_some();
            }
            if rec(i + 1, used, pairs, g, edges) {
                return true;
            }
            if used[i] {
                return false;
            }
            for j in i + 1..edges.len() {
                let (a, b) = edges[i];
                let (p, q) = edges[j];
                if used[j] || a == p || a == q || b == p || b == q {
                    continue;
                }
                used[i] = true;
                used[j] = true;
                pairs.push((i, j));
                let ok = rec(i + 1, used, pairs, g, edges);
                pairs.pop();
                used[i] = false;
                used[j] = false;
                if ok {
                    return true;
                }
            }
            false
        }
        rec(0, &mut vec![false; m], &mut Vec::new(), g, &edges)
    }

    fn k6_minus_e() -> Graph {
        Graph::from_edge_list(6, &Graph::complete(6).edges()[1..]).unwrap()
    }

    #[test]
    fn complete_graphs() {
        for (n, c) in [(4, 0), (5, 1), (6, 3)] {
            let r = is_one_planar(&Graph::complete(n), u64::MAX);
            let d = r.drawing().expect("1-planar");
            d.validate().unwrap();
            assert_eq!(d.crossing_count(), c, "K{n}");
        }
        match is_one_planar(&Graph::complete(7), u64::MAX) {
            OnePlanarity::Impossible(Refutation::EdgeBound { bound: 19, rule: "4n-9", .. }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_reported() {
        let g = Graph::join_complete_empty(4, 3);
        assert!(matches!(is_one_planar(&g, 3), OnePlanarity::Exhausted { .. }));
    }

    #[test]
    fn witness_is_the_input_graph() {
        let g = k6_minus_e();
        let d = is_one_planar(&g, u64::MAX).drawing().cloned().unwrap();
        assert_eq!(d.graph(), &g);
        assert_eq!(d.crossing_count(), 2);
    }

    #[test]
    fn small_enumerations_match_catalog() {
        let code = |name: &str| drawing_code(&catalog(name).unwrap()).unwrap();
        let e = enumerate_drawings(&Graph::complete(5)).unwrap();
        assert!(e.is_complete());
        assert_eq!(e.codes(), vec![code("K5")]);
        let e = enumerate_drawings(&k6_minus_e()).unwrap();
        assert!(e.is_complete());
        let mut want = vec![code("A1"), code("A2"), code("A3")];
        want.sort();
        assert_eq!(e.codes(), want);
    }

    #[test]
    fn enumeration_guards_scale() {
        assert!(enumerate_drawings(&Graph::empty(9)).is_err());
    }

    fn graph_strategy(max_n: usize, p: f64) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| {
                let mut pairs = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            pairs.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edge_list(n, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(150))]

        #[test]
        fn verdict_matches_unpruned_oracle(g in graph_strategy(6, 0.8)) {
            let r = is_one_planar(&g, u64::MAX);
            let exhausted = matches!(r, OnePlanarity::Exhausted { .. });
            prop_assert!(!exhausted);
            prop_assert_eq!(r.drawing().is_some(), oracle(&g));
            if let Some(d) = r.drawing() {
                prop_assert!(d.validate().is_ok());
                prop_assert_eq!(d.graph(), &g);
                prop_assert!(d.crossing_count() >= crossing_lower_bound(&g));
            }
        }

        #[test]
        fn enumerated_drawings_are_valid(g in graph_strategy(6, 0.7)) {
            let e = enumerate_drawings(&g).unwrap();
            for (code, d) in &e.classes {
                prop_assert!(d.validate().is_ok());
                prop_assert_eq!(&drawing_code(d).unwrap(), code);
            }
            let verdict = is_one_planar(&g, u64::MAX);
            if g.is_connected() {
                prop_assert_eq!(verdict.drawing().is_some(), !e.classes.is_empty());
            }
        }
    }
}
