//! Hamiltonian paths: exhaustive oracles, and a constructive builder for
//! k-trees with exactly two simplicial vertices.
//!
//! The builder peels a simplicial vertex `u` together with a vertex `a`
//! satisfying `N[u] ⊆ N[a]` and `|N(a) \ N[u]| ≤ 1`, obtains paths in
//! `G - u` or `G - {u, a}` recursively, and splices `u` back in.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::chordal::{is_chordal, is_k_tree, simplicial_vertices};
use crate::connectivity::vertex_connectivity;
use crate::error::ScaleExceeded;
use crate::graph::Graph;

pub const HAM_PATH_LIMIT: usize = 15;
pub const HAM_CONNECTED_LIMIT: usize = 12;

/// A Hamiltonian path as its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct HamPath(pub Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum PathViolation {
    #[error("path has {got} vertices, graph has {n}")]
    Length { got: usize, n: usize },
    #[error("vertex {v} repeated or out of range")]
    NotPermutation { v: usize },
    #[error("consecutive vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: usize, v: usize },
    #[error("path runs {start}..{end}, expected {x}..{y}")]
    Endpoints { start: usize, end: usize, x: usize, y: usize },
}

impl HamPath {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Checks that this is a Hamiltonian path of `g` from `x` to `y`.
    pub fn check(&self, g: &Graph, x: usize, y: usize) -> Result<(), PathViolation> {
        let p = &self.0;
        if p.len() != g.n() {
            return Err(PathViolation::Length { got: p.len(), n: g.n() });
        }
        let mut seen = vec![false; g.n()];
        for &v in p {
            if v >= g.n() || seen[v] {
                return Err(PathViolation::NotPermutation { v });
            }
            seen[v] = true;
        }
        if let Some(w) = p.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(PathViolation::NotAdjacent { u: w[0], v: w[1] });
        }
        let (start, end) = (p[0], p[p.len() - 1]);
        if (start, end) != (x, y) {
            return Err(PathViolation::Endpoints { start, end, x, y });
        }
        Ok(())
    }

    fn reversed(mut self) -> HamPath {
        self.0.reverse();
        self
    }
}

struct PathSearch {
    adj: Vec<u64>,
    target: usize,
    full: u64,
    dead: HashSet<(u64, usize)>,
}

impl PathSearch {
    /// Unvisited vertices still reachable and of sufficient degree.
    fn viable(&self, visited: u64, cur: usize) -> bool {
        let free = self.full & !visited;
        let open = free | (1 << cur);
        // degree: interior vertices need two usable neighbours, the target one
        let mut rest = free;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[w] & open).count_ones();
            if d < if w == self.target { 1 } else { 2 } {
                return false;
            }
        }
        // connectivity of the unvisited part together with cur
        let mut reach = 1u64 << cur;
        let mut frontier = reach;
        while frontier != 0 {
            let w = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[w] & free & !reach;
            reach |= new;
            frontier |= new;
        }
        reach | visited == self.full | visited
    }

    fn extend(&mut self, visited: u64, cur: usize, path: &mut Vec<usize>) -> bool {
        if visited == self.full {
            return cur == self.target;
        }
        if cur == self.target || self.dead.contains(&(visited, cur)) || !self.viable(visited, cur) {
            return false;
        }
        let mut cand = self.adj[cur] & !visited;
        while cand != 0 {
            let w = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(w);
            if self.extend(visited | (1 << w), w, path) {
                return true;
            }
            path.pop();
        }
        self.dead.insert((visited, cur));
        false
    }
}

/// A Hamiltonian path from `x` to `y`, by exhaustive search with degree
/// and connectivity pruning and memoised dead states.
pub fn oracle_ham_path(g: &Graph, x: usize, y: usize) -> Result<Option<HamPath>, ScaleExceeded> {
    ScaleExceeded::check("oracle_ham_path", g.n(), HAM_PATH_LIMIT)?;
    let n = g.n();
    assert!(x < n && y < n, "endpoints out of range");
    if n == 1 {
        return Ok((x == y).then(|| HamPath(vec![x])));
    }
    if x == y {
        return Ok(None);
    }
    let adj = g.adjacency_masks().expect("n <= 15 fits a mask");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = PathSearch { adj, target: y, full, dead: HashSet::new() };
    let mut path = vec![x];
    Ok(s.extend(1 << x, x, &mut path).then_some(HamPath(path)))
}

/// A Hamiltonian cycle, as a path from vertex 0 to one of its neighbours.
pub fn oracle_ham_cycle(g: &Graph) -> Result<Option<HamPath>, ScaleExceeded> {
    ScaleExceeded::check("oracle_ham_cycle", g.n(), HAM_PATH_LIMIT)?;
    if g.n() < 3 {
        return Ok(None);
    }
    for w in g.neighbors(0) {
        if let Some(p) = oracle_ham_path(g, 0, w)? {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HamConnectivity {
    pub connected: bool,
    /// The first pair `x < y` in lexicographic order without a path.
    pub failing_pair: Option<(usize, usize)>,
}

/// Whether every pair of distinct vertices is joined by a Hamiltonian path.
pub fn oracle_ham_connected(g: &Graph) -> Result<HamConnectivity, ScaleExceeded> {
    ScaleExceeded::check("oracle_ham_connected", g.n(), HAM_CONNECTED_LIMIT)?;
    let n = g.n();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let failing_pair = pairs
        .par_iter()
        .find_first(|&&(x, y)| oracle_ham_path(g, x, y).expect("size checked").is_none())
        .copied();
    Ok(HamConnectivity { connected: failing_pair.is_none(), failing_pair })
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum HamError {
    #[error("endpoints must be distinct vertices of the graph")]
    BadEndpoints,
    #[error("k = {k} is below 3")]
    SmallK { k: usize },
    #[error("not a {k}-tree")]
    NotKTree { k: usize },
    #[error("{count} simplicial vertices, expected exactly 2")]
    SimplicialCount { count: usize },
    #[error("hypothesis fails for u = {u}, a = {a}: {what}")]
    Hypothesis { u: usize, a: usize, what: String },
    #[error("internal invariant broken: {detail}")]
    Internal { detail: String },
}

fn internal(detail: impl Into<String>) -> HamError {
    HamError::Internal { detail: detail.into() }
}

fn endpoints_ok(g: &Graph, x: usize, y: usize) -> bool {
    x != y && x < g.n() && y < g.n()
}

/// Hamiltonian path by trying all orders of the interior (small graphs).
fn brute_force(g: &Graph, x: usize, y: usize) -> Option<HamPath> {
    let mut interior: Vec<usize> = (0..g.n()).filter(|&v| v != x && v != y).collect();
    fn rec(g: &Graph, path: &mut Vec<usize>, rest: &mut Vec<usize>, y: usize) -> bool {
        if rest.is_empty() {
            return g.has_edge(*path.last().unwrap(), y);
        }
        for i in 0..rest.len() {
            let v = rest[i];
            if !g.has_edge(*path.last().unwrap(), v) {
                continue;
            }
            rest.remove(i);
            path.push(v);
            if rec(g, path, rest, y) {
                return true;
            }
            path.pop();
            rest.insert(i, v);
        }
        false
    }
    let mut path = vec![x];
    rec(g, &mut path, &mut interior, y).then(|| {
        path.push(y);
        HamPath(path)
    })
}

/// A path in `g - removed` between old vertices, mapped back to old labels.
fn in_subgraph(
    g: &Graph,
    removed: &[usize],
    x: usize,
    y: usize,
    solve: &mut dyn FnMut(&Graph, usize, usize) -> Result<HamPath, HamError>,
) -> Result<Vec<usize>, HamError> {
    let (h, new_to_old) = g.remove_vertices(removed);
    let local = |v: usize| new_to_old.iter().position(|&w| w == v).expect("kept vertex");
    let p = solve(&h, local(x), local(y))?;
    Ok(p.0.into_iter().map(|v| new_to_old[v]).collect())
}

/// Extends Hamiltonian paths of `G - u` and `G - {u, a}` (supplied by
/// `solve`, which receives the subgraph and endpoints in its own labels)
/// to one of `g` from `x` to `y`.
///
/// Requires `d(u) >= 3`, `N[u] ⊆ N[a]` and `|N(a) \ N[u]| <= 1`.
pub fn splice_extend(
    g: &Graph,
    u: usize,
    a: usize,
    x: usize,
    y: usize,
    solve: &mut dyn FnMut(&Graph, usize, usize) -> Result<HamPath, HamError>,
) -> Result<HamPath, HamError> {
    if !endpoints_ok(g, x, y) || u >= g.n() || a >= g.n() {
        return Err(HamError::BadEndpoints);
    }
    let fail = |what: &str| Err(HamError::Hypothesis { u, a, what: what.into() });
    if g.degree(u) < 3 {
        return fail("d(u) < 3");
    }
    if !g.has_edge(u, a) || g.neighbors(u).any(|w| w != a && !g.has_edge(a, w)) {
        return fail("N[u] is not contained in N[a]");
    }
    if g.neighbors(a).filter(|&w| w != u && !g.has_edge(u, w)).count() > 1 {
        return fail("|N(a) \\ N[u]| > 1");
    }
    // neighbours of u other than a, in increasing order
    let others: Vec<usize> = g.neighbors(u).filter(|&w| w != a).collect();

    // Case 1: u is an endpoint
    if u == y {
        return splice_extend(g, u, a, y, x, solve).map(HamPath::reversed);
    }
    if u == x {
        let b = g.neighbors(u).find(|&w| w != y).expect("d(u) >= 3");
        let mut p = vec![u];
        p.extend(in_subgraph(g, &[u], b, y, solve)?);
        return Ok(HamPath(p));
    }
    // Case 3: a is an endpoint
    if a == y {
        return splice_extend(g, u, a, y, x, solve).map(HamPath::reversed);
    }
    if a == x {
        let b = others.iter().copied().find(|&w| w != y).expect("u has two neighbours besides a");
        let mut p = vec![a, u];
        p.extend(in_subgraph(g, &[u, a], b, y, solve)?);
        return Ok(HamPath(p));
    }
    // Case 2: splice u into an edge a-b of a path of G - u, b in N(u)
    let p = in_subgraph(g, &[u], x, y, solve)?;
    let i = p.iter().position(|&v| v == a).expect("a is on the path");
    let site = [i.checked_sub(1), (i + 1 < p.len()).then_some(i + 1)]
        .into_iter()
        .flatten()
        .find(|&j| others.contains(&p[j]))
        .ok_or_else(|| internal(format!("no path edge at {a} leads into N({u})")))?;
    let at = i.max(site);
    let mut out = p;
    out.insert(at, u);
    Ok(HamPath(out))
}

fn ktree_rec(g: &Graph, k: usize, x: usize, y: usize) -> Result<HamPath, HamError> {
    let n = g.n();
    if n <= k + 2 {
        return brute_force(g, x, y).ok_or_else(|| internal(format!("no path in base graph on {n} vertices")));
    }
    let simp = simplicial_vertices(g);
    let u = *simp.first().ok_or_else(|| internal("no simplicial vertex"))?;
    let (h, new_to_old) = g.remove_vertices(&[u]);
    let a_cands: Vec<usize> = simplicial_vertices(&h)
        .into_iter()
        .map(|v| new_to_old[v])
        .filter(|&v| g.has_edge(u, v))
        .collect();
    let &[a] = a_cands.as_slice() else {
        return Err(internal(format!("{} simplicial neighbours of {u} in G - u", a_cands.len())));
    };
    debug_assert!(g.neighbors(u).all(|w| w == a || g.has_edge(a, w)));
    debug_assert!(g.neighbors(a).filter(|&w| w != u && !g.has_edge(u, w)).count() <= 1);
    splice_extend(g, u, a, x, y, &mut |h: &Graph, x: usize, y: usize| ktree_rec(h, k, x, y))
}

/// Hamiltonian path from `x` to `y` in a k-tree (`k >= 3`) with exactly two
/// simplicial vertices, or a complete graph on `k + 1` vertices.
///
/// `u` is the smaller simplicial vertex; `a` is the simplicial vertex of
/// `G - u` adjacent to it. In the splice case the site nearer `x` is used.
pub fn ktree_ham_path(g: &Graph, k: usize, x: usize, y: usize) -> Result<HamPath, HamError> {
    if !endpoints_ok(g, x, y) {
        return Err(HamError::BadEndpoints);
    }
    if k < 3 {
        return Err(HamError::SmallK { k });
    }
    if is_k_tree(g, k).is_none() {
        return Err(HamError::NotKTree { k });
    }
    let count = simplicial_vertices(g).len();
    if g.n() > k + 1 && count != 2 {
        return Err(HamError::SimplicialCount { count });
    }
    ktree_rec(g, k, x, y)
}

/// An unmet hypothesis of the Hamiltonian-connectivity theorem.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NotApplicable {
    #[error("endpoints must be distinct vertices of the graph")]
    BadEndpoints,
    #[error("not chordal")]
    NotChordal,
    #[error("connectivity {kappa} < 4")]
    Connectivity { kappa: usize },
    #[error("not a 4-tree; the hypotheses imply the graph is not 1-planar")]
    NotFourTree,
    #[error("{count} simplicial vertices; the hypotheses imply the graph is not 1-planar")]
    SimplicialCount { count: usize },
    #[error("internal: {0}")]
    Internal(HamError),
}

/// Hamiltonian path for a chordal graph with connectivity at least 4,
/// dispatching as the theorem's proof does. 1-planarity is not checked:
/// for `n >= 7` the polynomial consequences (a 4-tree with two simplicial
/// vertices) are checked instead.
pub fn theorem_ham_path(g: &Graph, x: usize, y: usize) -> Result<HamPath, NotApplicable> {
    if !endpoints_ok(g, x, y) {
        return Err(NotApplicable::BadEndpoints);
    }
    if !is_chordal(g).is_chordal() {
        return Err(NotApplicable::NotChordal);
    }
    let (kappa, _) = vertex_connectivity(g);
    if kappa < 4 {
        return Err(NotApplicable::Connectivity { kappa });
    }
    if g.n() <= 6 {
        // K5, K6 or K6 - e
        return brute_force(g, x, y)
            .ok_or_else(|| NotApplicable::Internal(internal("small case has no path")));
    }
    if is_k_tree(g, 4).is_none() {
        return Err(NotApplicable::NotFourTree);
    }
    let count = simplicial_vertices(g).len();
    if count != 2 {
        return Err(NotApplicable::SimplicialCount { count });
    }
    ktree_rec(g, 4, x, y).map_err(NotApplicable::Internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k6_minus_e() -> Graph {
        Graph::from_edge_list(6, &Graph::complete(6).edges()[1..]).unwrap()
    }

    /// Permutation enumeration without pruning.
    fn naive_exists(g: &Graph, x: usize, y: usize) -> bool {
        brute_force(g, x, y).is_some()
    }

    #[test]
    fn oracle_small_cases() {
        let k5 = Graph::complete(5);
        for x in 0..5 {
            for y in 0..5 {
                if x != y {
                    let p = oracle_ham_path(&k5, x, y).unwrap().unwrap();
                    p.check(&k5, x, y).unwrap();
                }
            }
        }
        let c6 = Graph::cycle(6);
        let r = oracle_ham_connected(&c6).unwrap();
        assert!(!r.connected);
        assert_eq!(r.failing_pair, Some((0, 2)));
        assert!(oracle_ham_connected(&k6_minus_e()).unwrap().connected);
        assert!(oracle_ham_cycle(&c6).unwrap().is_some());
        assert!(oracle_ham_cycle(&Graph::path(5)).unwrap().is_none());
        assert!(oracle_ham_path(&Graph::empty(16), 0, 1).is_err());
    }

    #[test]
    fn splice_cases_on_k6_minus_e() {
        // vertices 0 and 1 are the non-adjacent pair; u = 0, a = 2
        let g = k6_minus_e();
        let mut solve = |h: &Graph, x: usize, y: usize| {
            oracle_ham_path(h, x, y).unwrap().ok_or(internal("none"))
        };
        for (x, y) in [(0, 3), (4, 0), (3, 4), (2, 5), (1, 2), (2, 3)] {
            let p = splice_extend(&g, 0, 2, x, y, &mut solve).unwrap();
            p.check(&g, x, y).unwrap();
        }
        assert!(matches!(splice_extend(&g, 0, 1, 2, 3, &mut solve), Err(HamError::Hypothesis { .. })));
    }

    #[test]
    fn case_three_uses_second_neighbour() {
        let g = k6_minus_e();
        // a = 2 = x and y = 3, the smallest neighbour of u besides a
        let mut calls = Vec::new();
        let mut solve = |h: &Graph, x: usize, y: usize| {
            calls.push((h.n(), x, y));
            oracle_ham_path(h, x, y).unwrap().ok_or(internal("none"))
        };
        let p = splice_extend(&g, 0, 2, 2, 3, &mut solve).unwrap();
        assert_eq!(&p.0[..3], &[2, 0, 4]);
        assert_eq!(calls, vec![(4, 2, 1)]);
    }

    #[test]
    fn ktree_paths() {
        let k5 = Graph::complete(5);
        assert_eq!(ktree_ham_path(&k5, 4, 0, 4).unwrap().0.len(), 5);
        assert_eq!(ktree_ham_path(&k5, 2, 0, 4), Err(HamError::SmallK { k: 2 }));
        assert_eq!(ktree_ham_path(&Graph::cycle(5), 3, 0, 1), Err(HamError::NotKTree { k: 3 }));
        // a 3-tree with three simplicial vertices
        let g = Graph::from_edge_list(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (0, 5), (1, 5), (2, 5)]).unwrap();
        assert_eq!(ktree_ham_path(&g, 3, 0, 1), Err(HamError::SimplicialCount { count: 3 }));
    }

    #[test]
    fn theorem_dispatch() {
        let k6 = Graph::complete(6);
        theorem_ham_path(&k6, 0, 5).unwrap().check(&k6, 0, 5).unwrap();
        assert_eq!(theorem_ham_path(&Graph::cycle(5), 0, 1), Err(NotApplicable::NotChordal));
        assert_eq!(theorem_ham_path(&Graph::path(5), 0, 1), Err(NotApplicable::Connectivity { kappa: 1 }));
        assert_eq!(theorem_ham_path(&Graph::cycle(5), 0, 0), Err(NotApplicable::BadEndpoints));
        let k4_3 = Graph::join_complete_empty(4, 3);
        assert_eq!(theorem_ham_path(&k4_3, 0, 4), Err(NotApplicable::SimplicialCount { count: 3 }));
    }

    fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.55), n * (n - 1) / 2).prop_map(move |bits| {
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
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn oracle_agrees_with_naive_search(g in graph_strategy(8), x in 0usize..8, y in 0usize..8) {
            let (x, y) = (x % g.n(), y % g.n());
            prop_assume!(x != y);
            let r = oracle_ham_path(&g, x, y).unwrap();
            prop_assert_eq!(r.is_some(), naive_exists(&g, x, y));
            if let Some(p) = r {
                prop_assert!(p.check(&g, x, y).is_ok());
            }
        }
    }
}
