//! Chordality with certificates, simplicial vertices and k-tree recognition.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::ScaleExceeded;
use crate::graph::Graph;

/// A perfect elimination order: every vertex is simplicial among the
/// vertices that follow it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EliminationOrder {
    pub order: Vec<usize>,
}

/// An induced cycle of length at least four.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleCertificate {
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    Hole(HoleCertificate),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Maximum cardinality search visiting order, ties to the smallest id.
/// Its reversal is a perfect elimination order exactly when `g` is chordal.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !done[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        done[v] = true;
        visit.push(v);
        for w in g.neighbors(v) {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    visit
}

/// First violation of the perfect elimination property: a vertex with two
/// non-adjacent later neighbours.
pub fn peo_violation(g: &Graph, order: &[usize]) -> Option<(usize, usize, usize)> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &u) in order.iter().enumerate() {
        let later: Vec<usize> = g.neighbors(u).filter(|&w| pos[w] > i).collect();
        for (a, &x) in later.iter().enumerate() {
            for &y in &later[a + 1..] {
                if !g.has_edge(x, y) {
                    return Some((u, x, y));
                }
            }
        }
    }
    None
}

pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    order.len() == g.n() && peo_violation(g, order).is_none()
}

/// Cycle `u, x, ..., y` closed through a shortest x–y path that avoids the
/// rest of `N[u]`; such a cycle has no chords.
fn hole_through(g: &Graph, u: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let mut blocked = g.neighbor_set(u).clone();
    blocked.insert(u);
    blocked.set(x, false);
    blocked.set(y, false);
    let path = g.shortest_path_avoiding(x, y, &blocked)?;
    let mut cycle = vec![u];
    cycle.extend(path);
    Some(cycle)
}

pub fn is_hole(g: &Graph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    for &v in cycle {
        if v >= g.n() || seen.contains(v) {
            return false;
        }
        seen.insert(v);
    }
    (0..k).all(|i| {
        (i + 1..k).all(|j| {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            g.has_edge(cycle[i], cycle[j]) == consecutive
        })
    })
}

pub fn is_chordal(g: &Graph) -> Chordality {
    let mut order = mcs_order(g);
    order.reverse();
    let Some((u, x, y)) = peo_violation(g, &order) else {
        return Chordality::Chordal(EliminationOrder { order });
    };
    if let Some(cycle) = hole_through(g, u, x, y) {
        return Chordality::Hole(HoleCertificate { cycle });
    }
    // Any vertex of a hole, with its two cycle neighbours, yields a triple
    // for which the avoiding path exists.
    for v in 0..g.n() {
        let nb: Vec<usize> = g.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.has_edge(a, b) {
                    if let Some(cycle) = hole_through(g, v, a, b) {
                        return Chordality::Hole(HoleCertificate { cycle });
                    }
                }
            }
        }
    }
    unreachable!("a failed elimination order implies a hole")
}

pub fn is_simplicial(g: &Graph, v: usize) -> bool {
    let nb: Vec<usize> = g.neighbors(v).collect();
    g.is_clique(&nb)
}

pub fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (0..g.n()).filter(|&v| is_simplicial(g, v)).collect()
}

/// Reverse construction order of a k-tree: `removal` lists vertices in the
/// order they were peeled (each simplicial of degree k at that moment) and
/// `base` is the final k-clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KTreeOrder {
    pub removal: Vec<usize>,
    pub base: Vec<usize>,
}

pub fn k_tree_edge_count(n: usize, k: usize) -> usize {
    k * n - k * (k + 1) / 2
}

pub fn is_k_tree(g: &Graph, k: usize) -> Option<KTreeOrder> {
    assert!(k >= 1, "k-trees need k >= 1");
    let n = g.n();
    if n < k || g.m() != k_tree_edge_count(n, k) {
        return None;
    }
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removal = Vec::with_capacity(n - k);
    for _ in k..n {
        let v = (0..n).find(|&v| {
            alive[v] && deg[v] == k && {
                let nb: Vec<usize> = g.neighbors(v).filter(|&w| alive[w]).collect();
                g.is_clique(&nb)
            }
        })?;
        alive[v] = false;
        for w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
        removal.push(v);
    }
    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    g.is_clique(&base).then_some(KTreeOrder { removal, base })
}

/// All minimal separators, via close-neighbourhood generation and closure.
pub fn minimal_separators(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut found: std::collections::BTreeSet<Vec<usize>> = Default::default();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    let push = |blocked: &FixedBitSet,
                    found: &mut std::collections::BTreeSet<Vec<usize>>,
                    queue: &mut Vec<Vec<usize>>| {
        for comp in g.components_avoiding(blocked) {
            let mut boundary = FixedBitSet::with_capacity(n);
            for &c in &comp {
                boundary.union_with(g.neighbor_set(c));
            }
            for &c in &comp {
                boundary.set(c, false);
            }
            let sep: Vec<usize> = boundary.ones().collect();
            // N(C) separates only if something lies outside C ∪ N(C).
            if !sep.is_empty() && comp.len() + sep.len() < n && found.insert(sep.clone()) {
                queue.push(sep);
            }
        }
    };
    for v in 0..n {
        let mut blocked = g.neighbor_set(v).clone();
        blocked.insert(v);
        push(&blocked, &mut found, &mut queue);
    }
    while let Some(sep) = queue.pop() {
        for &x in &sep {
            let mut blocked = g.neighbor_set(x).clone();
            for &s in &sep {
                blocked.insert(s);
            }
            push(&blocked, &mut found, &mut queue);
        }
    }
    found.into_iter().collect()
}

pub const MINIMAL_SEPARATOR_LIMIT: usize = 14;

/// `Ok(None)` when every minimal separator is a clique; otherwise the first
/// non-clique minimal separator.
pub fn minimal_separators_are_cliques(g: &Graph) -> Result<Option<Vec<usize>>, ScaleExceeded> {
    ScaleExceeded::check("minimal separator enumeration", g.n(), MINIMAL_SEPARATOR_LIMIT)?;
    Ok(minimal_separators(g).into_iter().find(|s| !g.is_clique(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k6_minus_edge() -> Graph {
        let pairs: Vec<_> = Graph::complete(6)
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (0, 1))
            .collect();
        Graph::from_edge_list(6, &pairs).unwrap()
    }

    /// All induced cycles of length >= 4, by subset enumeration.
    fn brute_has_hole(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|mask| {
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs.len() < 4 {
                return false;
            }
            let (h, _) = g.induced_subgraph(&vs).unwrap();
            h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2)
        })
    }

    fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.55), n * (n - 1) / 2).prop_map(
                move |bits| {
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
                },
            )
        })
    }

    #[test]
    fn k4_order_is_peo() {
        let g = Graph::complete(4);
        let mut order = mcs_order(&g);
        order.reverse();
        assert!(is_perfect_elimination_order(&g, &order));
    }

    #[test]
    fn c4_fails_and_yields_hole() {
        let g = Graph::cycle(4);
        let mut order = mcs_order(&g);
        order.reverse();
        assert!(peo_violation(&g, &order).is_some());
        match is_chordal(&g) {
            Chordality::Hole(h) => {
                assert_eq!(h.cycle.len(), 4);
                assert!(is_hole(&g, &h.cycle));
            }
            other => panic!("expected a hole, got {other:?}"),
        }
    }

    #[test]
    fn c6_with_long_chord() {
        // chord 0-3 splits C6 into two 4-cycles
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        assert!(brute_has_hole(&g));
        match is_chordal(&g) {
            Chordality::Hole(h) => {
                assert!(is_hole(&g, &h.cycle));
                assert!(matches!(h.cycle.len(), 4 | 5));
            }
            other => panic!("expected a hole, got {other:?}"),
        }
    }

    #[test]
    fn k6_minus_e_is_chordal_4_tree() {
        let g = k6_minus_edge();
        assert!(is_chordal(&g).is_chordal());
        assert!(is_k_tree(&g, 4).is_some());
    }

    #[test]
    fn simplicial_sets() {
        assert_eq!(simplicial_vertices(&Graph::complete(5)), vec![0, 1, 2, 3, 4]);
        assert_eq!(
            simplicial_vertices(&Graph::join_complete_empty(4, 3)),
            vec![4, 5, 6]
        );
    }

    #[test]
    fn k_tree_examples() {
        let j = Graph::join_complete_empty(4, 3);
        let order = is_k_tree(&j, 4).unwrap();
        assert_eq!(order.removal, vec![4, 5, 0]);
        assert_eq!(order.base, vec![1, 2, 3, 6]);
        assert!(is_k_tree(&Graph::cycle(5), 2).is_none());
        assert!(is_k_tree(&Graph::complete(4), 4).is_some());
        assert!(is_k_tree(&Graph::complete(5), 4).is_some());
    }

    #[test]
    fn separator_checks() {
        assert_eq!(
            minimal_separators_are_cliques(&Graph::cycle(4)).unwrap(),
            Some(vec![0, 2])
        );
        assert_eq!(minimal_separators_are_cliques(&Graph::complete(5)).unwrap(), None);
        assert!(minimal_separators_are_cliques(&Graph::empty(15)).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn three_way_equivalence(g in graph_strategy(8)) {
            let chordal = is_chordal(&g).is_chordal();
            let mut order = mcs_order(&g);
            order.reverse();
            prop_assert_eq!(chordal, is_perfect_elimination_order(&g, &order));
            prop_assert_eq!(chordal, minimal_separators_are_cliques(&g).unwrap().is_none());
            prop_assert_eq!(chordal, !brute_has_hole(&g));
            match is_chordal(&g) {
                Chordality::Chordal(o) => prop_assert!(is_perfect_elimination_order(&g, &o.order)),
                Chordality::Hole(h) => prop_assert!(is_hole(&g, &h.cycle)),
            }
        }

        #[test]
        fn chordality_is_hereditary(g in graph_strategy(9), keep_bits in any::<u16>()) {
            if is_chordal(&g).is_chordal() {
                let keep: Vec<usize> = (0..g.n()).filter(|&v| keep_bits >> v & 1 == 1).collect();
                if !keep.is_empty() {
                    let (h, _) = g.induced_subgraph(&keep).unwrap();
                    prop_assert!(is_chordal(&h).is_chordal());
                }
            }
        }
    }
}
