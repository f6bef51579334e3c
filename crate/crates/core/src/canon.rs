//! Canonical labelling by individualisation and refinement.
//!
//! The canonical form is the lexicographically smallest upper-triangle
//! adjacency code over all leaves of the search tree. Branching is pruned
//! only by vertex twins, whose transposition is always an automorphism that
//! fixes the current partition.

use fixedbitset::FixedBitSet;

use crate::graph::{Graph, IsoCertificate};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rebuilds the canonically labelled graph.
    pub fn to_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        let mut bit = 0usize;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.code[bit / 64] >> (bit % 64) & 1 == 1 {
                    pairs.push((i, j));
                }
                bit += 1;
            }
        }
        Graph::from_edge_list(self.n, &pairs).expect("canonical code encodes a simple graph")
    }
}

fn leaf_code(g: &Graph, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let mut code = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    let mut bit = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                code[bit / 64] |= 1 << (bit % 64);
            }
            bit += 1;
        }
    }
    code
}

fn refine(g: &Graph, cells: &mut Vec<Vec<usize>>) {
    let n = g.n();
    loop {
        let mut split_at = None;
        'scan: for s in 0..cells.len() {
            let mut splitter = FixedBitSet::with_capacity(n);
            for &v in &cells[s] {
                splitter.insert(v);
            }
            for (i, cell) in cells.iter().enumerate() {
                if cell.len() < 2 {
                    continue;
                }
                let counts: Vec<usize> = cell
                    .iter()
                    .map(|&v| g.neighbor_set(v).intersection_count(&splitter))
                    .collect();
                if counts.iter().any(|&c| c != counts[0]) {
                    let mut keyed: Vec<(usize, usize)> =
                        counts.into_iter().zip(cell.iter().copied()).collect();
                    keyed.sort_unstable();
                    let mut groups: Vec<Vec<usize>> = Vec::new();
                    let mut last = usize::MAX;
                    for (c, v) in keyed {
                        if c != last {
                            groups.push(Vec::new());
                            last = c;
                        }
                        groups.last_mut().unwrap().push(v);
                    }
                    split_at = Some((i, groups));
                    break 'scan;
                }
            }
        }
        match split_at {
            Some((i, groups)) => {
                cells.splice(i..=i, groups);
            }
            None => return,
        }
    }
}

fn are_twins(g: &Graph, a: usize, b: usize) -> bool {
    let mut na = g.neighbor_set(a).clone();
    let mut nb = g.neighbor_set(b).clone();
    na.set(b, false);
    nb.set(a, false);
    na == nb
}

struct Search<'g> {
    g: &'g Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, mut cells: Vec<Vec<usize>>) {
        refine(self.g, &mut cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            let code = leaf_code(self.g, &order);
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, order));
            }
            return;
        };
        let cell = cells[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| are_twins(self.g, t, v)) {
                continue;
            }
            tried.push(v);
            let rest: Vec<usize> = cell.iter().copied().filter(|&w| w != v).collect();
            let mut next = cells.clone();
            next.splice(target..=target, [vec![v], rest]);
            self.run(next);
        }
    }
}

/// Returns the canonical form and the canonical order (`order[pos] = vertex`).
pub fn canonical_labeling(g: &Graph) -> (CanonicalForm, Vec<usize>) {
    let n = g.n();
    let identity: Vec<usize> = (0..n).collect();
    if g.m() == 0 || g.is_complete() {
        let code = leaf_code(g, &identity);
        return (CanonicalForm { n, code }, identity);
    }
    let mut search = Search { g, best: None };
    search.run(vec![identity]);
    let (code, order) = search.best.expect("search reaches at least one leaf");
    (CanonicalForm { n, code }, order)
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).0
}

/// Isomorphism test with a certificate mapping `g1` onto `g2`.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<IsoCertificate> {
    if g1.n() != g2.n() || g1.m() != g2.m() || g1.degree_sequence() != g2.degree_sequence() {
        return None;
    }
    let (c1, o1) = canonical_labeling(g1);
    let (c2, o2) = canonical_labeling(g2);
    if c1 != c2 {
        return None;
    }
    let mut mapping = vec![0; g1.n()];
    for (pos, &v) in o1.iter().enumerate() {
        mapping[v] = o2[pos];
    }
    let cert = IsoCertificate { mapping };
    debug_assert!(cert.verify(g1, g2));
    Some(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_iso(g1: &Graph, g2: &Graph) -> bool {
        g1.n() == g2.n()
            && g1.m() == g2.m()
            && permutations(g1.n())
                .into_iter()
                .any(|p| IsoCertificate { mapping: p }.verify(g1, g2))
    }

    fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
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

    #[test]
    fn relabelled_k5() {
        let g = Graph::complete(5);
        let h = g.relabel(&[3, 0, 4, 1, 2]);
        let cert = are_isomorphic(&g, &h).unwrap();
        assert!(cert.verify(&g, &h));
    }

    #[test]
    fn cycle_vs_path() {
        assert!(are_isomorphic(&Graph::cycle(5), &Graph::path(5)).is_none());
    }

    #[test]
    fn twins_heavy_graph_is_fast() {
        let g = Graph::join_complete_empty(4, 8);
        let h = g.relabel(&[11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0]);
        assert!(are_isomorphic(&g, &h).is_some());
    }

    #[test]
    fn round_trip_through_code() {
        let g = Graph::cycle(6);
        let c = canonical_form(&g);
        assert_eq!(canonical_form(&c.to_graph()), c);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn agrees_with_permutation_search(g1 in graph_strategy(7), g2 in graph_strategy(7)) {
            prop_assert_eq!(are_isomorphic(&g1, &g2).is_some(), brute_iso(&g1, &g2));
        }

        #[test]
        fn invariant_under_relabelling(
            (g, perm) in graph_strategy(7).prop_flat_map(|g| {
                let perm = Just((0..g.n()).collect::<Vec<usize>>()).prop_shuffle();
                (Just(g), perm)
            })
        ) {
            let h = g.relabel(&perm);
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            let cert = are_isomorphic(&g, &h).unwrap();
            prop_assert!(cert.verify(&g, &h));
            prop_assert!(cert.inverse().verify(&h, &g));
        }
    }
}
