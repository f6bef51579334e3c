//! Simple undirected graphs on dense vertex labels `0..n`.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::GraphError;

/// A simple undirected graph. Vertices are `0..n`; edges are kept as a sorted
/// list of pairs `(u, v)` with `u < v`, mirrored by bitset adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
            edges: Vec::new(),
        }
    }

    /// Builds a graph from a list of pairs, normalizing orientation and
    /// dropping duplicates. Self-loops and out-of-range endpoints are rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in pairs {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { u, v });
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        g.rebuild_edges();
        Ok(g)
    }

    fn rebuild_edges(&mut self) {
        self.edges.clear();
        for u in 0..self.n {
            for v in self.adj[u].ones() {
                if u < v {
                    self.edges.push((u, v));
                }
            }
        }
    }

    pub fn complete(n: usize) -> Self {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edge_list(n, &pairs).expect("complete graph edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three vertices");
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &pairs).expect("cycle edges are valid")
    }

    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &pairs).expect("path edges are valid")
    }

    /// `K_k + \bar K_r`: a k-clique on `0..k` plus `r` independent vertices
    /// `k..k+r`, each joined to the whole clique.
    pub fn join_complete_empty(k: usize, r: usize) -> Self {
        let mut pairs = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                pairs.push((u, v));
            }
            for w in k..k + r {
                pairs.push((u, w));
            }
        }
        Graph::from_edge_list(k + r, &pairs).expect("join edges are valid")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn neighbor_set(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &u)| vs[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Induced subgraph on `keep`, relabelled `0..|keep|` in increasing order
    /// of the original labels. Returns the graph and the new-to-old map.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        if keep.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        let mut old: Vec<usize> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        if let Some(&bad) = old.iter().find(|&&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange { u: bad, v: bad, n: self.n });
        }
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_of[u] != usize::MAX && new_of[v] != usize::MAX)
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .collect();
        Ok((Graph::from_edge_list(old.len(), &pairs)?, old))
    }

    /// `G - X`, relabelled; returns the new-to-old map as well.
    pub fn remove_vertices(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n];
        for &v in remove {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !gone[v]).collect();
        if keep.is_empty() {
            return (Graph::empty(0), Vec::new());
        }
        self.induced_subgraph(&keep).expect("kept vertices are in range")
    }

    /// Applies a relabelling `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n, &pairs).expect("relabelling is a permutation")
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_avoiding(&FixedBitSet::with_capacity(self.n))
    }

    /// Components of `G - blocked`.
    pub fn components_avoiding(&self, blocked: &FixedBitSet) -> Vec<Vec<usize>> {
        let mut seen = blocked.clone();
        seen.grow(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Shortest path from `s` to `t` using only vertices not in `blocked`.
    pub fn shortest_path_avoiding(
        &self,
        s: usize,
        t: usize,
        blocked: &FixedBitSet,
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                let mut path = vec![t];
                let mut cur = t;
                while cur != s {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for w in self.adj[u].ones() {
                if parent[w] == usize::MAX && (!blocked.contains(w) || w == t) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Adjacency rows as `u64` masks; only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|row| row.ones().fold(0u64, |m, v| m | (1u64 << v)))
                .collect(),
        )
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

/// A vertex bijection `mapping[v]` from one graph onto another that
/// preserves adjacency and non-adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub mapping: Vec<usize>,
}

impl IsoCertificate {
    pub fn verify(&self, g1: &Graph, g2: &Graph) -> bool {
        if g1.n() != g2.n() || g1.m() != g2.m() || self.mapping.len() != g1.n() {
            return false;
        }
        let mut hit = vec![false; g2.n()];
        for &w in &self.mapping {
            if w >= g2.n() || hit[w] {
                return false;
            }
            hit[w] = true;
        }
        g1.edges()
            .iter()
            .all(|&(u, v)| g2.has_edge(self.mapping[u], self.mapping[v]))
    }

    pub fn inverse(&self) -> IsoCertificate {
        let mut inv = vec![0; self.mapping.len()];
        for (v, &w) in self.mapping.iter().enumerate() {
            inv[w] = v;
        }
        IsoCertificate { mapping: inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_normalize() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2), (1, 0)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(
            Graph::from_edge_list(3, &[(2, 2)]),
            Err(GraphError::SelfLoop { u: 2, v: 2 })
        );
    }

    #[test]
    fn complete_graph_edges() {
        let g = Graph::complete(5);
        assert_eq!(g.m(), 10);
        assert!(g.is_complete());
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = Graph::complete(5).induced_subgraph(&[4, 1, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![1, 2, 4]);
        let (p3, _) = Graph::cycle(5).induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p3, Graph::path(3));
        assert_eq!(
            Graph::cycle(5).induced_subgraph(&[]),
            Err(GraphError::EmptyVertexSet)
        );
    }

    #[test]
    fn join_counts() {
        let g = Graph::join_complete_empty(4, 3);
        assert_eq!((g.n(), g.m()), (7, 18));
        let g = Graph::join_complete_empty(4, 5);
        assert_eq!(g.n(), 9);
        assert_eq!(g.degree_sequence(), vec![4, 4, 4, 4, 4, 8, 8, 8, 8]);
        assert_eq!(Graph::join_complete_empty(1, 0), Graph::empty(1));
    }

    #[test]
    fn component_counts() {
        assert_eq!(Graph::complete(5).components().len(), 1);
        assert_eq!(Graph::empty(4).components().len(), 4);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = Graph::join_complete_empty(3, 4);
        for u in 0..g.n() {
            assert!(!g.has_edge(u, u));
            for v in 0..g.n() {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }
}
