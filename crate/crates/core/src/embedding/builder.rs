use std::collections::BTreeMap;

use super::Drawing;
use crate::graph::Graph;

/// A planarization node named independently of edge and crossing indices.
/// Crossings are named by their two edges, smaller edge first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKey {
    V(usize),
    X((usize, usize), (usize, usize)),
}

impl NodeKey {
    pub fn crossing(e: (usize, usize), f: (usize, usize)) -> NodeKey {
        let e = (e.0.min(e.1), e.0.max(e.1));
        let f = (f.0.min(f.1), f.0.max(f.1));
        NodeKey::X(e.min(f), e.max(f))
    }
}

/// Editable form of a drawing. Node names survive edits that would shift
/// edge or crossing indices; [`DrawingBuilder::finish`] renumbers.
#[derive(Clone, Debug, Default)]
pub struct DrawingBuilder {
    n: usize,
    edges: Vec<(usize, usize)>,
    rot: BTreeMap<NodeKey, Vec<NodeKey>>,
}

fn norm(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl DrawingBuilder {
    pub fn new(n: usize) -> Self {
        let mut b = DrawingBuilder { n, ..Default::default() };
        for v in 0..n {
            b.rot.insert(NodeKey::V(v), Vec::new());
        }
        b
    }

    pub fn from_drawing(d: &Drawing) -> Self {
        let n = d.n();
        let edges = d.graph().edges().to_vec();
        let key = |x: usize| {
            if x < n {
                NodeKey::V(x)
            } else {
                let (e1, e2) = d.crossings()[x - n];
                NodeKey::crossing(edges[e1], edges[e2])
            }
        };
        let rot = (0..d.node_count())
            .map(|x| (key(x), d.rotation(x).iter().map(|&y| key(y)).collect()))
            .collect();
        DrawingBuilder { n, edges, rot }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rot.insert(NodeKey::V(self.n), Vec::new());
        self.n += 1;
        self.n - 1
    }

    /// Registers an edge of the underlying graph; rotations are set
    /// separately.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.edges.push(norm(u, v));
    }

    pub fn set_rotation(&mut self, node: NodeKey, order: Vec<NodeKey>) {
        self.rot.insert(node, order);
    }

    pub fn rotation_mut(&mut self, node: NodeKey) -> &mut Vec<NodeKey> {
        self.rot.entry(node).or_default()
    }

    /// Replaces `old` by `new` in the rotation at `node`.
    pub fn replace(&mut self, node: NodeKey, old: NodeKey, new: NodeKey) {
        let r = self.rotation_mut(node);
        let i = r.iter().position(|&x| x == old).expect("replaced neighbour is present");
        r[i] = new;
    }

    /// Inserts `new` right after `after` in the rotation at `node`.
    pub fn insert_after(&mut self, node: NodeKey, after: NodeKey, new: NodeKey) {
        let r = self.rotation_mut(node);
        let i = r.iter().position(|&x| x == after).expect("anchor neighbour is present");
        r.insert(i + 1, new);
    }

    fn crossing_on(&self, e: (usize, usize)) -> Option<NodeKey> {
        self.rot.keys().copied().find(|k| matches!(k, NodeKey::X(a, b) if *a == e || *b == e))
    }

    /// Deletes an edge. If it was crossed, the crossing disappears and the
    /// other edge becomes a plain arc.
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        let e = norm(u, v);
        let i = self.edges.iter().position(|&x| x == e).expect("removed edge exists");
        self.edges.remove(i);
        match self.crossing_on(e) {
            Some(c) => {
                let NodeKey::X(a, b) = c else { unreachable!() };
                let (p, q) = if a == e { b } else { a };
                self.rot.remove(&c);
                for x in [u, v] {
                    self.rotation_mut(NodeKey::V(x)).retain(|&y| y != c);
                }
                self.replace(NodeKey::V(p), c, NodeKey::V(q));
                self.replace(NodeKey::V(q), c, NodeKey::V(p));
            }
            None => {
                self.rotation_mut(NodeKey::V(u)).retain(|&y| y != NodeKey::V(v));
                self.rotation_mut(NodeKey::V(v)).retain(|&y| y != NodeKey::V(u));
            }
        }
    }

    /// Applies a vertex relabelling `perm` (old -> new, a bijection on
    /// `0..n`).
    pub fn relabel(self, perm: &[usize]) -> Self {
        let map = |k: NodeKey| match k {
            NodeKey::V(v) => NodeKey::V(perm[v]),
            NodeKey::X(a, b) => NodeKey::crossing(norm(perm[a.0], perm[a.1]), norm(perm[b.0], perm[b.1])),
        };
        DrawingBuilder {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| norm(perm[u], perm[v])).collect(),
            rot: self
                .rot
                .into_iter()
                .map(|(k, r)| (map(k), r.into_iter().map(map).collect()))
                .collect(),
        }
    }

    /// Keeps only the listed vertices (which must carry every remaining
    /// edge) and renumbers them `0..keep.len()` in the given order.
    pub fn compact(self, keep: &[usize]) -> Self {
        let mut perm = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            perm[old] = new;
        }
        let map = |k: NodeKey| match k {
            NodeKey::V(v) => NodeKey::V(perm[v]),
            NodeKey::X(a, b) => NodeKey::crossing(norm(perm[a.0], perm[a.1]), norm(perm[b.0], perm[b.1])),
        };
        DrawingBuilder {
            n: keep.len(),
            edges: self.edges.iter().map(|&(u, v)| norm(perm[u], perm[v])).collect(),
            rot: self
                .rot
                .into_iter()
                .filter(|(k, _)| !matches!(k, NodeKey::V(v) if perm[*v] == usize::MAX))
                .map(|(k, r)| (map(k), r.into_iter().map(map).collect()))
                .collect(),
        }
    }

    pub fn finish(self) -> Drawing {
        let graph = Graph::from_edge_list(self.n, &self.edges).expect("builder edges are valid");
        let idx = |e: (usize, usize)| graph.edge_index(e.0, e.1).expect("crossing names an edge");
        let mut crossings: Vec<((usize, usize), NodeKey)> = self
            .rot
            .keys()
            .filter_map(|&k| match k {
                NodeKey::X(a, b) => {
                    let (i, j) = (idx(a), idx(b));
                    Some(((i.min(j), i.max(j)), k))
                }
                NodeKey::V(_) => None,
            })
            .collect();
        crossings.sort_unstable();
        let n = self.n;
        let mut id: BTreeMap<NodeKey, usize> = (0..n).map(|v| (NodeKey::V(v), v)).collect();
        for (i, (_, k)) in crossings.iter().enumerate() {
            id.insert(*k, n + i);
        }
        let mut rot = vec![Vec::new(); n + crossings.len()];
        for (k, r) in &self.rot {
            rot[id[k]] = r.iter().map(|x| id[x]).collect();
        }
        Drawing::from_parts(graph, crossings.into_iter().map(|(p, _)| p).collect(), rot)
    }
}
