//! 1-planar drawings stored combinatorially.
//!
//! A drawing is an underlying [`Graph`], a set of crossing pairs of edges and
//! a rotation system on its planarization. Planarization nodes `0..n` are the
//! vertices; node `n + i` is the crossing of `crossings[i]`. Every edge is
//! crossed at most once and crossed edges share no endpoint, so the
//! planarization is simple and a rotation is just a cyclic list of
//! neighbouring nodes.
//!
//! Faces are traced with `next(u -> v) = (v -> w)` where `w` follows `u` in
//! the rotation at `v`.

mod builder;
pub mod catalog;
mod code;
mod geometric;
mod json;
mod ops;
pub mod patterns;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

pub use builder::{DrawingBuilder, NodeKey};
pub use code::{drawing_code, drawing_isomorphisms, DrawingCode};
pub use geometric::{GeoDrawing, GeoError, Shape};
pub use json::{drawing_from_json, drawing_to_json, DrawingJson, JsonError};
pub use ops::{four_join, JoinError};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Drawing {
    graph: Graph,
    crossings: Vec<(usize, usize)>,
    rot: Vec<Vec<usize>>,
}

impl std::fmt::Debug for Drawing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Drawing")
            .field("graph", &self.graph)
            .field("crossings", &self.crossings)
            .field("rot", &self.rot)
            .finish()
    }
}

/// A broken drawing invariant, with its location.
#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    #[error("crossing {pair} names edge {edge}, but there are only {m} edges")]
    EdgeOutOfRange { pair: usize, edge: usize, m: usize },
    #[error("crossing {pair}: edge {edge} crosses itself")]
    SelfCrossing { pair: usize, edge: usize },
    #[error("edge {edge} is crossed more than once")]
    EdgeCrossedTwice { edge: usize },
    #[error("adjacent edges cross: {e1} and {e2} share a vertex")]
    AdjacentEdgesCross { e1: usize, e2: usize },
    #[error("rotation system has {got} nodes, expected {expected}")]
    RotationNodeCount { got: usize, expected: usize },
    #[error("rotation at node {node} is not a cyclic order of its planarization neighbours")]
    RotationMismatch { node: usize },
    #[error("arcs at crossing node {node} do not alternate between the two crossing edges")]
    NonAlternatingCrossing { node: usize },
    #[error("not a sphere embedding: V - E + F = {v} - {e} + {f} with {components} components")]
    Euler { v: usize, e: usize, f: usize, components: usize },
}

/// A face as the cyclic sequence of planarization nodes along its boundary.
/// Corner `i` sits at `nodes[i]`, entered from `nodes[i - 1]` and left
/// towards `nodes[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Face {
    pub nodes: Vec<usize>,
    pub crossed: bool,
}

impl Face {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.nodes.len();
        (0..k).map(move |i| (self.nodes[i], self.nodes[(i + 1) % k]))
    }

    /// `(incoming from, node, outgoing to)` for every corner.
    pub fn corners(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let k = self.nodes.len();
        (0..k).map(move |i| (self.nodes[(i + k - 1) % k], self.nodes[i], self.nodes[(i + 1) % k]))
    }

    pub fn is_uncrossed_triangle(&self) -> bool {
        self.nodes.len() == 3 && !self.crossed
    }

    /// Sorted vertex set of the face boundary.
    pub fn vertex_set(&self, n: usize) -> Vec<usize> {
        let mut vs: Vec<usize> = self.nodes.iter().copied().filter(|&x| x < n).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// All faces of a drawing plus the face on the left of every dart.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    dart_face: HashMap<(usize, usize), usize>,
}

impl FaceSet {
    pub fn face_of_dart(&self, u: usize, v: usize) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }
}

/// An ordered pair of twin faces `f1 = [a b v1]`, `f2 = [a b v2]`: uncrossed
/// triangles sharing the uncrossed edge `ab` whose four vertices form a
/// 4-clique of the graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwinPair {
    pub f1: usize,
    pub f2: usize,
    pub a: usize,
    pub b: usize,
    pub v1: usize,
    pub v2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("edge ({0}, {1}) is crossed")]
    EdgeCrossed(usize, usize),
    #[error("edge ({0}, {1}) is not on the boundary of the face")]
    NotOnBoundary(usize, usize),
    #[error("edge ({0}, {1}) is not an edge of the graph")]
    NoSuchEdge(usize, usize),
}

impl Drawing {
    /// Assembles a drawing without checking it; see [`Drawing::validate`].
    pub fn from_parts(graph: Graph, crossings: Vec<(usize, usize)>, rot: Vec<Vec<usize>>) -> Self {
        Drawing { graph, crossings, rot }
    }

    /// A crossing-free drawing from a rotation system of `graph` itself.
    pub fn planar(graph: Graph, rot: Vec<Vec<usize>>) -> Self {
        Drawing { graph, crossings: Vec::new(), rot }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn node_count(&self) -> usize {
        self.graph.n() + self.crossings.len()
    }

    pub fn rotation(&self, node: usize) -> &[usize] {
        &self.rot[node]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rot
    }

    pub fn is_crossing_node(&self, node: usize) -> bool {
        node >= self.graph.n()
    }

    /// For every edge index, the index of the crossing pair it belongs to.
    pub fn crossing_of_edge(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.graph.m()];
        for (i, &(e1, e2)) in self.crossings.iter().enumerate() {
            for e in [e1, e2] {
                if e < out.len() {
                    out[e] = Some(i);
                }
            }
        }
        out
    }

    pub fn is_edge_crossed(&self, u: usize, v: usize) -> bool {
        self.graph
            .edge_index(u, v)
            .is_some_and(|e| self.crossings.iter().any(|&(a, b)| a == e || b == e))
    }

    /// Neighbour lists of the planarization, derived from graph and
    /// crossings alone (sorted, not in rotation order).
    pub fn planarization_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.graph.n();
        let mut adj = vec![Vec::new(); self.node_count()];
        let cross = self.crossing_of_edge();
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            match cross[e] {
                Some(c) => {
                    adj[u].push(n + c);
                    adj[v].push(n + c);
                    adj[n + c].push(u);
                    adj[n + c].push(v);
                }
                None => {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn planarization(&self) -> Graph {
        let adj = self.planarization_adjacency();
        let pairs: Vec<(usize, usize)> = adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        Graph::from_edge_list(adj.len(), &pairs).expect("planarization is simple")
    }

    /// The graph minus both edges of every crossing pair.
    pub fn planar_skeleton(&self) -> Graph {
        let cross = self.crossing_of_edge();
        let pairs: Vec<(usize, usize)> = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(e, _)| cross[*e].is_none())
            .map(|(_, &p)| p)
            .collect();
        Graph::from_edge_list(self.graph.n(), &pairs).expect("subgraph of a simple graph")
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let m = self.graph.m();
        let mut crossed = vec![false; m];
        for (pair, &(e1, e2)) in self.crossings.iter().enumerate() {
            for edge in [e1, e2] {
                if edge >= m {
                    return Err(Violation::EdgeOutOfRange { pair, edge, m });
                }
            }
            if e1 == e2 {
                return Err(Violation::SelfCrossing { pair, edge: e1 });
            }
            for edge in [e1, e2] {
                if crossed[edge] {
                    return Err(Violation::EdgeCrossedTwice { edge });
                }
                crossed[edge] = true;
            }
            let (a, b) = self.graph.edges()[e1];
            let (p, q) = self.graph.edges()[e2];
            if a == p || a == q || b == p || b == q {
                return Err(Violation::AdjacentEdgesCross { e1, e2 });
            }
        }
        let expected = self.node_count();
        if self.rot.len() != expected {
            return Err(Violation::RotationNodeCount { got: self.rot.len(), expected });
        }
        let adj = self.planarization_adjacency();
        for (node, nb) in adj.iter().enumerate() {
            let mut r = self.rot[node].clone();
            r.sort_unstable();
            if r != *nb {
                return Err(Violation::RotationMismatch { node });
            }
        }
        let n = self.graph.n();
        for (i, &(e1, _)) in self.crossings.iter().enumerate() {
            let (a, b) = self.graph.edges()[e1];
            let r = &self.rot[n + i];
            let first = |x: usize| x == a || x == b;
            if first(r[0]) == first(r[1]) || first(r[0]) != first(r[2]) {
                return Err(Violation::NonAlternatingCrossing { node: n + i });
            }
        }
        let v = expected;
        let e: usize = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let f = self.faces().faces.len();
        let p = self.planarization();
        let components = p.components().len();
        let isolated = (0..v).filter(|&x| adj[x].is_empty()).count();
        if v + f + isolated != 2 * components + e {
            return Err(Violation::Euler { v, e, f, components });
        }
        Ok(())
    }

    /// Position of `x` in the rotation at `node`.
    fn rot_pos(&self, node: usize, x: usize) -> usize {
        self.rot[node]
            .iter()
            .position(|&y| y == x)
            .unwrap_or_else(|| panic!("{x} is not in the rotation at {node}"))
    }

    /// Neighbour following `x` in the rotation at `node`.
    pub fn succ(&self, node: usize, x: usize) -> usize {
        let r = &self.rot[node];
        r[(self.rot_pos(node, x) + 1) % r.len()]
    }

    pub fn pred(&self, node: usize, x: usize) -> usize {
        let r = &self.rot[node];
        r[(self.rot_pos(node, x) + r.len() - 1) % r.len()]
    }

    pub fn faces(&self) -> FaceSet {
        let n = self.graph.n();
        let mut dart_face = HashMap::new();
        let mut faces = Vec::new();
        for u in 0..self.rot.len() {
            for &v in &self.rot[u] {
                if dart_face.contains_key(&(u, v)) {
                    continue;
                }
                let id = faces.len();
                let mut nodes = Vec::new();
                let (mut x, mut y) = (u, v);
                loop {
                    dart_face.insert((x, y), id);
                    nodes.push(x);
                    let z = self.succ(y, x);
                    (x, y) = (y, z);
                    if (x, y) == (u, v) {
                        break;
                    }
                }
                let crossed = nodes.iter().any(|&x| x >= n);
                faces.push(Face { nodes, crossed });
            }
        }
        FaceSet { faces, dart_face }
    }

    pub fn is_triangulated(&self) -> bool {
        self.faces().faces.iter().all(|f| f.len() == 3)
    }

    /// The face across the uncrossed edge `uv` from `face`.
    pub fn opposite_face(
        &self,
        fs: &FaceSet,
        face: usize,
        u: usize,
        v: usize,
    ) -> Result<usize, FaceError> {
        if !self.graph.has_edge(u, v) {
            return Err(FaceError::NoSuchEdge(u, v));
        }
        if self.is_edge_crossed(u, v) {
            return Err(FaceError::EdgeCrossed(u, v));
        }
        let here = |x, y| fs.face_of_dart(x, y) == Some(face);
        if here(u, v) {
            Ok(fs.face_of_dart(v, u).expect("every dart has a face"))
        } else if here(v, u) {
            Ok(fs.face_of_dart(u, v).expect("every dart has a face"))
        } else {
            Err(FaceError::NotOnBoundary(u, v))
        }
    }

    /// All ordered twin-face pairs.
    pub fn twin_faces(&self, fs: &FaceSet) -> Vec<TwinPair> {
        let n = self.n();
        let mut out = Vec::new();
        for (i, f) in fs.faces.iter().enumerate() {
            if !f.is_uncrossed_triangle() {
                continue;
            }
            for (s, t) in f.darts() {
                let j = fs.face_of_dart(t, s).expect("every dart has a face");
                let g = &fs.faces[j];
                if j == i || !g.is_uncrossed_triangle() {
                    continue;
                }
                let v1 = f.nodes.iter().copied().find(|&x| x != s && x != t).unwrap();
                let v2 = g.nodes.iter().copied().find(|&x| x != s && x != t).unwrap();
                if v1 == v2 || v1 >= n || v2 >= n || !self.graph.has_edge(v1, v2) {
                    continue;
                }
                let (a, b) = (s.min(t), s.max(t));
                out.push(TwinPair { f1: i, f2: j, a, b, v1, v2 });
            }
        }
        out
    }

    /// Uncrossed corners of `face` plus the uncrossed boundary edges whose
    /// opposite face has at least three uncrossed corners.
    pub fn insertion_capacity(&self, fs: &FaceSet, face: usize) -> usize {
        let n = self.n();
        let f = &fs.faces[face];
        let corners = |g: &Face| g.nodes.iter().filter(|&&x| x < n).count();
        let mut cap = corners(f);
        for (u, v) in f.darts() {
            if u < n && v < n {
                let other = fs.face_of_dart(v, u).expect("every dart has a face");
                if corners(&fs.faces[other]) >= 3 {
                    cap += 1;
                }
            }
        }
        cap
    }

    /// Sub-drawing on the kept vertices and edges; kept edges must join kept
    /// vertices. Returns the drawing and the new-to-old vertex map.
    pub fn restrict(&self, keep_vertex: &[bool], keep_edge: &[bool]) -> (Drawing, Vec<usize>) {
        let mut b = DrawingBuilder::from_drawing(self);
        for (e, &(u, v)) in self.graph.edges().iter().enumerate() {
            if !keep_edge[e] {
                b.remove_edge(u, v);
            } else {
                assert!(keep_vertex[u] && keep_vertex[v], "kept edge ({u}, {v}) lost an endpoint");
            }
        }
        let new_to_old: Vec<usize> = (0..self.n()).filter(|&v| keep_vertex[v]).collect();
        (b.compact(&new_to_old).finish(), new_to_old)
    }

    /// `D | (G - vs)`.
    pub fn remove_vertices(&self, vs: &[usize]) -> (Drawing, Vec<usize>) {
        let keep_vertex: Vec<bool> = (0..self.n()).map(|v| !vs.contains(&v)).collect();
        let keep_edge: Vec<bool> = self
            .graph
            .edges()
            .iter()
            .map(|&(u, v)| keep_vertex[u] && keep_vertex[v])
            .collect();
        self.restrict(&keep_vertex, &keep_edge)
    }

    /// The sub-drawing `D_uf` formed by the edges on the boundary of some
    /// uncrossed face, with their endpoints.
    pub fn uncrossed_face_skeleton(&self) -> Option<(Drawing, Vec<usize>)> {
        let fs = self.faces();
        let n = self.n();
        let mut keep_edge = vec![false; self.graph.m()];
        let mut keep_vertex = vec![false; n];
        let mut any = false;
        for f in fs.faces.iter().filter(|f| !f.crossed) {
            any = true;
            for (u, v) in f.darts() {
                let e = self.graph.edge_index(u, v).expect("uncrossed face darts are edges");
                keep_edge[e] = true;
                keep_vertex[u] = true;
                keep_vertex[v] = true;
            }
            for &x in &f.nodes {
                keep_vertex[x] = true;
            }
        }
        any.then(|| self.restrict(&keep_vertex, &keep_edge))
    }

    /// Relabels vertices with `perm` (old -> new), keeping the drawing.
    pub fn relabel(&self, perm: &[usize]) -> Drawing {
        DrawingBuilder::from_drawing(self).relabel(perm).finish()
    }

    /// The mirror image: every rotation reversed.
    pub fn mirror(&self) -> Drawing {
        let rot = self
            .rot
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Drawing { graph: self.graph.clone(), crossings: self.crossings.clone(), rot }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn planar_k4() -> Drawing {
        // 3 inside triangle 0 1 2, counter-clockwise rotations
        let rot = vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]];
        Drawing::planar(Graph::complete(4), rot)
    }

    #[test]
    fn k4_faces() {
        let d = planar_k4();
        d.validate().unwrap();
        let fs = d.faces();
        assert_eq!(fs.faces.len(), 4);
        assert!(fs.faces.iter().all(|f| f.len() == 3 && !f.crossed));
        let total: usize = fs.faces.iter().map(Face::len).sum();
        assert_eq!(total, 2 * 6);
    }

    #[test]
    fn k4_opposite_faces() {
        let d = planar_k4();
        let fs = d.faces();
        for (i, f) in fs.faces.iter().enumerate() {
            for (u, v) in f.darts() {
                let j = d.opposite_face(&fs, i, u, v).unwrap();
                assert_ne!(i, j);
                assert_eq!(d.opposite_face(&fs, j, u, v).unwrap(), i);
            }
        }
    }

    #[test]
    fn k4_twins_match_definition() {
        let d = planar_k4();
        let fs = d.faces();
        let twins = d.twin_faces(&fs);
        // every pair of adjacent faces of planar K4 shares one edge and the
        // four vertices are the whole K4
        assert_eq!(twins.len(), 12);
        for t in &twins {
            assert!(d.graph().is_clique(&[t.a, t.b, t.v1, t.v2]));
        }
        assert_eq!(d.insertion_capacity(&fs, 0), 6);
    }

    #[test]
    fn broken_rotation_is_reported() {
        let mut d = planar_k4();
        d.rot[3] = vec![0, 2, 1];
        assert!(matches!(d.validate(), Err(Violation::Euler { .. })));
        d.rot[3] = vec![0, 1];
        assert_eq!(d.validate(), Err(Violation::RotationMismatch { node: 3 }));
    }
}
