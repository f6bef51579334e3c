//! Example graphs and seeded generators.
//!
//! Random generators use ChaCha8 seeded with `seed_from_u64`, so a given
//! `(n, k, seed)` always yields the same graph.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::chordal::simplicial_vertices;
use crate::embedding::catalog::{catalog, g0_graph};
use crate::embedding::{Drawing, DrawingBuilder, NodeKey, Violation};
use crate::graph::Graph;

/// The vertices of G0 that are identified with a host face.
pub const G0_OUTER: [usize; 3] = [0, 11, 12];
/// A vertex set of G0 whose removal leaves six components.
pub const G0_CUT: [usize; 5] = [0, 1, 3, 5, 7];

pub fn g0() -> (Graph, Drawing) {
    (g0_graph(), catalog("G0").expect("G0 in catalog"))
}

/// Uncrossed triangular faces of `d`, as sorted vertex triples. Their
/// boundary edges are uncrossed by definition.
pub fn qualifying_faces(d: &Drawing) -> Vec<[usize; 3]> {
    let n = d.n();
    let mut out: Vec<[usize; 3]> = d
        .faces()
        .faces
        .iter()
        .filter(|f| f.is_uncrossed_triangle())
        .map(|f| {
            let v = f.vertex_set(n);
            [v[0], v[1], v[2]]
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct GlueSpec {
    pub host: Drawing,
    pub face: [usize; 3],
    /// `face[i]` is identified with G0 vertex `correspondence[i]`, a
    /// permutation of [`G0_OUTER`].
    pub correspondence: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("{0:?} is not an uncrossed triangular face of the host")]
    NotQualifyingFace([usize; 3]),
    #[error("correspondence {0:?} is not a permutation of 0, 11, 12")]
    BadCorrespondence([usize; 3]),
    #[error("glued drawing is invalid: {0}")]
    Invalid(Violation),
}

#[derive(Clone, Debug)]
pub struct Glued {
    pub graph: Graph,
    pub drawing: Drawing,
    /// Image of [`G0_CUT`] in the new copy.
    pub cut_set: Vec<usize>,
    /// G0 vertex -> glued vertex.
    pub copy_map: Vec<usize>,
}

/// Node key of drawing node `x` after mapping vertices through `map`.
fn key_of(d: &Drawing, map: &[usize], x: usize) -> NodeKey {
    let n = d.n();
    if x < n {
        return NodeKey::V(map[x]);
    }
    let (e1, e2) = d.crossings()[x - n];
    let (a, b) = d.graph().edges()[e1];
    let (p, q) = d.graph().edges()[e2];
    NodeKey::crossing((map[a], map[b]), (map[p], map[q]))
}

fn glue_with(spec: &GlueSpec, copy: &Drawing) -> Result<Glued, GlueError> {
    let host = &spec.host;
    let nh = host.n();
    let mut map = vec![usize::MAX; copy.n()];
    for (i, &c) in spec.correspondence.iter().enumerate() {
        map[c] = spec.face[i];
    }
    let mut next = nh;
    for m in map.iter_mut().filter(|m| **m == usize::MAX) {
        *m = next;
        next += 1;
    }
    let mut b = DrawingBuilder::from_drawing(host);
    for _ in nh..next {
        b.add_vertex();
    }
    for &(u, v) in copy.graph().edges() {
        if !host.graph().has_edge(map[u], map[v]) {
            b.add_edge(map[u], map[v]);
        }
    }
    // the host face as traced: corner at w between pred and succ
    let fs = host.faces();
    let face = fs
        .faces
        .iter()
        .find(|f| f.is_uncrossed_triangle() && f.vertex_set(nh) == spec.face.to_vec())
        .ok_or(GlueError::NotQualifyingFace(spec.face))?;
    for i in 0..3 {
        let w = face.nodes[i];
        let pred = face.nodes[(i + 2) % 3];
        let succ = face.nodes[(i + 1) % 3];
        let cw = spec.correspondence[spec.face.iter().position(|&x| x == w).unwrap()];
        // copy rotation at cw, read from pred's preimage up to succ's
        let r: Vec<usize> = copy.rotation(cw).to_vec();
        let inv = |h: usize| (0..copy.n()).find(|&v| map[v] == h).unwrap();
        let start = r.iter().position(|&x| x == inv(pred)).unwrap();
        let arc: Vec<NodeKey> = (1..r.len())
            .map(|j| r[(start + j) % r.len()])
            .take_while(|&x| x != inv(succ))
            .map(|x| key_of(copy, &map, x))
            .collect();
        let rot = b.rotation_mut(NodeKey::V(w));
        let at = rot.iter().position(|&k| k == NodeKey::V(pred)).unwrap();
        for (j, k) in arc.into_iter().enumerate() {
            rot.insert(at + 1 + j, k);
        }
    }
    for x in 0..copy.node_count() {
        if x < copy.n() && G0_OUTER.contains(&x) {
            continue;
        }
        let order = copy.rotation(x).iter().map(|&y| key_of(copy, &map, y)).collect();
        b.set_rotation(key_of(copy, &map, x), order);
    }
    let drawing = b.finish();
    drawing.validate().map_err(GlueError::Invalid)?;
    Ok(Glued {
        graph: drawing.graph().clone(),
        cut_set: G0_CUT.iter().map(|&v| map[v]).collect(),
        copy_map: map,
        drawing,
    })
}

/// Identifies the face vertices of the host with 0, 11, 12 of a fresh copy
/// of G0 drawn inside the face.
pub fn glue_g0(spec: &GlueSpec) -> Result<Glued, GlueError> {
    let mut c = spec.correspondence;
    c.sort_unstable();
    if c != G0_OUTER {
        return Err(GlueError::BadCorrespondence(spec.correspondence));
    }
    if !qualifying_faces(&spec.host).contains(&{
        let mut f = spec.face;
        f.sort_unstable();
        f
    }) {
        return Err(GlueError::NotQualifyingFace(spec.face));
    }
    let (_, copy) = g0();
    // the copy's orientation must agree with the host's; one of the two works
    glue_with(spec, &copy).or_else(|_| glue_with(spec, &copy.mirror()))
}

/// G0 glued into itself `depth` times, each time into the first
/// qualifying face of the previous result with the identity
/// correspondence. Depth 0 is G0.
pub fn glue_chain(depth: usize) -> Result<Glued, GlueError> {
    let (graph, drawing) = g0();
    let mut cur = Glued {
        graph,
        drawing,
        cut_set: G0_CUT.to_vec(),
        copy_map: (0..13).collect(),
    };
    for _ in 0..depth {
        let face = qualifying_faces(&cur.drawing)[0];
        cur = glue_g0(&GlueSpec { host: cur.drawing.clone(), face, correspondence: G0_OUTER })?;
    }
    Ok(cur)
}

/// A random k-tree: from `K_{k+1}`, each new vertex joins a k-clique chosen
/// uniformly among those present.
pub fn random_k_tree(n: usize, k: usize, seed: u64) -> Graph {
    assert!(n > k, "a k-tree has at least k + 1 vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Graph::complete(k + 1).edges().to_vec();
    let mut cliques: Vec<Vec<usize>> = (0..=k).map(|skip| (0..=k).filter(|&v| v != skip).collect()).collect();
    for v in k + 1..n {
        let c = cliques[rng.random_range(0..cliques.len())].clone();
        edges.extend(c.iter().map(|&u| (u, v)));
        for skip in 0..k {
            let mut d: Vec<usize> = c.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &u)| u).collect();
            d.push(v);
            cliques.push(d);
        }
    }
    Graph::from_edge_list(n, &edges).expect("k-tree edges are simple")
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum GeneratorError {
    #[error("need n >= k + 2 (n = {n}, k = {k})")]
    TooSmall { n: usize, k: usize },
    #[error("no k-tree with two simplicial vertices after {attempts} attempts")]
    RetryBudget { attempts: usize },
}

pub const TWO_SIMPLICIAL_ATTEMPTS: usize = 1000;

/// A k-tree with exactly two simplicial vertices: each new vertex joins a
/// rolling k-clique front, from which a random older vertex then retires.
/// Attempts with more simplicial vertices are discarded.
pub fn two_simplicial_k_tree(n: usize, k: usize, seed: u64) -> Result<Graph, GeneratorError> {
    if n < k + 2 {
        return Err(GeneratorError::TooSmall { n, k });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TWO_SIMPLICIAL_ATTEMPTS {
        let mut edges: Vec<(usize, usize)> = Graph::complete(k + 1).edges().to_vec();
        let mut front: Vec<usize> = (0..=k).collect();
        front.remove(rng.random_range(0..front.len()));
        for v in k + 1..n {
            edges.extend(front.iter().map(|&u| (u, v)));
            front.remove(rng.random_range(0..front.len()));
            front.push(v);
        }
        let g = Graph::from_edge_list(n, &edges).expect("k-tree edges are simple");
        if simplicial_vertices(&g).len() == 2 {
            return Ok(g);
        }
    }
    Err(GeneratorError::RetryBudget { attempts: TWO_SIMPLICIAL_ATTEMPTS })
}

/// All k-trees on `n` vertices up to isomorphism, by extending each class
/// on `n - 1` vertices at every k-clique.
pub fn all_k_trees(n: usize, k: usize) -> Vec<Graph> {
    if n <= k {
        return Vec::new();
    }
    let mut level: BTreeSet<CanonicalForm> = BTreeSet::from([canonical_form(&Graph::complete(k + 1))]);
    for m in k + 1..n {
        let mut next = BTreeSet::new();
        for cf in &level {
            let g = cf.to_graph();
            for c in k_cliques(&g, k) {
                let mut e = g.edges().to_vec();
                e.extend(c.iter().map(|&v| (v, m)));
                next.insert(canonical_form(&Graph::from_edge_list(m + 1, &e).expect("simple")));
            }
        }
        level = next;
    }
    level.into_iter().map(|c| c.to_graph()).collect()
}

fn k_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in from..g.n() {
            if cur.iter().all(|&u| g.has_edge(u, v)) {
                cur.push(v);
                rec(g, k, v + 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, k, 0, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{is_chordal, is_k_tree, k_tree_edge_count};
    use crate::connectivity::vertex_connectivity;
    use crate::hamiltonian::ktree_ham_path;
    use crate::verify::simplicial_properties_hold;
    use proptest::prelude::*;

    #[test]
    fn g0_facts() {
        let (g, d) = g0();
        d.validate().unwrap();
        assert_eq!(d.graph(), &g);
        assert!(g.is_clique(&[0, 1, 2, 11, 12]));
        assert!(is_chordal(&g).is_chordal());
        assert_eq!(vertex_connectivity(&g).0, 3);
        assert_eq!(g.remove_vertices(&G0_CUT).0.components().len(), 6);
        assert!(qualifying_faces(&d).contains(&[0, 11, 12]));
    }

    #[test]
    fn gluing() {
        let one = glue_chain(1).unwrap();
        assert_eq!(one.graph.n(), 23);
        assert!(is_chordal(&one.graph).is_chordal());
        assert_eq!(vertex_connectivity(&one.graph).0, 3);
        assert_eq!(one.graph.remove_vertices(&one.cut_set).0.components().len(), 6);
        assert_eq!(one.drawing.crossing_count(), 2);
        let two = glue_chain(2).unwrap();
        assert_eq!(two.graph.n(), 33);
        two.drawing.validate().unwrap();
        // every face and every correspondence works
        let (_, d) = g0();
        for face in qualifying_faces(&d) {
            for corr in [[0, 11, 12], [11, 0, 12], [12, 11, 0]] {
                let r = glue_g0(&GlueSpec { host: d.clone(), face, correspondence: corr }).unwrap();
                r.drawing.validate().unwrap();
            }
        }
    }

    #[test]
    fn gluing_rejects_bad_specs() {
        let (_, d) = g0();
        // 1, 2, 11 meet the crossing
        let e = glue_g0(&GlueSpec { host: d.clone(), face: [1, 2, 11], correspondence: G0_OUTER });
        assert!(matches!(e, Err(GlueError::NotQualifyingFace(_))));
        let e = glue_g0(&GlueSpec { host: d, face: [0, 11, 12], correspondence: [0, 1, 2] });
        assert!(matches!(e, Err(GlueError::BadCorrespondence(_))));
    }

    #[test]
    fn random_k_trees() {
        assert_eq!(random_k_tree(5, 4, 9), Graph::complete(5));
        let g = random_k_tree(10, 4, 7);
        assert_eq!(g.m(), 30);
        assert!(is_k_tree(&random_k_tree(14, 3, 1), 3).is_some());
        assert_eq!(random_k_tree(12, 3, 42), random_k_tree(12, 3, 42));
        for seed in 0..30 {
            let g = random_k_tree(11, 4, seed);
            assert_eq!(g.m(), k_tree_edge_count(11, 4));
        }
    }

    #[test]
    fn two_simplicial() {
        let g = two_simplicial_k_tree(6, 4, 0).unwrap();
        assert_eq!(g.m(), 14);
        let g = two_simplicial_k_tree(12, 4, 3).unwrap();
        assert_eq!(simplicial_vertices(&g).len(), 2);
        assert!(is_k_tree(&g, 4).is_some());
        assert_eq!(two_simplicial_k_tree(4, 3, 0), Err(GeneratorError::TooSmall { n: 4, k: 3 }));
    }

    #[test]
    fn k_tree_counts() {
        // unlabeled 4-trees on 5..=8 vertices
        let counts: Vec<usize> = (5..=8).map(|n| all_k_trees(n, 4).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5]);
        // unlabeled 3-trees on 4..=8 vertices
        let counts: Vec<usize> = (4..=8).map(|n| all_k_trees(n, 3).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn random_k_trees_have_independent_simplicial_vertices(k in 3usize..=5, extra in 2usize..=9, seed in any::<u64>()) {
            let g = random_k_tree(k + extra, k, seed);
            prop_assert!(is_k_tree(&g, k).is_some());
            prop_assert!(simplicial_properties_hold(&g, k));
        }

        #[test]
        fn two_simplicial_trees_are_ham_connected(k in 3usize..=5, extra in 2usize..=6, seed in any::<u64>()) {
            let n = k + extra;
            let g = two_simplicial_k_tree(n, k, seed).unwrap();
            for x in 0..n {
                for y in (0..n).filter(|&y| y != x) {
                    let p = ktree_ham_path(&g, k, x, y).unwrap();
                    prop_assert!(p.check(&g, x, y).is_ok());
                }
            }
        }
    }
}
