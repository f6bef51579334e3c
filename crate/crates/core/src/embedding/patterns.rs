//! The six shapes D1..D6 that the uncrossed-face skeleton of a drawing of a
//! 1-planar 4-tree can take: two "diamonds" (pairs of triangles sharing an
//! edge) that share an edge (D1, D2), nothing (D3) or one vertex (D4..D6).
//!
//! Faces `f1, f2` form one diamond and `f3, f4` the other. A match also
//! requires, in the parent drawing, that each diamond is a twin-face pair
//! (P1) and, for D1 and D2, that `v0v2`, `v1v2` and `v1v3` are non-edges
//! (P2).

use serde::Serialize;

use super::geometric::{GeoDrawing, Shape};
use super::{drawing_isomorphisms, Drawing};

pub const PATTERN_NAMES: [&str; 6] = ["D1", "D2", "D3", "D4", "D5", "D6"];

#[derive(Clone, Debug)]
pub struct Pattern {
    pub name: &'static str,
    pub drawing: Drawing,
    /// f1..f4 as vertex triples of the pattern.
    pub faces: [[usize; 3]; 4],
    /// v0..v3 for D1 and D2.
    pub labels: Option<[usize; 4]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternMatch {
    pub pattern: &'static str,
    /// Pattern vertex -> vertex of the matched drawing.
    pub vertex_map: Vec<usize>,
}

fn geo(pos: &[(f64, f64)], pairs: &[(usize, usize)]) -> Drawing {
    GeoDrawing {
        pos: pos.to_vec(),
        edges: pairs.iter().map(|&(u, v)| (u, v, Shape::Straight)).collect(),
    }
    .build()
    .expect("pattern geometry is plane")
}

pub fn pattern(name: &str) -> Option<Pattern> {
    let diamond_a = [(0, 1), (2, 1), (2, 3), (3, 0), (0, 2)];
    Some(match name {
        // v0 v1 X Y v2 v3; the diamonds share XY, X ends both diagonals
        "D1" => Pattern {
            name: "D1",
            drawing: geo(
                &[(-15.25, 2.5), (-13.0, 5.0), (-13.0, 0.0), (-10.0, 5.0), (-8.0, 2.5), (-10.0, 0.0)],
                &[(1, 2), (1, 0), (0, 2), (1, 3), (3, 2), (2, 5), (3, 4), (4, 5), (2, 4)],
            ),
            faces: [[0, 1, 2], [1, 2, 3], [2, 3, 4], [2, 4, 5]],
            labels: Some([0, 1, 4, 5]),
        },
        // v0 v1 X Y v2 v3; the diamonds share XY, diagonals v1X and Yv3
        "D2" => Pattern {
            name: "D2",
            drawing: geo(
                &[(-4.25, 2.5), (-2.0, 5.0), (-2.0, 0.0), (1.0, 5.0), (3.0, 2.5), (1.0, 0.0)],
                &[(1, 2), (1, 0), (0, 2), (1, 3), (3, 2), (2, 5), (5, 3), (3, 4), (4, 5)],
            ),
            faces: [[0, 1, 2], [1, 2, 3], [2, 3, 5], [3, 4, 5]],
            labels: Some([0, 1, 4, 5]),
        },
        "D3" => Pattern {
            name: "D3",
            drawing: geo(
                &[(9.0, 5.0), (6.75, 2.5), (9.0, 0.0), (11.25, 2.5), (14.5, 5.0), (12.25, 2.5), (14.5, 0.0), (16.75, 2.5)],
                &[diamond_a.as_slice(), &[(5, 4), (4, 7), (7, 6), (6, 5), (4, 6)]].concat(),
            ),
            faces: [[0, 1, 2], [0, 2, 3], [4, 5, 6], [4, 6, 7]],
            labels: None,
        },
        // shared vertex 3 is off both diagonals
        "D4" => Pattern {
            name: "D4",
            drawing: geo(
                &[(-13.5, -4.0), (-15.75, -6.5), (-13.5, -9.0), (-11.25, -6.5), (-9.0, -4.0), (-9.0, -9.0), (-6.75, -6.5)],
                &[diamond_a.as_slice(), &[(3, 4), (4, 6), (6, 5), (5, 3), (4, 5)]].concat(),
            ),
            faces: [[0, 1, 2], [0, 2, 3], [3, 4, 5], [4, 5, 6]],
            labels: None,
        },
        // shared vertex 3 is off the first diagonal and on the second
        "D5" => Pattern {
            name: "D5",
            drawing: geo(
                &[(-2.5, -4.0), (-4.75, -6.5), (-2.5, -9.0), (-0.25, -6.5), (2.0, -4.0), (2.0, -9.0), (4.25, -6.5)],
                &[diamond_a.as_slice(), &[(4, 3), (3, 5), (5, 6), (6, 4), (3, 6)]].concat(),
            ),
            faces: [[0, 1, 2], [0, 2, 3], [3, 4, 6], [3, 5, 6]],
            labels: None,
        },
        // shared vertex 0 ends both diagonals
        "D6" => Pattern {
            name: "D6",
            drawing: geo(
                &[(11.0, -6.75), (8.5, -4.5), (6.0, -6.75), (8.5, -9.0), (16.0, -6.75), (13.5, -4.5), (13.5, -9.0)],
                &[diamond_a.as_slice(), &[(5, 4), (4, 6), (6, 0), (0, 5), (4, 0)]].concat(),
            ),
            faces: [[0, 1, 2], [0, 2, 3], [0, 4, 5], [0, 4, 6]],
            labels: None,
        },
        _ => return None,
    })
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

/// Unordered twin pairs of `d` as pairs of sorted vertex triples.
fn twin_triples(d: &Drawing) -> Vec<([usize; 3], [usize; 3])> {
    let fs = d.faces();
    d.twin_faces(&fs)
        .into_iter()
        .map(|t| (sorted([t.a, t.b, t.v1]), sorted([t.a, t.b, t.v2])))
        .collect()
}

fn satisfies(p: &Pattern, d: &Drawing, twins: &[([usize; 3], [usize; 3])], map: &[usize]) -> bool {
    let img = |f: [usize; 3]| sorted(f.map(|v| map[v]));
    let p1 = [(0, 1), (2, 3)].iter().all(|&(i, j)| {
        let (x, y) = (img(p.faces[i]), img(p.faces[j]));
        twins.iter().any(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x))
    });
    let p2 = p.labels.is_none_or(|[v0, v1, v2, v3]| {
        let g = d.graph();
        !g.has_edge(map[v0], map[v2]) && !g.has_edge(map[v1], map[v2]) && !g.has_edge(map[v1], map[v3])
    });
    p1 && p2
}

/// Vertex maps from a pattern onto `uf` (pattern vertex -> uf vertex),
/// handling the two-component pattern one diamond at a time.
fn pattern_maps(p: &Pattern, uf: &Drawing) -> Vec<Vec<usize>> {
    let pn = p.drawing.n();
    if p.name != "D3" {
        return drawing_isomorphisms(&p.drawing, uf)
            .into_iter()
            .map(|m| m[..pn].to_vec())
            .collect();
    }
    let comps = uf.graph().components();
    if comps.len() != 2 || uf.crossing_count() > 0 {
        return Vec::new();
    }
    let half = |d: &Drawing, vs: &[usize]| d.remove_vertices(&(0..d.n()).filter(|v| !vs.contains(v)).collect::<Vec<_>>());
    let (pa, pa_map) = half(&p.drawing, &[0, 1, 2, 3]);
    let (pb, pb_map) = half(&p.drawing, &[4, 5, 6, 7]);
    let (ua, ua_map) = half(uf, &comps[0]);
    let (ub, ub_map) = half(uf, &comps[1]);
    let mut out = Vec::new();
    for ((ux, ux_map), (uy, uy_map)) in [((&ua, &ua_map), (&ub, &ub_map)), ((&ub, &ub_map), (&ua, &ua_map))] {
        for ma in drawing_isomorphisms(&pa, ux) {
            for mb in drawing_isomorphisms(&pb, uy) {
                let mut m = vec![0; pn];
                for (i, &v) in pa_map.iter().enumerate() {
                    m[v] = ux_map[ma[i]];
                }
                for (i, &v) in pb_map.iter().enumerate() {
                    m[v] = uy_map[mb[i]];
                }
                out.push(m);
            }
        }
    }
    out
}

/// Matches the uncrossed-face skeleton of `d` against D1..D6 with P1/P2
/// checked in `d`. Returns the first pattern and vertex map that work.
pub fn match_uf_pattern(d: &Drawing) -> Option<PatternMatch> {
    let (uf, uf_to_d) = d.uncrossed_face_skeleton()?;
    let twins = twin_triples(d);
    for name in PATTERN_NAMES {
        let p = pattern(name).expect("known pattern");
        if p.drawing.n() != uf.n() || p.drawing.graph().m() != uf.graph().m() {
            continue;
        }
        for m in pattern_maps(&p, &uf) {
            let map: Vec<usize> = m.iter().map(|&v| uf_to_d[v]).collect();
            if satisfies(&p, d, &twins, &map) {
                return Some(PatternMatch { pattern: p.name, vertex_map: map });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn patterns_are_valid_and_faces_exist() {
        for name in PATTERN_NAMES {
            let p = pattern(name).unwrap();
            p.drawing.validate().unwrap();
            let fs = p.drawing.faces();
            for f in p.faces {
                assert!(
                    fs.faces.iter().any(|g| g.len() == 3 && g.vertex_set(p.drawing.n()) == sorted(f)),
                    "{name}: {f:?} is not a face"
                );
            }
        }
    }

    #[test]
    fn patterns_pairwise_distinct() {
        let mut shapes: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for name in PATTERN_NAMES {
            let d = pattern(name).unwrap().drawing;
            let mut degs = d.graph().degree_sequence();
            degs.sort_unstable();
            shapes.push((d.n(), d.graph().m(), degs));
        }
        // D1 and D2 share the graph shape; the rest differ already by degrees
        for i in 0..6 {
            for j in i + 1..6 {
                if (i, j) != (0, 1) {
                    assert_ne!(shapes[i], shapes[j], "{} vs {}", PATTERN_NAMES[i], PATTERN_NAMES[j]);
                }
            }
        }
        let c1 = super::super::drawing_code(&pattern("D1").unwrap().drawing);
        let c2 = super::super::drawing_code(&pattern("D2").unwrap().drawing);
        assert_ne!(c1, c2);
    }
}
