//! Named drawings transcribed from figure coordinates.
//!
//! Vertex numbering: `K5` uses v0 v1 w0 w1 w2; `K6` uses v0 v1 v2 w0 w1 w2;
//! `A1`..`A3` number the six vertices in source order; `B1`..`B3` use
//! u1..u7 as 0..6; `G0` uses the printed labels.

use super::geometric::{GeoDrawing, Shape};
use super::Drawing;
use crate::graph::Graph;

pub const NAMES: [&str; 9] = ["K5", "K6", "A1", "A2", "A3", "B1", "B2", "B3", "G0"];

pub const G0_EDGES: &str = include_str!("../../fixtures/g0.edges");

fn polar(deg: f64, r: f64) -> (f64, f64) {
    let t = deg.to_radians();
    (r * t.cos(), r * t.sin())
}

fn straight(pairs: &[(usize, usize)]) -> Vec<(usize, usize, Shape)> {
    pairs.iter().map(|&(u, v)| (u, v, Shape::Straight)).collect()
}

fn k5() -> GeoDrawing {
    GeoDrawing {
        pos: vec![polar(210.0, 3.0), polar(330.0, 3.0), polar(200.0, 1.3), polar(340.0, 1.3), polar(90.0, 3.0)],
        edges: straight(&[(1, 2), (1, 3), (1, 4), (0, 3), (0, 1), (0, 4), (2, 3), (3, 4), (4, 2), (0, 2)]),
    }
}

fn k6() -> GeoDrawing {
    let mut pos: Vec<_> = [210.0, 330.0, 90.0].iter().map(|&a| polar(a, 3.0)).collect();
    pos.extend([210.0, 330.0, 90.0].iter().map(|&a| polar(a, 1.5)));
    let mut pairs = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        pairs.extend([(i, j), (3 + i, 3 + j), (i, 3 + i), (i, 3 + j), (j, 3 + i)]);
    }
    GeoDrawing { pos, edges: straight(&pairs) }
}

fn a(which: usize) -> GeoDrawing {
    let dx = 7.0 * which as f64;
    let pos = [(-5.0, 6.0), (-8.0, 1.0), (-2.0, 1.0), (-4.0, 2.5), (-6.0, 2.5), (-5.0, 4.0)]
        .iter()
        .map(|&(x, y)| (x + dx, y))
        .collect();
    let pairs: &[(usize, usize)] = match which {
        0 => &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 2), (4, 1), (4, 3), (5, 4), (5, 3), (0, 5), (0, 4), (5, 1), (1, 3), (4, 2)],
        1 => &[(0, 1), (1, 2), (2, 0), (3, 2), (4, 1), (4, 3), (5, 3), (5, 4), (1, 5), (0, 4), (0, 3), (5, 2), (1, 3), (4, 2)],
        _ => &[(0, 1), (1, 2), (2, 0), (3, 2), (4, 1), (4, 3), (5, 4), (5, 0), (0, 4), (1, 5), (0, 3), (5, 2), (1, 3), (4, 2)],
    };
    GeoDrawing { pos, edges: straight(pairs) }
}

/// The fourteen edges shared by B1, B2 and B3 (a drawing of K6 - e on
/// u1..u6).
const B_COMMON: [(usize, usize); 14] = [
    (0, 1), (1, 2), (2, 0), (0, 4), (4, 2), (3, 1), (3, 4),
    (5, 3), (5, 4), (0, 5), (0, 3), (5, 1), (1, 4), (3, 2),
];

type Layout = (Vec<(f64, f64)>, Vec<(usize, usize, Shape)>);

fn b(which: usize) -> GeoDrawing {
    let (pos, extra): Layout = match which {
        0 => (
            vec![(-12.0, 11.0), (-18.0, 1.0), (-6.0, 1.0), (-15.0, 2.5), (-9.0, 2.5), (-12.0, 6.0), (-12.0, 3.5)],
            vec![
                (5, 6, Shape::Straight),
                (6, 3, Shape::Straight),
                (6, 4, Shape::Straight),
                (0, 6, Shape::Curve { out: -90.0, into: 20.0 }),
            ],
        ),
        1 => (
            vec![(3.0, 11.0), (-3.0, 1.0), (9.0, 1.0), (0.0, 2.5), (6.0, 2.5), (2.0, 6.0), (4.0, 6.0)],
            vec![
                (0, 6, Shape::Straight),
                (6, 3, Shape::Curve { out: -105.0, into: 15.0 }),
                (6, 4, Shape::Straight),
                (5, 6, Shape::Straight),
            ],
        ),
        _ => (
            vec![(18.0, 11.0), (12.0, 1.0), (24.0, 1.0), (15.0, 2.5), (21.0, 2.5), (17.0, 6.0), (19.0, 6.0)],
            vec![
                (6, 4, Shape::Straight),
                (6, 3, Shape::BendLeft(15.0)),
                (6, 2, Shape::Curve { out: -30.0, into: 135.0 }),
                (0, 6, Shape::Straight),
            ],
        ),
    };
    let mut edges = straight(&B_COMMON);
    edges.extend(extra);
    GeoDrawing { pos, edges }
}

pub fn g0_graph() -> Graph {
    crate::io::parse_edge_list(G0_EDGES).expect("fixture parses")
}

fn g0() -> GeoDrawing {
    let pos = vec![
        (0.0, 10.0),
        (4.5, 1.0),
        (-4.5, 1.0),
        (-3.5, 2.0),
        (-1.75, 4.5),
        (-0.5, 3.75),
        (0.25, 5.75),
        (1.0, 4.5),
        (2.0, 4.75),
        (1.5, 3.5),
        (-0.75, 2.5),
        (-6.25, 0.0),
        (6.0, 0.0),
    ];
    GeoDrawing { pos, edges: straight(g0_graph().edges()) }
}

/// Geometry behind a catalog entry.
pub fn geometry(name: &str) -> Option<GeoDrawing> {
    Some(match name {
        "K5" => k5(),
        "K6" => k6(),
        "A1" => a(0),
        "A2" => a(1),
        "A3" => a(2),
        "B1" => b(0),
        "B2" => b(1),
        "B3" => b(2),
        "G0" => g0(),
        _ => return None,
    })
}

/// A named drawing; `None` for unknown names. The D_uf patterns live in
/// [`super::patterns`].
pub fn catalog(name: &str) -> Option<Drawing> {
    if let Some(p) = super::patterns::pattern(name) {
        return Some(p.drawing);
    }
    let geo = geometry(name)?;
    Some(geo.build().unwrap_or_else(|e| panic!("catalog drawing {name} is malformed: {e}")))
}
