//! Drawings given by coordinates, as in a figure: straight edges or cubic
//! curves specified by leaving and entering angles. Crossings and rotations
//! are read off the geometry.

use std::f64::consts::PI;

use thiserror::Error;

use super::{Drawing, DrawingBuilder, NodeKey};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Shape {
    Straight,
    /// Cubic curve leaving the first endpoint at angle `out` and entering
    /// the second from angle `into` (degrees), with control points at
    /// 0.3915 times the chord length.
    Curve { out: f64, into: f64 },
    /// A curve bent to the left by `angle` degrees.
    BendLeft(f64),
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum GeoError {
    #[error("edge ({0}, {1}) passes through vertex {2}")]
    ThroughVertex(usize, usize, usize),
    #[error("adjacent edges ({0}, {1}) and ({2}, {3}) meet away from their common vertex")]
    AdjacentMeet(usize, usize, usize, usize),
    #[error("edge ({0}, {1}) is crossed more than once")]
    CrossedTwice(usize, usize),
    #[error("edges ({0}, {1}) and ({2}, {3}) cross more than once")]
    DoubleCrossing(usize, usize, usize, usize),
}

#[derive(Clone, Debug)]
pub struct GeoDrawing {
    pub pos: Vec<(f64, f64)>,
    pub edges: Vec<(usize, usize, Shape)>,
}

type Pt = (f64, f64);

const SAMPLES: usize = 48;
const EPS: f64 = 1e-9;

fn sub(a: Pt, b: Pt) -> Pt {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Pt, b: Pt) -> f64 {
    a.0 * b.1 - a.1 * b.0
}

fn polyline(p: Pt, q: Pt, shape: Shape) -> Vec<Pt> {
    let (out, into) = match shape {
        Shape::Straight => return vec![p, q],
        Shape::Curve { out, into } => (out, into),
        Shape::BendLeft(a) => {
            let fwd = (q.1 - p.1).atan2(q.0 - p.0).to_degrees();
            (fwd + a, fwd + 180.0 - a)
        }
    };
    let len = ((q.0 - p.0).powi(2) + (q.1 - p.1).powi(2)).sqrt() * 0.3915;
    let dir = |deg: f64| ((deg * PI / 180.0).cos() * len, (deg * PI / 180.0).sin() * len);
    let c1 = (p.0 + dir(out).0, p.1 + dir(out).1);
    let c2 = (q.0 + dir(into).0, q.1 + dir(into).1);
    (0..=SAMPLES)
        .map(|i| {
            let t = i as f64 / SAMPLES as f64;
            let s = 1.0 - t;
            let w = [s * s * s, 3.0 * s * s * t, 3.0 * s * t * t, t * t * t];
            (
                w[0] * p.0 + w[1] * c1.0 + w[2] * c2.0 + w[3] * q.0,
                w[0] * p.1 + w[1] * c1.1 + w[2] * c2.1 + w[3] * q.1,
            )
        })
        .collect()
}

/// Proper intersection of segments `ab` and `cd` as parameters along each.
fn seg_intersection(a: Pt, b: Pt, c: Pt, d: Pt) -> Option<(f64, f64)> {
    let r = sub(b, a);
    let s = sub(d, c);
    let den = cross(r, s);
    if den.abs() < EPS {
        return None;
    }
    let t = cross(sub(c, a), s) / den;
    let u = cross(sub(c, a), r) / den;
    (t > EPS && t < 1.0 - EPS && u > EPS && u < 1.0 - EPS)
        .then_some((t, u))
        .or_else(|| {
            // touching at an interior sample point still counts once
            ((-EPS..=1.0 + EPS).contains(&t) && (-EPS..=1.0 + EPS).contains(&u)).then_some((t, u))
        })
}

fn dist_to_segment(p: Pt, a: Pt, b: Pt) -> f64 {
    let ab = sub(b, a);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    let t = (((p.0 - a.0) * ab.0 + (p.1 - a.1) * ab.1) / len2).clamp(0.0, 1.0);
    let proj = (a.0 + t * ab.0, a.1 + t * ab.1);
    ((p.0 - proj.0).powi(2) + (p.1 - proj.1).powi(2)).sqrt()
}

struct Hit {
    other: usize,
    /// Position along this edge's polyline: segment index plus fraction.
    at: f64,
    point: Pt,
}

fn angle(from: Pt, to: Pt) -> f64 {
    (to.1 - from.1).atan2(to.0 - from.0)
}

impl GeoDrawing {
    pub fn build(&self) -> Result<Drawing, GeoError> {
        let n = self.pos.len();
        let lines: Vec<Vec<Pt>> = self
            .edges
            .iter()
            .map(|&(u, v, sh)| polyline(self.pos[u], self.pos[v], sh))
            .collect();
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            for w in (0..n).filter(|&w| w != u && w != v) {
                if lines[i].windows(2).any(|s| dist_to_segment(self.pos[w], s[0], s[1]) < 1e-6) {
                    return Err(GeoError::ThroughVertex(u, v, w));
                }
            }
        }
        let mut hits: Vec<Vec<Hit>> = (0..self.edges.len()).map(|_| Vec::new()).collect();
        for i in 0..self.edges.len() {
            for j in i + 1..self.edges.len() {
                let (a, b, _) = self.edges[i];
                let (c, d, _) = self.edges[j];
                let shared = [c, d].iter().any(|x| *x == a || *x == b);
                let mut found: Vec<(f64, f64, Pt)> = Vec::new();
                for (si, s) in lines[i].windows(2).enumerate() {
                    for (sj, t) in lines[j].windows(2).enumerate() {
                        if let Some((x, y)) = seg_intersection(s[0], s[1], t[0], t[1]) {
                            let at_i = si as f64 + x;
                            let at_j = sj as f64 + y;
                            let last_i = (lines[i].len() - 1) as f64;
                            let last_j = (lines[j].len() - 1) as f64;
                            let at_end = |p: f64, last: f64| p < 1e-6 || p > last - 1e-6;
                            if at_end(at_i, last_i) && at_end(at_j, last_j) {
                                continue;
                            }
                            let pt = (s[0].0 + x * (s[1].0 - s[0].0), s[0].1 + x * (s[1].1 - s[0].1));
                            if !found.iter().any(|f| (f.2 .0 - pt.0).abs() + (f.2 .1 - pt.1).abs() < 1e-6) {
                                found.push((at_i, at_j, pt));
                            }
                        }
                    }
                }
                if found.is_empty() {
                    continue;
                }
                if shared {
                    return Err(GeoError::AdjacentMeet(a, b, c, d));
                }
                if found.len() > 1 {
                    return Err(GeoError::DoubleCrossing(a, b, c, d));
                }
                let (at_i, at_j, point) = found[0];
                hits[i].push(Hit { other: j, at: at_i, point });
                hits[j].push(Hit { other: i, at: at_j, point });
            }
        }
        for (i, h) in hits.iter().enumerate() {
            if h.len() > 1 {
                let (u, v, _) = self.edges[i];
                return Err(GeoError::CrossedTwice(u, v));
            }
        }

        let mut b = DrawingBuilder::new(n);
        let key = |i: usize| (self.edges[i].0, self.edges[i].1);
        // (node, direction angle, neighbour) for every arc end
        let mut ends: Vec<(NodeKey, f64, NodeKey)> = Vec::new();
        for (i, &(u, v, _)) in self.edges.iter().enumerate() {
            b.add_edge(u, v);
            let line = &lines[i];
            let k = line.len();
            let first = angle(line[0], line[1]);
            let last = angle(line[k - 1], line[k - 2]);
            match hits[i].first() {
                None => {
                    ends.push((NodeKey::V(u), first, NodeKey::V(v)));
                    ends.push((NodeKey::V(v), last, NodeKey::V(u)));
                }
                Some(h) => {
                    let c = NodeKey::crossing(key(i), key(h.other));
                    ends.push((NodeKey::V(u), first, c));
                    ends.push((NodeKey::V(v), last, c));
                    let seg = (h.at.floor() as usize).min(k - 2);
                    let back = if (h.at - seg as f64) > 1e-6 { line[seg] } else { line[seg.saturating_sub(1)] };
                    let fwd = line[(seg + 1).min(k - 1)];
                    ends.push((c, angle(h.point, back), NodeKey::V(u)));
                    ends.push((c, angle(h.point, fwd), NodeKey::V(v)));
                }
            }
        }
        ends.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.total_cmp(&y.1)));
        let mut i = 0;
        while i < ends.len() {
            let node = ends[i].0;
            let mut order = Vec::new();
            while i < ends.len() && ends[i].0 == node {
                order.push(ends[i].2);
                i += 1;
            }
            b.set_rotation(node, order);
        }
        Ok(b.finish())
    }
}
