//! Drawing interchange format.
//!
//! ```text
//! {"n": .., "edges": [[u, v], ..], "crossings": [[ei, ej], ..],
//!  "rotation": {"nodes": [..], "arcs": [[x, y, edge, segment], ..],
//!               "order": [[arc, ..], ..]}}
//! ```
//!
//! Arcs are sorted by (edge, segment). An uncrossed edge `uv` (`u < v`) is
//! the single arc `[u, v, e, 0]`; a crossed one is `[u, c, e, 0]` and
//! `[c, v, e, 1]` with `c` its crossing node. `order[x]` lists the arcs at
//! node `x` in rotation order, starting from the smallest arc index.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Drawing, Violation};
use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationJson {
    pub nodes: Vec<usize>,
    pub arcs: Vec<[usize; 4]>,
    pub order: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawingJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub crossings: Vec<[usize; 2]>,
    pub rotation: RotationJson,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("rotation section: {0}")]
    Rotation(String),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Arcs of the planarization of `d` in canonical order. Requires the
/// crossing list to be well formed.
fn arcs(d: &Drawing) -> Vec<[usize; 4]> {
    let n = d.n();
    let cross = d.crossing_of_edge();
    let mut out = Vec::new();
    for (e, &(u, v)) in d.graph().edges().iter().enumerate() {
        match cross[e] {
            None => out.push([u, v, e, 0]),
            Some(c) => {
                out.push([u, n + c, e, 0]);
                out.push([n + c, v, e, 1]);
            }
        }
    }
    out
}

pub fn drawing_to_json(d: &Drawing) -> DrawingJson {
    let arcs = arcs(d);
    let arc_of = |x: usize, y: usize| {
        arcs.iter()
            .position(|a| (a[0] == x && a[1] == y) || (a[0] == y && a[1] == x))
            .expect("rotation neighbours are joined by an arc")
    };
    let order = (0..d.node_count())
        .map(|x| {
            let ids: Vec<usize> = d.rotation(x).iter().map(|&y| arc_of(x, y)).collect();
            match ids.iter().enumerate().min_by_key(|(_, &a)| a) {
                Some((start, _)) => ids[start..].iter().chain(&ids[..start]).copied().collect(),
                None => Vec::new(),
            }
        })
        .collect();
    DrawingJson {
        n: d.n(),
        edges: d.graph().edges().iter().map(|&(u, v)| [u, v]).collect(),
        crossings: d.crossings().iter().map(|&(a, b)| [a, b]).collect(),
        rotation: RotationJson { nodes: (0..d.node_count()).collect(), arcs, order },
    }
}

/// Parses and validates a drawing.
pub fn drawing_from_json(text: &str) -> Result<Drawing, JsonError> {
    let raw: DrawingJson = serde_json::from_str(text)?;
    let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
    let graph = Graph::from_edge_list(raw.n, &pairs)?;
    if graph.m() != raw.edges.len() {
        return Err(JsonError::Rotation("duplicate edges".into()));
    }
    let crossings: Vec<(usize, usize)> = raw.crossings.iter().map(|&[a, b]| (a.min(b), a.max(b))).collect();
    let skeleton = Drawing::from_parts(graph.clone(), crossings.clone(), Vec::new());
    // crossing-list problems surface before the rotation is inspected
    if let Err(v) = skeleton.validate() {
        if !matches!(v, Violation::RotationNodeCount { .. }) {
            return Err(v.into());
        }
    }
    let expected = arcs(&skeleton);
    if raw.rotation.arcs != expected {
        return Err(JsonError::Rotation("arcs do not match edges and crossings".into()));
    }
    let nodes = skeleton.node_count();
    if raw.rotation.nodes != (0..nodes).collect::<Vec<_>>() || raw.rotation.order.len() != nodes {
        return Err(JsonError::Rotation(format!("expected nodes 0..{nodes}")));
    }
    let mut rot = Vec::with_capacity(nodes);
    for (x, ids) in raw.rotation.order.iter().enumerate() {
        let mut r = Vec::with_capacity(ids.len());
        for &a in ids {
            let arc = expected
                .get(a)
                .ok_or_else(|| JsonError::Rotation(format!("node {x}: unknown arc {a}")))?;
            let y = if arc[0] == x {
                arc[1]
            } else if arc[1] == x {
                arc[0]
            } else {
                return Err(JsonError::Rotation(format!("node {x}: arc {a} is not incident")));
            };
            r.push(y);
        }
        rot.push(r);
    }
    let d = Drawing::from_parts(graph, crossings, rot);
    d.validate()?;
    Ok(d)
}

impl Drawing {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&drawing_to_json(self)).expect("plain data serialises")
    }
}
