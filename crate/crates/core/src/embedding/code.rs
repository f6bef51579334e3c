//! Canonical codes for drawings up to homeomorphism of the sphere.
//!
//! A traversal starts from a dart and an orientation and labels nodes in
//! breadth-first order; each node contributes its kind, its degree and the
//! labels of its neighbours read around the rotation, starting from the
//! neighbour it was discovered from. Two connected drawings are isomorphic
//! exactly when some pair of traversals produces the same sequence, so the
//! minimum over all starts is canonical.

use std::collections::VecDeque;
use std::fmt;

use super::Drawing;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DrawingCode(Vec<u8>);

impl DrawingCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for DrawingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hex = self.to_hex();
        if hex.len() > 24 {
            write!(f, "DrawingCode({}..)", &hex[..24])
        } else {
            write!(f, "DrawingCode({hex})")
        }
    }
}

impl serde::Serialize for DrawingCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl fmt::Display for DrawingCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

const UNSEEN: u16 = u16::MAX;

/// Traversal from dart `root -> first`, reading rotations forwards when
/// `forward`, else backwards. Returns the sequence and the node order.
fn traverse(d: &Drawing, root: usize, first: usize, forward: bool) -> (Vec<u16>, Vec<usize>) {
    let nodes = d.node_count();
    let mut label = vec![UNSEEN; nodes];
    let mut from = vec![usize::MAX; nodes];
    let mut order = Vec::with_capacity(nodes);
    let mut seq = Vec::with_capacity(nodes * 6);
    label[root] = 0;
    from[root] = first;
    order.push(root);
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        let r = d.rotation(x);
        let k = r.len();
        seq.push(u16::from(d.is_crossing_node(x)));
        seq.push(k as u16);
        if k == 0 {
            continue;
        }
        let start = r.iter().position(|&y| y == from[x]).expect("parent is a neighbour");
        for step in 0..k {
            let i = if forward { (start + step) % k } else { (start + k - step) % k };
            let y = r[i];
            if label[y] == UNSEEN {
                label[y] = order.len() as u16;
                from[y] = x;
                order.push(y);
                queue.push_back(y);
            }
            seq.push(label[y]);
        }
    }
    (seq, order)
}

/// Every traversal that reaches all nodes, as (sequence, node order).
fn traversals(d: &Drawing) -> impl Iterator<Item = (Vec<u16>, Vec<usize>)> + '_ {
    (0..d.node_count()).flat_map(move |u| {
        d.rotation(u).iter().flat_map(move |&v| {
            [true, false].into_iter().map(move |fw| traverse(d, u, v, fw))
        })
    })
}

fn encode(seq: &[u16]) -> DrawingCode {
    DrawingCode(seq.iter().flat_map(|x| x.to_be_bytes()).collect())
}

fn is_connected(d: &Drawing) -> bool {
    d.planarization().is_connected()
}

/// Canonical code of a drawing with connected planarization; `None` when
/// the planarization is disconnected.
pub fn drawing_code(d: &Drawing) -> Option<DrawingCode> {
    if d.node_count() == 0 || !is_connected(d) {
        return None;
    }
    if d.node_count() == 1 {
        return Some(encode(&[0, 0]));
    }
    traversals(d).map(|(s, _)| s).min().map(|s| encode(&s))
}

/// All isomorphisms from `a` to `b` as node maps (`map[node of a] = node of
/// b`); vertices map to vertices and crossings to crossings.
pub fn drawing_isomorphisms(a: &Drawing, b: &Drawing) -> Vec<Vec<usize>> {
    if a.node_count() != b.node_count() || a.n() != b.n() || !is_connected(a) || !is_connected(b) {
        return Vec::new();
    }
    if a.node_count() == 1 {
        return vec![vec![0]];
    }
    let u = (0..a.node_count()).find(|&u| !a.rotation(u).is_empty()).expect("connected, >1 node");
    let (seq_a, order_a) = traverse(a, u, a.rotation(u)[0], true);
    let mut maps: Vec<Vec<usize>> = traversals(b)
        .filter(|(s, _)| *s == seq_a)
        .map(|(_, order_b)| {
            let mut map = vec![0; a.node_count()];
            for (x, y) in order_a.iter().zip(&order_b) {
                map[*x] = *y;
            }
            map
        })
        .collect();
    maps.sort();
    maps.dedup();
    maps
}
