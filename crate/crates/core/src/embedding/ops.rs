use thiserror::Error;

use super::{Drawing, DrawingBuilder, FaceSet, NodeKey};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum JoinError {
    #[error("face {0} is not an uncrossed triangle")]
    NotUncrossedTriangle(usize),
    #[error("faces {0} and {1} do not share exactly one edge")]
    NoSharedEdge(usize, usize),
    #[error("vertices of faces {0} and {1} do not form a 4-clique")]
    NotClique(usize, usize),
}

/// The 4-join `D ⊕ (f1, f2)`: a new vertex `x` inside `f1 = [a b v1]`,
/// joined to `a`, `b`, `v1` inside `f1` and to `v2` through a crossing with
/// `ab`. Returns the new drawing; `x` is vertex `n`.
///
/// With `s -> t` the dart of `ab` on `f1` (so `v1` follows `s` at `t`), the
/// rotations change as follows, `c` being the new crossing:
///
/// ```text
/// t : s -> c, then x after c        s : t -> c, then x before c
/// v1: x between t and s             v2: c between s and t
/// x : (s, v1, t, c)                 c : (s, x, t, v2)
/// ```
pub fn four_join(d: &Drawing, fs: &FaceSet, f1: usize, f2: usize) -> Result<Drawing, JoinError> {
    let n = d.n();
    for f in [f1, f2] {
        if !fs.faces[f].is_uncrossed_triangle() {
            return Err(JoinError::NotUncrossedTriangle(f));
        }
    }
    let (s, t) = fs.faces[f1]
        .darts()
        .find(|&(s, t)| fs.face_of_dart(t, s) == Some(f2))
        .ok_or(JoinError::NoSharedEdge(f1, f2))?;
    let v1 = d.succ(t, s);
    let v2 = d.succ(s, t);
    if v1 == v2 || !d.graph().is_clique(&[s, t, v1, v2]) {
        return Err(JoinError::NotClique(f1, f2));
    }
    debug_assert!(v1 < n && v2 < n);

    let mut b = DrawingBuilder::from_drawing(d);
    let x = b.add_vertex();
    for y in [s, t, v1, v2] {
        b.add_edge(x, y);
    }
    let (vs, vt, vx, vv1, vv2) = (NodeKey::V(s), NodeKey::V(t), NodeKey::V(x), NodeKey::V(v1), NodeKey::V(v2));
    let c = NodeKey::crossing((s, t), (x, v2));
    b.replace(vt, vs, c);
    b.insert_after(vt, c, vx);
    b.replace(vs, vt, c);
    b.insert_after(vs, vv1, vx);
    b.insert_after(vv1, vt, vx);
    b.insert_after(vv2, vs, c);
    b.set_rotation(vx, vec![vs, vv1, vt, c]);
    b.set_rotation(c, vec![vs, vx, vt, vv2]);
    Ok(b.finish())
}
