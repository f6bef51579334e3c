//! Vertex connectivity by unit-capacity flows, and exact toughness.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::ScaleExceeded;
use crate::graph::Graph;

/// A vertex set whose removal leaves `sides.0` and `sides.1` in different
/// components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorWitness {
    pub separator: Vec<usize>,
    pub sides: (Vec<usize>, Vec<usize>),
}

impl SeparatorWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        let mut blocked = FixedBitSet::with_capacity(g.n());
        for &s in &self.separator {
            blocked.insert(s);
        }
        if self.sides.0.is_empty() || self.sides.1.is_empty() {
            return false;
        }
        let comps = g.components_avoiding(&blocked);
        let comp_of = |v: usize| comps.iter().position(|c| c.contains(&v));
        let a: Vec<_> = self.sides.0.iter().map(|&v| comp_of(v)).collect();
        let b: Vec<_> = self.sides.1.iter().map(|&v| comp_of(v)).collect();
        a.iter().chain(&b).all(Option::is_some) && a.iter().all(|x| !b.contains(x))
    }
}

/// Residual network of the vertex-split digraph: vertex `v` becomes
/// `2v -> 2v+1` with capacity 1 and each edge `uv` becomes `2u+1 -> 2v` and
/// `2v+1 -> 2u` with capacity `n`, so minimum cuts use vertex arcs only.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    initial: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            initial: Vec::new(),
            out: vec![Vec::new(); 2 * g.n()],
        };
        let big = g.n() as u32;
        for v in 0..g.n() {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for &(u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, big);
            net.arc(2 * v + 1, 2 * u, big);
        }
        net.cap = net.initial.clone();
        net
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.initial.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.initial.push(0);
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.initial);
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    if y == sink {
                        let mut z = sink;
                        while z != source {
                            let a = via[z];
                            self.cap[a] -= 1;
                            self.cap[a ^ 1] += 1;
                            z = self.head[a ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
            }
        }
        false
    }

    fn reachable(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// Maximum number of internally disjoint s–t paths, stopping early once
    /// `limit` is reached.
    fn local_connectivity(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.reset();
        let mut flow = 0;
        while flow < limit && self.augment(2 * s + 1, 2 * t) {
            flow += 1;
        }
        flow
    }
}

/// Vertex connectivity with a minimum separator. Complete graphs have
/// connectivity `n - 1` and no witness; disconnected graphs have
/// connectivity 0 with an empty separator.
pub fn vertex_connectivity(g: &Graph) -> (usize, Option<SeparatorWitness>) {
    let n = g.n();
    if g.is_complete() {
        return (n.saturating_sub(1), None);
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut rest: Vec<usize> = comps[1..].iter().flatten().copied().collect();
        rest.sort_unstable();
        let witness = SeparatorWitness {
            separator: Vec::new(),
            sides: (comps[0].clone(), rest),
        };
        return (0, Some(witness));
    }
    let mut net = SplitNetwork::new(g);
    let mut best: Option<(usize, usize, usize)> = None;
    for s in 0..n {
        for t in s + 1..n {
            if g.has_edge(s, t) {
                continue;
            }
            let limit = best.map_or(n, |b| b.0);
            let k = net.local_connectivity(s, t, limit);
            if best.is_none_or(|b| k < b.0) {
                best = Some((k, s, t));
            }
        }
    }
    let (k, s, t) = best.expect("a non-complete graph has a non-adjacent pair");
    net.local_connectivity(s, t, n);
    let seen = net.reachable(2 * s + 1);
    let separator: Vec<usize> = (0..n).filter(|&v| seen[2 * v] && !seen[2 * v + 1]).collect();
    debug_assert_eq!(separator.len(), k);
    let mut blocked = FixedBitSet::with_capacity(n);
    for &v in &separator {
        blocked.insert(v);
    }
    let comps = g.components_avoiding(&blocked);
    let side_s = comps.iter().find(|c| c.contains(&s)).expect("s survives").clone();
    let mut other: Vec<usize> = comps
        .into_iter()
        .filter(|c| !c.contains(&s))
        .flatten()
        .collect();
    other.sort_unstable();
    (k, Some(SeparatorWitness { separator, sides: (side_s, other) }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToughnessWitness {
    #[serde(serialize_with = "ser_ratio")]
    pub value: Ratio<u64>,
    pub cut_set: Vec<usize>,
    pub component_count: usize,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Ratio", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Toughness {
    Finite(ToughnessWitness),
    /// Complete graphs have no disconnecting set.
    Infinite,
}

pub const TOUGHNESS_LIMIT: usize = 18;

fn components_of_mask(masks: &[u64], alive: u64) -> usize {
    let mut left = alive;
    let mut count = 0;
    while left != 0 {
        let mut frontier = left & left.wrapping_neg();
        let mut comp = frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = masks[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        left &= !comp;
        count += 1;
    }
    count
}

/// `|X| / c(G - X)` for `X`, or `None` when `G - X` is connected or empty.
pub fn cut_ratio(g: &Graph, x: &[usize]) -> Option<Ratio<u64>> {
    let mut blocked = FixedBitSet::with_capacity(g.n());
    for &v in x {
        blocked.insert(v);
    }
    let c = g.components_avoiding(&blocked).len();
    (c > 1).then(|| Ratio::new(x.len() as u64, c as u64))
}

/// Exact toughness by exhaustive search over vertex subsets, up to
/// `max_n` vertices. Ties prefer smaller cut sets, then the
/// lexicographically first one.
pub fn toughness(g: &Graph, max_n: usize) -> Result<Toughness, ScaleExceeded> {
    ScaleExceeded::check("toughness", g.n(), max_n.min(TOUGHNESS_LIMIT))?;
    if g.is_complete() {
        return Ok(Toughness::Infinite);
    }
    let n = g.n();
    let masks = g.adjacency_masks().expect("guard keeps n small");
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<(Ratio<u64>, Vec<usize>, usize)> = None;
    for x in 0u64..=full {
        let size = x.count_ones() as usize;
        if size + 2 > n {
            continue;
        }
        // A cut leaves at most n - |X| components, so |X| / (n - |X|) is a
        // lower bound on its ratio.
        if let Some((b, _, _)) = &best {
            if Ratio::new(size as u64, (n - size) as u64) > *b {
                continue;
            }
        }
        let c = components_of_mask(&masks, full & !x);
        if c < 2 {
            continue;
        }
        let value = Ratio::new(size as u64, c as u64);
        let set: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 1).collect();
        let better = match &best {
            None => true,
            Some((b, bs, _)) => (value, set.len(), &set) < (*b, bs.len(), bs),
        };
        if better {
            best = Some((value, set, c));
        }
    }
    let (value, cut_set, component_count) = best.expect("non-complete graphs have a disconnecting set");
    Ok(Toughness::Finite(ToughnessWitness { value, cut_set, component_count }))
}

/// Checks `kappa >= ceil(2 * tau)`; complete graphs pass by convention.
pub fn check_chvatal_bound(g: &Graph) -> Result<bool, ScaleExceeded> {
    match toughness(g, TOUGHNESS_LIMIT)? {
        Toughness::Infinite => Ok(true),
        Toughness::Finite(w) => {
            let twice = w.value * 2;
            let ceil = twice.ceil().to_integer() as usize;
            Ok(vertex_connectivity(g).0 >= ceil)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_connectivity(g: &Graph) -> usize {
        let n = g.n();
        if g.is_complete() {
            return n - 1;
        }
        (0u32..1 << n)
            .filter(|&x| {
                let keep: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 0).collect();
                keep.len() >= 2 && !g.induced_subgraph(&keep).unwrap().0.is_connected()
            })
            .map(|x| x.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn brute_toughness(g: &Graph) -> Option<Ratio<u64>> {
        let n = g.n();
        (0u32..1 << n)
            .filter_map(|x| {
                let set: Vec<usize> = (0..n).filter(|&v| x >> v & 1 == 1).collect();
                cut_ratio(g, &set)
            })
            .min()
    }

    fn k6_minus_edge() -> Graph {
        let pairs: Vec<_> = Graph::complete(6)
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (2, 4))
            .collect();
        Graph::from_edge_list(6, &pairs).unwrap()
    }

    fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
        (2..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.6), n * (n - 1) / 2).prop_map(
                move |bits| {
                    let mut pairs = Vec::new();
                    let mut k = 0;
                    for u in 0..n {
                        for v in u + 1..n {
                            if bits[k] {
                                pairs.push((u, v));
                            }
                            k += 1;
                        }
                    }
                    Graph::from_edge_list(n, &pairs).unwrap()
                },
            )
        })
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(vertex_connectivity(&Graph::complete(5)), (4, None));
        assert_eq!(toughness(&Graph::complete(7), 18).unwrap(), Toughness::Infinite);
        assert!(check_chvatal_bound(&Graph::complete(5)).unwrap());
    }

    #[test]
    fn k6_minus_e_is_4_connected() {
        let g = k6_minus_edge();
        let (k, w) = vertex_connectivity(&g);
        assert_eq!(k, brute_connectivity(&g));
        assert_eq!(k, 4);
        assert!(w.unwrap().verify(&g));
    }

    #[test]
    fn join_toughness() {
        let g = Graph::join_complete_empty(4, 5);
        let Toughness::Finite(w) = toughness(&g, 18).unwrap() else { panic!() };
        assert_eq!(Some(w.value), brute_toughness(&g));
        assert_eq!(w.value, Ratio::new(4, 5));
        assert_eq!(w.cut_set, vec![0, 1, 2, 3]);
    }

    #[test]
    fn disconnected_graph() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        let (k, w) = vertex_connectivity(&g);
        assert_eq!(k, 0);
        assert!(w.unwrap().verify(&g));
    }

    #[test]
    fn guard() {
        assert!(toughness(&Graph::cycle(19), 18).is_err());
        assert!(toughness(&Graph::cycle(10), 8).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn flow_matches_subset_search(g in graph_strategy(9)) {
            let (k, w) = vertex_connectivity(&g);
            prop_assert_eq!(k, brute_connectivity(&g));
            if let Some(w) = w {
                prop_assert_eq!(w.separator.len(), k);
                prop_assert!(w.verify(&g));
            }
        }

        #[test]
        fn toughness_matches_brute_force(g in graph_strategy(9)) {
            let t = toughness(&g, 18).unwrap();
            match (t, brute_toughness(&g)) {
                (Toughness::Infinite, None) => {}
                (Toughness::Finite(w), Some(b)) => {
                    prop_assert_eq!(w.value, b);
                    prop_assert_eq!(cut_ratio(&g, &w.cut_set), Some(w.value));
                }
                (t, b) => prop_assert!(false, "{:?} vs {:?}", t, b),
            }
            prop_assert!(check_chvatal_bound(&g).unwrap());
        }
    }
}
