//! The end-to-end verification report: eleven checks over the fixtures,
//! the Φ atlas and seeded corpora. Every check is a pure function, so the
//! report is identical across runs.

use std::collections::BTreeSet;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::{canonical_form, CanonicalForm};
use crate::chordal::{is_chordal, is_k_tree, is_simplicial, k_tree_edge_count, simplicial_vertices};
use crate::connectivity::{check_chvatal_bound, cut_ratio, toughness, Toughness, TOUGHNESS_LIMIT};
use crate::embedding::catalog::{catalog, NAMES};
use crate::embedding::patterns::match_uf_pattern;
use crate::embedding::{drawing_code, Drawing, DrawingCode};
use crate::families::{all_k_trees, g0, glue_chain, random_k_tree, two_simplicial_k_tree, G0_CUT};
use crate::graph::Graph;
use crate::hamiltonian::{ktree_ham_path, oracle_ham_cycle, oracle_ham_path, theorem_ham_path};
use crate::oneplanar::{enumerate_drawings, is_one_planar, OnePlanarity, Refutation, DEFAULT_BUDGET};
use crate::phi::{generate_phi, PhiAtlas, DEFAULT_MAX_ORDER};
use crate::connectivity::vertex_connectivity;

pub const CHECK_NAMES: [&str; 11] = [
    "g0_facts",
    "drawing_uniqueness_k5_k6",
    "three_drawings_k6_minus_e",
    "order_seven_classification",
    "phi_exhaustive_order_eight",
    "phi_property_sweep",
    "theorem_paths",
    "two_simplicial_k_trees",
    "k_tree_simplicial_properties",
    "edge_bounds",
    "counterexamples",
];

pub const TWO_SIMPLICIAL_SAMPLES: usize = 200;
pub const RANDOM_K_TREE_SAMPLES: usize = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub max_order: usize,
    pub all_passed: bool,
    pub checks: Vec<Check>,
}

/// Parameters of the `i`-th sample of a corpus: k cycles through 3, 4, 5
/// and n through `k + 2..=max_n`.
pub fn sample_params(i: usize, max_n: usize) -> (usize, usize, u64) {
    let k = 3 + i % 3;
    let span = max_n - (k + 2) + 1;
    (i / 3 % span + k + 2, k, i as u64)
}

pub fn two_simplicial_corpus() -> Vec<(usize, usize, u64, Graph)> {
    (0..TWO_SIMPLICIAL_SAMPLES)
        .map(|i| {
            let (n, k, seed) = sample_params(i, 12);
            let g = two_simplicial_k_tree(n, k, seed).expect("retry budget suffices at this size");
            (n, k, seed, g)
        })
        .collect()
}

pub fn random_k_tree_corpus() -> Vec<(usize, usize, u64, Graph)> {
    (0..RANDOM_K_TREE_SAMPLES)
        .map(|i| {
            let (n, k, seed) = sample_params(i, 14);
            (n, k, seed, random_k_tree(n, k, seed))
        })
        .collect()
}

fn k6_minus_e() -> Graph {
    Graph::from_edge_list(6, &Graph::complete(6).edges()[1..]).expect("simple")
}

fn code_of(name: &str) -> DrawingCode {
    drawing_code(&catalog(name).expect("catalog name")).expect("catalog drawings are connected")
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
}

fn ratio_str(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn g0_facts() -> (bool, Value) {
    let (g, _) = g0();
    let chordal = is_chordal(&g).is_chordal();
    let (kappa, _) = vertex_connectivity(&g);
    let ham_cycle = oracle_ham_cycle(&g).expect("n = 13 is within the guard");
    let comps = g.remove_vertices(&G0_CUT).0.components().len();
    let x_ratio = cut_ratio(&g, &G0_CUT);
    let tau = match toughness(&g, TOUGHNESS_LIMIT).expect("n = 13 is within the guard") {
        Toughness::Finite(w) => Some(w),
        Toughness::Infinite => None,
    };
    let five_sixths = Ratio::new(5, 6);
    let passed = chordal
        && kappa == 3
        && ham_cycle.is_none()
        && comps == 6
        && x_ratio == Some(five_sixths)
        && tau.as_ref().is_some_and(|w| w.value <= five_sixths);
    let detail = json!({
        "chordal": chordal,
        "kappa": kappa,
        "hamiltonian_cycle": ham_cycle.is_some(),
        "components_without_cut": comps,
        "cut_ratio": x_ratio.map(ratio_str),
        "toughness": tau.as_ref().map(|w| ratio_str(w.value)),
        "toughness_cut": tau.map(|w| w.cut_set),
    });
    (passed, detail)
}

/// Enumerated codes of `g` against catalog names, with crossing counts.
fn enumeration_matches(g: &Graph, names: &[&str]) -> (bool, Value) {
    let e = enumerate_drawings(g).expect("order within the enumeration limit");
    let got: BTreeSet<DrawingCode> = e.codes().into_iter().collect();
    let want: BTreeSet<DrawingCode> = names.iter().map(|n| code_of(n)).collect();
    let crossings: Vec<usize> = e.classes.iter().map(|(_, d)| d.crossing_count()).collect();
    let passed = e.is_complete() && got == want && e.classes.len() == names.len();
    (passed, json!({ "classes": e.classes.len(), "crossings": crossings, "complete": e.is_complete() }))
}

fn drawing_uniqueness() -> (bool, Value) {
    let (p5, d5) = enumeration_matches(&Graph::complete(5), &["K5"]);
    let (p6, d6) = enumeration_matches(&Graph::complete(6), &["K6"]);
    let counts_ok = d5["crossings"] == json!([1]) && d6["crossings"] == json!([3]);
    (p5 && p6 && counts_ok, json!({ "k5": d5, "k6": d6 }))
}

fn order_seven() -> (bool, Value) {
    let trees = all_k_trees(7, 4);
    let special = canonical_form(&Graph::join_complete_empty(4, 3));
    let mut refuted = false;
    let mut other = json!(null);
    let mut other_ok = false;
    for g in &trees {
        let r = is_one_planar(g, DEFAULT_BUDGET);
        if canonical_form(g) == special {
            refuted = r.is_impossible();
        } else {
            let (ok, d) = enumeration_matches(g, &["B1", "B2", "B3"]);
            other_ok = r.drawing().is_some() && ok;
            other = d;
        }
    }
    let passed = trees.len() == 2 && refuted && other_ok;
    (passed, json!({ "classes": trees.len(), "join_refuted": refuted, "other": other }))
}

fn phi_order_eight() -> (bool, Value) {
    let atlas = generate_phi(8);
    let phi: BTreeSet<CanonicalForm> = atlas.graph_classes().remove(&8).unwrap_or_default();
    let verdicts: Vec<(CanonicalForm, OnePlanarity)> = all_k_trees(8, 4)
        .into_par_iter()
        .map(|g| (canonical_form(&g), is_one_planar(&g, DEFAULT_BUDGET)))
        .collect();
    let exhausted = verdicts.iter().filter(|(_, r)| matches!(r, OnePlanarity::Exhausted { .. })).count();
    let accepted: BTreeSet<CanonicalForm> =
        verdicts.iter().filter(|(_, r)| r.drawing().is_some()).map(|(c, _)| c.clone()).collect();
    let passed = exhausted == 0 && accepted == phi;
    let detail = json!({
        "four_trees": verdicts.len(),
        "one_planar": accepted.len(),
        "phi_graph_classes": phi.len(),
        "exhausted": exhausted,
    });
    (passed, detail)
}

fn phi_sweep(atlas: &PhiAtlas) -> (bool, Value) {
    let members: Vec<_> = atlas.members().collect();
    let failures: Vec<Value> = members
        .par_iter()
        .filter_map(|&(n, code, m)| {
            let d = &m.drawing;
            let g = d.graph();
            let parent_ok = match &m.parent {
                None => true,
                Some(l) => atlas.get(&l.parent).is_some_and(|p| p.drawing.crossing_count() + 1 == d.crossing_count()),
            };
            let checks = [
                ("valid", d.validate().is_ok()),
                ("four_tree", is_k_tree(g, 4).is_some()),
                ("two_simplicial", simplicial_vertices(g).len() == 2),
                ("kappa_four", vertex_connectivity(g).0 == 4),
                ("crossing_step", parent_ok),
                ("uf_pattern", match_uf_pattern(d).is_some()),
            ];
            let bad: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
            (!bad.is_empty()).then(|| json!({ "order": n, "code": code, "failed": bad }))
        })
        .collect();
    let per_order: Vec<usize> = atlas.by_order.values().map(|l| l.len()).collect();
    (failures.is_empty(), json!({ "members": members.len(), "per_order": per_order, "failures": failures }))
}

fn theorem_paths(atlas: &PhiAtlas) -> (bool, Value) {
    let graphs: Vec<(usize, Graph)> = atlas
        .graph_classes()
        .into_iter()
        .flat_map(|(n, cs)| cs.into_iter().map(move |c| (n, c.to_graph())))
        .collect();
    let results: Vec<(usize, usize, usize)> = graphs
        .par_iter()
        .map(|(n, g)| {
            let mut bad = 0;
            let mut oracle = 0;
            for (x, y) in pairs(*n) {
                match theorem_ham_path(g, x, y) {
                    Ok(p) if p.check(g, x, y).is_ok() => {}
                    _ => bad += 1,
                }
                if *n <= 9 {
                    match oracle_ham_path(g, x, y) {
                        Ok(Some(p)) if p.check(g, x, y).is_ok() => oracle += 1,
                        _ => bad += 1,
                    }
                }
            }
            (*n * (*n - 1), bad, oracle)
        })
        .collect();
    let paths: usize = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    let oracle: usize = results.iter().map(|r| r.2).sum();
    (bad == 0, json!({ "graphs": graphs.len(), "pairs": paths, "oracle_confirmed": oracle, "failures": bad }))
}

fn two_simplicial() -> (bool, Value) {
    let corpus = two_simplicial_corpus();
    let failures: Vec<Value> = corpus
        .par_iter()
        .filter_map(|(n, k, seed, g)| {
            let bad = pairs(*n).find(|&(x, y)| {
                let built = ktree_ham_path(g, *k, x, y).is_ok_and(|p| p.check(g, x, y).is_ok());
                let agrees = *n > 10 || oracle_ham_path(g, x, y).is_ok_and(|p| p.is_some());
                !(built && agrees)
            });
            bad.map(|(x, y)| json!({ "n": n, "k": k, "seed": seed, "pair": [x, y] }))
        })
        .collect();
    let oracle_samples = corpus.iter().filter(|s| s.0 <= 10).count();
    (failures.is_empty(), json!({ "samples": corpus.len(), "oracle_samples": oracle_samples, "failures": failures }))
}

/// For a k-tree with `n >= k + 2`: at least two simplicial vertices,
/// pairwise non-adjacent, and for `n >= k + 3` deleting one never increases
/// their number. At `n = k + 2` the deletion leaves a complete graph.
pub fn simplicial_properties_hold(g: &Graph, k: usize) -> bool {
    let s = simplicial_vertices(g);
    let independent = s.iter().all(|&a| s.iter().all(|&b| a == b || !g.has_edge(a, b)));
    let monotone = g.n() < k + 3 || s.iter().all(|&u| {
        let (h, _) = g.remove_vertices(&[u]);
        (0..h.n()).filter(|&v| is_simplicial(&h, v)).count() <= s.len()
    });
    s.len() >= 2 && independent && monotone
}

fn k_tree_properties() -> (bool, Value) {
    let corpus = random_k_tree_corpus();
    let failures: Vec<Value> = corpus
        .par_iter()
        .filter(|s| !simplicial_properties_hold(&s.3, s.1))
        .map(|(n, k, seed, _)| json!({ "n": n, "k": k, "seed": seed }))
        .collect();
    (failures.is_empty(), json!({ "samples": corpus.len(), "failures": failures }))
}

fn corpus_k_trees(atlas: &PhiAtlas) -> Vec<(usize, Graph)> {
    let mut out: Vec<(usize, Graph)> = Vec::new();
    out.extend(two_simplicial_corpus().into_iter().map(|s| (s.1, s.3)));
    out.extend(random_k_tree_corpus().into_iter().map(|s| (s.1, s.3)));
    for n in 5..=8 {
        out.extend(all_k_trees(n, 4).into_iter().map(|g| (4, g)));
    }
    out.extend(atlas.members().map(|(_, _, m)| (4, m.drawing.graph().clone())));
    out
}

fn corpus_drawings(atlas: &PhiAtlas) -> Vec<Drawing> {
    let mut out: Vec<Drawing> = NAMES.iter().map(|n| catalog(n).expect("catalog name")).collect();
    out.extend(atlas.members().map(|(_, _, m)| m.drawing.clone()));
    for depth in 1..=2 {
        out.push(glue_chain(depth).expect("G0 has qualifying faces").drawing);
    }
    out
}

fn edge_bounds(atlas: &PhiAtlas) -> (bool, Value) {
    let trees = corpus_k_trees(atlas);
    let tree_bad = trees.iter().filter(|(k, g)| g.m() != k_tree_edge_count(g.n(), *k)).count();
    let drawings = corpus_drawings(atlas);
    let drawing_bad = drawings
        .iter()
        .filter(|d| d.validate().is_err() || d.graph().m() + 8 > 4 * d.n())
        .count();
    let k7 = is_one_planar(&Graph::complete(7), DEFAULT_BUDGET);
    let k7_ok = matches!(
        k7,
        OnePlanarity::Impossible(Refutation::EdgeBound { rule, .. }) if rule == "4n-9"
    );
    let detail = json!({
        "k_trees": trees.len(),
        "k_tree_failures": tree_bad,
        "drawings": drawings.len(),
        "drawing_failures": drawing_bad,
        "k7_refuted_by_4n_minus_9": k7_ok,
    });
    (tree_bad == 0 && drawing_bad == 0 && k7_ok, detail)
}

fn counterexamples(atlas: &PhiAtlas) -> (bool, Value) {
    let join = Graph::join_complete_empty(4, 5);
    let join_ok = oracle_ham_cycle(&join).expect("n = 9").is_none();
    let mut glued = Vec::new();
    let mut glued_ok = true;
    for depth in 1..=2 {
        let gl = glue_chain(depth).expect("G0 has qualifying faces");
        let g = &gl.graph;
        let chordal = is_chordal(g).is_chordal();
        let kappa = vertex_connectivity(g).0;
        let c = g.remove_vertices(&gl.cut_set).0.components().len();
        // the cut also bounds toughness, hence the Chvátal inequality
        let chvatal = kappa >= (Ratio::new(2 * gl.cut_set.len() as u64, c as u64)).ceil().to_integer() as usize;
        glued_ok &= chordal && kappa == 3 && c > gl.cut_set.len() && chvatal;
        glued.push(json!({
            "depth": depth, "order": g.n(), "chordal": chordal, "kappa": kappa,
            "cut_size": gl.cut_set.len(), "components": c,
        }));
    }
    let mut corpus: Vec<Graph> = vec![g0().0, join.clone(), Graph::complete(5), Graph::complete(6), k6_minus_e()];
    corpus.extend(corpus_k_trees(atlas).into_iter().map(|(_, g)| g));
    let chvatal_bad = corpus
        .par_iter()
        .filter(|g| !check_chvatal_bound(g).expect("corpus stays within the toughness guard"))
        .count();
    let detail = json!({
        "join_k4_5_hamiltonian": !join_ok,
        "glued": glued,
        "chvatal_corpus": corpus.len() + 2,
        "chvatal_failures": chvatal_bad,
    });
    (join_ok && glued_ok && chvatal_bad == 0, detail)
}

/// Runs check `id` (1-based). Φ-based checks use orders up to `max_order`.
pub fn run_check(id: usize, max_order: usize) -> Check {
    let atlas = || generate_phi(max_order);
    let (passed, detail) = match id {
        1 => g0_facts(),
        2 => drawing_uniqueness(),
        3 => enumeration_matches(&k6_minus_e(), &["A1", "A2", "A3"]),
        4 => order_seven(),
        5 => phi_order_eight(),
        6 => phi_sweep(&atlas()),
        7 => theorem_paths(&atlas()),
        8 => two_simplicial(),
        9 => k_tree_properties(),
        10 => edge_bounds(&atlas()),
        11 => counterexamples(&atlas()),
        _ => panic!("no check {id}"),
    };
    Check { id, name: CHECK_NAMES[id - 1], passed, detail }
}

/// Runs the selected checks (all when `only` is `None`) in parallel.
pub fn verify_theorem(max_order: usize, only: Option<&[usize]>) -> Report {
    let ids: Vec<usize> = match only {
        Some(ids) => ids.to_vec(),
        None => (1..=CHECK_NAMES.len()).collect(),
    };
    let checks: Vec<Check> = ids.par_iter().map(|&id| run_check(id, max_order)).collect();
    Report { max_order, all_passed: checks.iter().all(|c| c.passed), checks }
}

pub fn default_report() -> Report {
    verify_theorem(DEFAULT_MAX_ORDER, None)
}
