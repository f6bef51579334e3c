use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value, Output) {
    let out = Command::new(env!("CARGO_BIN_EXE_chordal1p"))
        .args(args)
        .env("CHORDAL1P_WORKERS", "2")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json, out)
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn g0_files(dir: &Path) -> (String, String) {
    let (code, _, _) = run(&["generate", "g0", "--out", p(dir)]);
    assert_eq!(code, 0);
    (p(&dir.join("g0.edges")).to_owned(), p(&dir.join("g0.drawing.json")).to_owned())
}

#[test]
fn recognize_g0() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, drawing) = g0_files(dir.path());
    let (code, j, _) = run(&["recognize", &edges]);
    assert_eq!(code, 0);
    assert_eq!(j["status"], "ok");
    assert_eq!(j["payload"]["chordal"], true);
    assert_eq!(j["payload"]["kappa"], 3);
    assert_eq!(j["payload"]["toughness"]["toughness"]["num"], 5);
    assert_eq!(j["payload"]["toughness"]["toughness"]["den"], 6);
    // the drawing file carries the same graph
    let (_, k, _) = run(&["recognize", &drawing]);
    assert_eq!(k["payload"], j["payload"]);
}

#[test]
fn hampath_modes_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, _) = g0_files(dir.path());
    let (code, j, _) = run(&["hampath", &edges, "0", "3"]);
    assert_eq!(code, 2);
    assert_eq!(j["status"], "not_applicable");
    assert_eq!(j["payload"]["reason"]["kappa"], 3);

    let k5 = dir.path().join("k5.edges");
    std::fs::write(&k5, "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    for mode in ["theorem", "ktree", "oracle"] {
        let (code, j, _) = run(&["hampath", p(&k5), "0", "3", "--mode", mode]);
        assert_eq!(code, 0, "{mode}");
        let path: Vec<u64> = serde_json::from_value(j["payload"].clone()).unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!((path[0], path[4]), (0, 3));
    }
    // G0 has 13 vertices, past the all-pairs guard
    let (code, j, _) = run(&["hamconn", &edges]);
    assert_eq!(code, 4);
    assert_eq!(j["status"], "scale_exceeded");
    let (code, j, _) = run(&["hamconn", p(&k5)]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["connected"], true);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["frobnicate"]).0, 1);
    let bad = dir.path().join("bad.edges");
    std::fs::write(&bad, "3 2\n0 1\n").unwrap();
    assert_eq!(run(&["recognize", p(&bad)]).0, 1);
    let other = dir.path().join("graph.txt");
    std::fs::write(&other, "1 0\n").unwrap();
    assert_eq!(run(&["recognize", p(&other)]).0, 1);
    assert_eq!(run(&["recognize", p(&dir.path().join("missing.edges"))]).0, 1);
}

#[test]
fn drawing_verbs() {
    let dir = tempfile::tempdir().unwrap();
    let (edges, drawing) = g0_files(dir.path());
    let (code, j, _) = run(&["drawing", "validate", &drawing]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["crossings"], 1);
    let (_, twins, _) = run(&["drawing", "twins", &drawing]);
    let t = &twins["payload"][0];
    let (f1, f2) = (t["f1"].to_string(), t["f2"].to_string());
    let (code, joined, _) = run(&["drawing", "fourjoin", &drawing, &f1, &f2]);
    assert_eq!(code, 0);
    assert_eq!(joined["payload"]["n"], 14);
    assert_eq!(joined["payload"]["crossings"].as_array().unwrap().len(), 2);
    let (code, c, _) = run(&["drawing", "code", &drawing]);
    assert_eq!(code, 0);
    assert!(c["payload"].as_str().unwrap().chars().all(|ch| ch.is_ascii_hexdigit()));
    let (code, f, _) = run(&["drawing", "faces", &drawing]);
    assert_eq!(code, 0);
    assert!(!f["payload"].as_array().unwrap().is_empty());
    assert_eq!(run(&["drawing", "uf", &drawing]).0, 0);
    // drawing verbs need a drawing
    assert_eq!(run(&["drawing", "validate", &edges]).0, 1);
}

#[test]
fn broken_rotation_is_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let (_, drawing) = g0_files(dir.path());
    let mut j: Value = serde_json::from_str(&std::fs::read_to_string(&drawing).unwrap()).unwrap();
    // reversing one rotation breaks the sphere embedding
    let order = j["rotation"]["order"][0].as_array_mut().unwrap();
    order.reverse();
    let bad = dir.path().join("bad.drawing.json");
    std::fs::write(&bad, j.to_string()).unwrap();
    let (code, out, _) = run(&["drawing", "validate", p(&bad)]);
    assert_eq!(code, 3);
    assert_eq!(out["status"], "violation");
}

#[test]
fn oneplanar_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let k7 = dir.path().join("k7.edges");
    let mut text = String::from("7 21\n");
    for u in 0..7 {
        for v in u + 1..7 {
            text.push_str(&format!("{u} {v}\n"));
        }
    }
    std::fs::write(&k7, text).unwrap();
    let (code, j, _) = run(&["oneplanar", p(&k7)]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["one_planar"], false);
    assert_eq!(j["payload"]["refutation"]["rule"], "4n-9");

    let (_, g, _) = run(&["generate", "ktree", "--n", "6", "--k", "4", "--seed", "0", "--out", p(dir.path())]);
    let f = g["payload"]["files"][0].as_str().unwrap().to_owned();
    let (code, j, _) = run(&["oneplanar", &f, "--enumerate"]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["classes"].as_array().unwrap().len(), 3);
    assert_eq!(j["payload"]["complete"], true);
    // the 13-vertex G0 is past the enumeration guard
    let (edges, _) = g0_files(dir.path());
    assert_eq!(run(&["oneplanar", &edges, "--enumerate"]).0, 4);
    // and a one-node budget cannot settle it
    let (code, j, _) = run(&["oneplanar", &edges, "--budget", "1"]);
    assert_eq!(code, 4);
    assert!(j["payload"]["budget_exhausted"].is_u64());
}

#[test]
fn generators_are_seeded() {
    let a = run(&["generate", "ktree", "--n", "12", "--k", "3", "--seed", "5"]).1;
    let b = run(&["generate", "ktree", "--n", "12", "--k", "3", "--seed", "5"]).1;
    assert_eq!(a, b);
    assert_eq!(a["payload"]["m"], 3 * 12 - 6);
    let (code, t, _) = run(&["generate", "twosimp", "--n", "10", "--k", "4", "--seed", "2"]);
    assert_eq!(code, 0);
    assert_eq!(t["payload"]["m"], 4 * 10 - 10);
    assert_eq!(run(&["generate", "twosimp", "--n", "4", "--k", "3"]).0, 2);
    let (code, g, _) = run(&["generate", "glued", "--depth", "1"]);
    assert_eq!(code, 0);
    assert_eq!(g["payload"]["n"], 23);
}

#[test]
fn phi_atlas_files() {
    let dir = tempfile::tempdir().unwrap();
    let (code, j, _) = run(&["generate", "phi", "--order", "9", "--graphs", "--out", p(dir.path())]);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["counts"]["7"], 2);
    assert_eq!(j["payload"]["members"].as_array().unwrap().len(), 2 + 3 + 6);
    assert!(dir.path().join("index.json").exists());
    let first = j["payload"]["members"][5]["file"].as_str().unwrap();
    assert_eq!(run(&["drawing", "validate", first]).0, 0);
}

#[test]
fn verify_is_byte_stable() {
    let args = ["verify", "theorem", "--max-order", "9", "--checks", "1,2,3,6,7,9"];
    let (code, j, first) = run(&args);
    assert_eq!(code, 0);
    assert_eq!(j["payload"]["all_passed"], true);
    assert_eq!(j["payload"]["checks"].as_array().unwrap().len(), 6);
    let (_, _, second) = run(&args);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(run(&["verify", "theorem", "--checks", "12"]).0, 1);
}
