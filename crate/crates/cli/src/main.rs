//! Command-line front end. Every command prints one JSON object
//! `{"status": .., "payload": ..}` on stdout; logs go to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use chordal1p::chordal::{is_chordal, is_k_tree, simplicial_vertices, Chordality};
use chordal1p::connectivity::{toughness, vertex_connectivity, Toughness, TOUGHNESS_LIMIT};
use chordal1p::embedding::patterns::match_uf_pattern;
use chordal1p::embedding::{drawing_code, drawing_from_json, drawing_to_json, four_join, Drawing, JsonError};
use chordal1p::families::{g0, glue_chain, qualifying_faces, random_k_tree, two_simplicial_k_tree};
use chordal1p::hamiltonian::{
    ktree_ham_path, oracle_ham_connected, oracle_ham_path, theorem_ham_path, HamError, HamPath, NotApplicable,
};
use chordal1p::io::{parse_edge_list, write_edge_list};
use chordal1p::oneplanar::{enumerate_drawings, is_one_planar, OnePlanarity, DEFAULT_BUDGET};
use chordal1p::phi::{generate_phi, DEFAULT_MAX_ORDER};
use chordal1p::verify::verify_theorem;
use chordal1p::{Graph, ScaleExceeded};

/// Caps the rayon worker count.
const WORKERS_VAR: &str = "CHORDAL1P_WORKERS";

#[derive(Parser)]
#[command(name = "chordal1p", version, about = "Chordal 1-planar graphs and Hamiltonian paths")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Chordality, simplicial vertices, k-tree verdicts, connectivity, toughness.
    Recognize { file: PathBuf },
    /// Hamiltonian path between two vertices.
    Hampath {
        file: PathBuf,
        x: usize,
        y: usize,
        #[arg(long, value_enum, default_value_t = Mode::Theorem)]
        mode: Mode,
        /// k for `--mode ktree`.
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Whether every vertex pair is joined by a Hamiltonian path.
    Hamconn { file: PathBuf },
    /// Decide 1-planarity, or enumerate all drawings.
    Oneplanar {
        file: PathBuf,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Operations on a `.drawing.json` file.
    Drawing {
        #[command(subcommand)]
        verb: DrawingVerb,
    },
    /// Generate a family member or corpus.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// End-to-end verification report.
    Verify {
        #[command(subcommand)]
        what: VerifyWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Theorem,
    Ktree,
    Oracle,
}

#[derive(Subcommand)]
enum DrawingVerb {
    Validate { file: PathBuf },
    Faces { file: PathBuf },
    Twins { file: PathBuf },
    /// 4-join into twin faces `f1`, `f2` (indices from `faces`).
    Fourjoin { file: PathBuf, f1: usize, f2: usize },
    Code { file: PathBuf },
    /// Uncrossed-face skeleton and its pattern.
    Uf { file: PathBuf },
}

#[derive(Subcommand)]
enum Family {
    Phi {
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        order: usize,
        /// Also list the underlying graphs up to isomorphism.
        #[arg(long)]
        graphs: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    G0 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Glued {
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Ktree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Twosimp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyWhat {
    Theorem {
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        /// Comma-separated check ids; all by default.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
enum Status {
    Ok,
    NotApplicable,
    Violation,
    ScaleExceeded,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NotApplicable => 2,
            Status::Violation => 3,
            Status::ScaleExceeded => 4,
        }
    }
}

#[derive(Serialize)]
struct CommandResult {
    status: Status,
    payload: Value,
}

fn ok(payload: Value) -> CommandResult {
    CommandResult { status: Status::Ok, payload }
}

fn with(status: Status, payload: Value) -> CommandResult {
    CommandResult { status, payload }
}

fn scale(e: ScaleExceeded) -> CommandResult {
    with(Status::ScaleExceeded, json!({ "what": e.what, "n": e.n, "limit": e.limit, "message": e.to_string() }))
}

/// A usage error: bad arguments, unreadable or malformed input.
struct Usage(String);

type Run = Result<CommandResult, Usage>;

enum Input {
    Graph(Graph),
    Drawing(Drawing),
}

fn read(path: &Path) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// Loads by extension: `.edges` or `.drawing.json`. Invalid drawings
/// come back as a violation result.
fn load(path: &Path) -> Result<Result<Input, CommandResult>, Usage> {
    let name = path.to_string_lossy();
    if name.ends_with(".edges") {
        let g = parse_edge_list(&read(path)?).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
        Ok(Ok(Input::Graph(g)))
    } else if name.ends_with(".drawing.json") {
        match drawing_from_json(&read(path)?) {
            Ok(d) => Ok(Ok(Input::Drawing(d))),
            Err(JsonError::Invalid(v)) => Ok(Err(with(Status::Violation, json!(v)))),
            Err(e) => Err(Usage(format!("{}: {e}", path.display()))),
        }
    } else {
        Err(Usage(format!("{}: expected a .edges or .drawing.json file", path.display())))
    }
}

fn load_graph(path: &Path) -> Result<Result<Graph, CommandResult>, Usage> {
    Ok(load(path)?.map(|i| match i {
        Input::Graph(g) => g,
        Input::Drawing(d) => d.graph().clone(),
    }))
}

fn load_drawing(path: &Path) -> Result<Result<Drawing, CommandResult>, Usage> {
    match load(path)? {
        Ok(Input::Drawing(d)) => Ok(Ok(d)),
        Ok(Input::Graph(_)) => Err(Usage(format!("{}: drawing commands need a .drawing.json file", path.display()))),
        Err(r) => Ok(Err(r)),
    }
}

macro_rules! loaded {
    ($e:expr) => {
        match $e? {
            Ok(v) => v,
            Err(r) => return Ok(r),
        }
    };
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
}

fn recognize(g: &Graph) -> CommandResult {
    let chordal = match is_chordal(g) {
        Chordality::Chordal(peo) => json!({ "chordal": true, "elimination_order": peo.order }),
        Chordality::Hole(h) => json!({ "chordal": false, "hole": h.cycle }),
    };
    let k_trees: serde_json::Map<String, Value> =
        (2..=5).map(|k| (k.to_string(), json!(is_k_tree(g, k).is_some()))).collect();
    let (kappa, sep) = vertex_connectivity(g);
    let tough = match toughness(g, TOUGHNESS_LIMIT) {
        Ok(Toughness::Infinite) => json!("infinite"),
        Ok(Toughness::Finite(w)) => json!({
            "toughness": { "num": w.value.numer(), "den": w.value.denom() },
            "cut": w.cut_set,
            "components": w.component_count,
        }),
        Err(e) => json!({ "scale_exceeded": e.to_string() }),
    };
    ok(json!({
        "n": g.n(),
        "m": g.m(),
        "chordal": chordal["chordal"],
        "chordality": chordal,
        "simplicial": simplicial_vertices(g),
        "k_tree": k_trees,
        "kappa": kappa,
        "separator": sep.map(|s| s.separator),
        "toughness": tough,
    }))
}

/// Emits a path only after the independent check.
fn checked_path(g: &Graph, x: usize, y: usize, p: HamPath) -> CommandResult {
    match p.check(g, x, y) {
        Ok(()) => ok(json!(p)),
        Err(v) => with(Status::Violation, json!({ "path": p, "violation": format!("{v:?}") })),
    }
}

fn hampath(g: &Graph, x: usize, y: usize, mode: Mode, k: usize) -> CommandResult {
    match mode {
        Mode::Theorem => match theorem_ham_path(g, x, y) {
            Ok(p) => checked_path(g, x, y, p),
            Err(NotApplicable::Internal(e)) => with(Status::Violation, json!(e)),
            Err(e) => with(Status::NotApplicable, json!({ "reason": e, "message": e.to_string() })),
        },
        Mode::Ktree => match ktree_ham_path(g, k, x, y) {
            Ok(p) => checked_path(g, x, y, p),
            Err(e @ HamError::Internal { .. }) => with(Status::Violation, json!(e)),
            Err(e) => with(Status::NotApplicable, json!({ "reason": e, "message": e.to_string() })),
        },
        Mode::Oracle => {
            if x >= g.n() || y >= g.n() || x == y {
                return with(Status::NotApplicable, json!({ "reason": "bad_endpoints" }));
            }
            match oracle_ham_path(g, x, y) {
                Ok(Some(p)) => checked_path(g, x, y, p),
                Ok(None) => ok(Value::Null),
                Err(e) => scale(e),
            }
        }
    }
}

fn oneplanar(g: &Graph, enumerate: bool, budget: u64) -> CommandResult {
    if enumerate {
        return match enumerate_drawings(g) {
            Err(e) => scale(e),
            Ok(e) => ok(json!({
                "complete": e.is_complete(),
                "crossing_sets": e.crossing_sets,
                "incomplete": e.incomplete,
                "classes": e.classes.iter().map(|(c, d)| json!({
                    "code": c,
                    "crossings": d.crossing_count(),
                    "drawing": drawing_to_json(d),
                })).collect::<Vec<_>>(),
            })),
        };
    }
    match is_one_planar(g, budget) {
        OnePlanarity::Drawing(d) => {
            ok(json!({ "one_planar": true, "crossings": d.crossing_count(), "drawing": drawing_to_json(&d) }))
        }
        OnePlanarity::Impossible(r) => ok(json!({ "one_planar": false, "refutation": r })),
        OnePlanarity::Exhausted { nodes } => with(Status::ScaleExceeded, json!({ "budget_exhausted": nodes })),
    }
}

fn drawing_verb(verb: DrawingVerb) -> Run {
    Ok(match verb {
        DrawingVerb::Validate { file } => {
            let d = loaded!(load_drawing(&file));
            match d.validate() {
                Ok(()) => ok(json!({ "valid": true, "n": d.n(), "m": d.graph().m(), "crossings": d.crossing_count() })),
                Err(v) => with(Status::Violation, json!(v)),
            }
        }
        DrawingVerb::Faces { file } => {
            let d = loaded!(load_drawing(&file));
            ok(json!(d.faces().faces))
        }
        DrawingVerb::Twins { file } => {
            let d = loaded!(load_drawing(&file));
            ok(json!(d.twin_faces(&d.faces())))
        }
        DrawingVerb::Fourjoin { file, f1, f2 } => {
            let d = loaded!(load_drawing(&file));
            let fs = d.faces();
            if f1 >= fs.faces.len() || f2 >= fs.faces.len() {
                return Err(Usage(format!("face index out of range: {} faces", fs.faces.len())));
            }
            match four_join(&d, &fs, f1, f2) {
                Ok(j) => ok(json!(drawing_to_json(&j))),
                Err(e) => with(Status::NotApplicable, json!({ "message": e.to_string() })),
            }
        }
        DrawingVerb::Code { file } => {
            let d = loaded!(load_drawing(&file));
            match drawing_code(&d) {
                Some(c) => ok(json!(c)),
                None => with(Status::NotApplicable, json!({ "message": "disconnected drawing" })),
            }
        }
        DrawingVerb::Uf { file } => {
            let d = loaded!(load_drawing(&file));
            match d.uncrossed_face_skeleton() {
                None => ok(json!({ "skeleton": null, "pattern": null })),
                Some((uf, map)) => ok(json!({
                    "skeleton": drawing_to_json(&uf),
                    "vertex_map": map,
                    "pattern": match_uf_pattern(&d),
                })),
            }
        }
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Usage> {
    if let Some(dir) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Usage(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// Writes `name.edges` (and `name.drawing.json`) under `out`, or inlines
/// them in the payload.
fn emit(name: &str, g: &Graph, d: Option<&Drawing>, out: Option<&Path>, extra: Value) -> Run {
    let mut payload = json!({ "n": g.n(), "m": g.m(), "extra": extra });
    match out {
        Some(dir) => {
            let e = dir.join(format!("{name}.edges"));
            write_file(&e, &write_edge_list(g))?;
            payload["files"] = json!([e]);
            if let Some(d) = d {
                let p = dir.join(format!("{name}.drawing.json"));
                write_file(&p, &d.to_json_string())?;
                payload["files"].as_array_mut().unwrap().push(json!(p));
            }
        }
        None => {
            payload["edges"] = edges_json(g);
            if let Some(d) = d {
                payload["drawing"] = json!(drawing_to_json(d));
            }
        }
    }
    Ok(ok(payload))
}

fn generate(family: Family) -> Run {
    match family {
        Family::Phi { order, graphs, out } => {
            let atlas = generate_phi(order);
            let mut index = Vec::new();
            let mut last = (0, 0);
            for (n, code, m) in atlas.members() {
                last = if last.0 == n { (n, last.1 + 1) } else { (n, 0) };
                let mut entry = json!({
                    "order": n,
                    "code": code,
                    "seed": m.seed,
                    "parent": m.parent,
                    "crossings": m.drawing.crossing_count(),
                });
                match &out {
                    Some(dir) => {
                        let p = dir.join(format!("phi_{n}_{:03}.drawing.json", last.1));
                        write_file(&p, &m.drawing.to_json_string())?;
                        entry["file"] = json!(p);
                    }
                    None => entry["drawing"] = json!(drawing_to_json(&m.drawing)),
                }
                index.push(entry);
            }
            let mut payload = json!({ "counts": atlas.by_order.iter().map(|(n, l)| (n.to_string(), json!(l.len()))).collect::<serde_json::Map<_, _>>(), "members": index });
            if graphs {
                let classes: Vec<Value> = atlas
                    .graph_classes()
                    .into_iter()
                    .flat_map(|(n, cs)| cs.into_iter().map(move |c| (n, c.to_graph())))
                    .map(|(n, g)| json!({ "order": n, "edges": edges_json(&g) }))
                    .collect();
                payload["graphs"] = json!(classes);
            }
            if let Some(dir) = &out {
                write_file(&dir.join("index.json"), &serde_json::to_string_pretty(&payload).expect("json"))?;
            }
            Ok(ok(payload))
        }
        Family::G0 { out } => {
            let (g, d) = g0();
            let faces = qualifying_faces(&d);
            emit("g0", &g, Some(&d), out.as_deref(), json!({ "qualifying_faces": faces }))
        }
        Family::Glued { depth, out } => match glue_chain(depth) {
            Ok(gl) => emit(
                &format!("glued_{depth}"),
                &gl.graph,
                Some(&gl.drawing),
                out.as_deref(),
                json!({ "cut_set": gl.cut_set }),
            ),
            Err(e) => Ok(with(Status::Violation, json!({ "message": e.to_string() }))),
        },
        Family::Ktree { n, k, seed, out } => {
            if k == 0 || n <= k {
                return Err(Usage("ktree needs k >= 1 and n >= k + 1".into()));
            }
            let g = random_k_tree(n, k, seed);
            emit(&format!("ktree_{n}_{k}_{seed}"), &g, None, out.as_deref(), json!({ "seed": seed }))
        }
        Family::Twosimp { n, k, seed, out } => match two_simplicial_k_tree(n, k, seed) {
            Ok(g) => emit(&format!("twosimp_{n}_{k}_{seed}"), &g, None, out.as_deref(), json!({ "seed": seed })),
            Err(e) => Ok(with(Status::NotApplicable, json!({ "reason": e, "message": e.to_string() }))),
        },
    }
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::Recognize { file } => Ok(recognize(&loaded!(load_graph(&file)))),
        Cmd::Hampath { file, x, y, mode, k } => Ok(hampath(&loaded!(load_graph(&file)), x, y, mode, k)),
        Cmd::Hamconn { file } => {
            let g = loaded!(load_graph(&file));
            Ok(match oracle_ham_connected(&g) {
                Ok(h) => ok(json!(h)),
                Err(e) => scale(e),
            })
        }
        Cmd::Oneplanar { file, enumerate, budget } => Ok(oneplanar(&loaded!(load_graph(&file)), enumerate, budget)),
        Cmd::Drawing { verb } => drawing_verb(verb),
        Cmd::Generate { family } => generate(family),
        Cmd::Verify { what: VerifyWhat::Theorem { max_order, checks } } => {
            if let Some(bad) = checks.iter().flatten().find(|&&c| c == 0 || c > 11) {
                return Err(Usage(format!("no check {bad}")));
            }
            let report = verify_theorem(max_order, checks.as_deref());
            let status = if report.all_passed { Status::Ok } else { Status::Violation };
            Ok(with(status, json!(report)))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Some(w) = std::env::var(WORKERS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            log::warn!("{WORKERS_VAR}: {e}");
        }
    }
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(r) => {
            println!("{}", serde_json::to_string(&r).expect("json"));
            ExitCode::from(r.status.exit_code())
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
