//! Command-line front end: routing, exact obstacle paths, discretization,
//! spanners, verification, rendering and benchmarking.
//!
//! Exit codes: 0 on success, 1 on validation errors, 2 on parse errors, 3 when
//! verification finds a violation.

mod render;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diskpath::discretize::{build_steiner_set, predicted_counts, SteinerSet};
use diskpath::geometry::Point;
use diskpath::obstacle_exact::exact_path;
use diskpath::oracle::{verify_suite, VerifyRow};
use diskpath::path::{audit_path, WeightedPath};
use diskpath::pathgraph::{build_graph, PathGraph};
use diskpath::scene::{load_scene, Scene, SceneFile};
use diskpath::spanner::{build_yao, spanner_bound, spanning_audit};
use diskpath::Error;

use render::{render_svg, Layers, RenderOptions};

#[derive(Parser, Debug)]
#[command(name = "diskpath", version, about = "Weighted shortest paths amid weighted disks")]
struct Cli {
    /// Absolute tolerance for boundary and tangency tests (defaults to 1e-9
    /// times the scene's bounding-box diagonal).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(clap::Args, Debug)]
struct QueryArgs {
    /// Scene file (JSON).
    #[arg(long)]
    scene: PathBuf,
    /// Source point "x,y" (defaults to the scene file's query block).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    s: Option<Point>,
    /// Target point "x,y" (defaults to the scene file's query block).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    t: Option<Point>,
    /// Output file (standard output when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// (1+ε)-approximate shortest path through the Steiner graph.
    Route {
        #[command(flatten)]
        query: QueryArgs,
        /// Approximation parameter in (0, 1].
        #[arg(long)]
        epsilon: f64,
    },
    /// Exact shortest path when every weight is 0 or at least π/2.
    ExactObstacles {
        #[command(flatten)]
        query: QueryArgs,
    },
    /// Steiner nodes of a scene.
    Discretize {
        /// Scene file (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Approximation parameter in (0, 1].
        #[arg(long)]
        epsilon: f64,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Constrained Yao graph over the Steiner nodes, with its stretch.
    Spanner {
        /// Scene file (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Approximation parameter in (0, 1].
        #[arg(long)]
        epsilon: f64,
        /// Cone parameter (2k cones per node), at least 4.
        #[arg(long)]
        k: usize,
        /// Skip the all-pairs stretch audit (cubic in the node count).
        #[arg(long)]
        no_audit: bool,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compares approximate paths with brute-force references on random
    /// scenes and prints a table.
    Verify {
        /// Run the reduced matrix.
        #[arg(long)]
        quick: bool,
        /// Seed of the random scenes.
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Draws a scene, optionally with Steiner nodes and a path file.
    Render {
        /// Scene file (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Also draw the Steiner nodes for this ε.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Path JSON (as written by `route`) to highlight.
        #[arg(long)]
        path: Option<PathBuf>,
        /// Canvas width in pixels.
        #[arg(long, default_value_t = 800)]
        width: u32,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Node and edge counts against the closed-form bounds, with timings, as
    /// CSV.
    Bench {
        /// Scene file (JSON).
        #[arg(long)]
        scene: PathBuf,
        /// Comma-separated approximation parameters.
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.25")]
        epsilons: Vec<f64>,
        /// Output file (standard output when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a subcommand, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Parse(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Verify(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::Parse(m) | Failure::Verify(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Parse(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn parse_point(text: &str) -> Result<Point, String> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| format!("expected \"x,y\", got {text:?}"))?;
    let x: f64 = x.trim().parse().map_err(|e| format!("bad x coordinate {x:?}: {e}"))?;
    let y: f64 = y.trim().parse().map_err(|e| format!("bad y coordinate {y:?}: {e}"))?;
    if !(x.is_finite() && y.is_finite()) {
        return Err(format!("coordinates must be finite, got {text:?}"));
    }
    Ok(Point::new(x, y))
}

fn load(path: &Path, tolerance: Option<f64>) -> Result<SceneFile, Failure> {
    let mut file = load_scene(path)?;
    if let Some(tol) = tolerance {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Failure::Invalid(format!("tolerance must be positive, got {tol}")));
        }
        file.scene = file.scene.with_tolerance(tol);
    }
    Ok(file)
}

fn query_points(file: &SceneFile, q: &QueryArgs) -> Result<(Point, Point), Failure> {
    let s = q.s.or(file.query.map(|x| x.s));
    let t = q.t.or(file.query.map(|x| x.t));
    match (s, t) {
        (Some(s), Some(t)) => Ok((s, t)),
        _ => Err(Failure::Invalid(
            "source and target required (--s/--t or a query block in the scene file)".into(),
        )),
    }
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn steiner_points(scene: &Scene, set: &SteinerSet) -> Vec<Point> {
    set.nodes.iter().map(|n| scene.disk(n.disk).point_at(n.angle)).collect()
}

fn write_path(scene: &Scene, path: &WeightedPath, dots: Vec<Point>, ends: [Point; 2], q: &QueryArgs) -> CmdResult {
    let text = match q.format {
        Format::Json => json_text(&path.to_json(scene)),
        Format::Svg => render_svg(
            scene,
            &Layers {
                nodes: dots,
                path: Some(path),
                terminals: ends.to_vec(),
                ..Layers::default()
            },
            &RenderOptions::default(),
        ),
    };
    emit(q.out.as_deref(), &text)
}

fn route(q: &QueryArgs, epsilon: f64, tolerance: Option<f64>) -> CmdResult {
    let file = load(&q.scene, tolerance)?;
    let (s, t) = query_points(&file, q)?;
    let scene = &file.scene;
    let set = build_steiner_set(scene, epsilon)?;
    let mut graph = build_graph(scene, &set);
    let si = graph.insert_terminal(s)?;
    let ti = graph.insert_terminal(t)?;
    let path = graph.shortest_path(si, ti)?;
    write_path(scene, &path, steiner_points(scene, &set), [s, t], q)
}

fn exact(q: &QueryArgs, tolerance: Option<f64>) -> CmdResult {
    let file = load(&q.scene, tolerance)?;
    let (s, t) = query_points(&file, q)?;
    let path = exact_path(&file.scene, s, t)?;
    write_path(&file.scene, &path, Vec::new(), [s, t], q)
}

fn discretize(scene: &Path, epsilon: f64, out: Option<&Path>, format: Format, tolerance: Option<f64>) -> CmdResult {
    let file = load(scene, tolerance)?;
    let scene = &file.scene;
    let set = build_steiner_set(scene, epsilon)?;
    let text = match format {
        Format::Json => json_text(&Value::Array(
            set.nodes
                .iter()
                .map(|n| json!({"disk": scene.disk(n.disk).id, "angle": n.angle, "kind": n.kind.as_str()}))
                .collect(),
        )),
        Format::Svg => render_svg(
            scene,
            &Layers {
                nodes: steiner_points(scene, &set),
                ..Layers::default()
            },
            &RenderOptions::default(),
        ),
    };
    emit(out, &text)
}

fn spanner(
    scene: &Path,
    epsilon: f64,
    k: usize,
    audit: bool,
    out: Option<&Path>,
    format: Format,
    tolerance: Option<f64>,
) -> CmdResult {
    let file = load(scene, tolerance)?;
    let scene = &file.scene;
    let set = build_steiner_set(scene, epsilon)?;
    let graph = build_graph(scene, &set);
    let yao = build_yao(&graph, k)?;
    let text = match format {
        Format::Json => {
            let ratio = if audit {
                let report = spanning_audit(&yao, &graph)?;
                json!(report.max_ratio)
            } else {
                Value::Null
            };
            json_text(&json!({
                "k": k,
                "nodes": graph.len(),
                "bound": spanner_bound(k),
                "ratio": ratio,
                "edges": yao.edges.iter().map(|e| json!({
                    "u": e.u,
                    "v": e.v,
                    "class": e.class.as_str(),
                    "weight": e.weight,
                })).collect::<Vec<_>>(),
            }))
        }
        Format::Svg => render_svg(
            scene,
            &Layers {
                edges: yao
                    .edges
                    .iter()
                    .map(|e| {
                        let (class, _, pieces) = graph.edge_route(e.u, e.v);
                        (class, pieces)
                    })
                    .collect(),
                nodes: steiner_points(scene, &set),
                ..Layers::default()
            },
            &RenderOptions::default(),
        ),
    };
    emit(out, &text)
}

fn verify(quick: bool, seed: u64) -> CmdResult {
    let (count, epsilons): (usize, &[f64]) = if quick { (4, &[1.0]) } else { (50, &[0.5, 0.25]) };
    let mut rows: Vec<VerifyRow> = Vec::new();
    // Fixed obstacle instance with a closed-form optimum.
    let obstacle = Scene::new(vec![diskpath::geometry::Disk::new(
        0,
        Point::new(0.0, 0.0),
        1.0,
        f64::INFINITY,
    )])?;
    let path = exact_path(&obstacle, Point::new(-2.0, 0.0), Point::new(2.0, 0.0))?;
    let expected = 2.0 * 3f64.sqrt() + std::f64::consts::PI / 3.0;
    let audit_ok = audit_path(&obstacle, &path).map(|a| (a - expected).abs() <= 1e-7 * expected).unwrap_or(false);
    let ratio = path.total_weight / expected;
    rows.push(VerifyRow {
        scene: "unit-obstacle (exact)".into(),
        epsilon: 0.0,
        ratio,
        bound: 1.0 + 1e-9,
        audit_ok,
        pass: (ratio - 1.0).abs() <= 1e-9 && audit_ok,
    });
    rows.extend(verify_suite(seed, count, epsilons)?);
    let mut table = String::new();
    let _ = writeln!(table, "{:<28} {:>6} {:>12} {:>12} {:>6} {:>5}", "scene", "eps", "ratio", "bound", "audit", "pass");
    for r in &rows {
        let _ = writeln!(
            table,
            "{:<28} {:>6} {:>12.8} {:>12.8} {:>6} {:>5}",
            r.scene,
            r.epsilon,
            r.ratio,
            r.bound,
            if r.audit_ok { "ok" } else { "BAD" },
            if r.pass { "yes" } else { "NO" }
        );
    }
    print!("{table}");
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        Err(Failure::Verify(format!("{failed} of {} rows violate their bound", rows.len())))
    } else {
        println!("all {} rows within bounds", rows.len());
        Ok(())
    }
}

fn render(
    scene: &Path,
    epsilon: Option<f64>,
    path: Option<&Path>,
    width: u32,
    out: Option<&Path>,
    tolerance: Option<f64>,
) -> CmdResult {
    let file = load(scene, tolerance)?;
    let scene = &file.scene;
    let nodes = match epsilon {
        Some(eps) => steiner_points(scene, &build_steiner_set(scene, eps)?),
        None => Vec::new(),
    };
    let loaded = match path {
        Some(p) => Some(read_path_json(p)?),
        None => None,
    };
    let terminals = file.query.map(|q| vec![q.s, q.t]).unwrap_or_default();
    let options = RenderOptions {
        width,
        ..RenderOptions::default()
    };
    let svg = render_svg(
        scene,
        &Layers {
            nodes,
            path: loaded.as_ref(),
            terminals,
            ..Layers::default()
        },
        &options,
    );
    emit(out, &svg)
}

/// Reads a path JSON document written by `route` or `exact-obstacles`.
fn read_path_json(p: &Path) -> Result<WeightedPath, Failure> {
    use diskpath::geometry::{Arc, Orientation};
    use diskpath::path::Piece;
    let text = std::fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", p.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?;
    let bad = |what: &str| Failure::Parse(format!("{}: malformed path ({what})", p.display()));
    let num = |v: &Value, key: &str| v.get(key).and_then(Value::as_f64).ok_or_else(|| bad(key));
    let pair = |v: &Value, key: &str| -> Result<Point, Failure> {
        let a = v.get(key).and_then(Value::as_array).ok_or_else(|| bad(key))?;
        match (a.first().and_then(Value::as_f64), a.get(1).and_then(Value::as_f64)) {
            (Some(x), Some(y)) => Ok(Point::new(x, y)),
            _ => Err(bad(key)),
        }
    };
    let mut pieces = Vec::new();
    for piece in v.get("pieces").and_then(Value::as_array).ok_or_else(|| bad("pieces"))? {
        match piece.get("type").and_then(Value::as_str) {
            Some("seg") => pieces.push(Piece::Segment {
                from: pair(piece, "from")?,
                to: pair(piece, "to")?,
                multiplier: num(piece, "multiplier")?,
            }),
            Some("arc") => {
                let orientation = match piece.get("orientation").and_then(Value::as_str) {
                    Some("ccw") => Orientation::Ccw,
                    Some("cw") => Orientation::Cw,
                    _ => return Err(bad("orientation")),
                };
                pieces.push(Piece::Arc {
                    arc: Arc::new(0, num(piece, "start_angle")?, num(piece, "end_angle")?, orientation),
                    center: pair(piece, "center")?,
                    radius: num(piece, "radius")?,
                    multiplier: num(piece, "multiplier")?,
                });
            }
            _ => return Err(bad("type")),
        }
    }
    Ok(WeightedPath::new(pieces, num(&v, "weight")?))
}

fn bench(scene: &Path, epsilons: &[f64], out: Option<&Path>, tolerance: Option<f64>) -> CmdResult {
    let file = load(scene, tolerance)?;
    let scene = &file.scene;
    let mut csv = String::from(
        "epsilon,disk,nodes,per_disk_bound,within_disk_bound,total_nodes,total_bound,within_total_bound,edges,build_ms,route_ms\n",
    );
    for &eps in epsilons {
        let start = Instant::now();
        let set = build_steiner_set(scene, eps)?;
        let mut graph: PathGraph = build_graph(scene, &set);
        let build_ms = start.elapsed().as_secs_f64() * 1e3;
        let pred = predicted_counts(scene, eps)?;
        let route_ms = match file.query {
            Some(q) => {
                let start = Instant::now();
                let si = graph.insert_terminal(q.s)?;
                let ti = graph.insert_terminal(q.t)?;
                graph.shortest_path(si, ti)?;
                format!("{:.3}", start.elapsed().as_secs_f64() * 1e3)
            }
            None => String::new(),
        };
        let total = set.nodes.len();
        for (i, p) in pred.disks.iter().enumerate() {
            let count = set.count_on_disk(i);
            let _ = writeln!(
                csv,
                "{eps},{},{count},{:.3},{},{total},{:.3},{},{},{build_ms:.3},{route_ms}",
                scene.disk(i).id,
                p.per_disk,
                count as f64 <= p.per_disk,
                pred.total,
                total as f64 <= pred.total,
                total * total.saturating_sub(1) / 2,
            );
        }
    }
    emit(out, &csv)
}

fn run(cli: Cli) -> CmdResult {
    let tol = cli.tolerance;
    match cli.command {
        Command::Route { query, epsilon } => route(&query, epsilon, tol),
        Command::ExactObstacles { query } => exact(&query, tol),
        Command::Discretize {
            scene,
            epsilon,
            out,
            format,
        } => discretize(&scene, epsilon, out.as_deref(), format, tol),
        Command::Spanner {
            scene,
            epsilon,
            k,
            no_audit,
            out,
            format,
        } => spanner(&scene, epsilon, k, !no_audit, out.as_deref(), format, tol),
        Command::Verify { quick, seed } => verify(quick, seed),
        Command::Render {
            scene,
            epsilon,
            path,
            width,
            out,
        } => render(&scene, epsilon, path.as_deref(), width, out.as_deref(), tol),
        Command::Bench { scene, epsilons, out } => bench(&scene, &epsilons, out.as_deref(), tol),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
