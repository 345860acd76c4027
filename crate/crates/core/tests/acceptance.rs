//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so that the summary lines are always
//! printed; the process exits non-zero when any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use diskpath::discretize::{build_steiner_set, predicted_counts, NodeKind};
use diskpath::geometry::{arc_from_inscribed, chord_from_inscribed, Disk, Point};
use diskpath::obstacle_exact::{exact_path, single_disk_optimum};
use diskpath::oracle::{approximation_ratio, random_scene, random_terminal, reference_path, SceneParams};
use diskpath::path::{audit_path, WeightedPath};
use diskpath::pathgraph::{approximate_path, build_graph};
use diskpath::scene::Scene;
use diskpath::spanner::{build_yao, spanner_bound, spanning_audit};

/// Relative tolerance of the audit comparison.
const AUDIT_TOL: f64 = 1e-7;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

/// Paths collected from criteria 1–3 for the audit criterion.
#[derive(Default)]
struct Collected {
    paths: Vec<(String, Scene, WeightedPath)>,
}

impl Collected {
    fn push(&mut self, label: impl Into<String>, scene: &Scene, path: &WeightedPath) {
        self.paths.push((label.into(), scene.clone(), path.clone()));
    }
}

/// A criterion-3 instance kept for the clamp-invariance criterion.
struct DeskCase {
    scene: Scene,
    s: Point,
    t: Point,
    weights: Vec<(f64, f64)>,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

fn unit_obstacle() -> Scene {
    Scene::new(vec![Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY)]).unwrap()
}

fn obstacle_exactness(paths: &mut Collected) -> Outcome {
    let scene = unit_obstacle();
    let (s, t) = (Point::new(-2.0, 0.0), Point::new(2.0, 0.0));
    let expected = 2.0 * 3f64.sqrt() + PI / 3.0;
    let start = Instant::now();
    let exact = exact_path(&scene, s, t);
    let elapsed = start.elapsed();
    let exact = match exact {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, format!("exact_path failed: {e}")),
    };
    paths.push("c1 exact", &scene, &exact);
    let err = rel(exact.total_weight, expected);
    let grid = match reference_path(&scene, s, t, 1e-3) {
        Ok(p) => p,
        Err(e) => return Outcome::new(false, format!("grid oracle failed: {e}")),
    };
    paths.push("c1 grid", &scene, &grid);
    let grid_err = (grid.total_weight - expected).abs();
    let pass = err <= 1e-9 && elapsed < Duration::from_millis(100) && grid_err <= 1e-4;
    Outcome::new(
        pass,
        format!(
            "weight {:.15} vs 2√3+π/3 {:.15} (rel {err:.1e} ≤ 1e-9), {elapsed:.2?} < 100ms, grid h=1e-3 off by {grid_err:.1e} ≤ 1e-4",
            exact.total_weight, expected
        ),
    )
}

fn zero_region_closed_form(paths: &mut Collected) -> Outcome {
    let disk = Disk::new(0, Point::new(0.0, 0.0), 1.0, 0.0);
    let scene = Scene::new(vec![disk]).unwrap();
    let mut rng = StdRng::seed_from_u64(0x0c02);
    let start = Instant::now();
    let mut worst_exact: f64 = 0.0;
    let mut worst_ratio: f64 = 0.0;
    let mut violations = 0;
    for sample in 0..20 {
        let s = Point::polar(rng.gen_range(0.0..TAU));
        let t = Point::polar(rng.gen_range(0.0..TAU)) * rng.gen_range(1.2..6.0);
        let truth = t.norm() - 1.0;
        match single_disk_optimum(&disk, s, t) {
            Ok(v) => worst_exact = worst_exact.max((v - truth).abs()),
            Err(e) => return Outcome::new(false, format!("single_disk_optimum failed: {e}")),
        }
        for eps in [1.0, 0.5, 0.25] {
            let p = match approximate_path(&scene, eps, s, t) {
                Ok(p) => p,
                Err(e) => return Outcome::new(false, format!("approximate_path failed: {e}")),
            };
            let ratio = p.total_weight / truth;
            worst_ratio = worst_ratio.max(ratio - (1.0 + eps));
            if p.total_weight > (1.0 + eps) * truth {
                violations += 1;
            }
            paths.push(format!("c2 sample {sample} eps {eps}"), &scene, &p);
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_exact <= 1e-9 && violations == 0 && elapsed < Duration::from_secs(1);
    Outcome::new(
        pass,
        format!(
            "20 samples: max |opt − (|ct|−1)| = {worst_exact:.1e} ≤ 1e-9, {violations} bound violations (max ratio − (1+ε) = {worst_ratio:.3}), {elapsed:.2?} < 1s"
        ),
    )
}

fn main_theorem(paths: &mut Collected, cases: &mut Vec<DeskCase>) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0c03);
    let params = SceneParams::desk_scale();
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut worst: f64 = f64::NEG_INFINITY;
    let mut runs = 0;
    for idx in 0..50 {
        let scene = random_scene(&mut rng, &params);
        let s = random_terminal(&mut rng, &scene, -1.0, 0.05);
        let t = random_terminal(&mut rng, &scene, 1.0, 0.05);
        let mut weights = Vec::new();
        for eps in [0.5, 0.25] {
            let report = match approximation_ratio(&scene, s, t, eps, eps / 100.0) {
                Ok(r) => r,
                Err(e) => return Outcome::new(false, format!("scene {idx} ε={eps}: {e}")),
            };
            runs += 1;
            worst = worst.max(report.ratio / report.bound);
            if !report.holds() {
                failures.push(format!("scene {idx} ε={eps} ratio {:.6} bound {:.6}", report.ratio, report.bound));
            }
            paths.push(format!("c3 scene {idx} eps {eps} approx"), &scene, &report.approx);
            paths.push(format!("c3 scene {idx} eps {eps} grid"), &scene, &report.reference);
            weights.push((eps, report.approx.total_weight));
        }
        cases.push(DeskCase { scene, s, t, weights });
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && elapsed < Duration::from_secs(300);
    Outcome::new(
        pass,
        format!(
            "{runs} runs, max ratio/bound = {worst:.6} ≤ 1, {} violations{}, {elapsed:.1?} < 5min",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" [{}]", failures.join("; ")) }
        ),
    )
}

fn count_bounds() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0c04);
    let weights = [0.0, 0.1, 0.3, 0.5, 1.0, 1.2, 1.4, FRAC_PI_2, 3.0];
    let start = Instant::now();
    let (mut vicinity_bad, mut disk_bad, mut total_bad) = (0, 0, 0);
    let mut worst_disk: f64 = 0.0;
    for _ in 0..200 {
        let r = rng.gen_range(0.5..2.0);
        let d = rng.gen_range(0.3..3.0);
        let w = if rng.gen_bool(0.5) {
            weights[rng.gen_range(0..weights.len())]
        } else {
            rng.gen_range(0.05..FRAC_PI_2)
        };
        let eps = rng.gen_range(0.1..=1.0);
        let r2 = rng.gen_range(0.5..2.0);
        let scene = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), r, w),
            Disk::new(1, Point::new(r + d + r2, 0.0), r2, 1.0),
        ])
        .unwrap();
        let set = build_steiner_set(&scene, eps).unwrap();
        let pred = predicted_counts(&scene, eps).unwrap();
        for (i, p) in pred.disks.iter().enumerate() {
            let rings: Vec<_> = set.on_disk(i).filter(|n| n.kind == NodeKind::RingPoint).collect();
            if let Some(bound) = p.per_vicinity {
                for j in 0..set.k[i] {
                    let count = rings.iter().filter(|n| n.owner == Some((i, j))).count();
                    if count as f64 > bound {
                        vicinity_bad += 1;
                    }
                }
                if rings.len() as f64 > p.per_disk {
                    disk_bad += 1;
                    worst_disk = worst_disk.max(rings.len() as f64 / p.per_disk);
                }
            } else if set.count_on_disk(i) as f64 > p.per_disk {
                disk_bad += 1;
                worst_disk = worst_disk.max(set.count_on_disk(i) as f64 / p.per_disk);
            }
        }
        if set.nodes.len() as f64 > pred.total {
            total_bad += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = vicinity_bad == 0 && disk_bad == 0 && total_bad == 0 && elapsed < Duration::from_secs(10);
    Outcome::new(
        pass,
        format!(
            "200 configs: per-vicinity violations {vicinity_bad}, per-disk violations {disk_bad} (worst count/bound {worst_disk:.3}), total violations {total_bad}, {elapsed:.2?} < 10s"
        ),
    )
}

fn lemma_checks() -> Outcome {
    let start = Instant::now();
    let r = 1.0;
    let omega = FRAC_PI_2;
    let mut worst_a = f64::NEG_INFINITY;
    for i in 0..10_000 {
        let theta = FRAC_PI_2 * i as f64 / 10_000.0;
        let arc = arc_from_inscribed(r, theta).unwrap();
        let chord = chord_from_inscribed(r, theta).unwrap();
        worst_a = worst_a.max(arc - omega * chord);
    }
    let mut worst_b = f64::INFINITY;
    for wi in 1..200 {
        let omega = 1.0 + (FRAC_PI_2 - 1.0) * wi as f64 / 200.0;
        for i in 0..1000 {
            let theta = FRAC_PI_2 * i as f64 / 1000.0;
            let bending = 2.0 * r * ((omega * omega - 1.0).sqrt() + (1.0 / omega).asin() - theta);
            let direct = (omega * chord_from_inscribed(r, theta).unwrap()).min(arc_from_inscribed(r, theta).unwrap());
            worst_b = worst_b.min(bending - direct);
        }
    }
    let elapsed = start.elapsed();
    let pass = worst_a <= 1e-12 && worst_b >= -1e-12 && elapsed < Duration::from_secs(1);
    Outcome::new(
        pass,
        format!(
            "(a) max R(π−2θ) − 2Rω cosθ = {worst_a:.1e} ≤ 1e-12; (b) min bending − direct = {worst_b:.1e} ≥ −1e-12; {elapsed:.2?} < 1s"
        ),
    )
}

fn spanner_theorem() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x0c06);
    let params = SceneParams {
        disks: (1, 4),
        radius: (0.5, 2.0),
        min_clearance: 1.0,
        extra_clearance: 1.0,
        weights: vec![0.0, 0.8, 1.0, 1.4, FRAC_PI_2, f64::INFINITY],
    };
    let start = Instant::now();
    let mut worst = [0.0f64; 3];
    let mut bad = Vec::new();
    let mut max_nodes = 0;
    for idx in 0..100 {
        let scene = random_scene(&mut rng, &params);
        let set = build_steiner_set(&scene, 1.0).unwrap();
        let g = build_graph(&scene, &set);
        max_nodes = max_nodes.max(g.len());
        for (slot, k) in [4, 6, 8].into_iter().enumerate() {
            let y = build_yao(&g, k).unwrap();
            let report = spanning_audit(&y, &g).unwrap();
            worst[slot] = worst[slot].max(report.max_ratio);
            if report.max_ratio > spanner_bound(k) + 1e-9 || report.min_excess < -1e-9 {
                bad.push(format!("scene {idx} k={k} ratio {:.6}", report.max_ratio));
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = bad.is_empty() && elapsed < Duration::from_secs(120);
    Outcome::new(
        pass,
        format!(
            "100 scenes (≤{max_nodes} nodes): max stretch k=4 {:.4} ≤ {:.6}, k=6 {:.4} ≤ {:.6}, k=8 {:.4} ≤ {:.6}{}, {elapsed:.1?} < 2min",
            worst[0],
            spanner_bound(4),
            worst[1],
            spanner_bound(6),
            worst[2],
            spanner_bound(8),
            if bad.is_empty() { String::new() } else { format!(" [{}]", bad.join("; ")) }
        ),
    )
}

fn clamp_invariance(cases: &[DeskCase]) -> Outcome {
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for (idx, case) in cases.iter().enumerate() {
        if !case.scene.disks().iter().any(|d| d.weight >= FRAC_PI_2) {
            continue;
        }
        for replacement in [2.5, f64::INFINITY] {
            let disks: Vec<Disk> = case
                .scene
                .disks()
                .iter()
                .map(|d| {
                    let w = if d.weight >= FRAC_PI_2 { replacement } else { d.weight };
                    Disk::new(d.id, d.center, d.radius, w)
                })
                .collect();
            let heavy = Scene::new(disks).unwrap();
            for &(eps, clamped) in &case.weights {
                let w = match approximate_path(&heavy, eps, case.s, case.t) {
                    Ok(p) => p.total_weight,
                    Err(e) => return Outcome::new(false, format!("scene {idx}: {e}")),
                };
                worst = worst.max(rel(w, clamped));
                checked += 1;
            }
        }
    }
    Outcome::new(
        worst <= 1e-9 && checked > 0,
        format!("{checked} routes with ω ∈ {{2.5, ∞}} in place of π/2: max relative change {worst:.1e} ≤ 1e-9"),
    )
}

fn audit_consistency(paths: &Collected) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (label, scene, path) in &paths.paths {
        match audit_path(scene, path) {
            Ok(a) => {
                let r = rel(a, path.total_weight);
                worst = worst.max(r);
                if r > AUDIT_TOL {
                    bad.push(format!("{label}: audit {a} vs {}", path.total_weight));
                }
            }
            Err(e) => bad.push(format!("{label}: {e}")),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{} paths: max relative audit difference {worst:.1e} ≤ 1e-7{}",
            paths.paths.len(),
            if bad.is_empty() { String::new() } else { format!(" [{}]", bad.join("; ")) }
        ),
    )
}

fn main() {
    // Optional positional arguments select criteria by number (e.g. `-- 5 6`);
    // flags forwarded by the test runner are ignored.
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected = |name: &str| only.is_empty() || only.iter().any(|o| name.split(' ').next() == Some(o.as_str()));
    let mut paths = Collected::default();
    let mut cases = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut report = |name: &'static str, run: &mut dyn FnMut() -> Outcome| {
        if !selected(name) {
            return;
        }
        let outcome = run();
        println!(
            "criterion {name}: {} — {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail
        );
        results.push((name, outcome));
    };
    report("1 obstacle exactness", &mut || obstacle_exactness(&mut paths));
    report("2 zero-region closed form", &mut || zero_region_closed_form(&mut paths));
    report("3 approximation at desk scale", &mut || main_theorem(&mut paths, &mut cases));
    report("4 node-count bounds", &mut count_bounds);
    report("5 lemma numeric checks", &mut lemma_checks);
    report("6 spanner stretch", &mut spanner_theorem);
    report("7 weight-clamp invariance", &mut || clamp_invariance(&cases));
    report("8 audit consistency", &mut || audit_consistency(&paths));
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    println!(
        "acceptance: {} of {} criteria passed",
        results.len() - failed.len(),
        results.len()
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
