//! Brute-force references used to validate the approximation graph.
//!
//! The reference graph places `⌈2π/h⌉` evenly spaced nodes (phase 0) on every
//! disk and prices edges with the same rules as [`PathGraph`]; only the node
//! placement differs from the Steiner construction, which is exactly what the
//! approximation guarantee is about. Weighted lengths are independently
//! re-integrated by [`crate::path::audit_path`].

use std::f64::consts::{PI, TAU};

use rand::Rng;

use crate::discretize::{NodeKind, SteinerNode};
use crate::error::{Error, Result};
use crate::geometry::{Disk, Point};
use crate::pathgraph::{approximate_path, PathGraph};
use crate::path::{audit_path, WeightedPath};
use crate::scene::Scene;

/// Evenly spaced boundary nodes with angular spacing at most `h`.
pub fn grid_nodes(scene: &Scene, h: f64) -> Result<Vec<SteinerNode>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidSpacing(h));
    }
    let per_disk = (TAU / h).ceil() as usize;
    let mut nodes = Vec::with_capacity(per_disk * scene.len());
    for disk in 0..scene.len() {
        nodes.extend((0..per_disk).map(|j| SteinerNode {
            disk,
            angle: TAU * j as f64 / per_disk as f64,
            kind: NodeKind::VicinityCenter,
            owner: None,
        }));
    }
    Ok(nodes)
}

/// The uniform-grid reference graph.
pub fn reference_graph(scene: &Scene, h: f64) -> Result<PathGraph> {
    Ok(PathGraph::from_nodes(scene, &grid_nodes(scene, h)?, None))
}

/// Shortest path from `s` to `t` in the reference graph of spacing `h`.
pub fn reference_path(scene: &Scene, s: Point, t: Point, h: f64) -> Result<WeightedPath> {
    let mut g = reference_graph(scene, h)?;
    let si = g.insert_terminal(s)?;
    let ti = g.insert_terminal(t)?;
    g.shortest_path(si, ti)
}

/// Weight of the reference shortest path.
pub fn reference_optimum(scene: &Scene, s: Point, t: Point, h: f64) -> Result<f64> {
    Ok(reference_path(scene, s, t, h)?.total_weight)
}

/// Relative error allowance `5h·ΣR / reference` of a grid of spacing `h`.
pub fn grid_allowance(scene: &Scene, h: f64, reference: f64) -> f64 {
    let sum_r: f64 = scene.disks().iter().map(|d| d.radius).sum();
    5.0 * h * sum_r / reference
}

/// Comparison of an approximate path against the grid reference.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    /// Approximate path from the Steiner graph.
    pub approx: WeightedPath,
    /// Reference path from the uniform grid.
    pub reference: WeightedPath,
    /// `approx / reference`.
    pub ratio: f64,
    /// Grid error allowance `δ_h`.
    pub delta_h: f64,
    /// Upper limit `(1 + ε)(1 + δ_h)` for the ratio.
    pub bound: f64,
}

impl RatioReport {
    /// Whether the ratio lies in `[1 − δ_h, (1 + ε)(1 + δ_h)]`.
    pub fn holds(&self) -> bool {
        self.ratio <= self.bound && self.ratio >= 1.0 - self.delta_h
    }
}

/// Ratio of the Steiner-graph optimum to the grid optimum; requires
/// `h ≤ ε/100`.
pub fn approximation_ratio(scene: &Scene, s: Point, t: Point, epsilon: f64, h: f64) -> Result<RatioReport> {
    if !(h > 0.0 && h <= epsilon / 100.0 * (1.0 + 1e-12)) {
        return Err(Error::InvalidSpacing(h));
    }
    let approx = approximate_path(scene, epsilon, s, t)?;
    let reference = reference_path(scene, s, t, h)?;
    let (ratio, delta_h) = if reference.total_weight > 0.0 {
        (
            approx.total_weight / reference.total_weight,
            grid_allowance(scene, h, reference.total_weight),
        )
    } else {
        (if approx.total_weight > 0.0 { f64::INFINITY } else { 1.0 }, 0.0)
    };
    Ok(RatioReport {
        approx,
        reference,
        ratio,
        delta_h,
        bound: (1.0 + epsilon) * (1.0 + delta_h),
    })
}

/// Parameters of the random scene generator.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneParams {
    /// Inclusive range of the number of disks.
    pub disks: (usize, usize),
    /// Radius range.
    pub radius: (f64, f64),
    /// Minimum clearance between disks.
    pub min_clearance: f64,
    /// Additional clearance drawn uniformly from `[0, extra_clearance]`.
    pub extra_clearance: f64,
    /// Weights are drawn from this list.
    pub weights: Vec<f64>,
}

impl SceneParams {
    /// The desk-scale family: 1–3 disks, radii in `[0.5, 2]`, mixed weights.
    pub fn desk_scale() -> Self {
        Self {
            disks: (1, 3),
            radius: (0.5, 2.0),
            min_clearance: 0.3,
            extra_clearance: 1.0,
            weights: vec![0.0, 0.3, 1.0, 1.4, PI / 2.0],
        }
    }
}

/// Draws a random scene by placing disks one after another to the right of
/// the previous ones at the requested clearance, with random vertical
/// offsets.
pub fn random_scene<R: Rng>(rng: &mut R, params: &SceneParams) -> Scene {
    let n = rng.gen_range(params.disks.0..=params.disks.1);
    loop {
        let mut disks: Vec<Disk> = Vec::with_capacity(n);
        for id in 0..n {
            let r = rng.gen_range(params.radius.0..=params.radius.1);
            let w = params.weights[rng.gen_range(0..params.weights.len())];
            let gap = params.min_clearance + rng.gen_range(0.0..=params.extra_clearance);
            let center = match disks.last() {
                None => Point::new(0.0, 0.0),
                Some(prev) => {
                    let dy = rng.gen_range(-1.0..=1.0) * (prev.radius + r);
                    let reach = prev.radius + r + gap;
                    let dx = (reach * reach - dy * dy).max(0.0).sqrt();
                    prev.center + Point::new(dx, dy)
                }
            };
            disks.push(Disk::new(id as i64, center, r, w));
        }
        let ok = disks.iter().enumerate().all(|(j, a)| {
            disks[j + 1..]
                .iter()
                .all(|b| a.center.dist(b.center) - a.radius - b.radius >= params.min_clearance * (1.0 - 1e-9))
        });
        if ok {
            if let Ok(scene) = Scene::new(disks) {
                return scene;
            }
        }
    }
}

/// Draws a query point outside every disk (with margin `margin`) in the box
/// around the scene, on the left (`side < 0`) or right (`side > 0`) end.
pub fn random_terminal<R: Rng>(rng: &mut R, scene: &Scene, side: f64, margin: f64) -> Point {
    let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
    for d in scene.disks() {
        lo.x = lo.x.min(d.center.x - d.radius);
        lo.y = lo.y.min(d.center.y - d.radius);
        hi.x = hi.x.max(d.center.x + d.radius);
        hi.y = hi.y.max(d.center.y + d.radius);
    }
    loop {
        let x = if side < 0.0 {
            rng.gen_range(lo.x - 1.5..=lo.x + 0.5 * (hi.x - lo.x))
        } else {
            rng.gen_range(lo.x + 0.5 * (hi.x - lo.x)..=hi.x + 1.5)
        };
        let y = rng.gen_range(lo.y - 1.0..=hi.y + 1.0);
        let p = Point::new(x, y);
        if scene.disks().iter().all(|d| d.boundary_offset(p) > margin) {
            return p;
        }
    }
}

/// One row of the verification table.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    /// Scene label.
    pub scene: String,
    /// Approximation parameter.
    pub epsilon: f64,
    /// Measured ratio.
    pub ratio: f64,
    /// Upper bound on the ratio.
    pub bound: f64,
    /// Whether the audited weight agrees with the reported weight.
    pub audit_ok: bool,
    /// Whether the row passes.
    pub pass: bool,
}

/// Runs the oracle comparison on `count` seeded random desk-scale scenes for
/// each `epsilon`.
pub fn verify_suite(seed: u64, count: usize, epsilons: &[f64]) -> Result<Vec<VerifyRow>> {
    use rand::SeedableRng;
    let mut rows = Vec::new();
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let params = SceneParams::desk_scale();
    for idx in 0..count {
        let scene = random_scene(&mut rng, &params);
        let s = random_terminal(&mut rng, &scene, -1.0, 0.05);
        let t = random_terminal(&mut rng, &scene, 1.0, 0.05);
        for &eps in epsilons {
            let report = approximation_ratio(&scene, s, t, eps, eps / 100.0)?;
            let audit_ok = [&report.approx, &report.reference].iter().all(|p| {
                audit_path(&scene, p)
                    .map(|a| (a - p.total_weight).abs() <= 1e-7 * p.total_weight.max(1e-300))
                    .unwrap_or(false)
            });
            rows.push(VerifyRow {
                scene: format!("random-{idx} (n={})", scene.len()),
                epsilon: eps,
                ratio: report.ratio,
                bound: report.bound,
                audit_ok,
                pass: report.holds() && audit_ok,
            });
        }
    }
    Ok(rows)
}
