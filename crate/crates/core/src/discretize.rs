//! Steiner-point placement on disk boundaries.
//!
//! Every disk of positive weight receives `k = ⌊π/(2α)⌋` equally spaced
//! *vertex vicinity centers*. Around each center `v`, *ring points* are placed
//! with geometrically shrinking inscribed-angle gaps measured from the point
//! diametrically opposite `v`; only those inside the annulus of chord radii
//! `[2R sin α, 2R sin 2α]` around `v` are kept. Zero-weight disks only receive
//! centers, spaced by the angular gap `Δ = ε·d/(a(d+1))`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::normalize_angle;
use crate::scene::Scene;

/// Role of a node on a disk boundary (or of a query point).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    /// An evenly spaced anchor point.
    VicinityCenter,
    /// A geometrically spaced point associated with a vicinity center.
    RingPoint,
    /// A query point inserted into a graph.
    Terminal,
}

impl NodeKind {
    /// Lowercase name used in JSON output.
    pub fn as_str(&self) -> &'static str {
        match self {
            NodeKind::VicinityCenter => "vicinity_center",
            NodeKind::RingPoint => "ring_point",
            NodeKind::Terminal => "terminal",
        }
    }
}

/// A node on a disk boundary, stored as `(disk index, angle)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteinerNode {
    /// Index of the disk in the scene.
    pub disk: usize,
    /// Boundary angle in `[0, 2π)`.
    pub angle: f64,
    /// What generated this node.
    pub kind: NodeKind,
    /// For ring points, the `(disk, vicinity index)` that owns them.
    pub owner: Option<(usize, usize)>,
}

/// The full set of Steiner nodes for one `ε`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteinerSet {
    /// Nodes sorted by disk, then angle.
    pub nodes: Vec<SteinerNode>,
    /// Approximation parameter.
    pub epsilon: f64,
    /// Number of vicinity centers per disk.
    pub k: Vec<usize>,
    /// Ring-step bound `r` per disk (`None` for zero-weight disks).
    pub r: Vec<Option<usize>>,
}

impl SteinerSet {
    /// Nodes lying on disk `i`.
    pub fn on_disk(&self, i: usize) -> impl Iterator<Item = &SteinerNode> {
        self.nodes.iter().filter(move |n| n.disk == i)
    }

    /// Number of nodes on disk `i`.
    pub fn count_on_disk(&self, i: usize) -> usize {
        self.on_disk(i).count()
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(epsilon))
    }
}

/// Angular gap between consecutive centers on a zero-weight disk.
pub fn zero_weight_gap(scene: &Scene, i: usize, epsilon: f64) -> f64 {
    let d = scene.clearance(i);
    let (_, a) = scene.global_constants();
    epsilon * d / (a * (d + 1.0))
}

/// Common ratio `q = 1 − 2ωε/(aπ)` of the ring-point gaps on disk `i`.
pub fn ring_ratio(scene: &Scene, i: usize, epsilon: f64) -> f64 {
    let (_, a) = scene.global_constants();
    1.0 - 2.0 * scene.disk(i).effective_weight() * epsilon / (a * PI)
}

/// Inscribed angle between the diameter through a center and its `ℓ`-th ring
/// point: `(π/2)(1 − q^ℓ)`.
pub fn cumulative_angle(q: f64, l: usize) -> f64 {
    PI / 2.0 * (1.0 - q.powi(l as i32))
}

/// Largest `r` whose cumulative inscribed angle stays at most `π/2 − α`.
pub fn ring_steps(alpha: f64, q: f64) -> usize {
    let mut r = ((2.0 * alpha / PI).ln() / q.ln()).floor().max(0.0) as usize;
    let limit = PI / 2.0 - alpha;
    while r > 0 && cumulative_angle(q, r) > limit * (1.0 + 1e-15) {
        r -= 1;
    }
    while cumulative_angle(q, r + 1) <= limit * (1.0 + 1e-15) {
        r += 1;
    }
    r
}

/// Boundary angles of the vicinity centers of disk `i`.
pub fn vicinity_centers(scene: &Scene, i: usize, epsilon: f64) -> Result<Vec<f64>> {
    check_epsilon(epsilon)?;
    if scene.disk(i).effective_weight() > 0.0 {
        let alpha = scene.weighted_angular_radius(i)?;
        let k = (PI / (2.0 * alpha)).floor() as usize;
        Ok((0..k).map(|j| TAU * j as f64 / k as f64).collect())
    } else {
        let gap = zero_weight_gap(scene, i, epsilon);
        let k = (TAU / gap).ceil() as usize;
        Ok((0..k).map(|j| j as f64 * gap).filter(|&a| a < TAU).collect())
    }
}

/// Ring points kept for vicinity `j` of disk `i` (centered at angle `center`).
pub fn ring_points(scene: &Scene, i: usize, epsilon: f64, j: usize, center: f64) -> Result<Vec<SteinerNode>> {
    check_epsilon(epsilon)?;
    let alpha = scene.weighted_angular_radius(i)?;
    let q = ring_ratio(scene, i, epsilon);
    let r = ring_steps(alpha, q);
    let lo = PI / 2.0 - 2.0 * alpha;
    let hi = PI / 2.0 - alpha;
    let slack = 1e-12;
    let opposite = center + PI;
    let mut out = Vec::new();
    for l in 0..=r {
        let phi = cumulative_angle(q, l);
        if phi < lo - slack || phi > hi + slack {
            continue;
        }
        let sides: &[f64] = if l == 0 { &[1.0] } else { &[1.0, -1.0] };
        for &s in sides {
            out.push(SteinerNode {
                disk: i,
                angle: normalize_angle(opposite + s * 2.0 * phi),
                kind: NodeKind::RingPoint,
                owner: Some((i, j)),
            });
        }
    }
    Ok(out)
}

/// Builds the Steiner set for `epsilon ∈ (0, 1]`, merging nodes closer than
/// the scene tolerance along a boundary (vicinity centers win).
pub fn build_steiner_set(scene: &Scene, epsilon: f64) -> Result<SteinerSet> {
    check_epsilon(epsilon)?;
    let mut nodes = Vec::new();
    let mut ks = Vec::with_capacity(scene.len());
    let mut rs = Vec::with_capacity(scene.len());
    for i in 0..scene.len() {
        let centers = vicinity_centers(scene, i, epsilon)?;
        ks.push(centers.len());
        let mut raw: Vec<SteinerNode> = centers
            .iter()
            .map(|&angle| SteinerNode {
                disk: i,
                angle,
                kind: NodeKind::VicinityCenter,
                owner: None,
            })
            .collect();
        if scene.disk(i).effective_weight() > 0.0 {
            let alpha = scene.weighted_angular_radius(i)?;
            rs.push(Some(ring_steps(alpha, ring_ratio(scene, i, epsilon))));
            for (j, &c) in centers.iter().enumerate() {
                raw.extend(ring_points(scene, i, epsilon, j, c)?);
            }
        } else {
            rs.push(None);
        }
        nodes.extend(dedup_boundary(raw, scene.disk(i).radius, scene.tolerance()));
    }
    Ok(SteinerSet {
        nodes,
        epsilon,
        k: ks,
        r: rs,
    })
}

/// Sorts nodes of one disk by angle and merges those within arc distance
/// `tol`, preferring vicinity centers.
pub fn dedup_boundary(mut raw: Vec<SteinerNode>, radius: f64, tol: f64) -> Vec<SteinerNode> {
    raw.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    let mut out: Vec<SteinerNode> = Vec::with_capacity(raw.len());
    for n in raw {
        match out.last_mut() {
            Some(last) if (n.angle - last.angle) * radius <= tol => {
                if n.kind == NodeKind::VicinityCenter && last.kind != NodeKind::VicinityCenter {
                    *last = n;
                }
            }
            _ => out.push(n),
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = out[out.len() - 1];
        if (first.angle + TAU - last.angle) * radius <= tol {
            if last.kind == NodeKind::VicinityCenter && first.kind != NodeKind::VicinityCenter {
                out[0] = last;
            }
            out.pop();
        }
    }
    out
}

/// Closed-form upper bounds on node counts.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictedCounts {
    /// Per-disk bounds, in scene order.
    pub disks: Vec<DiskPrediction>,
    /// The constant `C(𝔇)` of the total-count bound.
    pub c_scene: f64,
    /// `C(𝔇)·n/ε`, the bound on the total number of nodes.
    pub total: f64,
}

/// Count bounds for one disk.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskPrediction {
    /// Ring points per vicinity: `2(1 + log₂(α/π))/log₂ q + 1`
    /// (`None` for zero-weight disks, which have no ring points).
    pub per_vicinity: Option<f64>,
    /// Nodes on the disk: `(π/α)/log₂(1/q)` for positive weights and
    /// `2π/Δ + 1` for zero weights.
    pub per_disk: f64,
}

/// Evaluates the closed-form count bounds for `epsilon`.
pub fn predicted_counts(scene: &Scene, epsilon: f64) -> Result<PredictedCounts> {
    check_epsilon(epsilon)?;
    let mut disks = Vec::with_capacity(scene.len());
    for i in 0..scene.len() {
        if scene.disk(i).effective_weight() > 0.0 {
            let alpha = scene.weighted_angular_radius(i)?;
            let q = ring_ratio(scene, i, epsilon);
            disks.push(DiskPrediction {
                per_vicinity: Some(2.0 * (1.0 + (alpha / PI).log2()) / q.log2() + 1.0),
                per_disk: (PI / alpha) / (1.0 / q).log2(),
            });
        } else {
            disks.push(DiskPrediction {
                per_vicinity: None,
                per_disk: TAU / zero_weight_gap(scene, i, epsilon) + 1.0,
            });
        }
    }
    let (_, a) = scene.global_constants();
    let max_r = scene.disks().iter().map(|d| d.radius).fold(0.0, f64::max);
    let min_w = scene
        .disks()
        .iter()
        .map(|d| d.effective_weight())
        .filter(|&w| w > 0.0)
        .fold(f64::INFINITY, f64::min);
    let w_term = if min_w.is_finite() { (min_w * min_w).min(1.0) } else { 1.0 };
    let geo_term = (0..scene.len())
        .map(|i| {
            let d = scene.clearance(i);
            let r = scene.disk(i).radius;
            (d * d).min(r * r).min(1.0)
        })
        .fold(f64::INFINITY, f64::min);
    let c_scene = 2.0 * a * PI.powi(3) * (max_r + 1.0) / (w_term * geo_term);
    Ok(PredictedCounts {
        disks,
        c_scene,
        total: c_scene * scene.len() as f64 / epsilon,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Disk, Point};
    use approx::assert_relative_eq;

    fn single(w: f64) -> Scene {
        Scene::new(vec![Disk::new(0, Point::new(0.0, 0.0), 1.0, w)]).unwrap()
    }

    fn pair_with_c_one(w: f64) -> Scene {
        // max R = 1 and min d = π/2 give c = 1, a = 2 + √5; d = π/2 ≥ R keeps
        // min{d, R} = 1.
        Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 1.0, w),
            Disk::new(1, Point::new(2.0 + PI / 2.0, 0.0), 1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn six_centers_at_maximal_alpha() {
        let c = vicinity_centers(&single(1.0), 0, 0.5).unwrap();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], 0.0);
        assert_relative_eq!(c[1], TAU / 6.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_weight_center_count() {
        // d = 1 with a = 2 + √5: pick a scene where c = 1 and the clearance of
        // disk 0 is 1.
        let s = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 2.0 / PI, 0.0),
            Disk::new(1, Point::new(2.0 / PI + 1.0 + 2.0 / PI, 0.0), 2.0 / PI, 1.0),
        ])
        .unwrap();
        assert_relative_eq!(s.global_constants().0, 1.0, epsilon = 1e-12);
        let gap = zero_weight_gap(&s, 0, 1.0);
        assert_relative_eq!(gap, 1.0 / (2.0 * (2.0 + 5f64.sqrt())), epsilon = 1e-12);
        assert_relative_eq!(gap, 0.118_033_988_749_894_85, epsilon = 1e-12);
        let c = vicinity_centers(&s, 0, 1.0).unwrap();
        assert_eq!(c.len(), 54);
        for w in c.windows(2) {
            assert_relative_eq!(w[1] - w[0], gap, epsilon = 1e-12);
        }
        let wrap = TAU - c[53];
        assert!(wrap > 0.0 && wrap <= gap);
    }

    #[test]
    fn positive_weight_has_at_least_six_centers() {
        for w in [0.01, 0.3, 1.0, 1.4, PI / 2.0, 9.0] {
            for r in [0.3, 1.0, 3.0] {
                let s = Scene::new(vec![
                    Disk::new(0, Point::new(0.0, 0.0), r, w),
                    Disk::new(1, Point::new(2.0 * r + 0.7, 0.0), r, 1.0),
                ])
                .unwrap();
                assert!(vicinity_centers(&s, 0, 1.0).unwrap().len() >= 6);
            }
        }
    }

    #[test]
    fn cumulative_angle_matches_running_sum() {
        let s = pair_with_c_one(1.0);
        let (_, a) = s.global_constants();
        let eps = 0.5;
        let w = 1.0;
        let q = ring_ratio(&s, 0, eps);
        let mut sum = 0.0;
        for l in 0..400 {
            let closed = cumulative_angle(q, l);
            if l > 0 {
                assert_relative_eq!(closed, sum, max_relative = 1e-12);
            }
            sum += w * eps / a * q.powi(l as i32);
        }
        assert_relative_eq!(cumulative_angle(q, 1), w * eps / a, max_relative = 1e-15);
    }

    #[test]
    fn ring_points_lie_in_annulus() {
        let s = pair_with_c_one(1.0);
        let alpha = s.weighted_angular_radius(0).unwrap();
        let tol = s.tolerance();
        let d = s.disk(0);
        for (j, c) in vicinity_centers(&s, 0, 0.5).unwrap().into_iter().enumerate() {
            let pts = ring_points(&s, 0, 0.5, j, c).unwrap();
            assert!(!pts.is_empty());
            for p in pts {
                let chord = d.point_at(p.angle).dist(d.point_at(c));
                assert!(chord >= 2.0 * alpha.sin() - tol);
                assert!(chord <= 2.0 * (2.0 * alpha).sin() + tol);
            }
        }
    }

    #[test]
    fn zero_weight_disk_has_no_ring_points() {
        let set = build_steiner_set(&single(0.0), 1.0).unwrap();
        assert!(set.nodes.iter().all(|n| n.kind == NodeKind::VicinityCenter));
        assert!(set.r[0].is_none());
    }

    #[test]
    fn counts_grow_when_epsilon_shrinks() {
        let s = pair_with_c_one(0.7);
        let mut prev = 0;
        for eps in [1.0, 0.5, 0.25, 0.125] {
            let n = build_steiner_set(&s, eps).unwrap().nodes.len();
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn dedup_prefers_centers_and_handles_wrap() {
        let mk = |angle, kind| SteinerNode {
            disk: 0,
            angle,
            kind,
            owner: None,
        };
        let out = dedup_boundary(
            vec![
                mk(1.0, NodeKind::RingPoint),
                mk(1.0 + 1e-13, NodeKind::VicinityCenter),
                mk(0.0, NodeKind::VicinityCenter),
                mk(TAU - 1e-13, NodeKind::RingPoint),
            ],
            1.0,
            1e-9,
        );
        assert_eq!(out.len(), 2);
        assert!(out.iter().all(|n| n.kind == NodeKind::VicinityCenter));
    }

    #[test]
    fn rejects_bad_epsilon() {
        assert_eq!(build_steiner_set(&single(1.0), 0.0).unwrap_err(), Error::InvalidEpsilon(0.0));
        assert!(build_steiner_set(&single(1.0), 1.5).is_err());
    }
}
