//! Geometric paths made of straight segments and boundary arcs, and an
//! independent re-integration of their weighted length.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{Arc, Orientation, Point};
use crate::scene::Scene;

/// One piece of a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Piece {
    /// Straight segment priced at `multiplier` per unit length.
    Segment {
        /// Start point.
        from: Point,
        /// End point.
        to: Point,
        /// Cost per unit length.
        multiplier: f64,
    },
    /// Boundary arc priced at `multiplier` per unit length.
    Arc {
        /// Angular description of the arc.
        arc: Arc,
        /// Center of the carrying disk.
        center: Point,
        /// Radius of the carrying disk.
        radius: f64,
        /// Cost per unit length.
        multiplier: f64,
    },
}

impl Piece {
    /// First point of the piece.
    pub fn start(&self) -> Point {
        match *self {
            Piece::Segment { from, .. } => from,
            Piece::Arc { arc, center, radius, .. } => center + Point::polar(arc.start_angle) * radius,
        }
    }

    /// Last point of the piece.
    pub fn end(&self) -> Point {
        match *self {
            Piece::Segment { to, .. } => to,
            Piece::Arc { arc, center, radius, .. } => center + Point::polar(arc.end_angle) * radius,
        }
    }

    /// Euclidean length.
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Segment { from, to, .. } => from.dist(to),
            Piece::Arc { arc, radius, .. } => arc.length(radius),
        }
    }

    /// Cost per unit length.
    pub fn multiplier(&self) -> f64 {
        match *self {
            Piece::Segment { multiplier, .. } | Piece::Arc { multiplier, .. } => multiplier,
        }
    }

    /// Weighted length `multiplier · length`.
    pub fn weight(&self) -> f64 {
        let len = self.length();
        if len == 0.0 {
            0.0
        } else {
            self.multiplier() * len
        }
    }

    /// The piece traversed backwards.
    pub fn reversed(&self) -> Self {
        match *self {
            Piece::Segment { from, to, multiplier } => Piece::Segment {
                from: to,
                to: from,
                multiplier,
            },
            Piece::Arc {
                arc,
                center,
                radius,
                multiplier,
            } => Piece::Arc {
                arc: arc.reversed(),
                center,
                radius,
                multiplier,
            },
        }
    }

    /// JSON description used by the command line tools.
    pub fn to_json(&self, scene: &Scene) -> Value {
        match *self {
            Piece::Segment { from, to, multiplier } => json!({
                "type": "seg",
                "from": [from.x, from.y],
                "to": [to.x, to.y],
                "length": self.length(),
                "multiplier": multiplier,
            }),
            Piece::Arc {
                arc,
                center,
                radius,
                multiplier,
            } => json!({
                "type": "arc",
                "disk": scene.disk(arc.disk).id,
                "center": [center.x, center.y],
                "radius": radius,
                "start_angle": arc.start_angle,
                "end_angle": arc.end_angle,
                "orientation": match arc.orientation { Orientation::Cw => "cw", Orientation::Ccw => "ccw" },
                "length": self.length(),
                "multiplier": multiplier,
            }),
        }
    }
}

/// A path with its reported weighted and Euclidean lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPath {
    /// Pieces in travel order.
    pub pieces: Vec<Piece>,
    /// Weighted length reported by the solver that produced the path.
    pub total_weight: f64,
    /// Sum of the Euclidean lengths of the pieces.
    pub total_euclidean: f64,
}

impl WeightedPath {
    /// Builds a path, dropping zero-length pieces.
    pub fn new(pieces: Vec<Piece>, total_weight: f64) -> Self {
        let pieces: Vec<Piece> = pieces.into_iter().filter(|p| p.length() > 0.0).collect();
        let total_euclidean = pieces.iter().map(Piece::length).sum();
        Self {
            pieces,
            total_weight,
            total_euclidean,
        }
    }

    /// Sum of the per-piece weighted lengths.
    pub fn piece_weight(&self) -> f64 {
        self.pieces.iter().map(Piece::weight).sum()
    }

    /// JSON description: `{"weight", "euclidean", "pieces"}`.
    pub fn to_json(&self, scene: &Scene) -> Value {
        json!({
            "weight": self.total_weight,
            "euclidean": self.total_euclidean,
            "pieces": self.pieces.iter().map(|p| p.to_json(scene)).collect::<Vec<_>>(),
        })
    }
}

/// Recomputes the weighted length of `path` from the scene alone.
///
/// Segments are split where they cross disk boundaries and each sub-piece is
/// priced by the region it traverses (penetrations shallower than the scene
/// tolerance count as tangency). Arcs are priced at `min(1, ω)` of their disk.
/// Stored multipliers are ignored.
pub fn audit_path(scene: &Scene, path: &WeightedPath) -> Result<f64> {
    let tol = scene.tolerance();
    for (k, w) in path.pieces.windows(2).enumerate() {
        if w[0].end().dist(w[1].start()) > 10.0 * tol {
            return Err(Error::Discontinuous(k, k + 1));
        }
    }
    let mut total = 0.0;
    for piece in &path.pieces {
        total += match *piece {
            Piece::Segment { from, to, .. } => segment_cost(scene, from, to),
            Piece::Arc { arc, .. } => {
                let d = scene.disk(arc.disk);
                let len = arc.length(d.radius);
                if len == 0.0 {
                    0.0
                } else {
                    d.arc_multiplier() * len
                }
            }
        };
    }
    Ok(total)
}

/// Weighted cost of the straight segment `pq` under the scene's weights.
pub fn segment_cost(scene: &Scene, p: Point, q: Point) -> f64 {
    let len = p.dist(q);
    if len == 0.0 {
        return 0.0;
    }
    let dir = q - p;
    let mut inside_total = 0.0;
    let mut cost = 0.0;
    for d in scene.disks() {
        if !crate::geometry::segment_crosses_interior_tol(p, q, d, scene.tolerance()) {
            continue;
        }
        // Solve |p + t·dir − c|² = R² for t.
        let w = p - d.center;
        let a = dir.norm_sq();
        let b = w.dot(dir);
        let c = w.norm_sq() - d.radius * d.radius;
        let disc = (b * b - a * c).max(0.0).sqrt();
        let t0 = ((-b - disc) / a).max(0.0);
        let t1 = ((-b + disc) / a).min(1.0);
        let frac = (t1 - t0).max(0.0);
        if frac > 0.0 {
            inside_total += frac;
            cost += d.weight * frac * len;
        }
    }
    cost + (1.0 - inside_total).max(0.0) * len
}

/// Splits the straight segment `pq` at disk boundaries into pieces priced by
/// the region each one traverses, in travel order.
pub fn split_segment(scene: &Scene, p: Point, q: Point) -> Vec<Piece> {
    let len = p.dist(q);
    if len == 0.0 {
        return Vec::new();
    }
    let dir = q - p;
    let mut spans: Vec<(f64, f64, f64)> = Vec::new();
    for d in scene.disks() {
        if !crate::geometry::segment_crosses_interior_tol(p, q, d, scene.tolerance()) {
            continue;
        }
        let w = p - d.center;
        let a = dir.norm_sq();
        let b = w.dot(dir);
        let c = w.norm_sq() - d.radius * d.radius;
        let disc = (b * b - a * c).max(0.0).sqrt();
        let t0 = ((-b - disc) / a).max(0.0);
        let t1 = ((-b + disc) / a).min(1.0);
        if t1 > t0 {
            spans.push((t0, t1, d.weight));
        }
    }
    spans.sort_by(|x, y| x.0.total_cmp(&y.0));
    let at = |t: f64| if t >= 1.0 { q } else { p + dir * t };
    let mut pieces = Vec::new();
    let mut cursor = 0.0;
    for (t0, t1, w) in spans {
        if t0 > cursor {
            pieces.push(Piece::Segment {
                from: at(cursor),
                to: at(t0),
                multiplier: 1.0,
            });
        }
        pieces.push(Piece::Segment {
            from: at(t0.max(cursor)),
            to: at(t1),
            multiplier: w,
        });
        cursor = t1;
    }
    if cursor < 1.0 {
        pieces.push(Piece::Segment {
            from: at(cursor),
            to: q,
            multiplier: 1.0,
        });
    }
    pieces
}
