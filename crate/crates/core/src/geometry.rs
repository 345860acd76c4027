//! Planar primitives for circles: points, weighted disks, arcs, tangents and
//! visibility predicates.
//!
//! All computations use `f64`. Predicates that decide tangency or boundary
//! membership take an explicit absolute tolerance; the scene supplies one
//! proportional to its diameter.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used by the convenience predicates that take no explicit one.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A point (or vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    /// Horizontal coordinate.
    pub x: f64,
    /// Vertical coordinate.
    pub y: f64,
}

impl Point {
    /// Creates a point from its coordinates.
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing in direction `angle`.
    pub fn polar(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin())
    }

    /// Dot product.
    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    /// Euclidean norm.
    pub fn norm(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    /// Squared Euclidean norm.
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Euclidean distance to `o`.
    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Squared Euclidean distance to `o`.
    pub fn dist_sq(self, o: Self) -> f64 {
        (self - o).norm_sq()
    }

    /// Direction angle of the vector in `(-π, π]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// The vector scaled to unit length (zero stays zero).
    pub fn unit(self) -> Self {
        let n = self.norm();
        if n == 0.0 {
            self
        } else {
            self * (1.0 / n)
        }
    }

    /// Whether both coordinates are finite.
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A weighted circular region.
///
/// Travelling through the interior costs `weight` per unit length, travelling
/// along the boundary costs `min(1, weight)`, and the ambient plane costs 1.
/// An infinite weight (`f64::INFINITY`) marks an impassable obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    /// User-facing identifier.
    pub id: i64,
    /// Center of the disk.
    pub center: Point,
    /// Radius, strictly positive.
    pub radius: f64,
    /// Cost per unit length inside the disk; may be `f64::INFINITY`.
    pub weight: f64,
}

impl Disk {
    /// Creates a disk.
    pub fn new(id: i64, center: Point, radius: f64, weight: f64) -> Self {
        Self {
            id,
            center,
            radius,
            weight,
        }
    }

    /// Weight clamped to `π/2`; larger weights never make interior travel
    /// worthwhile, so they behave exactly like `π/2`.
    pub fn effective_weight(&self) -> f64 {
        self.weight.min(PI / 2.0)
    }

    /// Cost per unit length of travelling along the boundary.
    pub fn arc_multiplier(&self) -> f64 {
        self.weight.min(1.0)
    }

    /// Whether interior chords may be used (weight strictly below `π/2`).
    pub fn allows_chords(&self) -> bool {
        self.weight < PI / 2.0
    }

    /// Boundary point at polar angle `angle`.
    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::polar(angle) * self.radius
    }

    /// Polar angle of `p` about the center, normalized to `[0, 2π)`.
    pub fn angle_of(&self, p: Point) -> f64 {
        normalize_angle((p - self.center).angle())
    }

    /// Signed distance from `p` to the boundary (negative inside).
    pub fn boundary_offset(&self, p: Point) -> f64 {
        p.dist(self.center) - self.radius
    }
}

/// Direction of travel along a circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Clockwise (decreasing angle).
    Cw,
    /// Counter-clockwise (increasing angle).
    Ccw,
}

impl Orientation {
    /// The opposite orientation.
    pub fn reversed(self) -> Self {
        match self {
            Orientation::Cw => Orientation::Ccw,
            Orientation::Ccw => Orientation::Cw,
        }
    }
}

/// A circular arc on the boundary of a disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    /// Index of the disk in its scene.
    pub disk: usize,
    /// Start angle in `[0, 2π)`.
    pub start_angle: f64,
    /// End angle in `[0, 2π)`.
    pub end_angle: f64,
    /// Direction of travel from start to end.
    pub orientation: Orientation,
}

impl Arc {
    /// Creates an arc, normalizing both angles.
    pub fn new(disk: usize, start_angle: f64, end_angle: f64, orientation: Orientation) -> Self {
        Self {
            disk,
            start_angle: normalize_angle(start_angle),
            end_angle: normalize_angle(end_angle),
            orientation,
        }
    }

    /// Swept angle in `[0, 2π)`.
    pub fn sweep(&self) -> f64 {
        match self.orientation {
            Orientation::Ccw => ccw_sweep(self.start_angle, self.end_angle),
            Orientation::Cw => ccw_sweep(self.end_angle, self.start_angle),
        }
    }

    /// Euclidean length on a circle of radius `radius`.
    pub fn length(&self, radius: f64) -> f64 {
        radius * self.sweep()
    }

    /// The same endpoints traversed the other way around the circle.
    pub fn complement(&self) -> Self {
        Self {
            orientation: self.orientation.reversed(),
            ..*self
        }
    }

    /// The same arc traversed from end to start.
    pub fn reversed(&self) -> Self {
        Self {
            disk: self.disk,
            start_angle: self.end_angle,
            end_angle: self.start_angle,
            orientation: self.orientation.reversed(),
        }
    }

    /// Angle reached after sweeping the fraction `t ∈ [0, 1]` of the arc.
    pub fn angle_at(&self, t: f64) -> f64 {
        let s = self.sweep() * t;
        match self.orientation {
            Orientation::Ccw => normalize_angle(self.start_angle + s),
            Orientation::Cw => normalize_angle(self.start_angle - s),
        }
    }
}

/// Normalizes an angle to `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    if (0.0..TAU).contains(&a) {
        return a;
    }
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Counter-clockwise angle swept from `from` to `to`, in `[0, 2π)`.
pub fn ccw_sweep(from: f64, to: f64) -> f64 {
    normalize_angle(to - from)
}

/// Shorter angular separation of two angles, in `[0, π]`; symmetric in its
/// arguments.
pub fn angular_separation(a: f64, b: f64) -> f64 {
    let d = normalize_angle((a - b).abs());
    d.min(TAU - d)
}

/// Distance from `c` to the closed segment `pq`.
pub fn point_segment_distance(c: Point, p: Point, q: Point) -> f64 {
    let d = q - p;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return c.dist(p);
    }
    let t = ((c - p).dot(d) / len_sq).clamp(0.0, 1.0);
    c.dist(p + d * t)
}

/// Whether the open segment `(p, q)` enters the open interior of `d` deeper
/// than `tol`. Touching the boundary (tangency) does not count.
pub fn segment_crosses_interior_tol(p: Point, q: Point, d: &Disk, tol: f64) -> bool {
    let limit = d.radius - tol;
    if limit <= 0.0 {
        return false;
    }
    let dir = q - p;
    let len_sq = dir.norm_sq();
    let t = if len_sq == 0.0 {
        0.0
    } else {
        ((d.center - p).dot(dir) / len_sq).clamp(0.0, 1.0)
    };
    (p + dir * t - d.center).norm_sq() < limit * limit
}

/// Whether the open segment `(p, q)` intersects the open interior of `d`;
/// boundary tangency returns `false`.
pub fn segment_crosses_interior(p: Point, q: Point, d: &Disk) -> bool {
    segment_crosses_interior_tol(p, q, d, DEFAULT_TOLERANCE * d.radius.max(1.0))
}

/// Tangency points on `d` of the lines through `p`.
///
/// Two points when `p` is outside, the (projected) point itself when `p` is on
/// the boundary within `tol`, and nothing when `p` is inside.
pub fn tangents_from_point_tol(p: Point, d: &Disk, tol: f64) -> Vec<Point> {
    let off = p - d.center;
    let dist = off.norm();
    if (dist - d.radius).abs() <= tol {
        return vec![d.point_at(off.angle())];
    }
    if dist < d.radius {
        return Vec::new();
    }
    let psi = off.angle();
    let beta = (d.radius / dist).acos();
    vec![d.point_at(psi + beta), d.point_at(psi - beta)]
}

/// [`tangents_from_point_tol`] with the default tolerance.
pub fn tangents_from_point(p: Point, d: &Disk) -> Vec<Point> {
    tangents_from_point_tol(p, d, DEFAULT_TOLERANCE * d.radius.max(1.0))
}

/// Points where a path leaving `p` enters the boundary of the circle
/// `(center, radius)` when the boundary costs `mult ∈ [0, 1]` per unit length.
///
/// The optimal approach is tangent to the concentric circle of radius
/// `mult · radius`: for `mult = 1` these are the classic tangency points, for
/// `mult = 0` the single closest boundary point. Returns nothing when `p` is
/// not strictly outside the circle.
pub fn entry_points(p: Point, center: Point, radius: f64, mult: f64) -> Vec<Point> {
    let off = p - center;
    let dist = off.norm();
    if dist <= radius {
        return Vec::new();
    }
    let rho = mult * radius;
    let psi = off.angle();
    if rho <= radius * 1e-15 {
        return vec![center + Point::polar(psi) * radius];
    }
    let beta = (rho / dist).acos();
    let half_chord = (radius * radius - rho * rho).max(0.0).sqrt();
    [psi + beta, psi - beta]
        .iter()
        .map(|&a| {
            let touch = center + Point::polar(a) * rho;
            let dir = (touch - p).unit();
            p + dir * (touch.dist(p) - half_chord)
        })
        .collect()
}

/// Common tangent lines of two disjoint circles `(c1, r1)` and `(c2, r2)`
/// (radii may be zero), returned as `(touch_1, touch_2)` pairs with
/// near-identical lines removed.
fn circle_common_tangents(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<(Point, Point)> {
    let axis = c2 - c1;
    let dist = axis.norm();
    let phi = axis.angle();
    let mut out: Vec<(Point, Point)> = Vec::with_capacity(4);
    let scale = dist.max(r1).max(r2).max(1.0);
    let mut push = |a: Point, b: Point| {
        if !out
            .iter()
            .any(|&(x, y)| x.dist(a) <= 1e-12 * scale && y.dist(b) <= 1e-12 * scale)
        {
            out.push((a, b));
        }
    };
    let ext = ((r1 - r2) / dist).clamp(-1.0, 1.0).acos();
    for s in [1.0, -1.0] {
        let n = Point::polar(phi + s * ext);
        push(c1 + n * r1, c2 + n * r2);
    }
    let int = ((r1 + r2) / dist).clamp(-1.0, 1.0).acos();
    for s in [1.0, -1.0] {
        let n = Point::polar(phi + s * int);
        push(c1 + n * r1, c2 - n * r2);
    }
    out
}

/// Free segments that leave disk 1 and reach disk 2 optimally when their
/// boundaries cost `m1`, `m2 ∈ [0, 1]` per unit length.
///
/// Each segment lies on a common tangent of the inner circles of radii
/// `m1·R1` and `m2·R2`, clipped to where it exits disk 1 and enters disk 2.
/// With both multipliers equal to 1 these are the four classic common
/// tangents; degenerate duplicates (zero inner radii) are removed.
pub fn weighted_common_tangents(d1: &Disk, m1: f64, d2: &Disk, m2: f64) -> Vec<(Point, Point)> {
    let r1 = m1 * d1.radius;
    let r2 = m2 * d2.radius;
    let h1 = (d1.radius * d1.radius - r1 * r1).max(0.0).sqrt();
    let h2 = (d2.radius * d2.radius - r2 * r2).max(0.0).sqrt();
    circle_common_tangents(d1.center, r1, d2.center, r2)
        .into_iter()
        .map(|(t1, t2)| {
            let dir = (t2 - t1).unit();
            (t1 + dir * h1, t2 - dir * h2)
        })
        .collect()
}

/// All external and internal common tangent segments of two disjoint disks,
/// as `(tangency on d1, tangency on d2)`; always four for disjoint disks.
pub fn common_tangents(d1: &Disk, d2: &Disk) -> Vec<(Point, Point)> {
    let mut out = Vec::with_capacity(4);
    let axis = d2.center - d1.center;
    let dist = axis.norm();
    let phi = axis.angle();
    let ext = ((d1.radius - d2.radius) / dist).clamp(-1.0, 1.0).acos();
    for s in [1.0, -1.0] {
        let n = Point::polar(phi + s * ext);
        out.push((d1.center + n * d1.radius, d2.center + n * d2.radius));
    }
    let int = ((d1.radius + d2.radius) / dist).clamp(-1.0, 1.0).acos();
    for s in [1.0, -1.0] {
        let n = Point::polar(phi + s * int);
        out.push((d1.center + n * d1.radius, d2.center - n * d2.radius));
    }
    out
}

/// Chord length `2R·cos θ` for the inscribed angle `θ = ∠cpq` between the
/// chord and the radius at its endpoint.
pub fn chord_from_inscribed(radius: f64, theta: f64) -> Result<f64> {
    if !(0.0..PI / 2.0).contains(&theta) {
        return Err(Error::AngleOutOfRange(theta));
    }
    Ok(2.0 * radius * theta.cos())
}

/// Arc length `R·(π − 2θ)` complementary to the chord of inscribed angle `θ`.
pub fn arc_from_inscribed(radius: f64, theta: f64) -> Result<f64> {
    if !(0.0..PI / 2.0).contains(&theta) {
        return Err(Error::AngleOutOfRange(theta));
    }
    Ok(radius * (PI - 2.0 * theta))
}

/// The shorter arc of `d` from `a` to `b` and its Euclidean length; exact
/// half-circles are traversed counter-clockwise.
pub fn arc_between(d: &Disk, d_index: usize, a: Point, b: Point, tol: f64) -> Result<(Arc, f64)> {
    for p in [a, b] {
        let off = d.boundary_offset(p).abs();
        if off > tol {
            return Err(Error::NotOnBoundary(off));
        }
    }
    let (ta, tb) = (d.angle_of(a), d.angle_of(b));
    let ccw = ccw_sweep(ta, tb);
    let orientation = if ccw <= PI {
        Orientation::Ccw
    } else {
        Orientation::Cw
    };
    let arc = Arc::new(d_index, ta, tb, orientation);
    Ok((arc, arc.length(d.radius)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> Disk {
        Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY)
    }

    #[test]
    fn crossing_examples() {
        let d = unit();
        assert!(segment_crosses_interior(Point::new(-2.0, 0.0), Point::new(2.0, 0.0), &d));
        assert!(!segment_crosses_interior(Point::new(-2.0, 1.0), Point::new(2.0, 1.0), &d));
        assert!(segment_crosses_interior(Point::new(-2.0, 0.5), Point::new(2.0, 0.5), &d));
    }

    #[test]
    fn tangents_from_outside_point() {
        let t = tangents_from_point(Point::new(2.0, 0.0), &unit());
        assert_eq!(t.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(t.iter().any(|p| p.dist(Point::new(0.5, h)) < 1e-12));
        assert!(t.iter().any(|p| p.dist(Point::new(0.5, -h)) < 1e-12));
    }

    #[test]
    fn tangents_degenerate_cases() {
        let on = tangents_from_point(Point::new(0.0, 1.0), &unit());
        assert_eq!(on.len(), 1);
        assert!(on[0].dist(Point::new(0.0, 1.0)) < 1e-12);
        assert!(tangents_from_point(Point::new(0.2, 0.1), &unit()).is_empty());
    }

    #[test]
    fn equal_disks_common_tangents() {
        let a = Disk::new(0, Point::new(0.0, 0.0), 1.0, 1.0);
        let b = Disk::new(1, Point::new(4.0, 0.0), 1.0, 1.0);
        let t = common_tangents(&a, &b);
        assert_eq!(t.len(), 4);
        for sy in [1.0, -1.0] {
            assert!(t.iter().any(|(p, q)| p.dist(Point::new(0.0, sy)) < 1e-12
                && q.dist(Point::new(4.0, sy)) < 1e-12));
        }
        // Internal tangents pass through the midpoint (2, 0).
        for (p, q) in &t[2..] {
            let d = (*q - *p).unit();
            let to_mid = Point::new(2.0, 0.0) - *p;
            assert!(d.cross(to_mid).abs() < 1e-12);
        }
    }

    #[test]
    fn unequal_disks_match_angular_search() {
        let a = Disk::new(0, Point::new(0.0, 0.0), 1.0, 1.0);
        let b = Disk::new(1, Point::new(6.0, 0.0), 2.0, 1.0);
        let t = common_tangents(&a, &b);
        let expect = ((1.0f64 - 2.0) / 6.0).acos();
        assert_relative_eq!(a.angle_of(t[0].0), expect, epsilon = 1e-12);
        // Brute force: the line {x : n·x = R1} tangent to `a` at angle φ is an
        // external tangent when `b` touches it from the same side, i.e.
        // n·c2 + R2 = R1.
        let residual = |phi: f64| {
            let n = Point::polar(phi);
            (b.center.dot(n) + 2.0 - 1.0).abs()
        };
        let mut best = (f64::INFINITY, 0.0);
        let steps = 200_000;
        for i in 0..steps {
            let phi = PI * i as f64 / steps as f64;
            let r = residual(phi);
            if r < best.0 {
                best = (r, phi);
            }
        }
        assert!((best.1 - expect).abs() < 1e-4);
    }

    #[test]
    fn weighted_tangents_reduce_to_classic() {
        let a = Disk::new(0, Point::new(0.0, 0.0), 1.0, 1.0);
        let b = Disk::new(1, Point::new(6.0, 1.0), 2.0, 1.0);
        let classic = common_tangents(&a, &b);
        let weighted = weighted_common_tangents(&a, 1.0, &b, 1.0);
        assert_eq!(weighted.len(), 4);
        for (p, q) in classic {
            assert!(weighted.iter().any(|(x, y)| x.dist(p) < 1e-12 && y.dist(q) < 1e-12));
        }
        // Both multipliers zero: a single segment along the center line.
        let radial = weighted_common_tangents(&a, 0.0, &b, 0.0);
        assert_eq!(radial.len(), 1);
        let dir = (b.center - a.center).unit();
        assert!(radial[0].0.dist(a.center + dir) < 1e-12);
        assert!(radial[0].1.dist(b.center - dir * 2.0) < 1e-12);
    }

    #[test]
    fn entry_points_bracket_the_cases() {
        let c = Point::new(0.0, 0.0);
        let p = Point::new(2.0, 0.0);
        let classic = entry_points(p, c, 1.0, 1.0);
        assert!(classic.iter().any(|q| q.dist(Point::new(0.5, 3f64.sqrt() / 2.0)) < 1e-12));
        let radial = entry_points(p, c, 1.0, 0.0);
        assert_eq!(radial, vec![Point::new(1.0, 0.0)]);
        for q in entry_points(p, c, 1.0, 0.5) {
            assert_relative_eq!(q.norm(), 1.0, epsilon = 1e-12);
            // The segment p→q does not enter the disk before q.
            assert!(point_segment_distance(c, p, q) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn chord_examples() {
        assert_relative_eq!(chord_from_inscribed(1.0, 0.0).unwrap(), 2.0);
        assert_relative_eq!(chord_from_inscribed(1.0, PI / 3.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(
            chord_from_inscribed(2.0, PI / 4.0).unwrap(),
            2.0 * 2f64.sqrt(),
            epsilon = 1e-15
        );
        assert!(chord_from_inscribed(1.0, PI / 2.0).is_err());
        assert!(chord_from_inscribed(1.0, -0.1).is_err());
    }

    #[test]
    fn arc_examples() {
        let d = Disk::new(0, Point::new(0.0, 0.0), 1.0, 1.0);
        let (arc, len) = arc_between(&d, 0, d.point_at(0.0), d.point_at(PI), 1e-9).unwrap();
        assert_relative_eq!(len, PI, epsilon = 1e-12);
        assert_eq!(arc.orientation, Orientation::Ccw);
        let (_, len) = arc_between(&d, 0, d.point_at(0.0), d.point_at(PI / 2.0), 1e-9).unwrap();
        assert_relative_eq!(len, PI / 2.0, epsilon = 1e-12);
        // Inscribed angle θ = π/6 at p: the chord to q subtends π − 2θ.
        let theta = PI / 6.0;
        let p = d.point_at(PI);
        let q = d.point_at(PI + (PI - 2.0 * theta));
        let (_, len) = arc_between(&d, 0, p, q, 1e-9).unwrap();
        assert_relative_eq!(len, 2.0 * PI / 3.0, epsilon = 1e-12);
        assert_relative_eq!(len, arc_from_inscribed(1.0, theta).unwrap(), epsilon = 1e-12);
        assert!(arc_between(&d, 0, Point::new(0.5, 0.0), q, 1e-9).is_err());
    }
}
