//! Validated scenes of pairwise-disjoint weighted disks, their derived
//! discretization constants, and the JSON scene file format.
//!
//! ```json
//! {"disks":[{"id":0,"cx":0,"cy":0,"r":1,"w":"inf"}],"query":{"s":[-2,0],"t":[2,0]}}
//! ```

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Disk, Point};

/// Relative factor turning the scene diameter into the absolute tolerance.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// A validated collection of disjoint disks with derived constants.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    disks: Vec<Disk>,
    clearance: Vec<f64>,
    c: f64,
    a: f64,
    diameter: f64,
    tolerance: f64,
}

/// Source and target of a query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryPoints {
    /// Source point.
    pub s: Point,
    /// Target point.
    pub t: Point,
}

/// A scene together with the optional query stored in the same file.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneFile {
    /// The validated scene.
    pub scene: Scene,
    /// Query block, when present.
    pub query: Option<QueryPoints>,
}

impl Scene {
    /// Validates `disks` and computes every derived constant.
    ///
    /// Disks must have positive finite radii, finite centers, non-negative
    /// weights and must be strictly separated (touching disks are rejected).
    pub fn new(disks: Vec<Disk>) -> Result<Self> {
        if disks.is_empty() {
            return Err(Error::EmptyScene);
        }
        for d in &disks {
            if !d.center.is_finite() {
                return Err(Error::NonFiniteCoordinate(d.id));
            }
            if !(d.radius > 0.0 && d.radius.is_finite()) {
                return Err(Error::NonPositiveRadius(d.id));
            }
            if d.weight.is_nan() || d.weight < 0.0 {
                return Err(Error::NegativeWeight(d.id));
            }
        }
        let diameter = scene_diameter(&disks);
        let tolerance = RELATIVE_TOLERANCE * diameter;
        let n = disks.len();
        let mut clearance = vec![f64::INFINITY; n];
        for j in 0..n {
            for k in j + 1..n {
                let gap = disks[j].center.dist(disks[k].center) - disks[j].radius - disks[k].radius;
                if gap <= tolerance {
                    return Err(Error::Overlap(disks[j].id, disks[k].id));
                }
                clearance[j] = clearance[j].min(gap);
                clearance[k] = clearance[k].min(gap);
            }
        }
        // A lone disk has no neighbour; its radius stands in for the clearance
        // so that min{d, R} = R in every formula.
        if n == 1 {
            clearance[0] = disks[0].radius;
        }
        let max_r = disks.iter().map(|d| d.radius).fold(0.0, f64::max);
        let min_d = clearance.iter().copied().fold(f64::INFINITY, f64::min);
        let c = (PI / 2.0 * max_r) / min_d;
        let a = constant_a(c);
        Ok(Self {
            disks,
            clearance,
            c,
            a,
            diameter,
            tolerance,
        })
    }

    /// Returns a copy using `tolerance` as the absolute tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// The disks, in input order.
    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    /// Disk at index `i`.
    pub fn disk(&self, i: usize) -> &Disk {
        &self.disks[i]
    }

    /// Number of disks.
    pub fn len(&self) -> usize {
        self.disks.len()
    }

    /// Always false: validated scenes have at least one disk.
    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    /// Clearance `d_i`: distance from disk `i` to its nearest neighbour.
    pub fn clearance(&self, i: usize) -> f64 {
        self.clearance[i]
    }

    /// Global constants `(c, a)` driving the discretization density.
    pub fn global_constants(&self) -> (f64, f64) {
        (self.c, self.a)
    }

    /// Diagonal of the bounding box of all disks.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// Absolute tolerance for boundary and tangency tests.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Weighted angular radius `α_i` of disk `i` (weight clamped to `π/2`).
    pub fn weighted_angular_radius(&self, i: usize) -> Result<f64> {
        let d = &self.disks[i];
        let w = d.effective_weight();
        if w <= 0.0 {
            return Err(Error::ZeroWeight(d.id));
        }
        let r = d.radius;
        let s = self.clearance[i].min(r) * w.min(1.0) / (4.0 * r * w.max(1.0));
        Ok(s.asin())
    }

    /// Index of the disk whose open interior contains `p` deeper than the
    /// tolerance, if any.
    pub fn containing_disk(&self, p: Point) -> Option<usize> {
        self.disks
            .iter()
            .position(|d| d.boundary_offset(p) < -self.tolerance)
    }

    /// Index and boundary angle of the disk `p` lies on (within tolerance).
    pub fn boundary_of(&self, p: Point) -> Option<(usize, f64)> {
        self.disks
            .iter()
            .position(|d| d.boundary_offset(p).abs() <= self.tolerance)
            .map(|i| (i, self.disks[i].angle_of(p)))
    }

    /// Whether the segment `pq` crosses no disk interior.
    pub fn visible(&self, p: Point, q: Point) -> bool {
        !self
            .disks
            .iter()
            .any(|d| crate::geometry::segment_crosses_interior_tol(p, q, d, self.tolerance))
    }

    /// Checks that `p` is a legal query point.
    pub fn check_terminal(&self, p: Point) -> Result<()> {
        if let Some(i) = self.containing_disk(p) {
            if self.disks[i].weight.is_infinite() {
                return Err(Error::TerminalInsideObstacle(self.disks[i].id));
            }
        }
        Ok(())
    }
}

/// `a = (1 + 3c + √(9c² + 10c + 1)) / 2`.
pub fn constant_a(c: f64) -> f64 {
    (1.0 + 3.0 * c + (9.0 * c * c + 10.0 * c + 1.0).sqrt()) / 2.0
}

fn scene_diameter(disks: &[Disk]) -> f64 {
    let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
    for d in disks {
        lo.x = lo.x.min(d.center.x - d.radius);
        lo.y = lo.y.min(d.center.y - d.radius);
        hi.x = hi.x.max(d.center.x + d.radius);
        hi.y = hi.y.max(d.center.y + d.radius);
    }
    (hi - lo).norm()
}

/// Validates a scene; alias of [`Scene::new`].
pub fn validate(disks: Vec<Disk>) -> Result<Scene> {
    Scene::new(disks)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightRepr {
    Number(f64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiskRepr {
    id: i64,
    cx: f64,
    cy: f64,
    r: f64,
    w: WeightRepr,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QueryRepr {
    s: [f64; 2],
    t: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    disks: Vec<DiskRepr>,
    #[serde(default)]
    query: Option<QueryRepr>,
}

/// Parses and validates a scene from JSON text.
pub fn parse_scene(text: &str) -> Result<SceneFile> {
    let repr: FileRepr = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let mut disks = Vec::with_capacity(repr.disks.len());
    for d in repr.disks {
        let weight = match d.w {
            WeightRepr::Number(w) => w,
            WeightRepr::Text(s) if s == "inf" => f64::INFINITY,
            WeightRepr::Text(s) => {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("disk {}: field \"w\" must be a number or \"inf\", got {s:?}", d.id),
                })
            }
        };
        disks.push(Disk::new(d.id, Point::new(d.cx, d.cy), d.r, weight));
    }
    let scene = Scene::new(disks)?;
    let query = repr.query.map(|q| QueryPoints {
        s: Point::new(q.s[0], q.s[1]),
        t: Point::new(q.t[0], q.t[1]),
    });
    Ok(SceneFile { scene, query })
}

/// Loads and validates a scene file.
pub fn load_scene(path: impl AsRef<Path>) -> Result<SceneFile> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::Io(e.to_string()))?;
    parse_scene(&text)
}

/// Serializes a scene (and optional query) to the JSON file format with 17
/// significant digits per number.
pub fn scene_to_json(scene: &Scene, query: Option<&QueryPoints>) -> String {
    let mut out = String::from("{\"disks\":[");
    for (i, d) in scene.disks().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let w = if d.weight.is_infinite() {
            "\"inf\"".to_string()
        } else {
            format_g17(d.weight)
        };
        let _ = write!(
            out,
            "\n  {{\"id\":{},\"cx\":{},\"cy\":{},\"r\":{},\"w\":{}}}",
            d.id,
            format_g17(d.center.x),
            format_g17(d.center.y),
            format_g17(d.radius),
            w
        );
    }
    out.push_str("\n]");
    if let Some(q) = query {
        let _ = write!(
            out,
            ",\n\"query\":{{\"s\":[{},{}],\"t\":[{},{}]}}",
            format_g17(q.s.x),
            format_g17(q.s.y),
            format_g17(q.t.x),
            format_g17(q.t.y)
        );
    }
    out.push_str("}\n");
    out
}

/// Writes a scene file.
pub fn save_scene(scene: &Scene, query: Option<&QueryPoints>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), scene_to_json(scene, query)).map_err(|e| Error::Io(e.to_string()))
}

/// Formats a finite number like C's `%.17g`: 17 significant digits, trailing
/// zeros removed, exponent notation outside `[1e-5, 1e17)`.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn disk(id: i64, x: f64, y: f64, r: f64, w: f64) -> Disk {
        Disk::new(id, Point::new(x, y), r, w)
    }

    #[test]
    fn two_separated_unit_disks() {
        let s = Scene::new(vec![disk(1, 0.0, 0.0, 1.0, 1.0), disk(2, 3.0, 0.0, 1.0, 1.0)]).unwrap();
        assert_relative_eq!(s.clearance(0), 1.0, epsilon = 1e-15);
        assert_relative_eq!(s.clearance(1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn touching_disks_overlap() {
        let e = Scene::new(vec![disk(1, 0.0, 0.0, 1.0, 1.0), disk(2, 2.0, 0.0, 1.0, 1.0)]);
        assert_eq!(e.unwrap_err(), Error::Overlap(1, 2));
    }

    #[test]
    fn invalid_fields_rejected() {
        assert_eq!(Scene::new(vec![]).unwrap_err(), Error::EmptyScene);
        assert_eq!(
            Scene::new(vec![disk(4, 0.0, 0.0, 0.0, 1.0)]).unwrap_err(),
            Error::NonPositiveRadius(4)
        );
        assert_eq!(
            Scene::new(vec![disk(5, 0.0, 0.0, 1.0, -1.0)]).unwrap_err(),
            Error::NegativeWeight(5)
        );
    }

    #[test]
    fn single_disk_uses_radius_as_clearance() {
        let s = Scene::new(vec![disk(0, 0.0, 0.0, 2.5, 1.0)]).unwrap();
        assert_eq!(s.clearance(0), 2.5);
        let alpha = s.weighted_angular_radius(0).unwrap();
        assert_relative_eq!(alpha, 0.25f64.asin(), epsilon = 1e-15);
    }

    #[test]
    fn angular_radius_examples() {
        let pair = |r: f64, w: f64| {
            Scene::new(vec![disk(0, 0.0, 0.0, r, w), disk(1, 2.0 * r + 1.0, 0.0, r, 1.0)]).unwrap()
        };
        assert_relative_eq!(
            pair(1.0, 1.0).weighted_angular_radius(0).unwrap(),
            0.252_680_255_142_078_65,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            pair(1.0, PI / 2.0).weighted_angular_radius(0).unwrap(),
            (1.0 / (2.0 * PI)).asin(),
            epsilon = 1e-15
        );
        assert_relative_eq!(
            pair(2.0, 1.0).weighted_angular_radius(0).unwrap(),
            0.125f64.asin(),
            epsilon = 1e-15
        );
        // Weights above π/2 are clamped.
        assert_eq!(
            pair(1.0, 7.0).weighted_angular_radius(0).unwrap(),
            pair(1.0, PI / 2.0).weighted_angular_radius(0).unwrap()
        );
        assert_eq!(pair(1.0, 0.0).weighted_angular_radius(0), Err(Error::ZeroWeight(0)));
    }

    #[test]
    fn constant_examples() {
        assert_relative_eq!(constant_a(1.0), 2.0 + 5f64.sqrt(), epsilon = 1e-15);
        assert!(constant_a(1e-6) > 1.0 && constant_a(1e-6) < 1.0 + 1e-5);
        // max R = 1, min d = π/2 gives c = 1.
        let s = Scene::new(vec![disk(0, 0.0, 0.0, 1.0, 1.0), disk(1, 2.0 + PI / 2.0, 0.0, 1.0, 1.0)]).unwrap();
        assert_relative_eq!(s.global_constants().0, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn a_matches_auxiliary_identity() {
        for c in [0.01, 0.3, 1.0, 2.5, 40.0] {
            let a = constant_a(c);
            let b = (6.0 * a + 2.0) / (a - 1.0);
            assert_relative_eq!(a, b * c / 2.0, max_relative = 1e-9);
        }
    }

    #[test]
    fn parse_minimal_and_infinite_weight() {
        let f = parse_scene(r#"{"disks":[{"id":3,"cx":0,"cy":0,"r":1,"w":"inf"}]}"#).unwrap();
        assert_eq!(f.scene.len(), 1);
        assert!(f.scene.disk(0).weight.is_infinite());
        assert!(f.query.is_none());
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = parse_scene("{\"disks\":[\n{\"id\":1,\"cx\":0,\"cy\":0,\"r\":1,\"w\":}]}").unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let e = parse_scene(r#"{"disks":[{"id":1,"cx":0,"cy":0,"r":1,"w":"heavy"}]}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }

    #[test]
    fn parse_overlap_is_validation_error() {
        let e = parse_scene(
            r#"{"disks":[{"id":1,"cx":0,"cy":0,"r":1,"w":1},{"id":2,"cx":1,"cy":0,"r":1,"w":1}]}"#,
        )
        .unwrap_err();
        assert_eq!(e, Error::Overlap(1, 2));
    }

    #[test]
    fn g17_formatting() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(-2.5), "-2.5");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1e-7), "9.9999999999999995e-8");
        assert_eq!(format_g17(PI).parse::<f64>().unwrap(), PI);
    }
}
