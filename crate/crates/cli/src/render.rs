//! Deterministic SVG rendering of scenes, Steiner nodes, graph edges and
//! paths.
//!
//! Every coordinate is printed with three decimals and elements are emitted
//! in input order, so identical inputs produce byte-identical documents.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;

use diskpath::geometry::{Orientation, Point};
use diskpath::path::{Piece, WeightedPath};
use diskpath::pathgraph::EdgeClass;
use diskpath::scene::Scene;

/// Stroke used for one edge class.
#[derive(Debug, Clone, PartialEq)]
pub struct Stroke {
    /// CSS color.
    pub color: String,
    /// Width in pixels.
    pub width: f64,
    /// Optional dash pattern (`stroke-dasharray`).
    pub dash: Option<String>,
}

impl Stroke {
    fn new(color: &str, width: f64, dash: Option<&str>) -> Self {
        Self {
            color: color.to_string(),
            width,
            dash: dash.map(str::to_string),
        }
    }

    fn attributes(&self) -> String {
        let mut s = format!("stroke=\"{}\" stroke-width=\"{}\" fill=\"none\"", self.color, num(self.width));
        if let Some(d) = &self.dash {
            let _ = write!(s, " stroke-dasharray=\"{d}\"");
        }
        s
    }
}

/// Canvas size, strokes per edge class and the disk fill ramp.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Width of the canvas in pixels (the height follows the scene aspect).
    pub width: u32,
    /// Margin around the scene, in pixels.
    pub margin: f64,
    /// Strokes for boundary arcs, interior chords, free segments and curved
    /// detours, in that order.
    pub edge_strokes: [Stroke; 4],
    /// Stroke of the highlighted path.
    pub path_stroke: Stroke,
    /// Disk fill at weight 0 (RGB).
    pub light: [u8; 3],
    /// Disk fill at weight `π/2` and above (RGB).
    pub dark: [u8; 3],
    /// Fill of impassable disks.
    pub obstacle: String,
    /// Radius of node dots in pixels.
    pub dot_radius: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: 800,
            margin: 20.0,
            edge_strokes: [
                Stroke::new("#1565c0", 1.0, None),
                Stroke::new("#6a1b9a", 1.0, None),
                Stroke::new("#9e9e9e", 0.6, None),
                Stroke::new("#ef6c00", 0.8, Some("4 3")),
            ],
            path_stroke: Stroke::new("#d50000", 2.5, None),
            light: [0xe8, 0xf5, 0xe9],
            dark: [0x45, 0x5a, 0x64],
            obstacle: "#212121".to_string(),
            dot_radius: 1.5,
        }
    }
}

impl RenderOptions {
    fn stroke_for(&self, class: EdgeClass) -> &Stroke {
        match class {
            EdgeClass::BoundaryArc => &self.edge_strokes[0],
            EdgeClass::InteriorChord => &self.edge_strokes[1],
            EdgeClass::FreeSegment => &self.edge_strokes[2],
            EdgeClass::CurvedDetour => &self.edge_strokes[3],
        }
    }

    /// Fill color for a disk of weight `w`.
    pub fn fill(&self, w: f64) -> String {
        if w.is_infinite() {
            return self.obstacle.clone();
        }
        let t = (w / FRAC_PI_2).clamp(0.0, 1.0);
        let mix = |i: usize| (self.light[i] as f64 + (self.dark[i] as f64 - self.light[i] as f64) * t).round() as u8;
        format!("#{:02x}{:02x}{:02x}", mix(0), mix(1), mix(2))
    }
}

/// What to draw on top of the disks.
#[derive(Debug, Clone, Default)]
pub struct Layers<'a> {
    /// Graph edges, each drawn with the stroke of its class.
    pub edges: Vec<(EdgeClass, Vec<Piece>)>,
    /// Node dots.
    pub nodes: Vec<Point>,
    /// Highlighted path.
    pub path: Option<&'a WeightedPath>,
    /// Query points.
    pub terminals: Vec<Point>,
}

/// Formats a number with three decimals, without a negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".to_string()
    } else {
        s
    }
}

struct Frame {
    min: Point,
    max_y: f64,
    scale: f64,
    margin: f64,
}

impl Frame {
    fn new(scene: &Scene, extra: &[Point], options: &RenderOptions) -> (Self, f64) {
        let (mut lo, mut hi) = (Point::new(f64::MAX, f64::MAX), Point::new(f64::MIN, f64::MIN));
        let mut grow = |p: Point, r: f64| {
            lo.x = lo.x.min(p.x - r);
            lo.y = lo.y.min(p.y - r);
            hi.x = hi.x.max(p.x + r);
            hi.y = hi.y.max(p.y + r);
        };
        for d in scene.disks() {
            grow(d.center, d.radius);
        }
        for &p in extra {
            grow(p, 0.0);
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-9);
        let usable = options.width as f64 - 2.0 * options.margin;
        let scale = usable / (hi.x - lo.x).max(span * 1e-3);
        let height = (hi.y - lo.y) * scale + 2.0 * options.margin;
        (
            Self {
                min: lo,
                max_y: hi.y,
                scale,
                margin: options.margin,
            },
            height,
        )
    }

    fn x(&self, p: Point) -> String {
        num((p.x - self.min.x) * self.scale + self.margin)
    }

    fn y(&self, p: Point) -> String {
        num((self.max_y - p.y) * self.scale + self.margin)
    }

    fn len(&self, l: f64) -> String {
        num(l * self.scale)
    }

    /// SVG path data for one piece (without the leading move).
    fn piece(&self, piece: &Piece) -> String {
        match *piece {
            Piece::Segment { to, .. } => format!("L {} {}", self.x(to), self.y(to)),
            Piece::Arc { arc, radius, .. } => {
                let sweep = arc.sweep();
                let end = piece.end();
                // The y axis is flipped, so counter-clockwise in the plane is
                // the positive-angle (clockwise-looking) SVG direction.
                let flag = match arc.orientation {
                    Orientation::Ccw => 1,
                    Orientation::Cw => 0,
                };
                format!(
                    "A {r} {r} 0 {} {flag} {} {}",
                    u8::from(sweep > PI),
                    self.x(end),
                    self.y(end),
                    r = self.len(radius)
                )
            }
        }
    }

    fn pieces(&self, pieces: &[Piece]) -> Option<String> {
        let first = pieces.first()?;
        let mut d = format!("M {} {}", self.x(first.start()), self.y(first.start()));
        for p in pieces {
            d.push(' ');
            d.push_str(&self.piece(p));
        }
        Some(d)
    }
}

/// Renders `scene` and `layers` as a standalone SVG document.
pub fn render_svg(scene: &Scene, layers: &Layers, options: &RenderOptions) -> String {
    let mut extra: Vec<Point> = layers.terminals.clone();
    if let Some(p) = layers.path {
        extra.extend(p.pieces.iter().flat_map(|x| [x.start(), x.end()]));
    }
    let (frame, height) = Frame::new(scene, &extra, options);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        options.width,
        num(height),
        options.width,
        num(height)
    );
    let _ = writeln!(out, "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>");
    let _ = writeln!(out, "<g id=\"disks\">");
    for d in scene.disks() {
        let weight = if d.weight.is_infinite() {
            "inf".to_string()
        } else {
            num(d.weight)
        };
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#263238\" stroke-width=\"1.000\"><title>disk {} w={}</title></circle>",
            frame.x(d.center),
            frame.y(d.center),
            frame.len(d.radius),
            options.fill(d.weight),
            d.id,
            weight
        );
    }
    let _ = writeln!(out, "</g>");
    if !layers.edges.is_empty() {
        let _ = writeln!(out, "<g id=\"edges\">");
        for (class, pieces) in &layers.edges {
            if let Some(d) = frame.pieces(pieces) {
                let _ = writeln!(
                    out,
                    "<path class=\"{}\" d=\"{d}\" {}/>",
                    class.as_str(),
                    options.stroke_for(*class).attributes()
                );
            }
        }
        let _ = writeln!(out, "</g>");
    }
    if !layers.nodes.is_empty() {
        let _ = writeln!(out, "<g id=\"nodes\" fill=\"#0d47a1\">");
        for &p in &layers.nodes {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                frame.x(p),
                frame.y(p),
                num(options.dot_radius)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    if let Some(path) = layers.path {
        if let Some(d) = frame.pieces(&path.pieces) {
            let _ = writeln!(
                out,
                "<path id=\"path\" d=\"{d}\" {}><title>weight {}</title></path>",
                options.path_stroke.attributes(),
                num(path.total_weight)
            );
        }
    }
    if !layers.terminals.is_empty() {
        let _ = writeln!(out, "<g id=\"terminals\" fill=\"#d50000\">");
        for &p in &layers.terminals {
            let _ = writeln!(
                out,
                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                frame.x(p),
                frame.y(p),
                num(3.0 * options.dot_radius)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use diskpath::geometry::Disk;

    #[test]
    fn fill_ramp_endpoints() {
        let options = RenderOptions::default();
        assert_eq!(options.fill(0.0), "#e8f5e9");
        assert_eq!(options.fill(FRAC_PI_2), "#455a64");
        assert_eq!(options.fill(3.0), "#455a64");
        assert_eq!(options.fill(f64::INFINITY), "#212121");
    }

    #[test]
    fn no_negative_zero() {
        assert_eq!(num(-0.0001), "0.000");
        assert_eq!(num(1.23456), "1.235");
    }

    #[test]
    fn disks_become_circles() {
        let scene = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 1.0, 0.5),
            Disk::new(1, Point::new(3.0, 0.0), 1.0, f64::INFINITY),
        ])
        .unwrap();
        let svg = render_svg(&scene, &Layers::default(), &RenderOptions::default());
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }
}
