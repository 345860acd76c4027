//! The approximation graph over Steiner nodes and query points.
//!
//! The graph is complete and implicit: the weight of every pair is computed on
//! demand from the geometry, so memory stays linear in the node count and
//! Dijkstra runs in `O(V²)` edge evaluations.
//!
//! * Two nodes on the same disk are joined by the cheaper of the shorter
//!   boundary arc (priced `min(1, ω)`) and the interior chord (priced `ω`,
//!   only for `ω < π/2`).
//! * Mutually visible nodes are joined by a free segment.
//! * Other pairs are joined by the cheapest path that enters no disk
//!   interior (a *curved detour*), priced with the [`TangentField`].
//!
//! Query points strictly inside a finite-weight disk are connected by straight
//! segments whose interior stretch is priced at that disk's weight and whose
//! remainder follows the rules above from the boundary crossing. Edges at a
//! query point may also use the straight segment through disks that admit
//! chords, priced region by region, when that is cheaper.

use std::f64::consts::PI;

use serde::Serialize;

use crate::discretize::{NodeKind, SteinerNode, SteinerSet};
use crate::error::{Error, Result};
use crate::geometry::{angular_separation, ccw_sweep, segment_crosses_interior_tol, Arc, Orientation, Point};
use crate::obstacle_exact::{Endpoint, TangentField};
use crate::path::{segment_cost, split_segment, Piece, WeightedPath};
use crate::scene::Scene;

mod search;

/// How an edge is realized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    /// Shorter boundary arc between two nodes of one disk.
    BoundaryArc,
    /// Straight segment through a disk interior.
    InteriorChord,
    /// Straight segment crossing no disk interior.
    FreeSegment,
    /// Cheapest path avoiding all disk interiors.
    CurvedDetour,
}

impl EdgeClass {
    /// Lowercase name used in JSON output.
    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeClass::BoundaryArc => "boundary_arc",
            EdgeClass::InteriorChord => "interior_chord",
            EdgeClass::FreeSegment => "free_segment",
            EdgeClass::CurvedDetour => "curved_detour",
        }
    }
}

/// Where a graph node sits relative to the disks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Placement {
    /// On the boundary of a disk.
    Boundary {
        /// Disk index.
        disk: usize,
        /// Boundary angle.
        angle: f64,
    },
    /// Outside every disk.
    Free,
    /// Strictly inside a finite-weight disk.
    Inside {
        /// Disk index.
        disk: usize,
    },
}

/// A node of the graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphNode {
    /// Position.
    pub pos: Point,
    /// Location relative to the disks.
    pub placement: Placement,
    /// Origin of the node.
    pub kind: NodeKind,
}

/// Complete weighted graph over Steiner nodes and inserted terminals.
#[derive(Debug, Clone)]
pub struct PathGraph {
    scene: Scene,
    field: TangentField,
    nodes: Vec<GraphNode>,
    ends: Vec<Option<Endpoint>>,
    hot: Vec<Hot>,
    epsilon: Option<f64>,
}

/// Compact per-node record for the weight evaluation in Dijkstra's inner
/// loop.
#[derive(Debug, Clone, Copy)]
struct Hot {
    pos: Point,
    angle: f64,
    /// Disk index for boundary nodes, [`FREE`] for free nodes and
    /// [`SPECIAL`] for query points, which take the general route.
    disk: usize,
}

const FREE: usize = usize::MAX;
const SPECIAL: usize = usize::MAX - 1;

/// Builds the graph over a Steiner set.
pub fn build_graph(scene: &Scene, steiner: &SteinerSet) -> PathGraph {
    PathGraph::from_nodes(scene, &steiner.nodes, Some(steiner.epsilon))
}

impl PathGraph {
    /// Builds the graph over arbitrary boundary nodes.
    pub fn from_nodes(scene: &Scene, nodes: &[SteinerNode], epsilon: Option<f64>) -> Self {
        let field = TangentField::new(scene);
        let mut graph = Self {
            scene: scene.clone(),
            field,
            nodes: Vec::with_capacity(nodes.len() + 2),
            ends: Vec::with_capacity(nodes.len() + 2),
            hot: Vec::with_capacity(nodes.len() + 2),
            epsilon,
        };
        for n in nodes {
            let pos = scene.disk(n.disk).point_at(n.angle);
            graph.push(GraphNode {
                pos,
                placement: Placement::Boundary {
                    disk: n.disk,
                    angle: n.angle,
                },
                kind: n.kind,
            });
        }
        graph
    }

    fn push(&mut self, node: GraphNode) -> usize {
        let end = match node.placement {
            Placement::Boundary { disk, angle } => Some(self.field.endpoint(node.pos, Some((disk, angle)))),
            Placement::Free => Some(self.field.endpoint(node.pos, None)),
            Placement::Inside { .. } => None,
        };
        let (disk, angle) = match (node.kind, node.placement) {
            (NodeKind::Terminal, _) | (_, Placement::Inside { .. }) => (SPECIAL, 0.0),
            (_, Placement::Boundary { disk, angle }) => (disk, angle),
            (_, Placement::Free) => (FREE, 0.0),
        };
        self.hot.push(Hot {
            pos: node.pos,
            angle,
            disk,
        });
        self.nodes.push(node);
        self.ends.push(end);
        self.nodes.len() - 1
    }

    /// The scene the graph was built for.
    pub fn scene(&self) -> &Scene {
        &self.scene
    }

    /// All nodes; ids are indices into this slice.
    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Whether the graph has no nodes.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Approximation parameter of the Steiner set, if any.
    pub fn epsilon(&self) -> Option<f64> {
        self.epsilon
    }

    /// Number of undirected edges of the complete graph.
    pub fn edge_count(&self) -> usize {
        self.len() * self.len().saturating_sub(1) / 2
    }

    /// Adds a query point and returns its node id (an existing node is reused
    /// when `p` coincides with it).
    pub fn insert_terminal(&mut self, p: Point) -> Result<usize> {
        if !p.is_finite() {
            return Err(Error::NonFiniteCoordinate(-1));
        }
        self.scene.check_terminal(p)?;
        let tol = self.scene.tolerance();
        let placement = if let Some((disk, angle)) = self.scene.boundary_of(p) {
            let r = self.scene.disk(disk).radius;
            if let Some(k) = self.nodes.iter().position(|n| match n.placement {
                Placement::Boundary { disk: d, angle: a } => d == disk && angular_separation(a, angle) * r <= tol,
                _ => false,
            }) {
                return Ok(k);
            }
            Placement::Boundary { disk, angle }
        } else {
            if let Some(k) = self
                .nodes
                .iter()
                .position(|n| !matches!(n.placement, Placement::Boundary { .. }) && n.pos.dist(p) <= tol)
            {
                return Ok(k);
            }
            match self.scene.containing_disk(p) {
                Some(disk) => Placement::Inside { disk },
                None => Placement::Free,
            }
        };
        let pos = match placement {
            Placement::Boundary { disk, angle } => self.scene.disk(disk).point_at(angle),
            _ => p,
        };
        Ok(self.push(GraphNode {
            pos,
            placement,
            kind: NodeKind::Terminal,
        }))
    }

    /// Whether the straight segment between two nodes crosses no disk
    /// interior.
    pub fn visible(&self, u: usize, v: usize) -> bool {
        self.scene.visible(self.nodes[u].pos, self.nodes[v].pos)
    }

    /// Class and weight of the edge `{u, v}`; symmetric in its arguments.
    pub fn edge(&self, u: usize, v: usize) -> (EdgeClass, f64) {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let (class, w, _) = self.eval(a, b, false);
        (class, w)
    }

    /// Weight of the edge `{u, v}`.
    pub fn edge_weight(&self, u: usize, v: usize) -> f64 {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let (x, y) = (&self.hot[a], &self.hot[b]);
        if x.disk == SPECIAL || y.disk == SPECIAL {
            return self.eval(a, b, false).1;
        }
        if x.disk == y.disk && x.disk != FREE {
            return self.same_disk_choice(x.disk, x.angle, x.pos, y.angle, y.pos).1;
        }
        if self.scene.visible(x.pos, y.pos) {
            return x.pos.dist(y.pos);
        }
        match (&self.ends[a], &self.ends[b]) {
            (Some(e1), Some(e2)) => self.field.detour_cost(e1, e2, false),
            _ => self.eval(a, b, false).1,
        }
    }

    /// Class, weight and geometry (from `u` to `v`) of the edge `{u, v}`.
    pub fn edge_route(&self, u: usize, v: usize) -> (EdgeClass, f64, Vec<Piece>) {
        if u < v {
            self.eval(u, v, true)
        } else {
            let (c, w, pieces) = self.eval(v, u, true);
            (c, w, pieces.iter().rev().map(Piece::reversed).collect())
        }
    }

    /// Every undirected edge `(u, v, class, weight)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeClass, f64)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |u| {
            (u + 1..n).map(move |v| {
                let (c, w) = self.edge(u, v);
                (u, v, c, w)
            })
        })
    }

    /// Dense `V × V` matrix of edge weights (zero diagonal).
    pub fn weight_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut m = vec![0.0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let w = self.edge_weight(u, v);
                m[u * n + v] = w;
                m[v * n + u] = w;
            }
        }
        m
    }

    /// Shorter arc versus chord between the boundary points `p` (angle
    /// `alpha`) and `q` (angle `beta`) of one disk: `(use chord, cost)`.
    fn same_disk_choice(&self, disk: usize, alpha: f64, p: Point, beta: f64, q: Point) -> (bool, f64) {
        let d = self.scene.disk(disk);
        let arc_cost = d.arc_multiplier() * d.radius * angular_separation(alpha, beta);
        if d.allows_chords() {
            let c2 = p.dist_sq(q);
            let chord_cost = d.weight * c2.sqrt();
            if c2 > chord_threshold_sq(d.radius, self.scene.tolerance()) && chord_cost < arc_cost {
                return (true, chord_cost);
            }
        }
        (false, arc_cost)
    }

    fn same_disk(&self, disk: usize, alpha: f64, p: Point, beta: f64, q: Point, want: bool) -> (EdgeClass, f64, Vec<Piece>) {
        let d = self.scene.disk(disk);
        let (chord, cost) = self.same_disk_choice(disk, alpha, p, beta, q);
        if chord {
            let pieces = if want {
                vec![Piece::Segment {
                    from: p,
                    to: q,
                    multiplier: d.weight,
                }]
            } else {
                Vec::new()
            };
            return (EdgeClass::InteriorChord, cost, pieces);
        }
        let pieces = if want {
            let o = if ccw_sweep(alpha, beta) <= PI {
                Orientation::Ccw
            } else {
                Orientation::Cw
            };
            vec![Piece::Arc {
                arc: Arc::new(disk, alpha, beta, o),
                center: d.center,
                radius: d.radius,
                multiplier: d.arc_multiplier(),
            }]
        } else {
            Vec::new()
        };
        (EdgeClass::BoundaryArc, cost, pieces)
    }

    /// Point where the ray from `p` (inside disk `disk`) towards `q` leaves
    /// the disk, as `(angle, canonical point)`.
    fn exit_point(&self, disk: usize, p: Point, q: Point) -> (f64, Point) {
        let d = self.scene.disk(disk);
        let dir = (q - p).unit();
        let w = p - d.center;
        let b = w.dot(dir);
        let c = w.norm_sq() - d.radius * d.radius;
        let s = -b + (b * b - c).max(0.0).sqrt();
        let angle = d.angle_of(p + dir * s);
        (angle, d.point_at(angle))
    }

    /// Exterior connection between two points outside all interiors.
    fn exterior(
        &self,
        p: Point,
        p_end: Option<&Endpoint>,
        p_own: Option<(usize, f64)>,
        q: Point,
        q_end: Option<&Endpoint>,
        q_own: Option<(usize, f64)>,
        want: bool,
    ) -> (EdgeClass, f64, Vec<Piece>) {
        if let (Some((i, a)), Some((j, b))) = (p_own, q_own) {
            if i == j {
                return self.same_disk(i, a, p, b, q, want);
            }
        }
        if self.scene.visible(p, q) {
            let pieces = if want {
                vec![Piece::Segment {
                    from: p,
                    to: q,
                    multiplier: 1.0,
                }]
            } else {
                Vec::new()
            };
            return (EdgeClass::FreeSegment, p.dist(q), pieces);
        }
        let owned_p;
        let e1 = match p_end {
            Some(e) => e,
            None => {
                owned_p = self.field.endpoint(p, p_own);
                &owned_p
            }
        };
        let owned_q;
        let e2 = match q_end {
            Some(e) => e,
            None => {
                owned_q = self.field.endpoint(q, q_own);
                &owned_q
            }
        };
        if want {
            let (w, pieces) = self.field.detour_route(e1, e2, false);
            (EdgeClass::CurvedDetour, w, pieces)
        } else {
            (EdgeClass::CurvedDetour, self.field.detour_cost(e1, e2, false), Vec::new())
        }
    }

    fn own(&self, u: usize) -> Option<(usize, f64)> {
        match self.nodes[u].placement {
            Placement::Boundary { disk, angle } => Some((disk, angle)),
            _ => None,
        }
    }

    fn eval(&self, u: usize, v: usize, want: bool) -> (EdgeClass, f64, Vec<Piece>) {
        let (class, w, pieces) = self.eval_rules(u, v, want);
        let (nu, nv) = (self.nodes[u], self.nodes[v]);
        let terminal = nu.kind == NodeKind::Terminal || nv.kind == NodeKind::Terminal;
        if !terminal || class == EdgeClass::FreeSegment || class == EdgeClass::BoundaryArc {
            return (class, w, pieces);
        }
        // A query point may also travel straight through disks that admit
        // chords, each stretch priced at the weight of the region it crosses.
        let tol = self.scene.tolerance();
        let chordable = self.scene.disks().iter().all(|d| {
            d.allows_chords() || !segment_crosses_interior_tol(nu.pos, nv.pos, d, tol)
        });
        if !chordable {
            return (class, w, pieces);
        }
        let straight = segment_cost(&self.scene, nu.pos, nv.pos);
        if straight < w {
            let pieces = if want {
                split_segment(&self.scene, nu.pos, nv.pos)
            } else {
                Vec::new()
            };
            (EdgeClass::InteriorChord, straight, pieces)
        } else {
            (class, w, pieces)
        }
    }

    fn eval_rules(&self, u: usize, v: usize, want: bool) -> (EdgeClass, f64, Vec<Piece>) {
        let (nu, nv) = (self.nodes[u], self.nodes[v]);
        let inside = |n: &GraphNode| match n.placement {
            Placement::Inside { disk } => Some(disk),
            _ => None,
        };
        let disk_of = |n: &GraphNode| match n.placement {
            Placement::Inside { disk } | Placement::Boundary { disk, .. } => Some(disk),
            Placement::Free => None,
        };
        match (inside(&nu), inside(&nv)) {
            (None, None) => self.exterior(
                nu.pos,
                self.ends[u].as_ref(),
                self.own(u),
                nv.pos,
                self.ends[v].as_ref(),
                self.own(v),
                want,
            ),
            _ if disk_of(&nu).is_some() && disk_of(&nu) == disk_of(&nv) => {
                let d = self.scene.disk(disk_of(&nu).unwrap());
                let pieces = if want {
                    vec![Piece::Segment {
                        from: nu.pos,
                        to: nv.pos,
                        multiplier: d.weight,
                    }]
                } else {
                    Vec::new()
                };
                (EdgeClass::InteriorChord, d.weight * nu.pos.dist(nv.pos), pieces)
            }
            (iu, iv) => {
                // Split the straight segment where it leaves the interior
                // disk(s) and connect the crossing points by the exterior rule.
                let mut cost = 0.0;
                let mut head = Vec::new();
                let mut tail = Vec::new();
                let (p, p_end, p_own) = match iu {
                    Some(disk) => {
                        let (angle, x) = self.exit_point(disk, nu.pos, nv.pos);
                        let w = self.scene.disk(disk).weight;
                        cost += w * nu.pos.dist(x);
                        if want {
                            head.push(Piece::Segment {
                                from: nu.pos,
                                to: x,
                                multiplier: w,
                            });
                        }
                        (x, None, Some((disk, angle)))
                    }
                    None => (nu.pos, self.ends[u].as_ref(), self.own(u)),
                };
                let (q, q_end, q_own) = match iv {
                    Some(disk) => {
                        let (angle, y) = self.exit_point(disk, nv.pos, nu.pos);
                        let w = self.scene.disk(disk).weight;
                        cost += w * nv.pos.dist(y);
                        if want {
                            tail.push(Piece::Segment {
                                from: y,
                                to: nv.pos,
                                multiplier: w,
                            });
                        }
                        (y, None, Some((disk, angle)))
                    }
                    None => (nv.pos, self.ends[v].as_ref(), self.own(v)),
                };
                let (class, w, mid) = self.exterior(p, p_end, p_own, q, q_end, q_own, want);
                head.extend(mid);
                head.extend(tail);
                (class, cost + w, head)
            }
        }
    }

    /// Dense Dijkstra from `source`, stopping once `target` is settled.
    /// Ties are settled by smaller node id.
    fn dijkstra(&self, source: usize, target: Option<usize>) -> (Vec<f64>, Vec<usize>) {
        search::dijkstra(self, source, target)
    }

    /// Graph distances from `source` to every node.
    pub fn distances_from(&self, source: usize) -> Vec<f64> {
        self.dijkstra(source, None).0
    }

    /// Minimum-weight path between two nodes, with its geometry.
    pub fn shortest_path(&self, s: usize, t: usize) -> Result<WeightedPath> {
        for id in [s, t] {
            if id >= self.len() {
                return Err(Error::InvalidNode(id));
            }
        }
        if s == t {
            return Ok(WeightedPath::new(Vec::new(), 0.0));
        }
        let (dist, prev) = self.dijkstra(s, Some(t));
        if !dist[t].is_finite() {
            return Err(Error::Unreachable);
        }
        let mut chain = vec![t];
        while *chain.last().unwrap() != s {
            chain.push(prev[*chain.last().unwrap()]);
        }
        chain.reverse();
        let mut pieces = Vec::new();
        for w in chain.windows(2) {
            pieces.extend(self.edge_route(w[0], w[1]).2);
        }
        Ok(WeightedPath::new(pieces, dist[t]))
    }

    /// Node sequence of a minimum-weight path.
    pub fn shortest_node_path(&self, s: usize, t: usize) -> Result<(f64, Vec<usize>)> {
        let (dist, prev) = self.dijkstra(s, Some(t));
        if !dist[t].is_finite() {
            return Err(Error::Unreachable);
        }
        let mut chain = vec![t];
        while *chain.last().unwrap() != s {
            chain.push(prev[*chain.last().unwrap()]);
        }
        chain.reverse();
        Ok((dist[t], chain))
    }
}

/// Builds the graph for `epsilon`, inserts `s` and `t` and returns the
/// shortest path between them.
pub fn approximate_path(scene: &Scene, epsilon: f64, s: Point, t: Point) -> Result<WeightedPath> {
    let steiner = crate::discretize::build_steiner_set(scene, epsilon)?;
    let mut graph = build_graph(scene, &steiner);
    let si = graph.insert_terminal(s)?;
    let ti = graph.insert_terminal(t)?;
    graph.shortest_path(si, ti)
}

/// Squared chord length above which a chord's sagitta `R − √(R² − c²/4)`
/// exceeds `tol`; shorter chords are numerically the arc and not offered.
fn chord_threshold_sq(radius: f64, tol: f64) -> f64 {
    4.0 * tol * (2.0 * radius - tol)
}
