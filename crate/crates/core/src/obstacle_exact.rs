//! Exact shortest paths that never enter a disk interior.
//!
//! Paths that stay outside all open disks alternate free segments and
//! boundary arcs. With arcs on disk `i` priced at `m_i = min(1, ω_i)`, a free
//! segment leaves (or reaches) a disk tangentially to the concentric circle of
//! radius `m_i·R_i`: classic tangents for obstacles (`m = 1`) and radial
//! segments for zero-weight regions (`m = 0`). Two structures are built on this
//! fact:
//!
//! * [`VisGraph`], the explicit extended visibility graph between two query
//!   points, solved with Dijkstra by [`exact_path`];
//! * [`TangentField`], the query-independent part of that graph with all-pairs
//!   distances precomputed, so the curved-detour edge between any two points
//!   can be priced in a handful of operations.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{
    angular_separation, ccw_sweep, entry_points, weighted_common_tangents, Arc, Disk, Orientation,
    Point,
};
use crate::path::{Piece, WeightedPath};
use crate::scene::Scene;

/// A point on a disk boundary belonging to the tangent field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldNode {
    /// Disk index.
    pub disk: usize,
    /// Boundary angle.
    pub angle: f64,
    /// Canonical position `center + R·(cos, sin)(angle)`.
    pub pos: Point,
}

/// Where a path starting at an endpoint first touches a disk boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Anchor {
    /// Disk index.
    pub disk: usize,
    /// Boundary angle.
    pub angle: f64,
    /// Canonical boundary position.
    pub pos: Point,
    /// Length of the free segment from the endpoint (0 for its own disk).
    pub cost: f64,
}

/// A point prepared for curved-detour queries against a [`TangentField`].
#[derive(Debug, Clone, PartialEq)]
pub struct Endpoint {
    /// Position of the point.
    pub pos: Point,
    /// Boundary points reachable by a first free segment (or the point itself
    /// when it lies on a disk).
    pub anchors: Vec<Anchor>,
    /// Cheapest cost from the point to every field node.
    reach: Vec<f64>,
}

/// How a detour was realized, for geometry reconstruction.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Detour {
    Direct,
    SameDisk(usize, usize),
    Via { y: usize },
}

impl Endpoint {
    /// Cheapest cost from the point to every field node.
    pub(crate) fn reach(&self) -> &[f64] {
        &self.reach
    }
}

/// Query-independent tangent graph with all-pairs distances.
#[derive(Debug, Clone)]
pub struct TangentField {
    disks: Vec<Disk>,
    mults: Vec<f64>,
    tol: f64,
    nodes: Vec<FieldNode>,
    by_disk: Vec<Vec<usize>>,
    dist: Vec<f64>,
    next: Vec<u32>,
    arc_orientation: HashMap<(u32, u32), Orientation>,
}

const NO_HOP: u32 = u32::MAX;

fn add_boundary_node(nodes: &mut Vec<FieldNode>, disks: &[Disk], tol: f64, disk: usize, p: Point) -> usize {
    let d = &disks[disk];
    let angle = d.angle_of(p);
    if let Some(k) = nodes
        .iter()
        .position(|n| n.disk == disk && angular_separation(n.angle, angle) * d.radius <= tol)
    {
        return k;
    }
    nodes.push(FieldNode {
        disk,
        angle,
        pos: d.point_at(angle),
    });
    nodes.len() - 1
}

fn visible(disks: &[Disk], tol: f64, p: Point, q: Point) -> bool {
    !disks
        .iter()
        .any(|d| crate::geometry::segment_crosses_interior_tol(p, q, d, tol))
}

impl TangentField {
    /// Builds the field for `scene`, pricing arcs at `min(1, ω)`.
    pub fn new(scene: &Scene) -> Self {
        let disks: Vec<Disk> = scene.disks().to_vec();
        let mults: Vec<f64> = disks.iter().map(Disk::arc_multiplier).collect();
        let tol = scene.tolerance();
        let n = disks.len();
        let mut nodes = Vec::new();
        let mut segments = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for (x, y) in weighted_common_tangents(&disks[i], mults[i], &disks[j], mults[j]) {
                    let xp = disks[i].point_at(disks[i].angle_of(x));
                    let yp = disks[j].point_at(disks[j].angle_of(y));
                    if !visible(&disks, tol, xp, yp) {
                        continue;
                    }
                    let a = add_boundary_node(&mut nodes, &disks, tol, i, xp);
                    let b = add_boundary_node(&mut nodes, &disks, tol, j, yp);
                    segments.push((a, b));
                }
            }
        }
        let s = nodes.len();
        let mut by_disk = vec![Vec::new(); n];
        for (k, node) in nodes.iter().enumerate() {
            by_disk[node.disk].push(k);
        }
        for list in &mut by_disk {
            list.sort_by(|&a, &b| nodes[a].angle.total_cmp(&nodes[b].angle));
        }
        let mut dist = vec![f64::INFINITY; s * s];
        let mut next = vec![NO_HOP; s * s];
        let mut arc_orientation = HashMap::new();
        for k in 0..s {
            dist[k * s + k] = 0.0;
            next[k * s + k] = k as u32;
        }
        for &(a, b) in &segments {
            let w = nodes[a].pos.dist(nodes[b].pos);
            for (u, v) in [(a, b), (b, a)] {
                if w < dist[u * s + v] {
                    dist[u * s + v] = w;
                    next[u * s + v] = v as u32;
                }
            }
        }
        for (i, list) in by_disk.iter().enumerate() {
            if list.len() < 2 {
                continue;
            }
            let scale = mults[i] * disks[i].radius;
            for idx in 0..list.len() {
                let a = list[idx];
                let b = list[(idx + 1) % list.len()];
                let w = scale * ccw_sweep(nodes[a].angle, nodes[b].angle);
                for (u, v, o) in [(a, b, Orientation::Ccw), (b, a, Orientation::Cw)] {
                    if w < dist[u * s + v] {
                        dist[u * s + v] = w;
                        next[u * s + v] = v as u32;
                        arc_orientation.insert((u as u32, v as u32), o);
                    }
                }
            }
        }
        for k in 0..s {
            for i in 0..s {
                let dik = dist[i * s + k];
                if !dik.is_finite() {
                    continue;
                }
                for j in 0..s {
                    let cand = dik + dist[k * s + j];
                    if cand < dist[i * s + j] {
                        dist[i * s + j] = cand;
                        next[i * s + j] = next[i * s + k];
                    }
                }
            }
        }
        Self {
            disks,
            mults,
            tol,
            nodes,
            by_disk,
            dist,
            next,
            arc_orientation,
        }
    }

    /// Field nodes (common-tangent endpoints).
    pub fn nodes(&self) -> &[FieldNode] {
        &self.nodes
    }

    /// Shortest obstacle-avoiding cost between two field nodes.
    pub fn node_distance(&self, a: usize, b: usize) -> f64 {
        self.dist[a * self.nodes.len() + b]
    }

    /// Field nodes adjacent (in angular order) to `angle` on disk `disk`:
    /// `(node, sweep from angle, orientation of travel from angle)`.
    fn neighbours(&self, disk: usize, angle: f64) -> [(usize, f64, Orientation); 2] {
        let list = &self.by_disk[disk];
        let len = list.len();
        let idx = list.partition_point(|&k| self.nodes[k].angle < angle);
        let succ = list[idx % len];
        let pred = list[(idx + len - 1) % len];
        [
            (succ, ccw_sweep(angle, self.nodes[succ].angle), Orientation::Ccw),
            (pred, ccw_sweep(self.nodes[pred].angle, angle), Orientation::Cw),
        ]
    }

    /// Prepares `p` for detour queries. `own` is the `(disk, angle)` of the
    /// boundary `p` lies on, if any; `p` must not be inside any disk.
    pub fn endpoint(&self, p: Point, own: Option<(usize, f64)>) -> Endpoint {
        let mut anchors = Vec::new();
        if let Some((disk, angle)) = own {
            anchors.push(Anchor {
                disk,
                angle,
                pos: p,
                cost: 0.0,
            });
        }
        for (i, d) in self.disks.iter().enumerate() {
            if own.map(|o| o.0) == Some(i) {
                continue;
            }
            for y in entry_points(p, d.center, d.radius, self.mults[i]) {
                let angle = d.angle_of(y);
                let pos = d.point_at(angle);
                if visible(&self.disks, self.tol, p, pos) {
                    anchors.push(Anchor {
                        disk: i,
                        angle,
                        pos,
                        cost: p.dist(pos),
                    });
                }
            }
        }
        let s = self.nodes.len();
        let mut reach = vec![f64::INFINITY; s];
        for a in &anchors {
            if self.by_disk[a.disk].is_empty() {
                continue;
            }
            let scale = self.mults[a.disk] * self.disks[a.disk].radius;
            for (x, sweep, _) in self.neighbours(a.disk, a.angle) {
                let base = a.cost + scale * sweep;
                let row = &self.dist[x * s..(x + 1) * s];
                for (r, &d) in reach.iter_mut().zip(row) {
                    let c = base + d;
                    if c < *r {
                        *r = c;
                    }
                }
            }
        }
        Endpoint { pos: p, anchors, reach }
    }

    fn best(&self, e1: &Endpoint, e2: &Endpoint, direct_visible: bool) -> (f64, Detour) {
        let mut best = (f64::INFINITY, Detour::Direct);
        if direct_visible {
            best = (e1.pos.dist(e2.pos), Detour::Direct);
        }
        for (ia, a) in e1.anchors.iter().enumerate() {
            for (ib, b) in e2.anchors.iter().enumerate() {
                if a.disk == b.disk {
                    let arc = self.mults[a.disk] * self.disks[a.disk].radius * angular_separation(a.angle, b.angle);
                    let c = a.cost + arc + b.cost;
                    if c < best.0 {
                        best = (c, Detour::SameDisk(ia, ib));
                    }
                }
            }
        }
        // Both reach vectors already include every field path, so the best
        // detour through the field meets at a single field node.
        for (y, (&r1, &r2)) in e1.reach.iter().zip(&e2.reach).enumerate() {
            let c = r1 + r2;
            if c < best.0 {
                best = (c, Detour::Via { y });
            }
        }
        best
    }

    /// Cost of the cheapest path from `e1` to `e2` that enters no disk
    /// interior (arcs priced at `min(1, ω)`); the straight segment counts
    /// only when `direct_visible` is set.
    pub fn detour_cost(&self, e1: &Endpoint, e2: &Endpoint, direct_visible: bool) -> f64 {
        self.best(e1, e2, direct_visible).0
    }

    /// [`Self::detour_cost`] together with the path geometry.
    pub fn detour_route(&self, e1: &Endpoint, e2: &Endpoint, direct_visible: bool) -> (f64, Vec<Piece>) {
        let (cost, how) = self.best(e1, e2, direct_visible);
        let mut pieces = Vec::new();
        match how {
            Detour::Direct => pieces.push(segment(e1.pos, e2.pos)),
            Detour::SameDisk(ia, ib) => {
                let (a, b) = (e1.anchors[ia], e2.anchors[ib]);
                pieces.push(segment(e1.pos, a.pos));
                let o = if ccw_sweep(a.angle, b.angle) <= PI {
                    Orientation::Ccw
                } else {
                    Orientation::Cw
                };
                pieces.push(self.arc_piece(a.disk, a.angle, b.angle, o));
                pieces.push(segment(b.pos, e2.pos));
            }
            Detour::Via { y } => {
                let (a, x, o1) = self.reach_argmin(e1, y);
                let (b, z, o2) = self.reach_argmin(e2, y);
                pieces.push(segment(e1.pos, a.pos));
                pieces.push(self.arc_piece(a.disk, a.angle, self.nodes[x].angle, o1));
                self.field_pieces(x, y, &mut pieces);
                self.field_pieces(y, z, &mut pieces);
                pieces.push(self.arc_piece(b.disk, self.nodes[z].angle, b.angle, o2.reversed()));
                pieces.push(segment(b.pos, e2.pos));
            }
        }
        (cost, pieces)
    }

    fn reach_argmin(&self, e: &Endpoint, y: usize) -> (Anchor, usize, Orientation) {
        let s = self.nodes.len();
        let mut best = (f64::INFINITY, None);
        for a in &e.anchors {
            if self.by_disk[a.disk].is_empty() {
                continue;
            }
            let scale = self.mults[a.disk] * self.disks[a.disk].radius;
            for (x, sweep, o) in self.neighbours(a.disk, a.angle) {
                let c = a.cost + scale * sweep + self.dist[x * s + y];
                if c < best.0 {
                    best = (c, Some((*a, x, o)));
                }
            }
        }
        best.1.expect("finite reach implies an anchor")
    }

    fn field_pieces(&self, from: usize, to: usize, out: &mut Vec<Piece>) {
        let s = self.nodes.len();
        let mut cur = from;
        while cur != to {
            let nxt = self.next[cur * s + to] as usize;
            let (a, b) = (self.nodes[cur], self.nodes[nxt]);
            if a.disk == b.disk {
                let o = self.arc_orientation[&(cur as u32, nxt as u32)];
                out.push(self.arc_piece(a.disk, a.angle, b.angle, o));
            } else {
                out.push(segment(a.pos, b.pos));
            }
            cur = nxt;
        }
    }

    fn arc_piece(&self, disk: usize, from: f64, to: f64, o: Orientation) -> Piece {
        let d = &self.disks[disk];
        Piece::Arc {
            arc: Arc::new(disk, from, to, o),
            center: d.center,
            radius: d.radius,
            multiplier: self.mults[disk],
        }
    }
}

fn segment(from: Point, to: Point) -> Piece {
    Piece::Segment {
        from,
        to,
        multiplier: 1.0,
    }
}

/// Role of a visibility-graph node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisNodeKind {
    /// Source or target.
    Terminal,
    /// Endpoint of a tangent segment.
    Tangency,
}

/// A node of the extended visibility graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisNode {
    /// Position.
    pub pos: Point,
    /// Disk and angle when the node is on a boundary.
    pub on_disk: Option<(usize, f64)>,
    /// Role.
    pub kind: VisNodeKind,
}

/// Geometry of a visibility-graph edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VisEdgeKind {
    /// Straight tangent segment.
    Segment,
    /// Boundary arc travelled in the given direction.
    Arc(Orientation),
}

/// A directed half of an undirected visibility-graph edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisEdge {
    /// Head node.
    pub to: usize,
    /// Weighted length.
    pub weight: f64,
    /// Geometry.
    pub kind: VisEdgeKind,
}

/// Extended visibility graph: tangent endpoints, two terminals, tangent
/// segments and arcs between angularly consecutive nodes on each disk.
#[derive(Debug, Clone)]
pub struct VisGraph {
    /// Nodes; `source()` and `target()` are among them.
    pub nodes: Vec<VisNode>,
    /// Adjacency lists.
    pub adjacency: Vec<Vec<VisEdge>>,
    source: usize,
    target: usize,
}

impl VisGraph {
    /// Node id of the source.
    pub fn source(&self) -> usize {
        self.source
    }

    /// Node id of the target.
    pub fn target(&self) -> usize {
        self.target
    }

    /// Number of undirected edges of each kind `(segments, arcs)`.
    pub fn edge_counts(&self) -> (usize, usize) {
        let mut seg = 0;
        let mut arc = 0;
        for list in &self.adjacency {
            for e in list {
                match e.kind {
                    VisEdgeKind::Segment => seg += 1,
                    VisEdgeKind::Arc(_) => arc += 1,
                }
            }
        }
        (seg / 2, arc / 2)
    }

    fn add_edge(&mut self, a: usize, b: usize, weight: f64, kind: VisEdgeKind) {
        let back = match kind {
            VisEdgeKind::Segment => VisEdgeKind::Segment,
            VisEdgeKind::Arc(o) => VisEdgeKind::Arc(o.reversed()),
        };
        self.adjacency[a].push(VisEdge { to: b, weight, kind });
        self.adjacency[b].push(VisEdge {
            to: a,
            weight,
            kind: back,
        });
    }

    fn node_on(&mut self, scene: &Scene, disk: usize, p: Point, kind: VisNodeKind) -> usize {
        let d = scene.disk(disk);
        let angle = d.angle_of(p);
        if let Some(k) = self.nodes.iter().position(|n| {
            n.on_disk
                .is_some_and(|(i, a)| i == disk && angular_separation(a, angle) * d.radius <= scene.tolerance())
        }) {
            return k;
        }
        self.nodes.push(VisNode {
            pos: d.point_at(angle),
            on_disk: Some((disk, angle)),
            kind,
        });
        self.adjacency.push(Vec::new());
        self.nodes.len() - 1
    }
}

fn check_outside(scene: &Scene, p: Point) -> Result<()> {
    if let Some(i) = scene.containing_disk(p) {
        let d = scene.disk(i);
        return Err(if d.weight.is_infinite() {
            Error::TerminalInsideObstacle(d.id)
        } else {
            Error::TerminalInsideDisk(d.id)
        });
    }
    Ok(())
}

/// Builds the extended visibility graph for the query `(s, t)`, treating
/// every disk as impassable with arcs priced at `min(1, ω)`.
pub fn build_visgraph(scene: &Scene, s: Point, t: Point) -> Result<VisGraph> {
    check_outside(scene, s)?;
    check_outside(scene, t)?;
    let mut g = VisGraph {
        nodes: Vec::new(),
        adjacency: Vec::new(),
        source: 0,
        target: 0,
    };
    let disks = scene.disks();
    let mults: Vec<f64> = disks.iter().map(Disk::arc_multiplier).collect();
    let terminal = |g: &mut VisGraph, p: Point| match scene.boundary_of(p) {
        Some((i, _)) => g.node_on(scene, i, p, VisNodeKind::Terminal),
        None => {
            g.nodes.push(VisNode {
                pos: p,
                on_disk: None,
                kind: VisNodeKind::Terminal,
            });
            g.adjacency.push(Vec::new());
            g.nodes.len() - 1
        }
    };
    g.source = terminal(&mut g, s);
    g.target = terminal(&mut g, t);
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            for (x, y) in weighted_common_tangents(&disks[i], mults[i], &disks[j], mults[j]) {
                let xp = disks[i].point_at(disks[i].angle_of(x));
                let yp = disks[j].point_at(disks[j].angle_of(y));
                if scene.visible(xp, yp) {
                    let a = g.node_on(scene, i, xp, VisNodeKind::Tangency);
                    let b = g.node_on(scene, j, yp, VisNodeKind::Tangency);
                    g.add_edge(a, b, xp.dist(yp), VisEdgeKind::Segment);
                }
            }
        }
    }
    for term in [g.source, g.target] {
        let p = g.nodes[term].pos;
        let own = g.nodes[term].on_disk.map(|o| o.0);
        for (i, d) in disks.iter().enumerate() {
            if own == Some(i) {
                continue;
            }
            for y in entry_points(p, d.center, d.radius, mults[i]) {
                let yp = d.point_at(d.angle_of(y));
                if scene.visible(p, yp) {
                    let b = g.node_on(scene, i, yp, VisNodeKind::Tangency);
                    if b != term {
                        g.add_edge(term, b, p.dist(yp), VisEdgeKind::Segment);
                    }
                }
            }
        }
    }
    if g.source != g.target && scene.visible(s, t) {
        let (a, b) = (g.source, g.target);
        let w = g.nodes[a].pos.dist(g.nodes[b].pos);
        g.add_edge(a, b, w, VisEdgeKind::Segment);
    }
    for (i, d) in disks.iter().enumerate() {
        let mut on: Vec<(f64, usize)> = g
            .nodes
            .iter()
            .enumerate()
            .filter_map(|(k, n)| n.on_disk.filter(|o| o.0 == i).map(|o| (o.1, k)))
            .collect();
        if on.len() < 2 {
            continue;
        }
        on.sort_by(|a, b| a.0.total_cmp(&b.0));
        let pairs = if on.len() == 2 { 1 } else { on.len() };
        for idx in 0..pairs {
            let (a0, a) = on[idx];
            let (b0, b) = on[(idx + 1) % on.len()];
            let sweep = ccw_sweep(a0, b0);
            if on.len() == 2 {
                // Both arcs join the same pair; keep the cheaper one.
                let (sw, o) = if sweep <= PI {
                    (sweep, Orientation::Ccw)
                } else {
                    (2.0 * PI - sweep, Orientation::Cw)
                };
                g.add_edge(a, b, mults[i] * d.radius * sw, VisEdgeKind::Arc(o));
            } else {
                g.add_edge(a, b, mults[i] * d.radius * sweep, VisEdgeKind::Arc(Orientation::Ccw));
            }
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    node: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Binary-heap Dijkstra over adjacency lists of `(head, weight)` pairs given
/// by `edges`; ties are settled by smaller node id. Returns distances and
/// predecessors.
pub fn dijkstra<F, I>(n: usize, source: usize, mut edges: F) -> (Vec<f64>, Vec<usize>)
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = (usize, f64)>,
{
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapEntry { dist: 0.0, node: source });
    while let Some(HeapEntry { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for (v, w) in edges(u) {
            let cand = d + w;
            if cand < dist[v] {
                dist[v] = cand;
                prev[v] = u;
                heap.push(HeapEntry { dist: cand, node: v });
            }
        }
    }
    (dist, prev)
}

/// Exact shortest path from `s` to `t` when every disk weight lies in
/// `{0} ∪ [π/2, ∞]` (free regions and obstacles).
pub fn exact_path(scene: &Scene, s: Point, t: Point) -> Result<WeightedPath> {
    for d in scene.disks() {
        if d.weight > 0.0 && d.weight < PI / 2.0 {
            return Err(Error::UnsupportedWeight(d.id, d.weight));
        }
    }
    let g = build_visgraph(scene, s, t)?;
    let (dist, prev) = dijkstra(g.nodes.len(), g.source, |u| {
        g.adjacency[u].iter().map(|e| (e.to, e.weight)).collect::<Vec<_>>()
    });
    let total = dist[g.target];
    if !total.is_finite() {
        return Err(Error::Unreachable);
    }
    let mut chain = vec![g.target];
    while *chain.last().unwrap() != g.source {
        chain.push(prev[*chain.last().unwrap()]);
    }
    chain.reverse();
    let mut pieces = Vec::new();
    for w in chain.windows(2) {
        let (a, b) = (w[0], w[1]);
        let e = g.adjacency[a]
            .iter()
            .filter(|e| e.to == b)
            .min_by(|x, y| x.weight.total_cmp(&y.weight))
            .expect("edge on shortest path");
        match e.kind {
            VisEdgeKind::Segment => pieces.push(segment(g.nodes[a].pos, g.nodes[b].pos)),
            VisEdgeKind::Arc(o) => {
                let (i, from) = g.nodes[a].on_disk.expect("arc endpoint on disk");
                let (_, to) = g.nodes[b].on_disk.expect("arc endpoint on disk");
                let d = scene.disk(i);
                pieces.push(Piece::Arc {
                    arc: Arc::new(i, from, to, o),
                    center: d.center,
                    radius: d.radius,
                    multiplier: d.arc_multiplier(),
                });
            }
        }
    }
    Ok(WeightedPath::new(pieces, total))
}

/// Exact optimum from `s` on the boundary of `disk` to `t` outside or on the
/// boundary, when `disk` is the only region in the plane.
///
/// The optimum either stays outside (arc then free segment, departing
/// tangentially to the circle of radius `min(1, ω)·R`) or crosses the interior
/// along one chord `s → q` and continues outside from `q`; the exit point `q`
/// is found by dense sampling refined with golden-section search.
pub fn single_disk_optimum(disk: &Disk, s: Point, t: Point) -> Result<f64> {
    let tol = 1e-9 * disk.radius.max(1.0);
    let off = disk.boundary_offset(s).abs();
    if off > tol {
        return Err(Error::NotOnBoundary(off));
    }
    if disk.boundary_offset(t) < -tol {
        return Err(Error::TerminalInsideDisk(disk.id));
    }
    let m = disk.arc_multiplier();
    let r = disk.radius;
    let theta_t = disk.angle_of(t);
    let t_on_boundary = disk.boundary_offset(t).abs() <= tol;
    let entries: Vec<f64> = if t_on_boundary {
        vec![theta_t]
    } else {
        entry_points(t, disk.center, r, m)
            .into_iter()
            .map(|y| disk.angle_of(y))
            .collect()
    };
    let tail = |phi: f64| -> f64 {
        let q = disk.point_at(phi);
        let mut best = f64::INFINITY;
        for &e in &entries {
            let y = disk.point_at(e);
            best = best.min(m * r * angular_separation(phi, e) + y.dist(t));
        }
        if !t_on_boundary && !crate::geometry::segment_crosses_interior_tol(q, t, disk, tol) {
            best = best.min(q.dist(t));
        }
        best
    };
    let theta_s = disk.angle_of(s);
    let mut best = tail(theta_s);
    if disk.allows_chords() {
        let w = disk.weight;
        let total = |phi: f64| w * s.dist(disk.point_at(phi)) + tail(phi);
        for &e in &entries {
            best = best.min(total(e));
        }
        let samples = 4096;
        let step = 2.0 * PI / samples as f64;
        let values: Vec<f64> = (0..samples).map(|k| total(theta_s + k as f64 * step)).collect();
        for k in 0..samples {
            let (l, c, rr) = (values[(k + samples - 1) % samples], values[k], values[(k + 1) % samples]);
            if c <= l && c <= rr {
                let centre = theta_s + k as f64 * step;
                best = best.min(golden_section(&total, centre - step, centre + step, 1e-12));
            }
        }
    }
    Ok(best)
}

/// Minimum of `f` on `[lo, hi]` by golden-section search down to an interval
/// of width `tol`.
pub fn golden_section(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f(lo).min(f(hi)).min(f1).min(f2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
            best = best.min(f1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
            best = best.min(f2);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn blocker(w: f64) -> Scene {
        Scene::new(vec![Disk::new(0, Point::new(0.0, 0.0), 1.0, w)]).unwrap()
    }

    const S: Point = Point::new(-2.0, 0.0);
    const T: Point = Point::new(2.0, 0.0);

    #[test]
    fn unit_obstacle_value() {
        let p = exact_path(&blocker(f64::INFINITY), S, T).unwrap();
        assert_relative_eq!(p.total_weight, 2.0 * 3f64.sqrt() + PI / 3.0, max_relative = 1e-12);
        assert_relative_eq!(p.piece_weight(), p.total_weight, max_relative = 1e-12);
    }

    #[test]
    fn zero_region_goes_straight_through_closest_points() {
        let p = exact_path(&blocker(0.0), S, T).unwrap();
        assert_relative_eq!(p.total_weight, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn unobstructed_is_straight() {
        let p = exact_path(&blocker(f64::INFINITY), Point::new(-2.0, 3.0), Point::new(2.0, 3.0)).unwrap();
        assert_relative_eq!(p.total_weight, 4.0, max_relative = 1e-15);
        assert_eq!(p.pieces.len(), 1);
    }

    #[test]
    fn single_disk_graph_structure() {
        let g = build_visgraph(&blocker(f64::INFINITY), S, T).unwrap();
        assert_eq!(g.nodes.len(), 6);
        let (seg, arc) = g.edge_counts();
        assert_eq!(seg, 4);
        assert!(arc <= 4);
    }

    #[test]
    fn two_disks_add_common_tangent_nodes() {
        let scene = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY),
            Disk::new(1, Point::new(5.0, 0.0), 1.0, f64::INFINITY),
        ])
        .unwrap();
        let g = build_visgraph(&scene, Point::new(-3.0, 0.0), Point::new(8.0, 0.0)).unwrap();
        // 2 terminals, 2 tangency points of each terminal, 8 common-tangent points.
        assert_eq!(g.nodes.len(), 2 + 4 + 8);
    }

    #[test]
    fn blocked_tangent_is_filtered() {
        let scene = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY),
            Disk::new(1, Point::new(6.0, 0.0), 1.0, f64::INFINITY),
            Disk::new(2, Point::new(3.0, 1.0), 0.5, f64::INFINITY),
        ])
        .unwrap();
        let g = build_visgraph(&scene, Point::new(-3.0, 0.0), Point::new(9.0, 0.0)).unwrap();
        let top = (Point::new(0.0, 1.0), Point::new(6.0, 1.0));
        for (a, list) in g.adjacency.iter().enumerate() {
            for e in list {
                if e.kind == VisEdgeKind::Segment {
                    let (p, q) = (g.nodes[a].pos, g.nodes[e.to].pos);
                    assert!(!(p.dist(top.0) < 1e-9 && q.dist(top.1) < 1e-9));
                }
            }
        }
    }

    #[test]
    fn field_detour_matches_visgraph() {
        let scene = Scene::new(vec![
            Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY),
            Disk::new(1, Point::new(3.5, 0.4), 1.2, 0.0),
            Disk::new(2, Point::new(1.5, 3.0), 0.7, f64::INFINITY),
        ])
        .unwrap();
        let field = TangentField::new(&scene);
        for (s, t) in [
            (Point::new(-2.0, 0.1), Point::new(6.0, 0.0)),
            (Point::new(-1.5, -1.5), Point::new(2.0, 4.5)),
            (Point::new(1.6, 1.7), Point::new(-1.8, 0.3)),
        ] {
            let exact = exact_path(&scene, s, t).unwrap().total_weight;
            let (e1, e2) = (field.endpoint(s, None), field.endpoint(t, None));
            let (cost, pieces) = field.detour_route(&e1, &e2, scene.visible(s, t));
            assert_relative_eq!(cost, exact, max_relative = 1e-12);
            let path = WeightedPath::new(pieces, cost);
            assert_relative_eq!(path.piece_weight(), cost, max_relative = 1e-12);
        }
    }

    #[test]
    fn single_disk_zero_weight() {
        let d = Disk::new(0, Point::new(0.0, 0.0), 1.0, 0.0);
        let t = Point::new(2.0, 2.5);
        let v = single_disk_optimum(&d, d.point_at(2.0), t).unwrap();
        assert_relative_eq!(v, t.norm() - 1.0, max_relative = 1e-12);
    }

    #[test]
    fn single_disk_unit_weight_is_straight() {
        let d = Disk::new(0, Point::new(0.0, 0.0), 1.0, 1.0);
        let s = d.point_at(2.5);
        let t = Point::new(3.0, 0.5);
        assert_relative_eq!(single_disk_optimum(&d, s, t).unwrap(), s.dist(t), max_relative = 1e-12);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let v = golden_section(&|x: f64| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-12);
        assert_relative_eq!(v, 1.0, epsilon = 1e-15);
    }
}
