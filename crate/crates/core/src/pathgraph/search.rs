//! Dense Dijkstra over the implicit complete graph.
//!
//! Unsettled boundary nodes are kept per disk in compacted
//! structure-of-arrays blocks, so a settled node relaxes only live nodes, and
//! its weights to a whole block are evaluated in loops over the targets that
//! the compiler can vectorize: arc-or-chord pricing on the node's own disk;
//! visibility, anchor arcs and the tangent-field min-plus on the others. The
//! arithmetic is the one of [`PathGraph::edge_weight`]; query points and
//! other special nodes go through `edge_weight` itself. On x86-64 the block
//! kernels are additionally compiled for AVX2 and selected at runtime; the
//! loops are element-wise, so both versions produce identical results.

use std::f64::consts::TAU;

use super::{chord_threshold_sq, PathGraph};
use crate::geometry::Disk;

/// Shorter angular separation of two angles in `[0, 2π)`, as computed by
/// [`crate::geometry::angular_separation`] for such inputs.
#[inline(always)]
fn separation(a: f64, b: f64) -> f64 {
    let gap = (a - b).abs();
    gap.min(TAU - gap)
}

/// Live nodes of one disk.
struct Block {
    disk: usize,
    ids: Vec<usize>,
    xs: Vec<f64>,
    ys: Vec<f64>,
    angles: Vec<f64>,
    dist: Vec<f64>,
    prev: Vec<usize>,
    /// `reach[y][slot]`: cost from the node to tangent-field node `y`.
    reach: Vec<Vec<f64>>,
    /// `anchors[k]`: per slot, the anchors on disk `k` as parallel
    /// `(angles, costs)` columns padded with `+∞` costs.
    anchors: Vec<Vec<(Vec<f64>, Vec<f64>)>>,
}

impl Block {
    fn len(&self) -> usize {
        self.ids.len()
    }

    fn swap_remove(&mut self, slot: usize) {
        self.ids.swap_remove(slot);
        self.xs.swap_remove(slot);
        self.ys.swap_remove(slot);
        self.angles.swap_remove(slot);
        self.dist.swap_remove(slot);
        self.prev.swap_remove(slot);
        for row in &mut self.reach {
            row.swap_remove(slot);
        }
        for per_disk in &mut self.anchors {
            for (angles, costs) in per_disk {
                angles.swap_remove(slot);
                costs.swap_remove(slot);
            }
        }
    }
}

/// Live nodes evaluated through [`PathGraph::edge_weight`].
#[derive(Default)]
struct Rest {
    ids: Vec<usize>,
    dist: Vec<f64>,
    prev: Vec<usize>,
}

/// Where a live node is stored: `(group, slot)` with group `blocks.len()`
/// standing for [`Rest`].
type Slot = (usize, usize);

struct Search<'g> {
    graph: &'g PathGraph,
    blocks: Vec<Block>,
    rest: Rest,
    /// Block index of each disk.
    block_of_disk: Vec<Option<usize>>,
    slot: Vec<Slot>,
    /// Scratch weights for one block.
    weights: Vec<f64>,
    /// Scratch visibility flags for one block.
    visible: Vec<bool>,
}

impl<'g> Search<'g> {
    fn new(graph: &'g PathGraph) -> Self {
        let scene = &graph.scene;
        let n = graph.len();
        let field = graph.field.nodes().len();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); scene.len()];
        let mut rest = Rest::default();
        for (id, h) in graph.hot.iter().enumerate() {
            match graph.ends[id].as_ref() {
                Some(_) if h.disk < scene.len() => members[h.disk].push(id),
                _ => {
                    rest.ids.push(id);
                    rest.dist.push(f64::INFINITY);
                    rest.prev.push(usize::MAX);
                }
            }
        }
        let mut blocks = Vec::new();
        let mut block_of_disk = vec![None; scene.len()];
        for (disk, ids) in members.into_iter().enumerate() {
            if ids.is_empty() {
                continue;
            }
            let ends: Vec<_> = ids.iter().map(|&id| graph.ends[id].as_ref().expect("boundary endpoint")).collect();
            let reach = (0..field).map(|y| ends.iter().map(|e| e.reach()[y]).collect()).collect();
            let anchors = (0..scene.len())
                .map(|k| {
                    if k == disk {
                        return Vec::new();
                    }
                    let width = ends
                        .iter()
                        .map(|e| e.anchors.iter().filter(|a| a.disk == k).count())
                        .max()
                        .unwrap_or(0);
                    (0..width)
                        .map(|s| {
                            let pick = |e: &&crate::obstacle_exact::Endpoint| e.anchors.iter().filter(|a| a.disk == k).nth(s).copied();
                            let angles = ends.iter().map(|e| pick(e).map_or(0.0, |a| a.angle)).collect();
                            let costs = ends.iter().map(|e| pick(e).map_or(f64::INFINITY, |a| a.cost)).collect();
                            (angles, costs)
                        })
                        .collect()
                })
                .collect();
            block_of_disk[disk] = Some(blocks.len());
            blocks.push(Block {
                disk,
                xs: ids.iter().map(|&id| graph.hot[id].pos.x).collect(),
                ys: ids.iter().map(|&id| graph.hot[id].pos.y).collect(),
                angles: ids.iter().map(|&id| graph.hot[id].angle).collect(),
                dist: vec![f64::INFINITY; ids.len()],
                prev: vec![usize::MAX; ids.len()],
                reach,
                anchors,
                ids,
            });
        }
        let mut slot = vec![(0, 0); n];
        for (g, b) in blocks.iter().enumerate() {
            for (s, &id) in b.ids.iter().enumerate() {
                slot[id] = (g, s);
            }
        }
        for (s, &id) in rest.ids.iter().enumerate() {
            slot[id] = (blocks.len(), s);
        }
        Self {
            graph,
            blocks,
            rest,
            block_of_disk,
            slot,
            weights: Vec::new(),
            visible: Vec::new(),
        }
    }

    fn set_source(&mut self, source: usize) {
        let (g, s) = self.slot[source];
        if g == self.blocks.len() {
            self.rest.dist[s] = 0.0;
        } else {
            self.blocks[g].dist[s] = 0.0;
        }
    }

    /// Live node with the smallest tentative distance (ties by smaller id).
    fn argmin(&self) -> Option<(usize, f64, usize)> {
        let mut best: Option<(usize, f64, usize)> = None;
        let groups = self
            .blocks
            .iter()
            .map(|b| (&b.ids, &b.dist, &b.prev))
            .chain(std::iter::once((&self.rest.ids, &self.rest.dist, &self.rest.prev)));
        for (ids, dist, prev) in groups {
            let mut local = f64::INFINITY;
            let mut at = usize::MAX;
            for (s, &d) in dist.iter().enumerate() {
                if d < local || (d == local && d < f64::INFINITY && ids[s] < ids[at]) {
                    local = d;
                    at = s;
                }
            }
            if at == usize::MAX {
                continue;
            }
            let id = ids[at];
            let better = match best {
                None => true,
                Some((bid, bd, _)) => local < bd || (local == bd && id < bid),
            };
            if better {
                best = Some((id, local, prev[at]));
            }
        }
        best
    }

    fn remove(&mut self, id: usize) {
        let (g, s) = self.slot[id];
        if g == self.blocks.len() {
            self.rest.ids.swap_remove(s);
            self.rest.dist.swap_remove(s);
            self.rest.prev.swap_remove(s);
            if let Some(&moved) = self.rest.ids.get(s) {
                self.slot[moved] = (g, s);
            }
        } else {
            let b = &mut self.blocks[g];
            b.swap_remove(s);
            if let Some(&moved) = b.ids.get(s) {
                self.slot[moved] = (g, s);
            }
        }
    }

    /// Relaxes every live node from the settled node `u` at distance `base`;
    /// `p` is the predecessor of `u`.
    ///
    /// Same-disk weights are geodesic distances inside the disk (a chord or
    /// a boundary arc, whichever is cheaper), so they obey the triangle
    /// inequality: when `u` was reached from a node of its own disk, that
    /// node already offered every node of the disk a candidate at least as
    /// good, and the same-disk relaxation is skipped.
    fn relax(&mut self, u: usize, base: f64, p: usize) {
        let graph = self.graph;
        let own = self.member_of(u);
        let reached_along_disk = own.is_some() && p != usize::MAX && self.member_of(p) == own;
        for g in 0..self.blocks.len() {
            if self.blocks[g].len() == 0 {
                continue;
            }
            match own {
                Some(o) if o == g => {
                    if !reached_along_disk {
                        self.relax_same_disk(g, u, base);
                    }
                }
                Some(_) => self.relax_other_disk(g, u, base),
                None => {
                    let b = &mut self.blocks[g];
                    for s in 0..b.ids.len() {
                        let cand = base + graph.edge_weight(u, b.ids[s]);
                        if cand < b.dist[s] {
                            b.dist[s] = cand;
                            b.prev[s] = u;
                        }
                    }
                }
            }
        }
        let r = &mut self.rest;
        for s in 0..r.ids.len() {
            let cand = base + graph.edge_weight(u, r.ids[s]);
            if cand < r.dist[s] {
                r.dist[s] = cand;
                r.prev[s] = u;
            }
        }
    }

    /// Block holding the boundary node `id`, if any.
    fn member_of(&self, id: usize) -> Option<usize> {
        let h = self.graph.hot[id];
        if h.disk < self.graph.scene.len() && self.graph.ends[id].is_some() {
            self.block_of_disk[h.disk]
        } else {
            None
        }
    }

    fn relax_same_disk(&mut self, g: usize, u: usize, base: f64) {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("avx2") {
                // SAFETY: AVX2 support was checked at runtime just above.
                return unsafe { self.relax_same_disk_avx2(g, u, base) };
            }
        }
        self.relax_same_disk_kernel(g, u, base)
    }

    /// [`Self::relax_same_disk_kernel`] compiled with AVX2 enabled.
    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn relax_same_disk_avx2(&mut self, g: usize, u: usize, base: f64) {
        self.relax_same_disk_kernel(g, u, base)
    }

    #[inline(always)]
    fn relax_same_disk_kernel(&mut self, g: usize, u: usize, base: f64) {
        let graph = self.graph;
        let b = &mut self.blocks[g];
        let d: &Disk = graph.scene.disk(b.disk);
        let hu = graph.hot[u];
        let (px, py, alpha) = (hu.pos.x, hu.pos.y, hu.angle);
        let arc_factor = d.arc_multiplier() * d.radius;
        let (chord_weight, min_chord_sq) = if d.allows_chords() {
            (d.weight, chord_threshold_sq(d.radius, graph.scene.tolerance()))
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        let n = b.len();
        let (xs, ys, angles) = (&b.xs[..n], &b.ys[..n], &b.angles[..n]);
        let (dist, prev) = (&mut b.dist[..n], &mut b.prev[..n]);
        for j in 0..n {
            let arc_cost = arc_factor * separation(alpha, angles[j]);
            let (dx, dy) = (px - xs[j], py - ys[j]);
            let c2 = dx * dx + dy * dy;
            let chord_cost = chord_weight * c2.sqrt();
            let chord = (c2 > min_chord_sq) & (chord_cost < arc_cost);
            let cand = base + if chord { chord_cost } else { arc_cost };
            let better = cand < dist[j];
            dist[j] = if better { cand } else { dist[j] };
            prev[j] = if better { u } else { prev[j] };
        }
    }

    fn relax_other_disk(&mut self, g: usize, u: usize, base: f64) {
        #[cfg(target_arch = "x86_64")]
        {
            if std::arch::is_x86_feature_detected!("avx2") {
                // SAFETY: AVX2 support was checked at runtime just above.
                return unsafe { self.relax_other_disk_avx2(g, u, base) };
            }
        }
        self.relax_other_disk_kernel(g, u, base)
    }

    /// [`Self::relax_other_disk_kernel`] compiled with AVX2 enabled.
    #[cfg(target_arch = "x86_64")]
    #[target_feature(enable = "avx2")]
    unsafe fn relax_other_disk_avx2(&mut self, g: usize, u: usize, base: f64) {
        self.relax_other_disk_kernel(g, u, base)
    }

    #[inline(always)]
    fn relax_other_disk_kernel(&mut self, g: usize, u: usize, base: f64) {
        let graph = self.graph;
        let scene = &graph.scene;
        let tol = scene.tolerance();
        let eu = graph.ends[u].as_ref().expect("boundary endpoint");
        let hu = graph.hot[u];
        let b = &mut self.blocks[g];
        let n = b.len();
        let w = &mut self.weights;
        w.clear();
        w.resize(n, f64::INFINITY);
        let w = &mut w[..n];
        let ids = &b.ids[..n];

        // Tangent-field paths: min over field nodes of reach_u + reach_v.
        for (y, &ru) in eu.reach().iter().enumerate() {
            if ru == f64::INFINITY {
                continue;
            }
            let row = &b.reach[y][..n];
            for j in 0..n {
                let c = ru + row[j];
                w[j] = if c < w[j] { c } else { w[j] };
            }
        }

        // Anchor pairs on a common disk joined by a boundary arc; sums are
        // taken in the order of the lower-id endpoint first.
        for a in &eu.anchors {
            let dk = scene.disk(a.disk);
            let factor = dk.arc_multiplier() * dk.radius;
            if a.disk == b.disk {
                let angles = &b.angles[..n];
                for j in 0..n {
                    let arc = factor * separation(a.angle, angles[j]);
                    let (lo, hi) = if u < ids[j] { (a.cost, 0.0) } else { (0.0, a.cost) };
                    let c = lo + arc + hi;
                    w[j] = if c < w[j] { c } else { w[j] };
                }
            } else {
                for (angles, costs) in &b.anchors[a.disk] {
                    let (angles, costs) = (&angles[..n], &costs[..n]);
                    for j in 0..n {
                        let arc = factor * separation(a.angle, angles[j]);
                        let (lo, hi) = if u < ids[j] { (a.cost, costs[j]) } else { (costs[j], a.cost) };
                        let c = lo + arc + hi;
                        w[j] = if c < w[j] { c } else { w[j] };
                    }
                }
            }
        }

        // Visible pairs use the straight segment, tested from the lower-id
        // endpoint.
        let (xs, ys) = (&b.xs[..n], &b.ys[..n]);
        let visible = &mut self.visible;
        visible.clear();
        visible.resize(n, true);
        for d in scene.disks() {
            let limit = d.radius - tol;
            if limit <= 0.0 {
                continue;
            }
            let limit_sq = limit * limit;
            let (cx, cy) = (d.center.x, d.center.y);
            for j in 0..n {
                let (px, py, qx, qy) = if u < ids[j] {
                    (hu.pos.x, hu.pos.y, xs[j], ys[j])
                } else {
                    (xs[j], ys[j], hu.pos.x, hu.pos.y)
                };
                let (dx, dy) = (qx - px, qy - py);
                let len_sq = dx * dx + dy * dy;
                let t = if len_sq == 0.0 {
                    0.0
                } else {
                    (((cx - px) * dx + (cy - py) * dy) / len_sq).clamp(0.0, 1.0)
                };
                let (ox, oy) = (px + dx * t - cx, py + dy * t - cy);
                let crosses = ox * ox + oy * oy < limit_sq;
                visible[j] &= !crosses;
            }
        }
        let (dist, prev) = (&mut b.dist[..n], &mut b.prev[..n]);
        for j in 0..n {
            let (dx, dy) = (hu.pos.x - xs[j], hu.pos.y - ys[j]);
            let straight = (dx * dx + dy * dy).sqrt();
            let weight = if visible[j] { straight } else { w[j] };
            let cand = base + weight;
            let better = cand < dist[j];
            dist[j] = if better { cand } else { dist[j] };
            prev[j] = if better { u } else { prev[j] };
        }
    }

    /// Tentative distances and predecessors of the live nodes.
    fn flush(&self, dist: &mut [f64], prev: &mut [usize]) {
        for b in &self.blocks {
            for (s, &id) in b.ids.iter().enumerate() {
                dist[id] = b.dist[s];
                prev[id] = b.prev[s];
            }
        }
        for (s, &id) in self.rest.ids.iter().enumerate() {
            dist[id] = self.rest.dist[s];
            prev[id] = self.rest.prev[s];
        }
    }
}

/// Dense Dijkstra from `source`, stopping once `target` is settled; ties are
/// settled by smaller node id. Unsettled nodes keep their tentative values.
pub(super) fn dijkstra(graph: &PathGraph, source: usize, target: Option<usize>) -> (Vec<f64>, Vec<usize>) {
    let n = graph.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut prev = vec![usize::MAX; n];
    let mut search = Search::new(graph);
    search.set_source(source);
    while let Some((u, d, p)) = search.argmin() {
        if d == f64::INFINITY {
            break;
        }
        dist[u] = d;
        prev[u] = p;
        search.remove(u);
        if Some(u) == target {
            break;
        }
        search.relax(u, d, p);
    }
    search.flush(&mut dist, &mut prev);
    (dist, prev)
}
