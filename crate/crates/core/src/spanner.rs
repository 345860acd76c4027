//! Constrained Yao graphs: a sparse subgraph of the approximation graph
//! keeping, per node and per cone, the closest visible node on the closest
//! disk.
//!
//! Each node has `2k` cones of angle `θ = π/k`. For a boundary node the first
//! cone starts on the tangent line at the node (counter-clockwise tangent
//! direction) and cones are numbered clockwise, so cones `0..k` cover the
//! outward half-plane and cones `k..2k` the disk side. Free-space nodes use the
//! `+x` axis as their first ray.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::normalize_angle;
use crate::obstacle_exact::dijkstra;
use crate::pathgraph::{EdgeClass, PathGraph, Placement};

/// One undirected Yao edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YaoEdge {
    /// Lower endpoint id.
    pub u: usize,
    /// Higher endpoint id.
    pub v: usize,
    /// Edge class inherited from the approximation graph.
    pub class: EdgeClass,
    /// Edge weight inherited from the approximation graph.
    pub weight: f64,
}

/// A constrained Yao graph over the nodes of a [`PathGraph`].
#[derive(Debug, Clone)]
pub struct YaoGraph {
    /// Cone parameter (`2k` cones per node).
    pub k: usize,
    /// Undirected edges, sorted by `(u, v)`.
    pub edges: Vec<YaoEdge>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl YaoGraph {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    /// Whether the graph has no nodes.
    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    /// Neighbours of `u` with edge weights.
    pub fn neighbours(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }
}

/// Stretch bound `1/(1 − 2 sin(π/(2k)))` of the constrained Yao graph.
pub fn spanner_bound(k: usize) -> f64 {
    1.0 / (1.0 - 2.0 * (PI / (2.0 * k as f64)).sin())
}

/// Cone containing direction `dir` for a node whose first ray points at
/// `frame`; cones are half-open `[iθ, (i+1)θ)` measured clockwise.
pub fn cone_index(frame: f64, dir: f64, k: usize) -> usize {
    let theta = PI / k as f64;
    let delta = normalize_angle(frame - dir);
    ((delta / theta) as usize).min(2 * k - 1)
}

fn intervals_overlap(lo: f64, hi: f64, a: f64, b: f64) -> bool {
    [-2.0 * PI, 0.0, 2.0 * PI]
        .iter()
        .any(|s| lo + s < b && a < hi + s)
}

/// Builds the constrained Yao graph with `2k` cones per node.
pub fn build_yao(graph: &PathGraph, k: usize) -> Result<YaoGraph> {
    if k < 4 {
        return Err(Error::InvalidConeCount(k));
    }
    let scene = graph.scene();
    let nodes = graph.nodes();
    let n = nodes.len();
    let theta = PI / k as f64;
    let mut on_disk: Vec<Vec<usize>> = vec![Vec::new(); scene.len()];
    for (id, node) in nodes.iter().enumerate() {
        match node.placement {
            Placement::Boundary { disk, .. } => on_disk[disk].push(id),
            Placement::Inside { .. } => return Err(Error::UnsupportedNode(id)),
            Placement::Free => {}
        }
    }
    let angle_of = |id: usize| match nodes[id].placement {
        Placement::Boundary { angle, .. } => angle,
        _ => 0.0,
    };
    let mut pairs = Vec::new();
    for u in 0..n {
        let pu = nodes[u].pos;
        let (frame, own) = match nodes[u].placement {
            Placement::Boundary { disk, angle } => (angle + PI / 2.0, Some(disk)),
            _ => (0.0, None),
        };
        // Closest disk meeting each cone.
        let mut chosen: Vec<Option<(f64, i64, usize)>> = vec![None; 2 * k];
        for (i, d) in scene.disks().iter().enumerate() {
            for (cone, slot) in chosen.iter_mut().enumerate() {
                let (meets, dist) = if own == Some(i) {
                    (cone >= k, 0.0)
                } else {
                    let off = d.center - pu;
                    let l = off.norm();
                    let beta = (d.radius / l).min(1.0).asin();
                    let dc = normalize_angle(frame - off.angle());
                    let lo = cone as f64 * theta;
                    (intervals_overlap(dc - beta, dc + beta, lo, lo + theta), (l - d.radius).max(0.0))
                };
                if !meets {
                    continue;
                }
                let key = (dist, d.id, i);
                let better = match slot {
                    None => true,
                    Some((bd, bid, _)) => dist < *bd || (dist == *bd && d.id < *bid),
                };
                if better {
                    *slot = Some(key);
                }
            }
        }
        // Closest visible node of the chosen disk inside each cone.
        let mut best: Vec<Option<(f64, f64, usize)>> = vec![None; 2 * k];
        let mut disks_used: Vec<usize> = chosen.iter().flatten().map(|c| c.2).collect();
        disks_used.sort_unstable();
        disks_used.dedup();
        for &i in &disks_used {
            for &v in &on_disk[i] {
                if v == u {
                    continue;
                }
                let pv = nodes[v].pos;
                let cone = cone_index(frame, (pv - pu).angle(), k);
                if chosen[cone].map(|c| c.2) != Some(i) {
                    continue;
                }
                let dist = pu.dist(pv);
                let angle = angle_of(v);
                let better = match best[cone] {
                    None => true,
                    Some((bd, ba, _)) => dist < bd || (dist == bd && angle < ba),
                };
                if better && (own == Some(i) || scene.visible(pu, pv)) {
                    best[cone] = Some((dist, angle, v));
                }
            }
        }
        for (_, _, v) in best.into_iter().flatten() {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let mut adjacency = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(pairs.len());
    for (u, v) in pairs {
        let (class, weight) = graph.edge(u, v);
        adjacency[u].push((v, weight));
        adjacency[v].push((u, weight));
        edges.push(YaoEdge { u, v, class, weight });
    }
    Ok(YaoGraph { k, edges, adjacency })
}

/// In-place Floyd–Warshall on a dense `n × n` distance matrix.
pub fn floyd_warshall(dist: &mut [f64], n: usize) {
    for k in 0..n {
        for i in 0..n {
            let dik = dist[i * n + k];
            if !dik.is_finite() {
                continue;
            }
            let (row_k, row_i) = if i < k {
                let (a, b) = dist.split_at_mut(k * n);
                (&b[..n], &mut a[i * n..(i + 1) * n])
            } else if i > k {
                let (a, b) = dist.split_at_mut(i * n);
                (&a[k * n..(k + 1) * n], &mut b[..n])
            } else {
                continue;
            };
            for (dij, &dkj) in row_i.iter_mut().zip(row_k) {
                let c = dik + dkj;
                if c < *dij {
                    *dij = c;
                }
            }
        }
    }
}

/// Result of comparing Yao distances with graph distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanningReport {
    /// Largest `δ_Y(u, v) / δ_G(u, v)` over node pairs.
    pub max_ratio: f64,
    /// Pair attaining the maximum.
    pub worst_pair: (usize, usize),
    /// Smallest `δ_Y − δ_G` (negative values would break the subgraph
    /// property).
    pub min_excess: f64,
}

/// All-pairs audit of the stretch of `yao` relative to `graph`.
pub fn spanning_audit(yao: &YaoGraph, graph: &PathGraph) -> Result<SpanningReport> {
    let n = graph.len();
    if yao.len() != n {
        return Err(Error::NodeSetMismatch(yao.len(), n));
    }
    let mut dg = graph.weight_matrix();
    floyd_warshall(&mut dg, n);
    Ok(audit_against(yao, &dg))
}

/// Audit against precomputed all-pairs graph distances `dg` (`n × n`).
pub fn audit_against(yao: &YaoGraph, dg: &[f64]) -> SpanningReport {
    let n = yao.len();
    let scale = dg.iter().copied().filter(|d| d.is_finite()).fold(0.0, f64::max).max(1.0);
    let zero = 1e-12 * scale;
    let mut report = SpanningReport {
        max_ratio: 1.0,
        worst_pair: (0, 0),
        min_excess: f64::INFINITY,
    };
    for u in 0..n {
        let (dy, _) = dijkstra(n, u, |x| yao.adjacency[x].iter().copied());
        for v in u + 1..n {
            let (y, g) = (dy[v], dg[u * n + v]);
            report.min_excess = report.min_excess.min(y - g);
            let ratio = if g <= zero {
                if y <= zero {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                y / g
            };
            if ratio > report.max_ratio {
                report.max_ratio = ratio;
                report.worst_pair = (u, v);
            }
        }
    }
    report
}
