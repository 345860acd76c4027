//! Weighted shortest paths amid non-overlapping weighted disks.
//!
//! Each disk `D_i` multiplies the Euclidean length travelled through its
//! interior by a weight `ω_i ≥ 0` (possibly infinite); the ambient plane has
//! weight 1 and boundary arcs cost `min(1, ω_i)`. The crate provides:
//!
//! * [`discretize`]: Steiner points on disk boundaries whose density is
//!   controlled by an approximation parameter `ε ∈ (0, 1]`;
//! * [`pathgraph`]: the complete graph over those points and Dijkstra, giving
//!   `(1 + ε)`-approximate shortest paths;
//! * [`obstacle_exact`]: exact paths when every weight is 0 or at least `π/2`;
//! * [`spanner`]: a sparse constrained Yao subgraph with bounded stretch;
//! * [`oracle`]: brute-force references for validation.
//!
//! ```
//! use diskpath::geometry::{Disk, Point};
//! use diskpath::scene::Scene;
//!
//! let scene = Scene::new(vec![Disk::new(0, Point::new(0.0, 0.0), 1.0, f64::INFINITY)]).unwrap();
//! let path = diskpath::obstacle_exact::exact_path(&scene, Point::new(-2.0, 0.0), Point::new(2.0, 0.0)).unwrap();
//! assert!((path.total_weight - (2.0 * 3f64.sqrt() + std::f64::consts::PI / 3.0)).abs() < 1e-12);
//! ```

pub mod discretize;
pub mod error;
pub mod geometry;
pub mod obstacle_exact;
pub mod oracle;
pub mod path;
pub mod pathgraph;
pub mod scene;
pub mod spanner;

pub use error::{Error, Result};
