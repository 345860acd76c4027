//! Error type shared by every module of the crate.

use thiserror::Error;

/// Everything that can go wrong while loading a scene, discretizing it or
/// answering a query.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The scene contains no disks.
    #[error("scene contains no disks")]
    EmptyScene,
    /// Two disks overlap or touch (identified by their ids).
    #[error("disks {0} and {1} overlap or touch")]
    Overlap(i64, i64),
    /// A disk has a zero, negative or non-finite radius.
    #[error("disk {0} has a non-positive radius")]
    NonPositiveRadius(i64),
    /// A disk has a negative (or NaN) weight.
    #[error("disk {0} has a negative weight")]
    NegativeWeight(i64),
    /// A coordinate is NaN or infinite.
    #[error("disk {0} has a non-finite coordinate")]
    NonFiniteCoordinate(i64),
    /// The weighted angular radius is undefined for a zero-weight disk.
    #[error("disk {0} has zero weight; its angular radius is undefined")]
    ZeroWeight(i64),
    /// A scene file could not be parsed.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        /// 1-based line of the offending token.
        line: usize,
        /// 1-based column of the offending token.
        column: usize,
        /// Human readable description.
        message: String,
    },
    /// A filesystem operation failed.
    #[error("i/o error: {0}")]
    Io(String),
    /// An angle passed to a geometric formula lies outside its domain.
    #[error("angle {0} outside the admissible range")]
    AngleOutOfRange(f64),
    /// A point expected on a disk boundary is too far from it.
    #[error("point is {0} away from the disk boundary")]
    NotOnBoundary(f64),
    /// Approximation parameter outside `(0, 1]`.
    #[error("epsilon {0} outside (0, 1]")]
    InvalidEpsilon(f64),
    /// A query point is strictly inside an impassable disk.
    #[error("terminal lies strictly inside obstacle disk {0}")]
    TerminalInsideObstacle(i64),
    /// A query point is strictly inside a disk where the solver needs it outside.
    #[error("terminal lies strictly inside disk {0}")]
    TerminalInsideDisk(i64),
    /// The exact solver only handles weights in `{0} ∪ [π/2, ∞]`.
    #[error("disk {0} has weight {1}, which the exact solver does not support")]
    UnsupportedWeight(i64, f64),
    /// A node id does not exist in the graph.
    #[error("node {0} does not exist")]
    InvalidNode(usize),
    /// Dijkstra could not reach the target.
    #[error("target is unreachable")]
    Unreachable,
    /// Yao graphs need at least four cone pairs.
    #[error("Yao graph needs k >= 4, got {0}")]
    InvalidConeCount(usize),
    /// A path's pieces do not chain end to start.
    #[error("path pieces {0} and {1} do not connect")]
    Discontinuous(usize, usize),
    /// Grid spacing must be positive.
    #[error("grid spacing {0} must be positive")]
    InvalidSpacing(f64),
    /// A graph operation received graphs over different node sets.
    #[error("graphs have different node sets ({0} vs {1} nodes)")]
    NodeSetMismatch(usize, usize),
    /// The spanner is only defined for boundary and free-space nodes.
    #[error("node {0} lies inside a disk; the Yao graph is undefined for it")]
    UnsupportedNode(usize),
}

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
