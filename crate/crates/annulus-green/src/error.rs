//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by domain construction and kernel evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The ambient dimension must satisfy N >= 3 (the Newton kernel
    /// 1/|x|^{N-2} degenerates for N = 2).
    #[error("dimension must be at least 3, got {0}")]
    DimensionTooSmall(usize),

    /// The inner radius of the annulus must lie strictly inside (0, 1).
    #[error("inner radius must lie in (0, 1), got {0}")]
    InvalidInnerRadius(f64),

    /// A vector argument had the wrong number of components.
    #[error("dimension mismatch: expected {expected} components, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Tried to build a unit direction from the zero vector, or an
    /// evaluation point at the origin (its direction is undefined).
    #[error("cannot normalize a (near-)zero vector")]
    ZeroVector,

    /// A scalar parameter was outside its admissible range.
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Kernel evaluation at coincident points.
    #[error("coincident points: the Newton kernel is singular at x = y")]
    CoincidentPoints,

    /// The two-branch expansions require |x| != |y|.
    #[error("equal radii |x| = |y| = {0}: neither expansion branch applies")]
    EqualRadii(f64),

    /// A point radius left the closed annulus [a, 1].
    #[error("radius {radius} outside the annulus [{inner}, 1]")]
    OutsideAnnulus { radius: f64, inner: f64 },

    /// The Robin function diverges on the boundary spheres.
    #[error("Robin function diverges at |x| = {0} (boundary of the annulus)")]
    BoundaryDivergence(f64),

    /// Normal derivatives are only defined for points on one of the two
    /// boundary spheres.
    #[error("point with radius {radius} lies on neither boundary sphere (a = {inner})")]
    NotOnBoundary { radius: f64, inner: f64 },

    /// A finite-difference stencil or probe ball left the domain.
    #[error("{0}")]
    Geometry(String),

    /// A quadrature node hit a non-finite field value (undeclared singularity).
    #[error("field evaluated to a non-finite value at a quadrature node")]
    SingularNode,

    /// A condition the construction guarantees was violated (a bug, not
    /// a user error).
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
