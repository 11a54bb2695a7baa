//! Finite Euclidean distance graphs over F_q².
//!
//! Builds the graphs whose vertices are the points of F_q² (q an odd prime
//! power) and whose edges join points at a prescribed "distance" under a
//! non-degenerate binary quadratic form, certifies their spectral
//! pseudo-randomness two independent ways, and counts hinges (paths of
//! length two) and congruence classes of triangles exactly.
//!
//! Everything is exact except eigenvalues, which are floating point with
//! stated tolerances. All randomness is seeded and reproducible.

pub mod bits;
pub mod counting;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod report;
pub mod triangles;

pub use bits::VertexSet;
pub use field::{FieldCtx, FieldElement};
pub use geometry::{Point, QuadraticForm, RigidMotion, Rotation, TriangleSignature};
pub use graph::{DistanceGraph, RegularColoring, Spectrum};
pub use report::BoundReport;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("q must be an odd prime power, got {0}")]
    NotOddPrimePower(u64),

    #[error("field size {q} exceeds the configured cap {cap}")]
    FieldTooLarge { q: u64, cap: u64 },

    #[error("inversion of zero")]
    ZeroInverse,

    #[error("quadratic form is degenerate (discriminant is zero)")]
    DegenerateForm,

    #[error("radius must be a nonzero field element")]
    ZeroRadius,

    #[error("dense spectrum on {n} vertices exceeds cap {cap}; use the character-sum spectrum instead")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("color must be a nonzero field element")]
    InvalidColor,

    #[error("vertex set is empty")]
    EmptySet,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
