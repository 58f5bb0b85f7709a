//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} exceeds the configured cap: requested {requested}, cap {cap}")]
    SizeCap {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("zero-probability branch: {0}")]
    ZeroProbability(String),

    #[error("operator is not hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("operator is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("state norm is {norm:.12} but a normalized state was required")]
    NotNormalized { norm: f64 },

    #[error("symmetry check failed: [H, rho({element})] has norm {residual:.3e}")]
    SymmetryViolation { element: String, residual: f64 },

    #[error("operation requires an abelian group, got {0}")]
    NonAbelianGroup(String),

    #[error("two-electron integrals violate permutational symmetry: {0}")]
    IntegralSymmetry(String),

    #[error("numerical invariant violated: {property}: {detail}")]
    InvariantViolation { property: String, detail: String },
}
