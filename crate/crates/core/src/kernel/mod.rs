//! Scalar arithmetic shared by the geometric layers: the exact field ℚ(√2, √3),
//! symmetric matrices with signature tests, and the Lobachevsky function.

mod exact;
mod lobachevsky;
mod matrix;

pub use exact::ExactScalar;
pub use lobachevsky::{ideal_octahedron_volume, lobachevsky, DEFAULT_TOL as LOBACHEVSKY_TOL};
pub use matrix::{ExactMatrix, FloatMatrix, Signature, SymMatrix};

/// Default tolerance for floating signature tests.
pub const SIGNATURE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
}

/// Eigenvalue sign counts of `m` at tolerance `tol`.
pub fn signature(m: &FloatMatrix, tol: f64) -> Result<Signature, KernelError> {
    m.signature(tol)
}

/// Exact Sylvester positive-definiteness test.
pub fn is_positive_definite(m: &ExactMatrix) -> bool {
    m.is_positive_definite()
}
