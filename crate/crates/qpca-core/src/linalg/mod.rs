//! Dense complex linear algebra: the substrate for every other module.
//!
//! Matrices are stored row-major in `Vec<Complex64>` at `f64` precision.
//! The Hermitian eigensolver ([`eigh`]) is the classical oracle that all
//! simulated results are verified against, so it is deterministic down to
//! the bit level: fixed sweep order, fixed sort order, and a fixed
//! eigenvector phase convention (largest-magnitude component real positive,
//! ties broken by lowest index).

mod density;
mod eigen;
mod functions;
mod matrix;
pub mod tensor;
pub mod vector;

pub use density::{probe_states, trace_distance, DensityMatrix};
pub use eigen::{eigh, Spectrum};
pub use functions::{
    dilate_hermitian, matrix_function, polar_unitary, principal_log_unitary, unitary_completion,
    unitary_with_first_column,
};
pub use matrix::ComplexMatrix;

use thiserror::Error;

/// Tolerance for Hermiticity / unitarity input gates.
pub const GATE_TOL: f64 = 1e-8;
/// Tolerance for construction invariants (trace, Hermiticity of built objects).
pub const BUILD_TOL: f64 = 1e-10;
/// Eigenphases of a unitary must stay this far from the ±π branch cut.
pub const PHASE_MARGIN: f64 = 0.1;

/// Errors raised by the linear-algebra substrate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    /// Input was not Hermitian within tolerance; payload is `‖A − A†‖_F`.
    #[error("matrix is not Hermitian: ‖A − A†‖_F = {0:.3e}")]
    NotHermitian(f64),
    /// Input was not unitary within tolerance; payload is `‖U†U − I‖_F`.
    #[error("matrix is not unitary: ‖U†U − I‖_F = {0:.3e}")]
    NotUnitary(f64),
    /// An eigenphase sits too close to the ±π branch cut for a principal log.
    #[error("eigenphase {0:.4} is within {PHASE_MARGIN} of the ±π branch cut")]
    PhaseWrapRisk(f64),
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Dimension of the left operand.
        left: usize,
        /// Dimension of the right operand.
        right: usize,
    },
    /// A dimension that must be a nonzero power of two was not.
    #[error("dimension {0} is not a nonzero power of two")]
    NotPowerOfTwo(usize),
    /// A density-matrix invariant failed at construction.
    #[error("not a valid density matrix: {0}")]
    InvalidDensity(&'static str),
    /// A vector that must be nonzero (or unit norm) was not.
    #[error("vector norm {0:.3e} is unusable here")]
    BadVectorNorm(f64),
}

/// Crate-wide result alias for substrate operations.
pub type Result<T> = core::result::Result<T, LinalgError>;
