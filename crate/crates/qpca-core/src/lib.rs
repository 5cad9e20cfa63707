//! Desk-scale simulation of quantum principal component analysis built on
//! block-encoding algebra.
//!
//! Everything here works on explicit dense complex matrices so that each
//! construction can be checked by direct arithmetic against a classical
//! eigensolver oracle. The crate covers:
//!
//! - [`linalg`] — dense complex matrices, a deterministic Hermitian
//!   eigensolver, and matrix functions (the classical oracle).
//! - [`blockenc`] — the block-encoding data type and its combinator algebra
//!   (product, linear combination, tensor, scaling, purification) with
//!   first-order error propagation and resource accounting.
//! - [`dme`] — density-matrix exponentiation by repeated partial-swap steps,
//!   with channel tomography and a coherent error-bearing unitary handoff.
//! - [`qsvt`] — eigenvalue-polynomial transformation of block-encoded
//!   Hermitian operators, logarithm-of-unitary recovery, and amplification
//!   cost accounting.
//! - [`power`] — power iteration on block encodings with deflation, yielding
//!   top-R eigenpairs of a density matrix.
//! - [`covariance`] — covariance-matrix preparation from weighted datasets,
//!   with and without centering.
//! - [`baseline`] — the phase-estimation sampling baseline and analytic cost
//!   models for the method comparison.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the command
//! line live in the companion `qpca-cli` crate.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod baseline;
pub mod blockenc;
pub mod covariance;
pub mod dme;
pub mod linalg;
pub(crate) mod math;
pub mod power;
pub mod qsvt;
pub mod synth;

pub use num_complex::Complex64;
