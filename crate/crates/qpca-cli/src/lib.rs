//! Batch front-end for the block-encoding PCA simulator: dataset ingestion,
//! analysis runs, method comparison, benchmarks, and the validation suite.
//!
//! All IO, file formats and process concerns live here; the numerics live
//! in `qpca-core`.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod dataset;
pub mod report;

/// Process exit codes.
pub mod exit_codes {
    /// Success.
    pub const OK: i32 = 0;
    /// Validation failure.
    pub const VALIDATION_FAILED: i32 = 1;
    /// Parse or configuration error.
    pub const CONFIG: i32 = 2;
    /// Gap too small; partial results were still written.
    pub const GAP_TOO_SMALL: i32 = 3;
}
