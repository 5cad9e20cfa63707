//! Subcommand implementations.

pub mod analyze;
pub mod bench;
pub mod compare;
pub mod validate;

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

/// Batch interface to the block-encoding PCA simulator.
#[derive(Debug, Parser)]
#[command(name = "qpca", version, about)]
pub struct Cli {
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Available subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract principal components from a dataset or synthetic spectrum.
    Analyze(AnalyzeArgs),
    /// Tabulate analytic (and optionally empirical) method costs over a
    /// parameter grid.
    Compare(CompareArgs),
    /// Exponentiation-channel convergence benchmark.
    Bench(BenchArgs),
    /// Run the acceptance criteria.
    Validate(ValidateArgs),
}

/// Options shared by analysis-style commands.
#[derive(Debug, Args, Clone)]
pub struct CommonOpts {
    /// Seed (precedence: this flag, config file, QPCA_SEED, default).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Config file with `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Arguments for `analyze`.
#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Synthetic spectrum, e.g. `0.5,0.3,0.15,0.05`.
    #[arg(long, conflicts_with = "data")]
    pub spectrum: Option<String>,
    /// CSV dataset path.
    #[arg(long)]
    pub data: Option<PathBuf>,
    /// Weight handling for CSV data: `uniform` or `column`.
    #[arg(long, default_value = "uniform")]
    pub weights: String,
    /// Covariance preparation route: `a` or `b`.
    #[arg(long, default_value = "b")]
    pub route: String,
    /// Diagonalize the uncentered ensemble instead of the centered
    /// covariance (dataset runs only).
    #[arg(long)]
    pub uncentered: bool,
    /// Number of components to extract.
    #[arg(long = "components", short = 'R', default_value_t = 1)]
    pub components: usize,
    /// Target accuracy.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Dimension override for synthetic spectra (padded to a power of two).
    #[arg(long)]
    pub dim: Option<usize>,
    /// Source fidelity: `oracle`, `polynomial`, or `sample-faithful`.
    #[arg(long, default_value = "sample-faithful")]
    pub mode: String,
    /// Gap floor below which extraction aborts.
    #[arg(long)]
    pub gap_floor: Option<f64>,
    /// Exponentiation constant C in N = ⌈C·t²/ε⌉.
    #[arg(long)]
    pub c_dme: Option<f64>,
    /// Draw eigenvalue estimates through the shot model instead of exactly.
    #[arg(long)]
    pub sampled_shots: bool,
    /// Write a JSON debug dump of the built block encoding to this path.
    #[arg(long)]
    pub dump_encoding: Option<PathBuf>,
    /// Shared options.
    #[command(flatten)]
    pub common: CommonOpts,
}

/// Arguments for `compare`.
#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Gap grid, comma separated.
    #[arg(long, default_value = "0.05,0.1,0.2,0.3,0.4")]
    pub gamma: String,
    /// Largest-eigenvalue grid.
    #[arg(long, default_value = "0.5")]
    pub r_max: String,
    /// Smallest top-R eigenvalue grid.
    #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4,1e-5")]
    pub r_min: String,
    /// Accuracy grid.
    #[arg(long, default_value = "0.1")]
    pub eps: String,
    /// Component-count grid.
    #[arg(long, default_value = "1,2")]
    pub components: String,
    /// Dimension used in depth formulas.
    #[arg(long, default_value_t = 16)]
    pub dim: usize,
    /// Also run small-scale empirical samplers where feasible.
    #[arg(long)]
    pub empirical: bool,
    /// Shared options.
    #[command(flatten)]
    pub common: CommonOpts,
}

/// Arguments for `bench`.
#[derive(Debug, Args)]
pub struct BenchArgs {
    /// State dimension.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Evolution time.
    #[arg(long, default_value_t = 0.5)]
    pub t: f64,
    /// Step counts, comma separated.
    #[arg(long, default_value = "8,16,32,64,128,256,512")]
    pub steps: String,
    /// Shared options.
    #[command(flatten)]
    pub common: CommonOpts,
}

/// Arguments for `validate`.
#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Run only criteria whose name contains this substring.
    #[arg(long)]
    pub only: Option<String>,
    /// Seed override (outcomes must not depend on it).
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parse a comma-separated list of floats.
pub fn parse_f64_list(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| format!("cannot parse {s:?} as a number"))
        })
        .collect()
}

/// Parse a comma-separated list of positive integers.
pub fn parse_usize_list(raw: &str) -> Result<Vec<usize>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| format!("cannot parse {s:?} as an integer"))
        })
        .collect()
}

/// Write `content` to `out`, or stdout when absent.
pub fn emit(out: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(content.as_bytes())
        }
    }
}
