//! Covariance-matrix preparation from weighted datasets.
//!
//! Data points enter as quantum states: every vector is normalized to unit
//! norm on ingestion (raw norms are recorded, and this differs from
//! textbook PCA on unnormalized data). With weights `pⁱ` summing to 1, the
//! targets are the ensemble `ρ̄ = Σ pⁱ|xⁱ⟩⟨xⁱ|`, the centroid
//! `μ = Σ pⁱ|xⁱ⟩`, and the centered covariance `ρ̄ − μμ†`.
//!
//! Two preparation routes produce a block encoding of `(π/8)(ρ̄ − μμ†)`
//! (the π/8 arises from the two-term halving of π/4-scaled inputs and is
//! stripped only at reporting time):
//!
//! - **Route A**: exponentiate the sampled ensemble ρ̄ into `πρ̄/4` through
//!   the logarithm pipeline (ε-approximate, depth `Θ(N + log(n)/ε²)`), then
//!   combine with the exact centroid encoding.
//! - **Route B**: purify every `|xⁱ⟩⟨xⁱ|` exactly, combine with weights
//!   `pⁱ`, and subtract the centroid term — exact, depth `Θ(N + N·log(n))`.
//!
//! The centroid encoding uses the state-preparation unitaries `Uᵢ` (first
//! column `|xⁱ⟩`): the weighted combination `Σ pⁱUᵢ` has first column μ, so
//! purifying the state it prepares leaves `μμ†` in the corner block.
//! Conjugation conventions are uniformly `†`, keeping every covariance
//! matrix Hermitian.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

use crate::blockenc::{
    encode_self, lcu, purify_density, scale_down, BlockEncError, BlockEncoding, ResourceLedger,
    Sign,
};
use crate::linalg::{unitary_with_first_column, vector, ComplexMatrix, DensityMatrix, LinalgError};
use crate::power::{self, PowerError};
use crate::qsvt::{self, EncodingMode, QsvtError};

/// Errors from dataset handling and covariance preparation.
#[derive(Debug, Error)]
pub enum CovarianceError {
    /// No data points.
    #[error("dataset is empty")]
    EmptyDataset,
    /// A weight was negative.
    #[error("negative weight {0}")]
    NegativeWeight(f64),
    /// Weights summed to zero.
    #[error("weights sum to zero")]
    WeightSumZero,
    /// A data row was numerically zero and cannot be normalized.
    #[error("data row {0} has zero norm")]
    ZeroRow(usize),
    /// Weight count does not match point count.
    #[error("{weights} weights for {points} points")]
    WeightCountMismatch {
        /// Number of weights supplied.
        weights: usize,
        /// Number of data points.
        points: usize,
    },
    /// A vector that must be unit norm was not.
    #[error("vector norm {0} is not 1")]
    NotUnitNorm(f64),
    /// Propagated combinator error.
    #[error(transparent)]
    BlockEnc(#[from] BlockEncError),
    /// Propagated pipeline error.
    #[error(transparent)]
    Qsvt(#[from] QsvtError),
    /// Propagated substrate error.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Result alias for this module.
pub type Result<T> = core::result::Result<T, CovarianceError>;

/// Preparation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Sample-faithful ensemble exponentiation plus exact centroid.
    A,
    /// Exact purification of every data point.
    B,
}

/// N weighted unit vectors in a power-of-two dimension.
#[derive(Debug, Clone)]
pub struct Dataset {
    dim: usize,
    points: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
    raw_norms: Vec<f64>,
}

impl Dataset {
    /// Build from raw rows; vectors are zero-padded to the next power of
    /// two and normalized, with raw norms recorded. `weights = None` means
    /// uniform `1/N`; explicit weights are validated and renormalized to
    /// sum to 1.
    pub fn from_rows(rows: &[Vec<Complex64>], weights: Option<&[f64]>) -> Result<Self> {
        if rows.is_empty() {
            return Err(CovarianceError::EmptyDataset);
        }
        let max_len = rows.iter().map(Vec::len).max().unwrap().max(1);
        let dim = max_len.next_power_of_two();

        let mut points = Vec::with_capacity(rows.len());
        let mut raw_norms = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let mut padded = vec![Complex64::ZERO; dim];
            padded[..row.len()].copy_from_slice(row);
            let nrm = vector::norm(&padded);
            raw_norms.push(nrm);
            let unit = vector::normalized(&padded).ok_or(CovarianceError::ZeroRow(i))?;
            points.push(unit);
        }

        let weights = match weights {
            None => vec![1.0 / rows.len() as f64; rows.len()],
            Some(w) => {
                if w.len() != rows.len() {
                    return Err(CovarianceError::WeightCountMismatch {
                        weights: w.len(),
                        points: rows.len(),
                    });
                }
                if let Some(&bad) = w.iter().find(|&&x| x < 0.0 || !x.is_finite()) {
                    return Err(CovarianceError::NegativeWeight(bad));
                }
                let total: f64 = w.iter().sum();
                if total <= 0.0 {
                    return Err(CovarianceError::WeightSumZero);
                }
                w.iter().map(|&x| x / total).collect()
            }
        };
        Ok(Self {
            dim,
            points,
            weights,
            raw_norms,
        })
    }

    /// Padded dimension `n` (a power of two).
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of data points `N`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// True when the dataset has no points (never, post-construction).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Normalized data points.
    pub fn points(&self) -> &[Vec<Complex64>] {
        &self.points
    }

    /// Probability weights (sum to 1).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Norms of the raw rows before normalization.
    pub fn raw_norms(&self) -> &[f64] {
        &self.raw_norms
    }
}

/// Everything produced by a covariance preparation run.
#[derive(Debug, Clone)]
pub struct CovarianceBundle {
    /// Centroid `μ = Σ pⁱ|xⁱ⟩`.
    pub centroid: Vec<Complex64>,
    /// Ensemble `ρ̄ = Σ pⁱ|xⁱ⟩⟨xⁱ|`.
    pub rho_bar: DensityMatrix,
    /// Centered target `ρ̄ − μμ†`.
    pub centered_target: ComplexMatrix,
    /// Block encoding of `(π/8)(ρ̄ − μμ†)`.
    pub encoding: BlockEncoding,
    /// Which route built it.
    pub route: Route,
    /// Resources of the build.
    pub ledger: ResourceLedger,
}

/// Centroid `μ = Σ pⁱ|xⁱ⟩` of the (normalized) points.
pub fn centroid(ds: &Dataset) -> Vec<Complex64> {
    let mut mu = vec![Complex64::ZERO; ds.dim()];
    for (x, &p) in ds.points().iter().zip(ds.weights()) {
        for (m, xi) in mu.iter_mut().zip(x) {
            *m += xi * p;
        }
    }
    mu
}

/// The classical covariance oracle: `ρ̄` (uncentered) or `ρ̄ − μμ†`
/// (centered).
pub fn covariance_classical(ds: &Dataset, centered: bool) -> ComplexMatrix {
    let n = ds.dim();
    let mut acc = ComplexMatrix::zeros(n, n);
    for (x, &p) in ds.points().iter().zip(ds.weights()) {
        for i in 0..n {
            let w = x[i] * p;
            for j in 0..n {
                acc[(i, j)] += w * x[j].conj();
            }
        }
    }
    if centered {
        let mu = centroid(ds);
        acc = acc.sub(&vector::outer(&mu, &mu));
    }
    acc.hermitian_part()
}

/// Deterministic preparation unitary with `U e₀ = x` (Householder
/// reflection composed with a phase; identity when `x = e₀`).
pub fn state_prep_unitary(x: &[Complex64]) -> Result<ComplexMatrix> {
    unitary_with_first_column(x).map_err(|e| match e {
        LinalgError::BadVectorNorm(n) => CovarianceError::NotUnitNorm(n),
        other => CovarianceError::Linalg(other),
    })
}

/// The weighted combination of preparation unitaries, `Σ pⁱUᵢ`, as a block
/// encoding; its first block column is μ.
fn mean_prep_encoding(ds: &Dataset) -> Result<BlockEncoding> {
    let encs: Vec<BlockEncoding> = ds
        .points()
        .iter()
        .map(|x| Ok(encode_self(state_prep_unitary(x)?)?))
        .collect::<Result<_>>()?;
    let refs: Vec<&BlockEncoding> = encs.iter().collect();
    let signs = vec![Sign::Plus; refs.len()];
    Ok(lcu(ds.weights(), &refs, &signs)?)
}

/// Exact block encoding of `μμ†`.
///
/// Purifies the state prepared by the combination unitary `U_p` (whose
/// `|0…0⟩`-ancilla branch is μ) and reinterprets the combination ancillas
/// as encoding ancillas, which leaves `μμ†` as the corner block. Depth is
/// `Θ(N)` from the N-term combination.
pub fn mean_encoding(ds: &Dataset) -> Result<BlockEncoding> {
    let prep = mean_prep_encoding(ds)?;
    let anc_dim = 1usize << prep.ancillas();
    let full_dim = anc_dim * ds.dim();
    let pure = purify_density(prep.unitary(), 1, full_dim)?;
    let mu = centroid(ds);
    let mut out = pure
        .absorb_target_ancillas(anc_dim)
        .with_claim(vector::outer(&mu, &mu));
    // Ledger: the purification wraps the N-term combination.
    out = out.with_ledger(
        *prep.ledger()
            + ResourceLedger {
                rho_copies: 0,
                circuit_depth: prep.ledger().circuit_depth + 3.0,
                ancilla_qubits: 1,
                unitary_calls: 2,
            },
    );
    Ok(out)
}

/// Exact block encoding of `ρ̄ = Σ pⁱ|xⁱ⟩⟨xⁱ|` (Route B building block).
pub fn ensemble_encoding(ds: &Dataset) -> Result<BlockEncoding> {
    let encs: Vec<BlockEncoding> = ds
        .points()
        .iter()
        .map(|x| {
            let prep = state_prep_unitary(x)?;
            Ok(purify_density(&prep, 1, ds.dim())?)
        })
        .collect::<Result<_>>()?;
    let refs: Vec<&BlockEncoding> = encs.iter().collect();
    let signs = vec![Sign::Plus; refs.len()];
    let out = lcu(ds.weights(), &refs, &signs)?;
    Ok(out.with_claim(covariance_classical(ds, false)))
}

/// Build the block encoding of `(π/8)(ρ̄ − μμ†)` along the chosen route.
///
/// Route A consumes `eps ∈ (0, 1/2)`; Route B ignores it and is exact.
pub fn covariance_encoding(ds: &Dataset, route: Route, eps: f64) -> Result<CovarianceBundle> {
    covariance_encoding_with(ds, route, eps, 1.0)
}

/// [`covariance_encoding`] with an explicit exponentiation constant.
pub fn covariance_encoding_with(
    ds: &Dataset,
    route: Route,
    eps: f64,
    c_dme: f64,
) -> Result<CovarianceBundle> {
    let rho_bar = DensityMatrix::new(covariance_classical(ds, false))?;
    let mu = centroid(ds);
    let centered_target = covariance_classical(ds, true);

    // πρ̄/4, by route.
    let rho_enc = match route {
        Route::A => {
            qsvt::block_encode_density_with(&rho_bar, eps, EncodingMode::SampleFaithful, c_dme)?
                .encoding
        }
        Route::B => {
            let ens = ensemble_encoding(ds)?;
            scale_down(&ens, 4.0 / core::f64::consts::PI)?
        }
    };
    // πμμ†/4, always exact.
    let mean = mean_encoding(ds)?;
    let mean_scaled = scale_down(&mean, 4.0 / core::f64::consts::PI)?;

    let encoding = lcu(
        &[1.0, 1.0],
        &[&rho_enc, &mean_scaled],
        &[Sign::Plus, Sign::Minus],
    )?
    .with_claim(centered_target.scale_re(core::f64::consts::PI / 8.0));
    let ledger = *encoding.ledger();

    Ok(CovarianceBundle {
        centroid: mu,
        rho_bar,
        centered_target,
        encoding,
        route,
        ledger,
    })
}

/// An [`power::EncodingSource`] over the centered covariance, for driving
/// the component-extraction pipeline (block scale `π/8`).
pub fn covariance_source(ds: &Dataset, route: Route, c_dme: f64) -> power::EncodingSource {
    let scale = core::f64::consts::PI / 8.0;
    match route {
        Route::B => {
            let ds = ds.clone();
            power::EncodingSource::Custom {
                dim: ds.dim(),
                scale,
                builder: Box::new(move |_eps| {
                    covariance_encoding_with(&ds, Route::B, 0.1, c_dme)
                        .map(|b| b.encoding)
                        .map_err(covariance_to_power)
                }),
            }
        }
        Route::A => {
            let ds = ds.clone();
            power::EncodingSource::Custom {
                dim: ds.dim(),
                scale,
                builder: Box::new(move |eps| {
                    covariance_encoding_with(&ds, Route::A, eps.min(0.49), c_dme)
                        .map(|b| b.encoding)
                        .map_err(covariance_to_power)
                }),
            }
        }
    }
}

fn covariance_to_power(e: CovarianceError) -> PowerError {
    match e {
        CovarianceError::BlockEnc(inner) => PowerError::BlockEnc(inner),
        CovarianceError::Qsvt(inner) => PowerError::Qsvt(inner),
        CovarianceError::Linalg(inner) => PowerError::Linalg(inner),
        other => PowerError::Qsvt(QsvtError::InvalidAccuracy(match other {
            CovarianceError::NegativeWeight(w) => w,
            _ => f64::NAN,
        })),
    }
}
