//! The original sampling-based analysis as a baseline, plus analytic cost
//! models for the head-to-head comparison.
//!
//! Phase estimation on `exp(iρt)` with ρ itself as input collapses to the
//! spectral mixture `Σ rᵢ |λᵢ⟩⟨λᵢ| ⊗ |r̃ᵢ⟩⟨r̃ᵢ|`: measuring the phase
//! register returns outcome `i` with Born weight `rᵢ` and an eigenvalue
//! estimate `r̃ᵢ` rounded to the `t`-bit phase grid. The sampler here draws
//! from exactly that distribution; the circuit itself is not simulated
//! gate-by-gate since every quantity of interest depends only on the
//! outcome distribution and repetition counts.
//!
//! Two probability conventions ship side by side: the Born weight `rᵢ`
//! (what the spectral mixture dictates) and an `rᵢ²` convention matching
//! the "success probability `|r_max|²`" reading; the comparison tables
//! carry a convention column rather than silently choosing.
//!
//! Cost conventions: logarithms are natural, constants are 1.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{DensityMatrix, Spectrum};
use crate::math;
use crate::synth;

/// Errors from the baseline sampler and cost models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BaselineError {
    /// Requested more components than nonzero eigenvalues.
    #[error("requested {requested} components but only {available} nonzero eigenvalues")]
    RankDeficient {
        /// Components requested.
        requested: usize,
        /// Nonzero eigenvalues available.
        available: usize,
    },
    /// A cost-model or sampler parameter is out of range.
    #[error("invalid parameter {name} = {value}")]
    InvalidParameters {
        /// Parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
    },
}

/// Result alias for this module.
pub type Result<T> = core::result::Result<T, BaselineError>;

/// Probability convention for the original method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Outcome `i` occurs with probability `rᵢ` (the spectral mixture).
    BornWeight,
    /// Outcome `i` occurs with probability `∝ rᵢ²` (the `|r_max|²`
    /// success-probability reading), exposed for cost comparison only.
    AmplitudeSquared,
}

/// Which method a cost report describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Phase-estimation sampling.
    Original,
    /// Power iteration on block encodings.
    New,
}

/// The phase-estimation outcome distribution over `(r̃ᵢ, λᵢ)`.
#[derive(Debug, Clone)]
pub struct SpectralSamplingModel {
    spectrum: Spectrum,
    t_bits: u32,
    rounded: Vec<f64>,
    probabilities: Vec<f64>,
}

impl SpectralSamplingModel {
    /// Phase-register resolution in bits.
    pub fn t_bits(&self) -> u32 {
        self.t_bits
    }

    /// Grid-rounded eigenvalue estimates, index-aligned with the spectrum.
    pub fn rounded_eigenvalues(&self) -> &[f64] {
        &self.rounded
    }

    /// Outcome probabilities (nonnegative, sum to 1).
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// The underlying exact spectrum.
    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// Draw one outcome index.
    pub fn sample(&self, rng: &mut rand_chacha::ChaCha8Rng) -> usize {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, &p) in self.probabilities.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        self.probabilities.len() - 1
    }
}

/// The outcome distribution of phase estimation at `t_bits` resolution:
/// outcome `i` has probability `rᵢ` and reports `rᵢ` rounded to the
/// `2^{−t}` grid.
pub fn pe_distribution(rho: &DensityMatrix, t_bits: u32) -> Result<SpectralSamplingModel> {
    if !(4..=24).contains(&t_bits) {
        return Err(BaselineError::InvalidParameters {
            name: "t_bits",
            value: f64::from(t_bits),
        });
    }
    let spectrum = rho.spectrum();
    let grid = f64::from(1u32 << t_bits.min(30));
    let rounded: Vec<f64> = spectrum
        .eigenvalues()
        .iter()
        .map(|&r| libm::round(r * grid) / grid)
        .collect();
    let mut probabilities: Vec<f64> = spectrum.eigenvalues().iter().map(|&r| r.max(0.0)).collect();
    let total: f64 = probabilities.iter().sum();
    for p in &mut probabilities {
        *p /= total;
    }
    Ok(SpectralSamplingModel {
        spectrum,
        t_bits,
        rounded,
        probabilities,
    })
}

/// Phase-register bits for accuracy ε: `t = O(1/ε)` evolution needs
/// `⌈log₂(1/ε)⌉ + 2` bits, clamped to the supported range.
pub fn bits_for_accuracy(eps: f64) -> u32 {
    let raw = math::ceil_count(math::log2(1.0 / eps)) as u32 + 2;
    raw.clamp(4, 24)
}

/// One sampled component with its realized statistics.
#[derive(Debug, Clone)]
pub struct SampledComponent {
    /// Grid-rounded eigenvalue estimate.
    pub value: f64,
    /// The collapsed eigenvector.
    pub vector: Vec<Complex64>,
    /// Times this outcome was observed.
    pub observations: u64,
}

/// Result of a sampling run.
#[derive(Debug, Clone)]
pub struct SamplingRun {
    /// Top-R components in descending eigenvalue order.
    pub components: Vec<SampledComponent>,
    /// Total phase-estimation draws.
    pub draws: u64,
    /// Copies of ρ consumed: draws × per-draw cost `⌈1/ε³⌉`.
    pub copies: f64,
    /// Model circuit depth: copies × log₂(n).
    pub depth: f64,
}

/// Sample until the top-R outcomes are each observed `⌈1/ε²⌉` times
/// (the eigenvalue-estimation repetition count), then report them with the
/// realized copy cost.
pub fn sample_components(
    rho: &DensityMatrix,
    eps: f64,
    r_count: usize,
    seed: u64,
) -> Result<SamplingRun> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BaselineError::InvalidParameters {
            name: "eps",
            value: eps,
        });
    }
    let model = pe_distribution(rho, bits_for_accuracy(eps))?;
    let nonzero = model
        .spectrum
        .eigenvalues()
        .iter()
        .filter(|&&r| r > 1e-12)
        .count();
    if r_count > nonzero {
        return Err(BaselineError::RankDeficient {
            requested: r_count,
            available: nonzero,
        });
    }

    let needed = math::ceil_count(1.0 / (eps * eps)).max(1);
    let mut rng = synth::rng(seed);
    let mut counts = alloc::vec![0u64; model.probabilities.len()];
    let mut draws = 0u64;
    // The top-R outcomes are the R largest eigenvalues (indices 0..R in the
    // magnitude-sorted spectrum).
    while (0..r_count).any(|i| counts[i] < needed) {
        let idx = model.sample(&mut rng);
        counts[idx] += 1;
        draws += 1;
        debug_assert!(draws < 1_000_000_000, "sampling runaway");
    }

    let per_draw = math::ceil_count(1.0 / (eps * eps * eps)).max(1) as f64;
    let copies = draws as f64 * per_draw;
    let components = (0..r_count)
        .map(|i| SampledComponent {
            value: model.rounded[i],
            vector: model.spectrum.eigenvector(i),
            observations: counts[i],
        })
        .collect();
    Ok(SamplingRun {
        components,
        draws,
        copies,
        depth: copies * math::log2(rho.dim().max(2) as f64),
    })
}

/// Inputs to the analytic cost models.
#[derive(Debug, Clone, Copy)]
pub struct CostParams {
    /// Largest eigenvalue.
    pub r_max: f64,
    /// Smallest of the top-R eigenvalues.
    pub r_min: f64,
    /// Gap between the two largest eigenvalues.
    pub gamma: f64,
    /// Target accuracy.
    pub eps: f64,
    /// Number of components.
    pub r_count: usize,
    /// Dimension.
    pub dim: usize,
}

/// Analytic copy/depth estimate for one method at one parameter point.
#[derive(Debug, Clone, Copy)]
pub struct CostReport {
    /// Which method.
    pub method: Method,
    /// Probability convention used (affects the original method only).
    pub convention: Convention,
    /// Copies of ρ.
    pub copies: f64,
    /// Circuit depth in model units.
    pub depth: f64,
    /// Depth under the alternative (ε-heavier) accounting of the new
    /// method; equal to `depth` for the original method.
    pub depth_alt: f64,
    /// Parameters the estimate was evaluated at.
    pub params: CostParams,
}

/// Evaluate the analytic cost formulas (natural logs, unit constants).
///
/// Original method: `copies = 1/(r_min^c · ε³)` with `c = 1` under the Born
/// convention and `c = 2` under the amplitude-squared convention
/// (`r_min = r_max` when R = 1), times `log₂(n)` for depth. New method:
/// `copies = ((1/γ²)·ln²(1/ε)·(1/ε²))^R`, with depth
/// `R·log₂(n)·(1/γ³)·ln³(1/ε)/ε²` and the alternative accounting
/// `R·log₂(n)·(1/γ³)·ln²(1/ε)/ε³` reported side by side.
pub fn cost_model(
    method: Method,
    convention: Convention,
    params: &CostParams,
) -> Result<CostReport> {
    validate_params(params)?;
    let logn = math::log2(params.dim.max(2) as f64);
    let ln_inv_eps = math::ln(1.0 / params.eps);
    let (copies, depth, depth_alt) = match method {
        Method::Original => {
            let exponent = match convention {
                Convention::BornWeight => 1,
                Convention::AmplitudeSquared => 2,
            };
            let rare = if params.r_count <= 1 {
                params.r_max
            } else {
                params.r_min
            };
            let copies =
                1.0 / (math::pow(rare, exponent as f64) * params.eps * params.eps * params.eps);
            (copies, copies * logn, copies * logn)
        }
        Method::New => {
            let cube = |x: f64| x * x * x;
            let single = (1.0 / (params.gamma * params.gamma)) * ln_inv_eps * ln_inv_eps
                / (params.eps * params.eps);
            let copies = math::pow(single, params.r_count as f64);
            let depth = params.r_count as f64 * logn * cube(ln_inv_eps)
                / (cube(params.gamma) * params.eps * params.eps);
            let depth_alt = params.r_count as f64 * logn * ln_inv_eps * ln_inv_eps
                / (cube(params.gamma) * cube(params.eps));
            (copies, depth, depth_alt)
        }
    };
    Ok(CostReport {
        method,
        convention,
        copies,
        depth,
        depth_alt,
        params: *params,
    })
}

fn validate_params(p: &CostParams) -> Result<()> {
    let checks = [
        ("r_max", p.r_max, p.r_max > 0.0 && p.r_max <= 1.0),
        ("r_min", p.r_min, p.r_min > 0.0 && p.r_min <= 1.0),
        ("gamma", p.gamma, p.gamma > 0.0 && p.gamma <= 1.0),
        ("eps", p.eps, p.eps > 0.0 && p.eps < 1.0),
    ];
    for (name, value, ok) in checks {
        if !ok || !value.is_finite() {
            return Err(BaselineError::InvalidParameters { name, value });
        }
    }
    if p.r_count == 0 {
        return Err(BaselineError::InvalidParameters {
            name: "r_count",
            value: 0.0,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vector, ComplexMatrix};

    fn diag_density(entries: &[f64]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::diag_real(entries)).unwrap()
    }

    #[test]
    fn pure_state_always_yields_top_outcome() {
        let rho = DensityMatrix::from_pure(&vector::basis(2, 0)).unwrap();
        let model = pe_distribution(&rho, 8).unwrap();
        assert!((model.probabilities()[0] - 1.0).abs() < 1e-12);
        assert!((model.rounded_eigenvalues()[0] - 1.0).abs() < 1e-12);
        let mut rng = synth::rng(1);
        for _ in 0..100 {
            assert_eq!(model.sample(&mut rng), 0);
        }
    }

    #[test]
    fn outcome_probabilities_are_spectral_weights() {
        let rho = diag_density(&[0.7, 0.3]);
        let model = pe_distribution(&rho, 8).unwrap();
        assert!((model.probabilities()[0] - 0.7).abs() < 1e-12);
        assert!((model.probabilities()[1] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn grid_rounding_at_eight_bits() {
        let rho = diag_density(&[0.7, 0.3]);
        let model = pe_distribution(&rho, 8).unwrap();
        let res = 1.0 / 256.0;
        assert!((model.rounded_eigenvalues()[1] - 0.3).abs() <= res);
    }

    #[test]
    fn rejects_out_of_range_bits() {
        let rho = diag_density(&[0.7, 0.3]);
        assert!(pe_distribution(&rho, 3).is_err());
        assert!(pe_distribution(&rho, 25).is_err());
    }

    #[test]
    fn frequencies_converge_to_weights() {
        let mut rng = synth::rng(5);
        let spectrum = [0.3, 0.2, 0.15, 0.12, 0.1, 0.06, 0.04, 0.03];
        let rho = crate::synth::density_with_spectrum(&spectrum, 8, &mut rng).unwrap();
        let model = pe_distribution(&rho, 12).unwrap();
        let mut counts = [0u64; 8];
        let draws = 100_000;
        for _ in 0..draws {
            counts[model.sample(&mut rng)] += 1;
        }
        for (i, &r) in model.probabilities().iter().enumerate() {
            let freq = counts[i] as f64 / draws as f64;
            let bound = 4.0 * math::sqrt(r / draws as f64);
            assert!(
                (freq - r).abs() <= bound,
                "outcome {i}: |{freq} − {r}| > {bound}"
            );
        }
    }

    #[test]
    fn sampling_stops_after_enough_top_observations() {
        let rho = diag_density(&[0.9, 0.1]);
        let eps = 0.05;
        let run = sample_components(&rho, eps, 1, 7).unwrap();
        assert_eq!(run.components.len(), 1);
        assert!((run.components[0].value - 0.9).abs() <= eps);
        assert!(run.components[0].observations >= 400);
        // Expected draws ≈ (1/0.9)·400; copies = draws · ⌈1/ε³⌉.
        let per_draw = (1.0 / (eps * eps * eps)).ceil();
        assert_eq!(run.copies, run.draws as f64 * per_draw);
        assert!(run.draws >= 400 && run.draws < 4000);
    }

    #[test]
    fn uniform_spectrum_yields_uniform_outcomes() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let run = sample_components(&rho, 0.1, 4, 11).unwrap();
        assert_eq!(run.components.len(), 4);
        let total: u64 = run.components.iter().map(|c| c.observations).sum();
        for c in &run.components {
            let freq = c.observations as f64 / total as f64;
            assert!((freq - 0.25).abs() < 0.05, "frequency {freq}");
        }
    }

    #[test]
    fn realized_copies_scale_with_inverse_r_min() {
        // Comparing r_min = 0.1 against r_min = 0.01 at fixed R = 2: the
        // rarest outcome dominates the draw count.
        let eps = 0.1;
        let rho_a = diag_density(&[0.9, 0.1]);
        let rho_b = diag_density(&[0.99, 0.01]);
        let mut ratio_sum = 0.0;
        let trials = 20;
        for seed in 0..trials {
            let run_a = sample_components(&rho_a, eps, 2, seed).unwrap();
            let run_b = sample_components(&rho_b, eps, 2, seed).unwrap();
            ratio_sum += run_b.draws as f64 / run_a.draws as f64;
        }
        let ratio = ratio_sum / trials as f64;
        // r_min shrank 10×, so draws should grow ≈ 10×.
        assert!((5.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn sampler_rejects_rank_deficient_requests() {
        let rho = DensityMatrix::from_pure(&vector::basis(4, 0)).unwrap();
        assert!(matches!(
            sample_components(&rho, 0.1, 2, 1),
            Err(BaselineError::RankDeficient { .. })
        ));
    }

    #[test]
    fn cost_model_reference_points() {
        let params = CostParams {
            r_max: 0.5,
            r_min: 0.5,
            gamma: 0.5,
            eps: 0.1,
            r_count: 1,
            dim: 16,
        };
        let orig = cost_model(Method::Original, Convention::AmplitudeSquared, &params).unwrap();
        assert!((orig.copies - 4000.0).abs() < 1e-9);
        let new = cost_model(Method::New, Convention::BornWeight, &params).unwrap();
        let want = 4.0 * math::ln(10.0) * math::ln(10.0) * 100.0;
        assert!((new.copies - want).abs() < 1e-6);
        assert!((want - 2.12e3).abs() < 12.0);
    }

    #[test]
    fn multi_component_costs_exponentiate() {
        let mut params = CostParams {
            r_max: 0.5,
            r_min: 0.2,
            gamma: 0.3,
            eps: 0.1,
            r_count: 1,
            dim: 16,
        };
        let single = cost_model(Method::New, Convention::BornWeight, &params)
            .unwrap()
            .copies;
        params.r_count = 3;
        let triple = cost_model(Method::New, Convention::BornWeight, &params)
            .unwrap()
            .copies;
        assert!((triple - single.powi(3)).abs() / triple < 1e-12);
    }

    #[test]
    fn crossover_matches_regime_claims() {
        // Uniform low-rank spectrum: gap at grid resolution, original wins.
        let uniform = CostParams {
            r_max: 0.25,
            r_min: 0.25,
            gamma: 1e-3,
            eps: 0.1,
            r_count: 1,
            dim: 16,
        };
        for conv in [Convention::BornWeight, Convention::AmplitudeSquared] {
            let orig = cost_model(Method::Original, conv, &uniform).unwrap();
            let new = cost_model(Method::New, conv, &uniform).unwrap();
            assert!(orig.copies < new.copies, "{conv:?}");
        }
        // Healthy gap with an exponentially small r_min: new method wins.
        let gapped = CostParams {
            r_max: 0.6,
            r_min: 1e-4,
            gamma: 0.5,
            eps: 0.1,
            r_count: 2,
            dim: 16,
        };
        for conv in [Convention::BornWeight, Convention::AmplitudeSquared] {
            let orig = cost_model(Method::Original, conv, &gapped).unwrap();
            let new = cost_model(Method::New, conv, &gapped).unwrap();
            assert!(new.copies < orig.copies, "{conv:?}");
        }
    }

    #[test]
    fn cost_model_rejects_invalid_parameters() {
        let mut params = CostParams {
            r_max: 0.5,
            r_min: 0.5,
            gamma: 0.5,
            eps: 0.1,
            r_count: 1,
            dim: 16,
        };
        params.eps = 0.0;
        assert!(matches!(
            cost_model(Method::New, Convention::BornWeight, &params),
            Err(BaselineError::InvalidParameters { .. })
        ));
    }
}
