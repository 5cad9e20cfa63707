//! Density-matrix exponentiation by repeated partial-swap steps.
//!
//! One step adjoins a fresh copy of ρ, applies `exp(−iS·Δt)` (S the swap
//! operator, so `exp(−iS·Δt) = cos(Δt)·I − i·sin(Δt)·S` exactly), and traces
//! the copy out:
//!
//! ```text
//! Λ_Δt(σ) = Tr₁[ e^{−iS·Δt} (ρ ⊗ σ) e^{+iS·Δt} ]
//!         = cos²(Δt)·σ − i·cos(Δt)sin(Δt)·[ρ, σ] + sin²(Δt)·Tr(σ)·ρ
//!         = σ − i·Δt·[ρ, σ] + O(Δt²).
//! ```
//!
//! Repeating `N = ⌈C·t²/ε⌉` steps with `Δt = t/N` approximates the
//! conjugation `σ ↦ e^{−iρt} σ e^{+iρt}` to accuracy `Θ(t²/N)`. (The
//! repeated-step limit is implemented as this conjugation channel; trace
//! preservation and complete positivity force the daggered right factor.)
//!
//! In the eigenbasis of ρ the step acts diagonally on coherences and as a
//! scalar geometric recursion on populations, so `Λ_Δt^N` has a closed form
//! that is evaluated directly; agreement with literal step iteration is a
//! tested invariant. The same reduction gives the coherent branch matrix
//! `M_N = (cos(Δt)·I − i·sin(Δt)·ρ)^N`, the control-(1,0) block of N
//! controlled steps. `M_N` carries the phase information a coherent
//! consumer sees, deviates from `exp(−iρt)` by the same `Θ(t²/N)` scale,
//! and is handed to downstream transformations as a one-ancilla unitary
//! completion ([`DmeResult::faithful_encoding`]).

use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

use crate::blockenc::{BlockEncoding, ResourceLedger};
use crate::linalg::{
    probe_states, tensor, trace_distance, unitary_completion, ComplexMatrix, DensityMatrix,
    LinalgError, Spectrum,
};
use crate::math;

/// Default multiplicative constant in `N = ⌈C·t²/ε⌉`.
pub const DEFAULT_C_DME: f64 = 1.0;

/// Errors from the exponentiation channel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DmeError {
    /// The two states must share a dimension.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Dimension of ρ.
        left: usize,
        /// Dimension of σ.
        right: usize,
    },
    /// Accuracy must lie in (0, 1).
    #[error("accuracy {0} outside (0, 1)")]
    InvalidAccuracy(f64),
    /// A substrate invariant failed.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Result alias for this module.
pub type Result<T> = core::result::Result<T, DmeError>;

/// The two-register SWAP operator on `n ⊗ n`.
#[derive(Debug, Clone)]
pub struct SwapOperator {
    dim: usize,
    matrix: ComplexMatrix,
}

impl SwapOperator {
    /// SWAP on two registers of dimension `n` each.
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            matrix: tensor::swap_matrix(dim),
        }
    }

    /// Register dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `n² × n²` matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// `exp(−iS·dt) = cos(dt)·I − i·sin(dt)·S`, exact because `S² = I`.
    pub fn evolution(&self, dt: f64) -> ComplexMatrix {
        let n2 = self.dim * self.dim;
        let mut u = ComplexMatrix::identity(n2).scale_re(math::cos(dt));
        let phase = Complex64::new(0.0, -math::sin(dt));
        for i in 0..n2 {
            for j in 0..n2 {
                let s = self.matrix[(i, j)];
                if s != Complex64::ZERO {
                    u[(i, j)] += s * phase;
                }
            }
        }
        u
    }
}

/// One partial-swap step: `Tr₁[ e^{−iS·dt} (ρ⊗σ) e^{+iS·dt} ]`, computed
/// from the explicit two-register conjugation.
pub fn swap_step(rho: &DensityMatrix, sigma: &DensityMatrix, dt: f64) -> Result<DensityMatrix> {
    let n = rho.dim();
    if sigma.dim() != n {
        return Err(DmeError::DimensionMismatch {
            left: n,
            right: sigma.dim(),
        });
    }
    let joint = tensor::kron(rho.matrix(), sigma.matrix());
    let u = SwapOperator::new(n).evolution(dt);
    let conjugated = u.matmul(&joint).matmul(&u.adjoint());
    let reduced = tensor::partial_trace_first(&conjugated, n, n);
    Ok(DensityMatrix::new(reduced.hermitian_part())?)
}

/// The N-step channel in spectral closed form.
#[derive(Debug, Clone)]
pub struct DmeChannel {
    basis: ComplexMatrix,
    eigenvalues: Vec<f64>,
    dt: f64,
    steps: u64,
}

impl DmeChannel {
    fn new(spectrum: &Spectrum, dt: f64, steps: u64) -> Self {
        Self {
            basis: spectrum.eigenvectors().clone(),
            eigenvalues: spectrum.eigenvalues().to_vec(),
            dt,
            steps,
        }
    }

    /// Number of steps N.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Apply the N-step channel to an arbitrary operator.
    ///
    /// In the eigenbasis of ρ, a coherence at `(j, k)` is multiplied by
    /// `μ_{jk}^N` with `μ_{jk} = cos²Δt − i·cosΔt·sinΔt·(r_j − r_k)`, while
    /// populations relax as `d ← cos^{2N}Δt · d + (1 − cos^{2N}Δt)·Tr(σ)·r⃗`.
    pub fn apply(&self, sigma: &ComplexMatrix) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        assert_eq!(sigma.dim(), n);
        let v = &self.basis;
        let tilde = v.adjoint().matmul(sigma).matmul(v);

        let c = math::cos(self.dt);
        let s = math::sin(self.dt);
        let nf = self.steps as f64;
        // cos^{2N}(Δt), stable for huge N via log1p.
        let c2n = math::exp(nf * math::log1p(-(s * s)));
        let tr: Complex64 = tilde.trace();

        let mut out = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    let r = self.eigenvalues[j];
                    out[(j, j)] = tilde[(j, j)] * c2n + tr * ((1.0 - c2n) * r);
                } else {
                    let dr = self.eigenvalues[j] - self.eigenvalues[k];
                    // μ = c² − i·c·s·Δr; |μ|² = c²·(1 − s²(1 − Δr²)).
                    // ln(c) is written as ½·log1p(−s²): plain ln(cos Δt)
                    // rounds to zero for tiny steps and would let coherences
                    // outlive populations, breaking positivity.
                    let log_mag = nf
                        * 0.5
                        * (math::log1p(-(s * s)) + math::log1p(-(s * s) * (1.0 - dr * dr)));
                    let arg = nf * math::atan2(-c * s * dr, c * c);
                    out[(j, k)] = tilde[(j, k)] * Complex64::from_polar(math::exp(log_mag), arg);
                }
            }
        }
        v.matmul(&out).matmul(&v.adjoint())
    }
}

/// Output of [`exponentiate_density`].
#[derive(Debug, Clone)]
pub struct DmeResult {
    /// The channel applied to the uniform-superposition probe state.
    pub channel_output: DensityMatrix,
    /// Exact `exp(−iρt)` for reference.
    pub implied_unitary: ComplexMatrix,
    /// Max over the probe basis of the trace distance between the channel
    /// output and exact conjugation by `exp(−iρt)`.
    pub empirical_error: f64,
    /// Resources: `rho_copies = N`, `circuit_depth = N·log₂(n)`.
    pub ledger: ResourceLedger,
    channel: DmeChannel,
    branch_basis: ComplexMatrix,
    branch_eigenvalues: Vec<Complex64>,
    branch_error: f64,
}

impl DmeResult {
    /// Number of swap steps N.
    pub fn steps(&self) -> u64 {
        self.channel.steps
    }

    /// The N-step channel.
    pub fn channel(&self) -> &DmeChannel {
        &self.channel
    }

    /// Apply the N-step channel to a state.
    pub fn apply_channel(&self, sigma: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.channel.apply(sigma.matrix());
        Ok(DensityMatrix::new(out.hermitian_part())?)
    }

    /// The coherent branch matrix `M_N = (cosΔt·I − i·sinΔt·ρ)^N`.
    pub fn coherent_branch(&self) -> ComplexMatrix {
        let n = self.branch_eigenvalues.len();
        let v = &self.branch_basis;
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in self.branch_eigenvalues.iter().enumerate() {
            let col = v.col(k);
            for i in 0..n {
                let w = col[i] * lam;
                for j in 0..n {
                    out[(i, j)] += w * col[j].conj();
                }
            }
        }
        out
    }

    /// `‖M_N − exp(−iρt)‖` in spectral norm (exact, from the shared
    /// eigenbasis).
    pub fn branch_error(&self) -> f64 {
        self.branch_error
    }

    /// The error-bearing unitary handed to coherent consumers: a one-ancilla
    /// exact unitary completion of `M_N`, claimed as an approximation of
    /// `exp(−iρt)` with `ε` equal to the realized branch error.
    pub fn faithful_encoding(&self) -> BlockEncoding {
        let n = self.branch_eigenvalues.len();
        let w = unitary_completion(&self.branch_basis, &self.branch_eigenvalues);
        let ledger = self.ledger
            + ResourceLedger {
                rho_copies: 0,
                circuit_depth: 0.0,
                ancilla_qubits: 1,
                unitary_calls: 0,
            };
        BlockEncoding::assemble(
            w,
            1.0,
            1,
            self.branch_error,
            n,
            ledger,
            Some(self.implied_unitary.clone()),
        )
    }
}

/// Simulate `exp(−iρt)` to accuracy ε with `N = ⌈C·t²/ε⌉` swap steps of
/// size `Δt = t/N`, using the default constant `C = 1`.
pub fn exponentiate_density(rho: &DensityMatrix, t: f64, eps: f64) -> Result<DmeResult> {
    exponentiate_density_with(rho, t, eps, DEFAULT_C_DME)
}

/// The coherent handoff alone: the one-ancilla unitary completion of
/// `M_N = (cosΔt·I − i·sinΔt·ρ)^N` with its realized error and the full
/// `N`-copy ledger, skipping the probe-basis tomography. Identical to
/// [`DmeResult::faithful_encoding`] on the corresponding full run.
pub fn coherent_handoff(
    rho: &DensityMatrix,
    t: f64,
    eps: f64,
    c_dme: f64,
) -> Result<BlockEncoding> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(DmeError::InvalidAccuracy(eps));
    }
    let n = rho.dim();
    let steps = math::ceil_count(c_dme * t * t / eps).max(1);
    let dt = t / steps as f64;
    let spectrum = rho.spectrum();
    let implied_unitary = spectrum.apply_function(|r| Complex64::from_polar(1.0, -r * t));

    let s = math::sin(dt);
    let c = math::cos(dt);
    let nf = steps as f64;
    let branch_eigenvalues: Vec<Complex64> = spectrum
        .eigenvalues()
        .iter()
        .map(|&r| {
            let log_mag = 0.5 * nf * math::log1p(-(s * s) * (1.0 - r * r));
            let arg = nf * math::atan2(-s * r, c);
            Complex64::from_polar(math::exp(log_mag), arg)
        })
        .collect();
    let branch_error = spectrum
        .eigenvalues()
        .iter()
        .zip(&branch_eigenvalues)
        .map(|(&r, &lam)| (lam - Complex64::from_polar(1.0, -r * t)).norm())
        .fold(0.0, f64::max);

    let w = unitary_completion(spectrum.eigenvectors(), &branch_eigenvalues);
    let ledger = ResourceLedger {
        rho_copies: steps,
        circuit_depth: steps as f64 * math::log2(n.max(2) as f64),
        ancilla_qubits: 1,
        unitary_calls: steps,
    };
    Ok(BlockEncoding::assemble(
        w,
        1.0,
        1,
        branch_error,
        n,
        ledger,
        Some(implied_unitary),
    ))
}

/// [`exponentiate_density`] with an explicit constant `C`.
///
/// The channel is evaluated over the full Hermitian probe basis (`n²`
/// deterministic pure-state probes) and `empirical_error` reports the worst
/// trace distance to exact conjugation by `exp(−iρt)`.
pub fn exponentiate_density_with(
    rho: &DensityMatrix,
    t: f64,
    eps: f64,
    c_dme: f64,
) -> Result<DmeResult> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(DmeError::InvalidAccuracy(eps));
    }
    let n = rho.dim();
    let steps = math::ceil_count(c_dme * t * t / eps).max(1);
    let dt = t / steps as f64;

    let spectrum = rho.spectrum();
    let channel = DmeChannel::new(&spectrum, dt, steps);
    let implied_unitary = spectrum.apply_function(|r| Complex64::from_polar(1.0, -r * t));

    // Channel tomography over the deterministic probe basis.
    let mut empirical_error: f64 = 0.0;
    for probe in probe_states(n) {
        let through = channel.apply(probe.matrix());
        let exact = implied_unitary
            .matmul(probe.matrix())
            .matmul(&implied_unitary.adjoint());
        empirical_error = empirical_error.max(trace_distance(&through, &exact));
    }

    let uniform: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(1.0 / math::sqrt(n as f64), 0.0))
        .collect();
    let sigma0 = DensityMatrix::from_pure(&uniform)?;
    let channel_output = DensityMatrix::new(channel.apply(sigma0.matrix()).hermitian_part())?;

    // Coherent branch eigenvalues (cosΔt − i·sinΔt·r)^N, in polar form so
    // Δt down to 1e−10 stays exact.
    let s = math::sin(dt);
    let c = math::cos(dt);
    let nf = steps as f64;
    let branch_eigenvalues: Vec<Complex64> = spectrum
        .eigenvalues()
        .iter()
        .map(|&r| {
            let log_mag = 0.5 * nf * math::log1p(-(s * s) * (1.0 - r * r));
            let arg = nf * math::atan2(-s * r, c);
            Complex64::from_polar(math::exp(log_mag), arg)
        })
        .collect();
    let branch_error = spectrum
        .eigenvalues()
        .iter()
        .zip(&branch_eigenvalues)
        .map(|(&r, &lam)| (lam - Complex64::from_polar(1.0, -r * t)).norm())
        .fold(0.0, f64::max);

    let ledger = ResourceLedger {
        rho_copies: steps,
        circuit_depth: steps as f64 * math::log2(n.max(2) as f64),
        ancilla_qubits: 0,
        unitary_calls: steps,
    };

    Ok(DmeResult {
        channel_output,
        implied_unitary,
        empirical_error,
        ledger,
        channel,
        branch_basis: spectrum.eigenvectors().clone(),
        branch_eigenvalues,
        branch_error,
    })
}
