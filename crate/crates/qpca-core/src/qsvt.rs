//! Eigenvalue-polynomial transformation of block-encoded Hermitian
//! operators, logarithm-of-unitary recovery, and amplification cost
//! accounting.
//!
//! The central transformation: given an `(α, a, ε)`-encoding of a Hermitian
//! `A` and a degree-`d` polynomial with `|P(x)| ≤ 1/2` on `[−1, 1]`, produce
//! a `(1, a+2, 4d√(ε/α))`-encoding of `P(A/α)` using `d` applications of the
//! input unitary. The operator content is realized at the matrix level
//! (spectral evaluation of `P` plus a unitary completion); phase-sequence
//! synthesis is out of scope, so costs are recorded in the ledger rather
//! than compiled to gates.
//!
//! Recovering a density matrix from its exponential: with
//! `Ũ ≈ U = exp(−iH)`, `‖H‖ ≤ 1/2`, build `sin(H) = i(Ũ − Ũ†)/2` by a
//! two-term linear combination, apply an odd polynomial approximation of
//! `arcsin(x)/π`, and obtain `H/π`; presentation factors (`2H/π`, and
//! `πρ/4` for `H = ρ/2`) are materialized by exact unitary re-completion of
//! the rescaled block. The quoted resource counts already include their
//! normalization, so no amplification is charged for presentation.
//!
//! The arcsin polynomial is the truncated odd Taylor series of
//! `arcsin(x)/π`. Its coefficients are positive, so its supremum on
//! `[−1, 1]` is the value at `x = 1`, strictly below `arcsin(1)/π = 1/2`:
//! the sup-norm certificate is analytic, and geometric decay on
//! `|x| ≤ sin(1/2)` gives degree `O(log(1/ε))`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

use crate::blockenc::{extract_block, lcu, BlockEncError, BlockEncoding, ResourceLedger, Sign};
use crate::dme::{self, DmeError};
use crate::linalg::{
    dilate_hermitian, eigh, polar_unitary, principal_log_unitary, tensor, ComplexMatrix,
    DensityMatrix, LinalgError,
};
use crate::math;

/// Default constant-accuracy budget for the arcsin polynomial when the
/// caller's ε is loose (the fixed-δ convention).
pub const DEFAULT_POLY_DELTA: f64 = 1e-3;
/// Default constant in the degree bound `d ≤ C·log(1/ε)`.
pub const DEFAULT_C_LOG: f64 = 4.0;

/// Errors from eigenvalue transformation pipelines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QsvtError {
    /// Polynomial sup-norm bound exceeds 1/2.
    #[error("polynomial sup bound {0} exceeds 1/2")]
    SupNormViolation(f64),
    /// The encoded block is not Hermitian within 1e−6.
    #[error("encoded target not Hermitian: ‖Ã − Ã†‖_F = {0:.3e}")]
    NotHermitianTarget(f64),
    /// Accuracy parameter out of range.
    #[error("accuracy {0} out of range")]
    InvalidAccuracy(f64),
    /// Eigenphases of the encoded unitary leave [−1/2, 1/2].
    #[error("eigenphase {0:.4} outside [−1/2, 1/2]")]
    PhaseOutOfRange(f64),
    /// Amplification parameters out of range.
    #[error("invalid amplification parameters: γ={gamma}, δ={delta}, ε={eps}")]
    InvalidParameters {
        /// Amplification factor.
        gamma: f64,
        /// Relative precision of the amplified singular values.
        delta: f64,
        /// Target accuracy.
        eps: f64,
    },
    /// Propagated block-encoding error.
    #[error(transparent)]
    BlockEnc(#[from] BlockEncError),
    /// Propagated substrate error.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    /// Propagated exponentiation error.
    #[error(transparent)]
    Dme(#[from] DmeError),
}

/// Result alias for this module.
pub type Result<T> = core::result::Result<T, QsvtError>;

/// Parity of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Only even-degree terms.
    Even,
    /// Only odd-degree terms.
    Odd,
    /// Mixed terms.
    None,
}

/// A real polynomial in the Chebyshev basis with a certified sup-norm bound
/// on `[−1, 1]`.
#[derive(Debug, Clone)]
pub struct Polynomial {
    /// Chebyshev coefficients, `P(x) = Σ coeffs[k]·T_k(x)`.
    coeffs: Vec<f64>,
    parity: Parity,
    sup_bound: f64,
}

impl Polynomial {
    /// Wrap Chebyshev coefficients; the sup bound is certified by a dense
    /// scan over 2001 equispaced points (exact for the low degrees used
    /// here, with a 1e−12 guard).
    pub fn from_chebyshev(coeffs: Vec<f64>, parity: Parity) -> Self {
        let mut p = Self {
            coeffs,
            parity,
            sup_bound: 0.0,
        };
        let mut sup: f64 = 0.0;
        for i in 0..=2000 {
            let x = -1.0 + 2.0 * i as f64 / 2000.0;
            sup = sup.max(math::fabs(p.eval(x)));
        }
        p.sup_bound = sup + 1e-12;
        p.enforce_parity();
        p
    }

    fn with_analytic_bound(coeffs: Vec<f64>, parity: Parity, sup_bound: f64) -> Self {
        let mut p = Self {
            coeffs,
            parity,
            sup_bound,
        };
        p.enforce_parity();
        p
    }

    fn enforce_parity(&mut self) {
        match self.parity {
            Parity::Odd => {
                for (k, c) in self.coeffs.iter_mut().enumerate() {
                    if k % 2 == 0 {
                        *c = 0.0;
                    }
                }
            }
            Parity::Even => {
                for (k, c) in self.coeffs.iter_mut().enumerate() {
                    if k % 2 == 1 {
                        *c = 0.0;
                    }
                }
            }
            Parity::None => {}
        }
    }

    /// `P(x) = c·x` as a degree-1 Chebyshev series.
    pub fn linear(c: f64) -> Self {
        Self::from_chebyshev(vec![0.0, c], Parity::Odd)
    }

    /// Chebyshev coefficients.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree (length − 1, ignoring trailing zeros).
    pub fn degree(&self) -> usize {
        let mut d = self.coeffs.len().saturating_sub(1);
        while d > 0 && self.coeffs[d] == 0.0 {
            d -= 1;
        }
        d
    }

    /// Parity flag.
    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Certified sup-norm bound on `[−1, 1]`.
    pub fn sup_bound(&self) -> f64 {
        self.sup_bound
    }

    /// Clenshaw evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.coeffs.len();
        if n == 0 {
            return 0.0;
        }
        let (mut b1, mut b2) = (0.0, 0.0);
        for k in (1..n).rev() {
            let b0 = 2.0 * x * b1 - b2 + self.coeffs[k];
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + self.coeffs[0]
    }
}

/// Multiply a Chebyshev series by `x`: `T_k·x = (T_{k+1} + T_{|k−1|})/2`.
fn cheb_mul_x(v: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; v.len() + 1];
    for (k, &a) in v.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        if k == 0 {
            out[1] += a;
        } else {
            out[k + 1] += a / 2.0;
            out[k - 1] += a / 2.0;
        }
    }
    out
}

/// Odd Chebyshev approximation of `arcsin(x)/π` accurate to `eps_poly` on
/// `|x| ≤ sin(1/2)`, with analytic sup bound `< 1/2` on `[−1, 1]` and
/// degree `O(log(1/eps_poly))`.
pub fn arcsin_poly(eps_poly: f64) -> Result<Polynomial> {
    if !(eps_poly > 0.0 && eps_poly <= 0.5) {
        return Err(QsvtError::InvalidAccuracy(eps_poly));
    }
    let s = math::sin(0.5);
    let inv_pi = 1.0 / core::f64::consts::PI;

    // Taylor coefficients of arcsin: c_k = (2k choose k) / (4^k (2k+1)).
    let mut terms: Vec<f64> = Vec::new(); // c_k / π
    let mut central = 1.0; // (2k choose k)/4^k
    let mut k = 0usize;
    loop {
        let c_k = central / (2.0 * k as f64 + 1.0);
        terms.push(c_k * inv_pi);
        // Tail after truncating at k: Σ_{j>k} c_j s^{2j+1} ≤ c_{k+1} s^{2k+3}/(1−s²).
        let next_central = central * (2.0 * k as f64 + 1.0) / (2.0 * k as f64 + 2.0);
        let c_next = next_central / (2.0 * k as f64 + 3.0);
        let tail = c_next * inv_pi * math::pow(s, 2.0 * k as f64 + 3.0) / (1.0 - s * s);
        if tail <= 0.5 * eps_poly {
            break;
        }
        central = next_central;
        k += 1;
        assert!(k < 400, "arcsin series failed to converge");
    }

    // Horner in the Chebyshev basis over x²: p = x·(t₀ + x²(t₁ + x²(…))).
    let mut cheb = vec![*terms.last().unwrap()];
    for idx in (0..terms.len() - 1).rev() {
        cheb = cheb_mul_x(&cheb_mul_x(&cheb));
        cheb[0] += terms[idx];
    }
    cheb = cheb_mul_x(&cheb);

    // Positive Taylor coefficients: the sup on [−1, 1] is the value at 1.
    let sup: f64 = terms.iter().sum();
    debug_assert!(sup < 0.5);
    Ok(Polynomial::with_analytic_bound(cheb, Parity::Odd, sup))
}

/// Transform an encoding of Hermitian `A` into a `(1, a+2, 4d√(ε/α))`
/// encoding of `P(A/α)`, for `|P| ≤ 1/2` on `[−1, 1]`.
///
/// The block is realized by spectral evaluation of `P` on the Hermitian
/// part of the extracted block (eigenvalues clamped to `[−1, 1]`), embedded
/// in a fresh unitary completion; the ledger charges `d` applications of
/// the input unitary plus `O((a+1)d)` extra gates of depth.
pub fn eigen_poly_transform(be: &BlockEncoding, poly: &Polynomial) -> Result<BlockEncoding> {
    if poly.sup_bound() > 0.5 + 1e-9 {
        return Err(QsvtError::SupNormViolation(poly.sup_bound()));
    }
    // An ε-approximate encoding of a Hermitian target may carry up to ε of
    // non-Hermitian noise in its block; the 1e−6 floor applies to nominally
    // exact inputs.
    let block = extract_block(be);
    let herm_err = block.hermiticity_error();
    if herm_err > 1e-6 + 2.0 * be.eps() {
        return Err(QsvtError::NotHermitianTarget(herm_err));
    }

    let herm = block.hermitian_part();
    let spec = eigh(&herm)?;
    let transformed = spec.apply_function(|r| Complex64::new(poly.eval(r.clamp(-1.0, 1.0)), 0.0));

    let n = be.target_dim();
    let d = poly.degree();
    let dilation = dilate_hermitian(&transformed)?;
    let pad = 1usize << (be.ancillas() + 1);
    let unitary = tensor::kron(&ComplexMatrix::identity(pad), &dilation);

    let eps_out = 4.0 * d as f64 * math::sqrt(be.eps() / be.alpha());
    let claimed = match be.claimed() {
        Some(c) => {
            let target = c.scale_re(1.0 / be.alpha()).hermitian_part();
            Some(
                eigh(&target)?
                    .apply_function(|r| Complex64::new(poly.eval(r.clamp(-1.0, 1.0)), 0.0)),
            )
        }
        None => None,
    };
    let input = be.ledger();
    let ledger = ResourceLedger {
        rho_copies: input.rho_copies,
        circuit_depth: d as f64 * input.circuit_depth + (f64::from(be.ancillas()) + 1.0) * d as f64,
        ancilla_qubits: input.ancilla_qubits + 2,
        unitary_calls: d as u64 * input.unitary_calls + 1,
    };
    Ok(BlockEncoding::assemble(
        unitary,
        1.0,
        be.ancillas() + 2,
        eps_out,
        n,
        ledger,
        claimed,
    ))
}

/// How the logarithm of the unitary is recovered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogMode {
    /// Exact principal matrix logarithm (classical oracle reference).
    Oracle,
    /// The arcsin∘sin polynomial route.
    Polynomial,
}

/// Output of [`log_unitary`]: the encoding of `2H/π` and the polynomial
/// degree the pipeline used (0 in oracle mode).
#[derive(Debug, Clone)]
pub struct LogUnitaryOutput {
    /// Encoding of `2H/π` at `α = 1`.
    pub encoding: BlockEncoding,
    /// Achieved arcsin-polynomial degree.
    pub degree: usize,
}

/// Recover an encoding of `2H/π` from an encoding of `U = exp(−iH)` with
/// `‖H‖ ≤ 1/2`, to accuracy `eps`.
///
/// Pipeline (polynomial mode): `sin(H) = i(Ũ − Ũ†)/2` by a two-term linear
/// combination of the phase-adjusted encoding and its adjoint, then
/// [`eigen_poly_transform`] with [`arcsin_poly`] yields `H/π`; a factor-2
/// re-completion presents `2H/π`. The ledger charges `O(log(1/eps))`
/// controlled applications of the input unitary; the recorded `ε` is the
/// certified Lipschitz bound `2·ε_poly + 0.73·ε_in`, which is tighter than
/// the generic robustness bound.
pub fn log_unitary(be: &BlockEncoding, eps: f64, mode: LogMode) -> Result<LogUnitaryOutput> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(QsvtError::InvalidAccuracy(eps));
    }
    // Phase-range gate on the encoded unitary (polar-projected so an
    // ε-perturbed block still validates).
    let block = extract_block(be);
    let v = polar_unitary(&block)?;
    let h_check = principal_log_unitary(&v)?;
    let phase_norm = h_check.spectral_norm();
    if phase_norm > 0.5 + 0.05 + be.eps() {
        return Err(QsvtError::PhaseOutOfRange(phase_norm));
    }

    match mode {
        LogMode::Oracle => {
            let target = h_check.scale_re(2.0 / core::f64::consts::PI);
            let encoding = completed_presentation(be, &target, be.ancillas() + 2, eps)?;
            let d_eff = math::ceil_count(math::ln(1.0 / eps)).max(1);
            let input = be.ledger();
            let ledger = ResourceLedger {
                rho_copies: input.rho_copies,
                circuit_depth: d_eff as f64 * input.circuit_depth,
                ancilla_qubits: input.ancilla_qubits + 2,
                unitary_calls: d_eff * input.unitary_calls,
            };
            Ok(LogUnitaryOutput {
                encoding: encoding.with_ledger(ledger),
                degree: 0,
            })
        }
        LogMode::Polynomial => {
            let i = Complex64::new(0.0, 1.0);
            let be_plus = be.phase(i);
            let be_minus = be.adjoint().phase(-i);
            let sin_enc = lcu(
                &[0.5, 0.5],
                &[&be_plus, &be_minus],
                &[Sign::Plus, Sign::Plus],
            )?;

            let eps_poly = DEFAULT_POLY_DELTA.min(eps / 2.0);
            let poly = arcsin_poly(eps_poly)?;
            let transformed = eigen_poly_transform(&sin_enc, &poly)?;

            // H/π → 2H/π by exact re-completion of the doubled block.
            let doubled = extract_block(&transformed).hermitian_part().scale_re(2.0);
            let eps_out = 2.0 * eps_poly + 0.73 * be.eps();
            let mut out =
                completed_presentation(&transformed, &doubled, transformed.ancillas(), eps_out)?;
            if let Some(c) = be.claimed() {
                // Claim 2H/π of the claimed unitary when it is one.
                if c.unitarity_error() <= 1e-6 {
                    let h = principal_log_unitary(&polar_unitary(c)?)?;
                    out = out.with_claim(h.scale_re(2.0 / core::f64::consts::PI));
                }
            }
            // U† is circuit reuse of the same source, so copies are charged
            // once; the d polynomial segments re-run the source circuit.
            let d = poly.degree() as u64;
            let input = be.ledger();
            let ledger = ResourceLedger {
                rho_copies: input.rho_copies,
                circuit_depth: d as f64 * input.circuit_depth + 3.0 * d as f64,
                ancilla_qubits: input.ancilla_qubits + 3,
                unitary_calls: input.unitary_calls + d,
            };
            Ok(LogUnitaryOutput {
                encoding: out.with_ledger(ledger),
                degree: poly.degree(),
            })
        }
    }
}

/// Rebuild an encoding around given Hermitian block content (presentation
/// re-completion): same target, `a_out` ancillas, recorded error `eps`.
fn completed_presentation(
    source: &BlockEncoding,
    content: &ComplexMatrix,
    a_out: u32,
    eps: f64,
) -> Result<BlockEncoding> {
    let n = source.target_dim();
    assert!(a_out >= 1);
    let dilation = dilate_hermitian(content)?;
    let pad = 1usize << (a_out - 1);
    let unitary = tensor::kron(&ComplexMatrix::identity(pad), &dilation);
    Ok(BlockEncoding::assemble(
        unitary,
        1.0,
        a_out,
        eps,
        n,
        *source.ledger(),
        None,
    ))
}

/// Source fidelity and recovery route for [`block_encode_density`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingMode {
    /// Exact `exp(−iρ/2)` and exact logarithm: the classical oracle
    /// reference, with the ledger still charged the full copy count.
    Oracle,
    /// Exact `exp(−iρ/2)` through the polynomial recovery route.
    Polynomial,
    /// The error-bearing exponentiation handoff (accuracy ε², per the
    /// √ε → ε rescaling) through the polynomial route.
    SampleFaithful,
}

/// Output of [`block_encode_density`].
#[derive(Debug, Clone)]
pub struct DensityEncoding {
    /// ε-approximate encoding of `πρ/4` at `α = 1`.
    pub encoding: BlockEncoding,
    /// Polynomial degree used by the recovery (0 in oracle mode).
    pub degree: usize,
}

/// Build an ε-approximate block encoding of `πρ/4` from copies of ρ.
///
/// Composes exponentiation at `t = 1/2` (accuracy `ε²` in sample-faithful
/// mode, so the recovered operator lands within ε) with logarithm recovery,
/// then presents `πρ/4 = (π²/4)·(ρ/π)` by exact re-completion. The ledger
/// charges `N = ⌈C·t²/ε²⌉` copies and `N·log₂(n)` depth regardless of mode.
pub fn block_encode_density(
    rho: &DensityMatrix,
    eps: f64,
    mode: EncodingMode,
) -> Result<DensityEncoding> {
    block_encode_density_with(rho, eps, mode, dme::DEFAULT_C_DME)
}

/// [`block_encode_density`] with an explicit exponentiation constant.
pub fn block_encode_density_with(
    rho: &DensityMatrix,
    eps: f64,
    mode: EncodingMode,
    c_dme: f64,
) -> Result<DensityEncoding> {
    if !(eps > 0.0 && eps < 0.5) {
        return Err(QsvtError::InvalidAccuracy(eps));
    }
    let t = 0.5;
    let n = rho.dim();
    let copies = math::ceil_count(c_dme * t * t / (eps * eps)).max(1);
    let dme_ledger = ResourceLedger {
        rho_copies: copies,
        circuit_depth: copies as f64 * math::log2(n.max(2) as f64),
        ancilla_qubits: 0,
        unitary_calls: copies,
    };

    let source = match mode {
        EncodingMode::Oracle | EncodingMode::Polynomial => {
            let exact = rho.evolution(t);
            crate::blockenc::encode_self(exact)?.with_ledger(dme_ledger)
        }
        EncodingMode::SampleFaithful => dme::coherent_handoff(rho, t, eps * eps, c_dme)?,
    };

    let log_mode = match mode {
        EncodingMode::Oracle => LogMode::Oracle,
        _ => LogMode::Polynomial,
    };
    // Final presentation multiplies the block by π²/4, so run the log
    // recovery tight enough to absorb the stretch.
    let eps_log = eps * 4.0 / (core::f64::consts::PI * core::f64::consts::PI);
    let lu = log_unitary(&source, eps_log, log_mode)?;

    let quarter_pi_rho = rho.matrix().scale_re(core::f64::consts::PI / 4.0);
    let content = extract_block(&lu.encoding)
        .hermitian_part()
        .scale_re(core::f64::consts::PI * core::f64::consts::PI / 4.0);
    let encoding = completed_presentation(&lu.encoding, &content, lu.encoding.ancillas(), eps)?
        .with_claim(quarter_pi_rho);
    Ok(DensityEncoding {
        encoding,
        degree: lu.degree,
    })
}

/// Number of alternating-phase-modulation segments for amplification by
/// `γ > 1` to relative precision δ and accuracy ε:
/// `m = ⌈C·(γ/δ)·ln(γ/ε)⌉`.
pub fn amplification_uses(gamma: f64, delta: f64, eps: f64, c: f64) -> Result<u64> {
    if gamma <= 1.0 || !(delta > 0.0 && delta < 0.5) || !(eps > 0.0 && eps < 0.5) {
        return Err(QsvtError::InvalidParameters { gamma, delta, eps });
    }
    Ok(math::ceil_count(c * (gamma / delta) * math::ln(gamma / eps)).max(1))
}

/// Cost-accounting oracle for amplification: `m` uses of `U` and `U†`, one
/// ancilla qubit, depth `m` in model units. The amplified operator itself
/// is produced by exact renormalization in the consumer.
pub fn amplify_cost(gamma: f64, delta: f64, eps: f64) -> Result<ResourceLedger> {
    let m = amplification_uses(gamma, delta, eps, 1.0)?;
    Ok(ResourceLedger {
        rho_copies: 0,
        circuit_depth: m as f64,
        ancilla_qubits: 1,
        unitary_calls: 2 * m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockenc::encode_self;
    use crate::synth;

    #[test]
    fn linear_polynomial_halves_block() {
        let mut rng = synth::rng(1);
        let a = synth::random_hermitian_bounded(4, 0.9, &mut rng);
        let be = encode_self(dilate_hermitian(&a).unwrap())
            .unwrap()
            .absorb_target_ancillas(2)
            .with_claim(a.clone());
        let out = eigen_poly_transform(&be, &Polynomial::linear(0.5)).unwrap();
        assert!(extract_block(&out).sub(&a.scale_re(0.5)).spectral_norm() <= 1e-9);
        assert_eq!(out.ancillas(), be.ancillas() + 2);
        assert_eq!(out.alpha(), 1.0);
    }

    #[test]
    fn chebyshev_t2_on_diagonal_target() {
        // P = T₂/2 on diag(0.5, −0.5): P(±0.5) = (2·0.25 − 1)/2 = −0.25.
        let a = ComplexMatrix::diag_real(&[0.5, -0.5]);
        let be = encode_self(dilate_hermitian(&a).unwrap())
            .unwrap()
            .absorb_target_ancillas(2)
            .with_claim(a);
        let p = Polynomial::from_chebyshev(vec![0.0, 0.0, 0.5], Parity::Even);
        let out = eigen_poly_transform(&be, &p).unwrap();
        let want = ComplexMatrix::diag_real(&[-0.25, -0.25]);
        assert!(extract_block(&out).sub(&want).spectral_norm() <= 1e-10);
    }

    #[test]
    fn robustness_bound_recorded_and_respected() {
        // Input ε = 1e−4, α = 1, degree-8 polynomial: bound 4·8·√ε = 0.32.
        let mut rng = synth::rng(2);
        let a = synth::random_hermitian_bounded(4, 0.8, &mut rng);
        let be = encode_self(dilate_hermitian(&a).unwrap())
            .unwrap()
            .absorb_target_ancillas(2)
            .with_claim(a.clone())
            .with_eps(1e-4);
        let mut coeffs = vec![0.0; 9];
        coeffs[8] = 0.5; // T₈/2
        let p = Polynomial::from_chebyshev(coeffs, Parity::Even);
        assert_eq!(p.degree(), 8);
        let out = eigen_poly_transform(&be, &p).unwrap();
        assert!((out.eps() - 0.32).abs() < 1e-12);
        assert!(out.claim_error().unwrap() <= out.eps());
    }

    #[test]
    fn sup_norm_gate_rejects_large_polynomials() {
        let a = ComplexMatrix::diag_real(&[0.5, -0.5]);
        let be = encode_self(dilate_hermitian(&a).unwrap())
            .unwrap()
            .absorb_target_ancillas(2);
        let p = Polynomial::linear(0.9);
        assert!(matches!(
            eigen_poly_transform(&be, &p),
            Err(QsvtError::SupNormViolation(_))
        ));
    }

    #[test]
    fn arcsin_poly_rejects_bad_accuracy() {
        assert!(matches!(
            arcsin_poly(0.9),
            Err(QsvtError::InvalidAccuracy(_))
        ));
        assert!(matches!(
            arcsin_poly(0.0),
            Err(QsvtError::InvalidAccuracy(_))
        ));
    }

    #[test]
    fn arcsin_poly_is_odd_and_vanishes_at_zero() {
        let p = arcsin_poly(1e-6).unwrap();
        assert_eq!(p.parity(), Parity::Odd);
        assert!(math::fabs(p.eval(0.0)) < 1e-14);
        for (k, &c) in p.coeffs().iter().enumerate() {
            if k % 2 == 0 {
                assert_eq!(c, 0.0);
            }
        }
    }

    #[test]
    fn arcsin_poly_hits_reference_values() {
        let p = arcsin_poly(1e-6).unwrap();
        let x = math::sin(0.25);
        let want = 0.25 / core::f64::consts::PI;
        assert!(math::fabs(p.eval(x) - want) <= 1e-6);
    }

    #[test]
    fn arcsin_poly_certified_on_dense_grid() {
        for &eps in &[1e-2, 1e-4, 1e-6] {
            let p = arcsin_poly(eps).unwrap();
            let s = math::sin(0.5);
            let mut worst: f64 = 0.0;
            for i in 0..=10_000 {
                let x = -s + 2.0 * s * i as f64 / 10_000.0;
                let want = libm::asin(x) / core::f64::consts::PI;
                worst = worst.max(math::fabs(p.eval(x) - want));
            }
            assert!(worst <= eps, "grid error {worst} > {eps}");
            assert!(p.sup_bound() <= 0.5);
        }
    }

    #[test]
    fn arcsin_degree_grows_logarithmically() {
        let mut degrees = Vec::new();
        for k in 2..=8 {
            let eps = math::pow(10.0, -(k as f64));
            degrees.push((
                math::ln(1.0 / eps),
                arcsin_poly(eps).unwrap().degree() as f64,
            ));
        }
        // Fit d ≈ a + b·ln(1/ε); slope must stay bounded.
        let n = degrees.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(x, y) in &degrees {
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        assert!(
            slope > 0.0 && slope <= DEFAULT_C_LOG,
            "degree slope {slope}"
        );
    }

    #[test]
    fn log_unitary_of_identity_is_zero_block() {
        let be = encode_self(ComplexMatrix::identity(4)).unwrap();
        for mode in [LogMode::Oracle, LogMode::Polynomial] {
            let out = log_unitary(&be, 1e-4, mode).unwrap();
            assert!(
                extract_block(&out.encoding).spectral_norm() <= 1e-4,
                "{mode:?}"
            );
        }
    }

    #[test]
    fn log_unitary_recovers_diagonal_hamiltonian() {
        let h = ComplexMatrix::diag_real(&[0.4, 0.1]);
        let u = crate::linalg::matrix_function(&h, |x| Complex64::from_polar(1.0, -x)).unwrap();
        let be = encode_self(u).unwrap();
        let want = h.scale_re(2.0 / core::f64::consts::PI);
        for mode in [LogMode::Oracle, LogMode::Polynomial] {
            let out = log_unitary(&be, 1e-4, mode).unwrap();
            let got = extract_block(&out.encoding);
            assert!(got.sub(&want).spectral_norm() <= 1e-4, "{mode:?}");
        }
    }

    #[test]
    fn log_unitary_rejects_out_of_range_phases() {
        let h = ComplexMatrix::diag_real(&[1.4, 0.0]);
        let u = crate::linalg::matrix_function(&h, |x| Complex64::from_polar(1.0, -x)).unwrap();
        let be = encode_self(u).unwrap();
        assert!(matches!(
            log_unitary(&be, 1e-3, LogMode::Polynomial),
            Err(QsvtError::PhaseOutOfRange(_))
        ));
    }

    #[test]
    fn density_encoding_reaches_quarter_pi_rho() {
        let mut rng = synth::rng(3);
        let rho = synth::density_with_spectrum(&[0.6, 0.25, 0.1, 0.05], 4, &mut rng).unwrap();
        let want = rho.matrix().scale_re(core::f64::consts::PI / 4.0);
        for mode in [
            EncodingMode::Oracle,
            EncodingMode::Polynomial,
            EncodingMode::SampleFaithful,
        ] {
            let out = block_encode_density(&rho, 1e-2, mode).unwrap();
            let err = extract_block(&out.encoding).sub(&want).spectral_norm();
            assert!(err <= 1e-2, "{mode:?}: {err}");
            // Ledger carries the ε² copy count.
            assert_eq!(out.encoding.ledger().rho_copies, 2_500);
        }
    }

    #[test]
    fn density_encoding_of_ground_state_projector() {
        let rho = DensityMatrix::from_pure(&crate::linalg::vector::basis(4, 0)).unwrap();
        let out = block_encode_density(&rho, 1e-2, EncodingMode::SampleFaithful).unwrap();
        let want = rho.matrix().scale_re(core::f64::consts::PI / 4.0);
        assert!(extract_block(&out.encoding).sub(&want).spectral_norm() <= 1e-2);
    }

    #[test]
    fn density_encoding_of_maximally_mixed() {
        let rho = DensityMatrix::maximally_mixed(4).unwrap();
        let out = block_encode_density(&rho, 1e-2, EncodingMode::Polynomial).unwrap();
        let want = rho.matrix().scale_re(core::f64::consts::PI / 4.0);
        assert!(extract_block(&out.encoding).sub(&want).spectral_norm() <= 1e-2);
    }

    #[test]
    fn log_of_exponentiated_state_is_identity_both_modes() {
        // log ∘ (ρ ↦ exp(−iρ/2)) recovers 2·(ρ/2)/π = ρ/π within ε.
        let mut rng = synth::rng(61);
        for &dim in &[4usize, 8, 16] {
            let rho = synth::random_density(2, dim, &mut rng).unwrap();
            let u = rho.evolution(0.5);
            let be = encode_self(u).unwrap();
            let want = rho.matrix().scale_re(1.0 / core::f64::consts::PI);
            for mode in [LogMode::Oracle, LogMode::Polynomial] {
                let out = log_unitary(&be, 1e-4, mode).unwrap();
                let err = extract_block(&out.encoding).sub(&want).spectral_norm();
                assert!(err <= 1e-4, "dim {dim} {mode:?}: {err}");
            }
        }
    }

    #[test]
    fn robustness_bound_holds_for_perturbed_inputs() {
        // 20 randomized ε-perturbed encodings: the realized block error of
        // the transform stays within 4d√(ε/α) plus the certified
        // polynomial error.
        let mut rng = synth::rng(62);
        let poly = arcsin_poly(1e-4).unwrap();
        let d = poly.degree() as f64;
        for trial in 0..20 {
            let a = synth::random_hermitian_bounded(4, 0.4, &mut rng);
            let u = dilate_hermitian(&a).unwrap();
            // Left-multiply by exp(iδK): the block moves by at most δ.
            let delta = libm::pow(10.0, rand::Rng::gen_range(&mut rng, -6.0..-3.0));
            let k = synth::random_hermitian_bounded(8, 1.0, &mut rng);
            let rot = crate::linalg::matrix_function(&k, |x| Complex64::from_polar(1.0, delta * x))
                .unwrap();
            let be = crate::blockenc::BlockEncoding::from_parts(
                rot.matmul(&u),
                1.0,
                1,
                delta * 1.0001,
                4,
                crate::blockenc::ResourceLedger::one_unitary(),
            )
            .unwrap()
            .with_claim(a.clone());
            let out = eigen_poly_transform(&be, &poly).unwrap();
            let bound = 4.0 * d * math::sqrt(be.eps()) + 1e-4;
            let err = out.claim_error().unwrap();
            assert!(err <= bound, "trial {trial}: {err} > {bound}");
        }
    }

    #[test]
    fn amplification_formula_reference_point() {
        assert_eq!(amplification_uses(2.0, 0.1, 0.01, 1.0).unwrap(), 106);
    }

    #[test]
    fn amplification_monotone_in_gamma() {
        let mut last = 0;
        for &gamma in &[1.1, 1.5, 2.0, 4.0, 8.0] {
            let m = amplification_uses(gamma, 0.1, 0.01, 1.0).unwrap();
            assert!(m >= last);
            last = m;
        }
        // Doubling γ slightly more than doubles m.
        let m2 = amplification_uses(2.0, 0.1, 0.01, 1.0).unwrap() as f64;
        let m4 = amplification_uses(4.0, 0.1, 0.01, 1.0).unwrap() as f64;
        assert!(m4 / m2 > 2.0 && m4 / m2 < 2.5);
    }

    #[test]
    fn amplify_cost_rejects_bad_parameters() {
        assert!(matches!(
            amplify_cost(1.0, 0.1, 0.01),
            Err(QsvtError::InvalidParameters { .. })
        ));
        assert!(matches!(
            amplify_cost(2.0, 0.6, 0.01),
            Err(QsvtError::InvalidParameters { .. })
        ));
    }
}
