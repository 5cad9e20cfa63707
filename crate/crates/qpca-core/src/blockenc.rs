//! Block encodings and their combinator algebra.
//!
//! A unitary `U` on `2^a · n` dimensions is an `(α, a, ε)`-encoding of an
//! `n × n` operator `A` when the top-left `n × n` block `Ã` of `U` (all `a`
//! ancilla qubits projected onto `|0…0⟩`) satisfies `‖α·Ã − A‖ ≤ ε`; an
//! exact block encoding has `ε = 0`. Every encoding here carries the
//! explicit composed unitary so [`extract_block`] is directly testable, plus
//! a [`ResourceLedger`] mirroring the stated circuit costs. The intended
//! regime is desk scale: target dimensions up to 64 and a handful of
//! ancillas, where every claim can be checked by dense arithmetic.
//!
//! Register convention: ancillas are ordered with the newest combinator's
//! ancillas outermost (most significant), the target register innermost,
//! so the encoded block is always the literal top-left corner.
//!
//! Error propagation uses first-order worst-case formulas. These are
//! rigorous bounds whenever every claimed target obeys `‖A‖ ≤ α`, which the
//! constructors here maintain by convention.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, AddAssign};
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{tensor, unitary_with_first_column, ComplexMatrix, LinalgError, GATE_TOL};
use crate::math;

/// Unitarity tolerance for constructed encodings.
pub const ENCODING_TOL: f64 = 1e-9;

/// Errors from the block-encoding algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlockEncError {
    /// Input matrix is not unitary; payload is `‖U†U − I‖_F`.
    #[error("not unitary: ‖U†U − I‖_F = {0:.3e}")]
    NotUnitary(f64),
    /// Target dimensions of combinator inputs disagree.
    #[error("target dimension mismatch: {left} vs {right}")]
    DimensionMismatch {
        /// Left operand target dimension.
        left: usize,
        /// Right operand target dimension.
        right: usize,
    },
    /// A combinator was called with no inputs.
    #[error("combinator needs at least one input")]
    EmptyCombination,
    /// Scale factor must exceed 1.
    #[error("scale factor {0} must be > 1")]
    InvalidScale(f64),
    /// Declared register split does not match the preparation unitary.
    #[error("register split {dim_a}×{dim_b} does not fit unitary of dimension {unitary_dim}")]
    BadRegisterSplit {
        /// Declared dimension of the traced-out register.
        dim_a: usize,
        /// Declared dimension of the kept register.
        dim_b: usize,
        /// Actual dimension of the preparation unitary.
        unitary_dim: usize,
    },
    /// Weights for linear combinations must be positive and finite.
    #[error("weight {0} is not positive and finite")]
    BadWeight(f64),
}

impl From<LinalgError> for BlockEncError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NotUnitary(x) => BlockEncError::NotUnitary(x),
            LinalgError::BadVectorNorm(x) => BlockEncError::BadWeight(x),
            other => panic!("unexpected substrate error in block encoding: {other:?}"),
        }
    }
}

/// Result alias for block-encoding operations.
pub type Result<T> = core::result::Result<T, BlockEncError>;

/// Sign of a term in a linear combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    /// Added term.
    Plus,
    /// Subtracted term.
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Resource counters accumulated alongside every encoding.
///
/// Conventions: `rho_copies` counts state preparations consumed to realize a
/// source unitary (circuit reuse does not re-charge them), `circuit_depth`
/// is in abstract model units with every bare unitary costing 1,
/// `ancilla_qubits` accumulates qubits allocated by combinators, and
/// `unitary_calls` counts invocations of constituent unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ResourceLedger {
    /// Copies of ρ consumed.
    pub rho_copies: u64,
    /// Circuit depth in model units.
    pub circuit_depth: f64,
    /// Ancilla qubits allocated.
    pub ancilla_qubits: u64,
    /// Invocations of constituent unitaries (and their inverses).
    pub unitary_calls: u64,
}

impl ResourceLedger {
    /// The zero ledger.
    pub const ZERO: ResourceLedger = ResourceLedger {
        rho_copies: 0,
        circuit_depth: 0.0,
        ancilla_qubits: 0,
        unitary_calls: 0,
    };

    /// Ledger for a single bare unitary invocation.
    pub fn one_unitary() -> Self {
        ResourceLedger {
            rho_copies: 0,
            circuit_depth: 1.0,
            ancilla_qubits: 0,
            unitary_calls: 1,
        }
    }
}

impl Add for ResourceLedger {
    type Output = ResourceLedger;
    fn add(self, rhs: ResourceLedger) -> ResourceLedger {
        ResourceLedger {
            rho_copies: self.rho_copies + rhs.rho_copies,
            circuit_depth: self.circuit_depth + rhs.circuit_depth,
            ancilla_qubits: self.ancilla_qubits + rhs.ancilla_qubits,
            unitary_calls: self.unitary_calls + rhs.unitary_calls,
        }
    }
}

impl AddAssign for ResourceLedger {
    fn add_assign(&mut self, rhs: ResourceLedger) {
        *self = *self + rhs;
    }
}

/// An `(α, a, ε)` block encoding with its explicit unitary.
#[derive(Debug, Clone)]
pub struct BlockEncoding {
    unitary: ComplexMatrix,
    alpha: f64,
    ancillas: u32,
    eps: f64,
    target_dim: usize,
    ledger: ResourceLedger,
    /// Test-mode attachment: the claimed target `A` with `‖α·Ã − A‖ ≤ ε`.
    claimed: Option<ComplexMatrix>,
}

impl BlockEncoding {
    pub(crate) fn assemble(
        unitary: ComplexMatrix,
        alpha: f64,
        ancillas: u32,
        eps: f64,
        target_dim: usize,
        ledger: ResourceLedger,
        claimed: Option<ComplexMatrix>,
    ) -> Self {
        debug_assert_eq!(unitary.dim(), (1usize << ancillas) * target_dim);
        Self {
            unitary,
            alpha,
            ancillas,
            eps,
            target_dim,
            ledger,
            claimed,
        }
    }

    /// Assemble an encoding from explicit parts (test-mode constructor).
    ///
    /// The matrix must be unitary within the construction tolerance and of
    /// dimension `2^ancillas · target_dim`; `eps` is taken on trust as the
    /// caller's certified bound.
    pub fn from_parts(
        unitary: ComplexMatrix,
        alpha: f64,
        ancillas: u32,
        eps: f64,
        target_dim: usize,
        ledger: ResourceLedger,
    ) -> Result<Self> {
        if unitary.dim() != (1usize << ancillas) * target_dim {
            return Err(BlockEncError::DimensionMismatch {
                left: unitary.dim(),
                right: (1usize << ancillas) * target_dim,
            });
        }
        let err = unitary.unitarity_error();
        if err > ENCODING_TOL {
            return Err(BlockEncError::NotUnitary(err));
        }
        Ok(Self::assemble(
            unitary, alpha, ancillas, eps, target_dim, ledger, None,
        ))
    }

    /// The explicit composed unitary, dimension `2^a · n`.
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// Scale factor α.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Ancilla count `a`.
    pub fn ancillas(&self) -> u32 {
        self.ancillas
    }

    /// First-order error bound ε.
    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Target dimension `n`.
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Accumulated resource ledger.
    pub fn ledger(&self) -> &ResourceLedger {
        &self.ledger
    }

    /// Claimed target, when attached.
    pub fn claimed(&self) -> Option<&ComplexMatrix> {
        self.claimed.as_ref()
    }

    /// Attach a claimed target (test mode).
    pub fn with_claim(mut self, target: ComplexMatrix) -> Self {
        assert_eq!(target.dim(), self.target_dim);
        self.claimed = Some(target);
        self
    }

    /// Drop the claimed target.
    pub fn without_claim(mut self) -> Self {
        self.claimed = None;
        self
    }

    /// Override the error bound (used when a pipeline certifies a tighter or
    /// looser bound than the generic combinator formula).
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    /// Replace the ledger (used when a pipeline charges costs by formula).
    pub fn with_ledger(mut self, ledger: ResourceLedger) -> Self {
        self.ledger = ledger;
        self
    }

    /// `‖α·Ã − A_claimed‖` in spectral norm, when a claim is attached.
    pub fn claim_error(&self) -> Option<f64> {
        let claimed = self.claimed.as_ref()?;
        Some(
            extract_block(self)
                .scale_re(self.alpha)
                .sub(claimed)
                .spectral_norm(),
        )
    }

    /// Adjoint encoding: encodes `A†` with identical parameters.
    pub fn adjoint(&self) -> Self {
        Self::assemble(
            self.unitary.adjoint(),
            self.alpha,
            self.ancillas,
            self.eps,
            self.target_dim,
            self.ledger,
            self.claimed.as_ref().map(ComplexMatrix::adjoint),
        )
    }

    /// Global-phase adjustment: encodes `z·A` for a unit-modulus `z`.
    pub fn phase(&self, z: Complex64) -> Self {
        debug_assert!(math::fabs(z.norm() - 1.0) < 1e-12);
        Self::assemble(
            self.unitary.scale(z),
            self.alpha,
            self.ancillas,
            self.eps,
            self.target_dim,
            self.ledger,
            self.claimed.as_ref().map(|c| c.scale(z)),
        )
    }

    /// Reinterpret leading factors of the target register as ancillas: the
    /// target shrinks from `n` to `n / extra_dim` while `log₂(extra_dim)`
    /// qubits move into the ancilla count. The new target block is the
    /// top-left corner of the old one; any claim is dropped and may be
    /// re-attached by the caller.
    pub fn absorb_target_ancillas(self, extra_dim: usize) -> Self {
        assert!(extra_dim.is_power_of_two());
        assert_eq!(self.target_dim % extra_dim, 0);
        let new_dim = self.target_dim / extra_dim;
        Self::assemble(
            self.unitary,
            self.alpha,
            self.ancillas + extra_dim.trailing_zeros(),
            self.eps,
            new_dim,
            self.ledger,
            None,
        )
    }
}

/// Every unitary is an exact `(1, 0, 0)` encoding of itself.
pub fn encode_self(u: ComplexMatrix) -> Result<BlockEncoding> {
    let err = u.unitarity_error();
    if err > GATE_TOL {
        return Err(BlockEncError::NotUnitary(err));
    }
    let n = u.dim();
    let claimed = u.clone();
    Ok(BlockEncoding::assemble(
        u,
        1.0,
        0,
        0.0,
        n,
        ResourceLedger::one_unitary(),
        Some(claimed),
    ))
}

/// The encoded block `Ã = (⟨0|⊗I) U (|0⟩⊗I)`: the top-left `n × n` corner.
pub fn extract_block(be: &BlockEncoding) -> ComplexMatrix {
    be.unitary.top_left(be.target_dim)
}

/// Product of two encodings: encodes `A₁A₂` with `α = α₁α₂`,
/// `a = a₁ + a₂`, `ε = α₁ε₂ + α₂ε₁`. The composed block is exactly the
/// product of the input blocks because the two ancilla registers are
/// disjoint.
pub fn product(be1: &BlockEncoding, be2: &BlockEncoding) -> Result<BlockEncoding> {
    if be1.target_dim != be2.target_dim {
        return Err(BlockEncError::DimensionMismatch {
            left: be1.target_dim,
            right: be2.target_dim,
        });
    }
    let n = be1.target_dim;
    let (d1, d2) = (1usize << be1.ancillas, 1usize << be2.ancillas);
    let dims = [d1, d2, n];

    // Registers [anc₁, anc₂, target]: U₂ acts on the trailing pair, U₁ on
    // the outer ancilla and the target.
    let u2_embedded = tensor::kron(&ComplexMatrix::identity(d1), &be2.unitary);
    let unitary = tensor::apply_left(&be1.unitary, &u2_embedded, &dims, &[0, 2]);

    let claimed = match (&be1.claimed, &be2.claimed) {
        (Some(a), Some(b)) => Some(a.matmul(b)),
        _ => None,
    };
    Ok(BlockEncoding::assemble(
        unitary,
        be1.alpha * be2.alpha,
        be1.ancillas + be2.ancillas,
        be1.alpha * be2.eps + be2.alpha * be1.eps,
        n,
        be1.ledger + be2.ledger,
        claimed,
    ))
}

/// Linear combination of encoded blocks.
///
/// With weights `wᵢ > 0`, `W = Σwᵢ`, the output block is exactly
/// `Σᵢ ±(wᵢ/W)·Ãᵢ`, realized as `(P†⊗I)·SELECT·(P⊗I)` with a preparation
/// unitary `P|0⟩ = Σ√(wᵢ/W)|i⟩` on `⌈log₂ m⌉` new ancilla qubits. The
/// output is presented at `α = 1`; weights therefore combine the input
/// *blocks* `Ãᵢ = Aᵢ/αᵢ`, and `ε_out = (Σ wᵢεᵢ/αᵢ)/W`. Recorded depth is
/// `m · max(input depth)` plus the two preparation layers.
pub fn lcu(weights: &[f64], bes: &[&BlockEncoding], signs: &[Sign]) -> Result<BlockEncoding> {
    if bes.is_empty() {
        return Err(BlockEncError::EmptyCombination);
    }
    assert_eq!(weights.len(), bes.len(), "one weight per encoding");
    assert_eq!(signs.len(), bes.len(), "one sign per encoding");
    for &w in weights {
        if !(w > 0.0 && w.is_finite()) {
            return Err(BlockEncError::BadWeight(w));
        }
    }
    let n = bes[0].target_dim;
    for be in bes {
        if be.target_dim != n {
            return Err(BlockEncError::DimensionMismatch {
                left: n,
                right: be.target_dim,
            });
        }
    }

    let m = bes.len();
    let sel_qubits = if m <= 1 { 0 } else { (m - 1).ilog2() + 1 };
    let slots = 1usize << sel_qubits;
    let a_max = bes.iter().map(|b| b.ancillas).max().unwrap();
    let inner = (1usize << a_max) * n;
    let total = slots * inner;
    let w_sum: f64 = weights.iter().sum();

    // SELECT = Σᵢ |i⟩⟨i| ⊗ (±Uᵢ padded to a_max ancillas); empty slots hold
    // the identity.
    let mut select = ComplexMatrix::zeros(total, total);
    for slot in 0..slots {
        if slot < m {
            let be = bes[slot];
            let pad = 1usize << (a_max - be.ancillas);
            let udim = be.unitary.dim();
            let sgn = signs[slot].factor();
            for p in 0..pad {
                for i in 0..udim {
                    for j in 0..udim {
                        let z = be.unitary[(i, j)];
                        if z != Complex64::ZERO {
                            select[(slot * inner + p * udim + i, slot * inner + p * udim + j)] =
                                z * sgn;
                        }
                    }
                }
            }
        } else {
            for i in 0..inner {
                select[(slot * inner + i, slot * inner + i)] = Complex64::ONE;
            }
        }
    }

    let unitary = if slots == 1 {
        select
    } else {
        let amps: Vec<Complex64> = (0..slots)
            .map(|i| {
                let w = if i < m { weights[i] } else { 0.0 };
                Complex64::new(math::sqrt(w / w_sum), 0.0)
            })
            .collect();
        let prep = unitary_with_first_column(&amps)?;
        let dims = [slots, inner];
        let staged = tensor::apply_right(&select, &prep, &dims, &[0]);
        tensor::apply_left(&prep.adjoint(), &staged, &dims, &[0])
    };

    let eps = weights
        .iter()
        .zip(bes)
        .map(|(w, b)| w * b.eps / b.alpha)
        .sum::<f64>()
        / w_sum;
    let claimed = bes
        .iter()
        .map(|b| b.claimed.as_ref().map(|c| c.scale_re(1.0 / b.alpha)))
        .collect::<Option<Vec<_>>>()
        .map(|blocks| {
            let mut acc = ComplexMatrix::zeros(n, n);
            for ((block, w), s) in blocks.iter().zip(weights).zip(signs) {
                acc = acc.add(&block.scale_re(s.factor() * w / w_sum));
            }
            acc
        });

    let max_depth = bes
        .iter()
        .map(|b| b.ledger.circuit_depth)
        .fold(0.0, f64::max)
        .max(1.0);
    let mut ledger = ResourceLedger {
        rho_copies: 0,
        circuit_depth: m as f64 * max_depth + 2.0,
        ancilla_qubits: u64::from(sel_qubits),
        unitary_calls: 2,
    };
    for b in bes {
        ledger.rho_copies += b.ledger.rho_copies;
        ledger.ancilla_qubits += b.ledger.ancilla_qubits;
        ledger.unitary_calls += b.ledger.unitary_calls;
    }

    Ok(BlockEncoding::assemble(
        unitary,
        1.0,
        sel_qubits + a_max,
        eps,
        n,
        ledger,
        claimed,
    ))
}

/// Tensor product of encodings: encodes `⊗ᵢ Aᵢ` with `α = Παᵢ`, ancillas
/// summed, and `ε = Σᵢ εᵢ Π_{j≠i} αⱼ`.
pub fn tensor_product(bes: &[&BlockEncoding]) -> Result<BlockEncoding> {
    if bes.is_empty() {
        return Err(BlockEncError::EmptyCombination);
    }
    if bes.len() == 1 {
        return Ok(bes[0].clone());
    }

    // Kron in interleaved order [a₁, t₁, a₂, t₂, …], then permute all
    // ancilla factors to the front.
    let mut acc = bes[0].unitary.clone();
    let mut dims: Vec<usize> = vec![1usize << bes[0].ancillas, bes[0].target_dim];
    for be in &bes[1..] {
        acc = tensor::kron(&acc, &be.unitary);
        dims.push(1usize << be.ancillas);
        dims.push(be.target_dim);
    }
    let k = bes.len();
    let perm: Vec<usize> = (0..k)
        .map(|i| 2 * i)
        .chain((0..k).map(|i| 2 * i + 1))
        .collect();
    let unitary = tensor::permute_factors(&acc, &dims, &perm);

    let alpha: f64 = bes.iter().map(|b| b.alpha).product();
    let mut eps = 0.0;
    for i in 0..k {
        let mut others = 1.0;
        for (j, b) in bes.iter().enumerate() {
            if j != i {
                others *= b.alpha;
            }
        }
        eps += bes[i].eps * others;
    }
    let ancillas = bes.iter().map(|b| b.ancillas).sum();
    let target_dim = bes.iter().map(|b| b.target_dim).product();
    let claimed = bes
        .iter()
        .map(|b| b.claimed.as_ref())
        .collect::<Option<Vec<_>>>()
        .map(|cs| {
            let mut acc = cs[0].clone();
            for c in &cs[1..] {
                acc = tensor::kron(&acc, c);
            }
            acc
        });

    let mut ledger = ResourceLedger {
        rho_copies: 0,
        // Parallel single uses: depth is the slowest input plus O(1) swaps.
        circuit_depth: bes
            .iter()
            .map(|b| b.ledger.circuit_depth)
            .fold(0.0, f64::max)
            + 1.0,
        ancilla_qubits: 0,
        unitary_calls: 0,
    };
    for b in bes {
        ledger.rho_copies += b.ledger.rho_copies;
        ledger.ancilla_qubits += b.ledger.ancilla_qubits;
        ledger.unitary_calls += b.ledger.unitary_calls;
    }

    Ok(BlockEncoding::assemble(
        unitary, alpha, ancillas, eps, target_dim, ledger, claimed,
    ))
}

/// Scale an encoding down: encodes `A/p` for `p > 1` with `ε → ε/p` and one
/// extra ancilla qubit at `O(1)` added depth.
///
/// Realization: tensor a `R_Y(θ)` rotation with `cos(θ/2) = 1/p` onto a new
/// outermost qubit and take the product with the input; the top-left block
/// picks up the factor `cos(θ/2)`. The sign convention of the rotation's
/// off-diagonal entries does not affect the top-left block.
pub fn scale_down(be: &BlockEncoding, p: f64) -> Result<BlockEncoding> {
    if p <= 1.0 || !p.is_finite() {
        return Err(BlockEncError::InvalidScale(p));
    }
    let c = 1.0 / p;
    let s = math::sqrt((1.0 - c * c).max(0.0));
    let inner = be.unitary.dim();
    // (R_Y ⊗ I)·(I₂ ⊗ U) = [[c·U, −s·U], [s·U, c·U]] over the new qubit.
    let mut unitary = ComplexMatrix::zeros(2 * inner, 2 * inner);
    for i in 0..inner {
        for j in 0..inner {
            let z = be.unitary[(i, j)];
            if z == Complex64::ZERO {
                continue;
            }
            unitary[(i, j)] = z * c;
            unitary[(i, inner + j)] = z * (-s);
            unitary[(inner + i, j)] = z * s;
            unitary[(inner + i, inner + j)] = z * c;
        }
    }
    let ledger = be.ledger
        + ResourceLedger {
            rho_copies: 0,
            circuit_depth: 1.0,
            ancilla_qubits: 1,
            unitary_calls: 0,
        };
    Ok(BlockEncoding::assemble(
        unitary,
        be.alpha,
        be.ancillas + 1,
        be.eps / p,
        be.target_dim,
        ledger,
        be.claimed.as_ref().map(|cm| cm.scale_re(1.0 / p)),
    ))
}

/// Exact encoding of `ρ = Tr_A |Φ⟩⟨Φ|` from a preparation unitary with
/// `|Φ⟩ = prep |0⟩_A |0⟩_B`, using `prep` and `prep†` once each.
///
/// For a nontrivial traced register the construction is the swap dilation
/// `(prep† ⊗ I_{B'}) (I_A ⊗ SWAP_{B,B'}) (prep ⊗ I_{B'})` acting on a fresh
/// target copy `B'`. When `dim_a = 1` the state is pure and one ancilla
/// suffices: conjugate a reflection encoding of `|0⟩⟨0|` by `prep`.
pub fn purify_density(prep: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<BlockEncoding> {
    let err = prep.unitarity_error();
    if err > GATE_TOL {
        return Err(BlockEncError::NotUnitary(err));
    }
    if dim_a * dim_b != prep.dim() || dim_a == 0 || !(dim_a * dim_b).is_power_of_two() {
        return Err(BlockEncError::BadRegisterSplit {
            dim_a,
            dim_b,
            unitary_dim: prep.dim(),
        });
    }

    let phi = prep.col(0);
    let phi_outer = crate::linalg::vector::outer(&phi, &phi);
    let claimed = tensor::partial_trace_first(&phi_outer, dim_a, dim_b);

    if dim_a == 1 {
        // |Φ⟩⟨Φ| = prep · |0⟩⟨0| · prep†, with |0⟩⟨0| = (I + R)/2 encoded by
        // one ancilla: W_refl = [[(I+R)/2, (I−R)/2], [(I−R)/2, (I+R)/2]].
        let n = dim_b;
        let mut w = ComplexMatrix::zeros(2 * n, 2 * n);
        w[(0, 0)] = Complex64::ONE;
        w[(n, n)] = Complex64::ONE;
        for i in 1..n {
            w[(i, n + i)] = Complex64::ONE;
            w[(n + i, i)] = Complex64::ONE;
        }
        let dims = [2usize, n];
        let staged = tensor::apply_right(&w, &prep.adjoint(), &dims, &[1]);
        let unitary = tensor::apply_left(prep, &staged, &dims, &[1]);
        let ledger = ResourceLedger {
            rho_copies: 0,
            circuit_depth: 3.0,
            ancilla_qubits: 1,
            unitary_calls: 2,
        };
        return Ok(BlockEncoding::assemble(
            unitary,
            1.0,
            1,
            0.0,
            n,
            ledger,
            Some(claimed),
        ));
    }

    let ancilla_dim = dim_a * dim_b;
    let dims = [dim_a, dim_b, dim_b];
    let prep_embedded = tensor::kron(prep, &ComplexMatrix::identity(dim_b));
    let swapped = tensor::apply_left(&tensor::swap_matrix(dim_b), &prep_embedded, &dims, &[1, 2]);
    let unitary = tensor::apply_left(&prep.adjoint(), &swapped, &dims, &[0, 1]);
    let ledger = ResourceLedger {
        rho_copies: 0,
        circuit_depth: 3.0,
        ancilla_qubits: ancilla_dim.trailing_zeros() as u64,
        unitary_calls: 2,
    };
    Ok(BlockEncoding::assemble(
        unitary,
        1.0,
        ancilla_dim.trailing_zeros(),
        0.0,
        dim_b,
        ledger,
        Some(claimed),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{vector, DensityMatrix};
    use crate::synth;

    fn had2() -> ComplexMatrix {
        let h = 1.0 / core::f64::consts::SQRT_2;
        ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(-h, 0.0),
            ],
        )
    }

    #[test]
    fn encode_self_parameters_and_block() {
        let be = encode_self(ComplexMatrix::identity(4)).unwrap();
        assert_eq!(be.alpha(), 1.0);
        assert_eq!(be.ancillas(), 0);
        assert_eq!(be.eps(), 0.0);
        assert!(
            extract_block(&be)
                .sub(&ComplexMatrix::identity(4))
                .frobenius_norm()
                < 1e-15
        );

        let hh = tensor::kron(&had2(), &had2());
        let be = encode_self(hh.clone()).unwrap();
        // With a = 0 the block is the whole matrix.
        assert!(extract_block(&be).sub(&hh).frobenius_norm() < 1e-15);

        let mut rng = synth::rng(1);
        let u = synth::random_unitary(8, &mut rng);
        let be = encode_self(u.clone()).unwrap();
        assert!(extract_block(&be).sub(&u).frobenius_norm() <= 1e-12);
    }

    #[test]
    fn encode_self_rejects_non_unitary() {
        let m = ComplexMatrix::diag_real(&[1.0, 0.5]);
        assert!(matches!(encode_self(m), Err(BlockEncError::NotUnitary(_))));
    }

    #[test]
    fn product_of_inverse_pair_is_identity() {
        let mut rng = synth::rng(2);
        let u = synth::random_unitary(4, &mut rng);
        let be = product(
            &encode_self(u.clone()).unwrap(),
            &encode_self(u.adjoint()).unwrap(),
        )
        .unwrap();
        assert!(
            extract_block(&be)
                .sub(&ComplexMatrix::identity(4))
                .spectral_norm()
                <= 1e-10
        );
    }

    #[test]
    fn product_squares_hermitian_contraction() {
        let mut rng = synth::rng(3);
        let a = synth::random_hermitian_bounded(4, 0.8, &mut rng);
        let u = crate::linalg::dilate_hermitian(&a).unwrap();
        let be = encode_self(u)
            .unwrap()
            .absorb_target_ancillas(2)
            .with_claim(a.clone());
        let sq = product(&be, &be).unwrap();
        let direct = crate::linalg::matrix_function(&a, |x| Complex64::new(x * x, 0.0)).unwrap();
        assert!(extract_block(&sq).sub(&direct).spectral_norm() <= 1e-10);
        assert_eq!(sq.ancillas(), 2);
        assert_eq!(sq.eps(), 0.0);
    }

    #[test]
    fn product_error_accumulates_linearly() {
        // k-fold self-product of an ε-approximate encoding: ε_out = k·ε.
        let mut rng = synth::rng(4);
        let a = synth::random_hermitian_bounded(4, 0.5, &mut rng);
        let u = crate::linalg::dilate_hermitian(&a).unwrap();
        let be = encode_self(u)
            .unwrap()
            .absorb_target_ancillas(2)
            .with_claim(a.clone())
            .with_eps(1e-4);
        let mut acc = be.clone();
        for k in 2..=5 {
            acc = product(&acc, &be).unwrap();
            assert!((acc.eps() - k as f64 * 1e-4).abs() < 1e-12);
        }
    }

    #[test]
    fn lcu_singleton_is_identity_on_blocks() {
        let mut rng = synth::rng(5);
        let u = synth::random_unitary(4, &mut rng);
        let be = encode_self(u.clone()).unwrap();
        let out = lcu(&[1.0], &[&be], &[Sign::Plus]).unwrap();
        assert!(extract_block(&out).sub(&u).spectral_norm() <= 1e-10);
    }

    #[test]
    fn lcu_difference_recovers_unitary() {
        let mut rng = synth::rng(6);
        let u = synth::random_unitary(4, &mut rng);
        let be_plus = encode_self(u.clone()).unwrap();
        let be_minus = encode_self(u.scale_re(-1.0)).unwrap();
        let out = lcu(
            &[1.0, 1.0],
            &[&be_plus, &be_minus],
            &[Sign::Plus, Sign::Minus],
        )
        .unwrap();
        assert!(extract_block(&out).sub(&u).spectral_norm() <= 1e-10);
        assert!(out.unitary().unitarity_error() <= ENCODING_TOL);
    }

    #[test]
    fn lcu_rejects_bad_input_sets() {
        assert!(matches!(
            lcu(&[], &[], &[]),
            Err(BlockEncError::EmptyCombination)
        ));
        let a = encode_self(ComplexMatrix::identity(2)).unwrap();
        let b = encode_self(ComplexMatrix::identity(4)).unwrap();
        assert!(matches!(
            lcu(&[1.0, 1.0], &[&a, &b], &[Sign::Plus, Sign::Plus]),
            Err(BlockEncError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn deflation_combination_matches_hand_arithmetic() {
        // Weights {1, 1} over blocks {πρ/4, πr₁|λ₁⟩⟨λ₁|/4} with signs {+, −}
        // yield (π/8)(ρ − r₁|λ₁⟩⟨λ₁|).
        let pi = core::f64::consts::PI;
        let rho = ComplexMatrix::diag_real(&[0.7, 0.3]);
        let proj = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let be_rho = encode_self(crate::linalg::dilate_hermitian(&rho.scale_re(pi / 4.0)).unwrap())
            .unwrap()
            .absorb_target_ancillas(2);
        let be_proj =
            encode_self(crate::linalg::dilate_hermitian(&proj.scale_re(pi / 4.0)).unwrap())
                .unwrap()
                .absorb_target_ancillas(2);
        let r1 = 0.7;
        let be_scaled = scale_down(&be_proj, 1.0 / r1).unwrap();
        let out = lcu(
            &[1.0, 1.0],
            &[&be_rho, &be_scaled],
            &[Sign::Plus, Sign::Minus],
        )
        .unwrap();
        let want = rho.sub(&proj.scale_re(r1)).scale_re(pi / 8.0);
        assert!(extract_block(&out).sub(&want).spectral_norm() <= 1e-10);
    }

    #[test]
    fn tensor_of_paulis_is_exact() {
        let x = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::ZERO,
                Complex64::ONE,
                Complex64::ONE,
                Complex64::ZERO,
            ],
        );
        let z = ComplexMatrix::diag_real(&[1.0, -1.0]);
        let bx = encode_self(x.clone()).unwrap();
        let bz = encode_self(z.clone()).unwrap();
        let out = tensor_product(&[&bx, &bz]).unwrap();
        assert!(
            extract_block(&out)
                .sub(&tensor::kron(&x, &z))
                .frobenius_norm()
                < 1e-15
        );
        assert_eq!(out.eps(), 0.0);
    }

    #[test]
    fn tensor_singleton_is_unchanged() {
        let be = encode_self(had2()).unwrap();
        let out = tensor_product(&[&be]).unwrap();
        assert!(out.unitary().sub(be.unitary()).frobenius_norm() < 1e-15);
    }

    #[test]
    fn rotation_tensor_scales_identity_block() {
        // R_Y(θ) ⊗ I with cos(θ/2) = 1/p leaves cos(θ/2)·I in the corner.
        let p = 2.5;
        let be = encode_self(ComplexMatrix::identity(4)).unwrap();
        let scaled = scale_down(&be, p).unwrap();
        let want = ComplexMatrix::identity(4).scale_re(1.0 / p);
        assert!(extract_block(&scaled).sub(&want).spectral_norm() <= 1e-12);
        assert_eq!(scaled.ancillas(), 1);
    }

    #[test]
    fn scale_down_composes_multiplicatively() {
        let mut rng = synth::rng(7);
        let u = synth::random_unitary(4, &mut rng);
        let be = encode_self(u.clone()).unwrap();
        let once = scale_down(&be, 2.0).unwrap();
        assert!(extract_block(&once).sub(&u.scale_re(0.5)).spectral_norm() <= 1e-10);
        let twice = scale_down(&scale_down(&be, 1.8).unwrap(), 2.2).unwrap();
        assert!(
            extract_block(&twice)
                .sub(&u.scale_re(1.0 / (1.8 * 2.2)))
                .spectral_norm()
                <= 1e-9
        );
    }

    #[test]
    fn scale_down_rejects_p_at_most_one() {
        let be = encode_self(ComplexMatrix::identity(2)).unwrap();
        assert!(matches!(
            scale_down(&be, 1.0),
            Err(BlockEncError::InvalidScale(_))
        ));
    }

    #[test]
    fn purify_identity_prep_gives_ground_projector() {
        let be = purify_density(&ComplexMatrix::identity(4), 1, 4).unwrap();
        let want = vector::outer(&vector::basis(4, 0), &vector::basis(4, 0));
        assert!(extract_block(&be).sub(&want).spectral_norm() <= 1e-12);
        assert_eq!(be.eps(), 0.0);
        assert_eq!(be.ledger().unitary_calls, 2);
    }

    #[test]
    fn purify_bell_pair_gives_maximally_mixed() {
        // prep = CNOT·(H⊗I) maps |00⟩ to the Bell state.
        let h = had2();
        let mut cnot = ComplexMatrix::zeros(4, 4);
        cnot[(0, 0)] = Complex64::ONE;
        cnot[(1, 1)] = Complex64::ONE;
        cnot[(2, 3)] = Complex64::ONE;
        cnot[(3, 2)] = Complex64::ONE;
        let prep = cnot.matmul(&tensor::kron(&h, &ComplexMatrix::identity(2)));
        let be = purify_density(&prep, 2, 2).unwrap();
        let want = ComplexMatrix::identity(2).scale_re(0.5);
        assert!(extract_block(&be).sub(&want).spectral_norm() <= 1e-10);
        assert!(be.unitary().unitarity_error() <= ENCODING_TOL);
    }

    #[test]
    fn purify_pure_state_uses_single_ancilla() {
        let mut rng = synth::rng(8);
        let x = synth::random_unit_vector(8, &mut rng);
        let prep = unitary_with_first_column(&x).unwrap();
        let want = vector::outer(&x, &x);
        let refl = purify_density(&prep, 1, 8).unwrap();
        assert!(extract_block(&refl).sub(&want).spectral_norm() <= 1e-10);
        assert_eq!(refl.ancillas(), 1);
        assert!(refl.claim_error().unwrap() <= 1e-10);
    }

    #[test]
    fn purify_density_matches_partial_trace_oracle() {
        // Random two-register preparation: block must equal Tr_A |Φ⟩⟨Φ|.
        let mut rng = synth::rng(9);
        let prep = synth::random_unitary(8, &mut rng);
        let be = purify_density(&prep, 2, 4).unwrap();
        assert!(be.claim_error().unwrap() <= 1e-10);
        // And the block is a valid state.
        let block = extract_block(&be);
        assert!(DensityMatrix::new(block.hermitian_part()).is_ok());
    }

    #[test]
    fn purify_rejects_bad_split() {
        let u = ComplexMatrix::identity(8);
        assert!(matches!(
            purify_density(&u, 3, 2),
            Err(BlockEncError::BadRegisterSplit { .. })
        ));
    }

    #[test]
    fn ledger_addition_is_commutative_associative() {
        let a = ResourceLedger {
            rho_copies: 3,
            circuit_depth: 2.5,
            ancilla_qubits: 1,
            unitary_calls: 4,
        };
        let b = ResourceLedger {
            rho_copies: 7,
            circuit_depth: 0.5,
            ancilla_qubits: 2,
            unitary_calls: 1,
        };
        let c = ResourceLedger::one_unitary();
        assert_eq!(a + b, b + a);
        assert_eq!((a + b) + c, a + (b + c));
    }

    #[test]
    fn product_ledger_adds_inputs() {
        let mut rng = synth::rng(10);
        let u1 = synth::random_unitary(4, &mut rng);
        let u2 = synth::random_unitary(4, &mut rng);
        let b1 = encode_self(u1).unwrap();
        let b2 = encode_self(u2).unwrap();
        let p = product(&b1, &b2).unwrap();
        assert_eq!(
            p.ledger().circuit_depth,
            b1.ledger().circuit_depth + b2.ledger().circuit_depth
        );
        assert_eq!(p.ledger().unitary_calls, 2);
    }
}
