//! Matrix functions of Hermitian operators, the principal logarithm of a
//! unitary, and unitary completions of subnormalized blocks.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::{eigh, ComplexMatrix, LinalgError, Result, GATE_TOL, PHASE_MARGIN};
use crate::linalg::vector;
use crate::math;

/// `f` applied to the spectrum: `Σ f(rᵢ) vᵢ vᵢ†` via [`eigh`].
///
/// `f` takes the real eigenvalue and may return a complex value, so unitary
/// evolutions like `x ↦ exp(−ixt)` are expressible directly.
pub fn matrix_function(
    a: &ComplexMatrix,
    f: impl FnMut(f64) -> Complex64,
) -> Result<ComplexMatrix> {
    Ok(eigh(a)?.apply_function(f))
}

/// Hermitian `H` with `U = exp(−iH)` and all eigenvalues of `H` in `(−π, π)`.
///
/// Eigenphases must stay at least [`PHASE_MARGIN`] away from the ±π branch
/// cut, otherwise [`LinalgError::PhaseWrapRisk`] is returned. Works by
/// jointly diagonalizing the commuting Hermitian pair
/// `cos H = (U + U†)/2` and `sin H = i(U − U†)/2`.
pub fn principal_log_unitary(u: &ComplexMatrix) -> Result<ComplexMatrix> {
    u.require_unitary(GATE_TOL)?;
    let n = u.dim();
    let udag = u.adjoint();
    let cos_h = u.add(&udag).scale_re(0.5);
    let sin_h = u.sub(&udag).scale(Complex64::new(0.0, 0.5)); // i(U−U†)/2

    let cos_spec = eigh(&cos_h.hermitian_part())?;

    // Group near-degenerate cos-eigenvalues (they merge ±θ pairs), then
    // resolve each group with the restriction of sin H.
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| {
        cos_spec
            .eigenvalue(i)
            .partial_cmp(&cos_spec.eigenvalue(j))
            .unwrap()
    });

    let group_tol = 1e-6;
    let mut h = ComplexMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n
            && cos_spec.eigenvalue(idx[end]) - cos_spec.eigenvalue(idx[end - 1]) < group_tol
        {
            end += 1;
        }
        let group: Vec<usize> = idx[start..end].to_vec();
        accumulate_group_log(&mut h, &cos_spec, &sin_h, &group)?;
        start = end;
    }
    Ok(h.hermitian_part())
}

fn accumulate_group_log(
    h: &mut ComplexMatrix,
    cos_spec: &super::Spectrum,
    sin_h: &ComplexMatrix,
    group: &[usize],
) -> Result<()> {
    let n = sin_h.dim();
    let g = group.len();
    let cols: Vec<Vec<Complex64>> = group.iter().map(|&k| cos_spec.eigenvector(k)).collect();

    // Restriction of sin H to the group subspace.
    let mut restricted = ComplexMatrix::zeros(g, g);
    let sin_cols: Vec<Vec<Complex64>> = cols.iter().map(|v| sin_h.matvec(v)).collect();
    for a in 0..g {
        for b in 0..g {
            restricted[(a, b)] = vector::inner(&cols[a], &sin_cols[b]);
        }
    }
    let sin_spec = eigh(&restricted.hermitian_part())?;

    for t in 0..g {
        let w = sin_spec.eigenvector(t);
        // Rotated eigenvector in the full space.
        let mut v = vec![Complex64::ZERO; n];
        for (a, col) in cols.iter().enumerate() {
            for i in 0..n {
                v[i] += col[i] * w[a];
            }
        }
        let sin_val = sin_spec.eigenvalue(t);
        let cos_val = group.iter().map(|&k| cos_spec.eigenvalue(k)).sum::<f64>() / g as f64;
        let theta = math::atan2(sin_val, cos_val);
        if math::fabs(theta) > core::f64::consts::PI - PHASE_MARGIN {
            return Err(LinalgError::PhaseWrapRisk(theta));
        }
        for i in 0..n {
            let vi = v[i] * theta;
            for j in 0..n {
                h[(i, j)] += vi * v[j].conj();
            }
        }
    }
    Ok(())
}

/// Unitary polar factor of a (near-invertible) matrix: `M = W·√(M†M)` gives
/// `W = M·(M†M)^{−1/2}`.
pub fn polar_unitary(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = m.adjoint().matmul(m);
    let spec = eigh(&gram.hermitian_part())?;
    let inv_sqrt = spec.apply_function(|r| {
        let clamped = r.max(1e-30);
        Complex64::new(1.0 / math::sqrt(clamped), 0.0)
    });
    Ok(m.matmul(&inv_sqrt))
}

/// Spectral unitary completion of a normal block `B = Σ λₖ vₖ vₖ†` with
/// `|λₖ| ≤ 1`: one flag qubit is prepended and each eigenvalue becomes the
/// 2×2 unitary `[[λ, μ], [μ, −λ*]]` with `μ = √(1 − |λ|²)`, so the top-left
/// `n × n` block of the result is exactly `B`.
pub fn unitary_completion(basis: &ComplexMatrix, eigenvalues: &[Complex64]) -> ComplexMatrix {
    let n = basis.dim();
    assert_eq!(eigenvalues.len(), n);
    let mut w = ComplexMatrix::zeros(2 * n, 2 * n);
    for (k, &lam) in eigenvalues.iter().enumerate() {
        let mag2 = lam.norm_sqr().min(1.0);
        let mu = math::sqrt((1.0 - mag2).max(0.0));
        let v = basis.col(k);
        for i in 0..n {
            for j in 0..n {
                let proj = v[i] * v[j].conj();
                w[(i, j)] += lam * proj;
                w[(i, n + j)] += mu * proj;
                w[(n + i, j)] += mu * proj;
                w[(n + i, n + j)] += -lam.conj() * proj;
            }
        }
    }
    w
}

/// Deterministic unitary whose first column is the given unit vector:
/// a Householder reflection composed with a phase so that `U e₀ = x`.
pub fn unitary_with_first_column(x: &[Complex64]) -> Result<ComplexMatrix> {
    let n = x.len();
    let nrm = vector::norm(x);
    if math::fabs(nrm - 1.0) > GATE_TOL {
        return Err(LinalgError::BadVectorNorm(nrm));
    }
    let x: Vec<Complex64> = x.iter().map(|z| z / nrm).collect();

    // Phase of the leading component; zero component keeps phase 0.
    let phase = if x[0].norm() > 0.0 {
        x[0] / x[0].norm()
    } else {
        Complex64::ONE
    };

    // v = x − e^{iφ} e₀; the reflection through v swaps e^{iφ}e₀ and x
    // because their inner product is real.
    let mut v = x.clone();
    v[0] -= phase;
    let v2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    let mut u = ComplexMatrix::identity(n);
    u[(0, 0)] = phase;
    if v2 > 1e-28 {
        let refl = ComplexMatrix::from_fn(n, n, |i, j| {
            let delta = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            delta - v[i] * v[j].conj() * (2.0 / v2)
        });
        u = refl.matmul(&u);
    }
    Ok(u)
}

/// Unitary completion of a Hermitian block with spectral norm at most 1.
pub fn dilate_hermitian(b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = eigh(b)?;
    let lambdas: Vec<Complex64> = spec
        .eigenvalues()
        .iter()
        .map(|&r| Complex64::new(r.clamp(-1.0, 1.0), 0.0))
        .collect();
    Ok(unitary_completion(spec.eigenvectors(), &lambdas))
}
