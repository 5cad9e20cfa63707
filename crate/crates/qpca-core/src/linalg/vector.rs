//! Helpers for complex vectors stored as `Vec<Complex64>` / `&[Complex64]`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::ComplexMatrix;
use crate::math;

/// Computational basis vector `|index⟩` of dimension `dim`.
pub fn basis(dim: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::ZERO; dim];
    v[index] = Complex64::ONE;
    v
}

/// Euclidean norm.
pub fn norm(v: &[Complex64]) -> f64 {
    math::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Normalized copy; returns `None` for (numerically) zero vectors.
pub fn normalized(v: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = norm(v);
    if n < 1e-300 {
        return None;
    }
    Some(v.iter().map(|z| z / n).collect())
}

/// Inner product `⟨a|b⟩ = a† · b`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Outer product `|a⟩⟨b|`.
pub fn outer(a: &[Complex64], b: &[Complex64]) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.len(), b.len(), |i, j| a[i] * b[j].conj())
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Distance minimized over a global phase: `min_φ ‖e^{iφ} a − b‖`.
///
/// The minimizer is `φ = arg⟨a, b⟩`; the aligned difference is formed
/// explicitly rather than through `2 − 2|⟨a,b⟩|`, which loses half the
/// mantissa to cancellation for nearly equal vectors.
pub fn phase_min_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let z = inner(a, b);
    if z.norm() < 1e-300 {
        let d2 = norm(a) * norm(a) + norm(b) * norm(b);
        return math::sqrt(d2.max(0.0));
    }
    let phase = z / z.norm();
    let diff: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x * phase - y).norm_sqr())
        .sum();
    math::sqrt(diff)
}

/// Overlap magnitude `|⟨a|b⟩|`.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> f64 {
    inner(a, b).norm()
}
