//! Deterministic Hermitian eigendecomposition (cyclic complex Jacobi).
//!
//! This is the classical oracle the simulated pipelines are verified
//! against, so determinism matters more than speed: fixed sweep order,
//! fixed sort order (descending by eigenvalue magnitude), and a fixed
//! eigenvector phase convention. Two calls on the same matrix return
//! bit-identical spectra.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{ComplexMatrix, Result, GATE_TOL};
use crate::linalg::vector;
use crate::math;

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix, sorted
/// descending by eigenvalue magnitude; column `i` of the eigenvector matrix
/// pairs with eigenvalue `i`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
    gap: f64,
}

impl Spectrum {
    /// All eigenvalues, descending by magnitude.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Eigenvector matrix; column `i` pairs with `eigenvalues()[i]`.
    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    /// Eigenvalue `i`.
    pub fn eigenvalue(&self, i: usize) -> f64 {
        self.eigenvalues[i]
    }

    /// Eigenvector `i`, copied out as a unit vector.
    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.col(i)
    }

    /// Gap `|r₁| − |r₂|` between the two largest eigenvalue magnitudes.
    /// For a 1×1 matrix this degenerates to `|r₁|`.
    pub fn gap(&self) -> f64 {
        self.gap
    }

    /// Dimension of the underlying space.
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `Σ f(rᵢ) vᵢ vᵢ†`.
    pub fn apply_function(&self, mut f: impl FnMut(f64) -> Complex64) -> ComplexMatrix {
        let n = self.dim();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &r) in self.eigenvalues.iter().enumerate() {
            let fz = f(r);
            if fz == Complex64::ZERO {
                continue;
            }
            let v = self.eigenvector(k);
            for i in 0..n {
                let vi = v[i] * fz;
                for j in 0..n {
                    out[(i, j)] += vi * v[j].conj();
                }
            }
        }
        out
    }

    /// Reconstruct `Σ rᵢ vᵢ vᵢ†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|r| Complex64::new(r, 0.0))
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Fails with [`LinalgError::NotHermitian`] when `‖A − A†‖_F > 1e−8`; the
/// input is symmetrized internally before iterating so that roundoff in the
/// caller cannot leak into the spectrum.
pub fn eigh(a: &ComplexMatrix) -> Result<Spectrum> {
    a.require_hermitian(GATE_TOL)?;
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let scale = m.frobenius_norm().max(1e-300);
    let tol = 1e-15 * scale;
    const MAX_SWEEPS: usize = 60;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                jacobi_rotate(&mut m, &mut v, p, q);
            }
        }
    }

    // Diagonal is real up to roundoff once converged.
    let raw: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        math::fabs(raw[j])
            .partial_cmp(&math::fabs(raw[i]))
            .unwrap()
            .then(raw[j].partial_cmp(&raw[i]).unwrap())
            .then(i.cmp(&j))
    });

    let eigenvalues: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        let col = fix_phase(v.col(old));
        for i in 0..n {
            eigenvectors[(i, new)] = col[i];
        }
    }

    let gap = if n >= 2 {
        math::fabs(eigenvalues[0]) - math::fabs(eigenvalues[1])
    } else {
        math::fabs(eigenvalues[0])
    };

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        gap,
    })
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm_sqr();
            }
        }
    }
    math::sqrt(s)
}

/// One complex Jacobi rotation annihilating `m[p][q]`.
///
/// With `a_pq = g·e^{iφ}`, the 2×2 block is phase-equivalent to a real
/// symmetric block, so the rotation is the classical one conjugated by
/// `diag(1, e^{iφ})`.
fn jacobi_rotate(m: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let phase = apq / g; // e^{iφ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    // Classical symmetric Schur rotation on the phase-stripped real block,
    // smaller-|t| root for stability.
    let tau = (aqq - app) / (2.0 * g);
    let t = if tau >= 0.0 {
        1.0 / (tau + math::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + math::sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / math::sqrt(1.0 + t * t);
    let s = t * c;

    // Column rotation J = diag(1, e^{-iφ}) · [[c, s], [−s, c]] at (p, q).
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = phase.conj() * (-s);
    let jqq = phase.conj() * c;

    let n = m.dim();
    for k in 0..n {
        let akp = m[(k, p)];
        let akq = m[(k, q)];
        m[(k, p)] = akp * jpp + akq * jqp;
        m[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = m[(p, k)];
        let aqk = m[(q, k)];
        m[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        m[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    // Clean up what is analytically exact.
    m[(p, q)] = Complex64::ZERO;
    m[(q, p)] = Complex64::ZERO;
    m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
}

/// Phase convention: the largest-magnitude component (ties broken by lowest
/// index) is made real positive.
fn fix_phase(mut col: Vec<Complex64>) -> Vec<Complex64> {
    let mut best = 0;
    let mut best_mag = 0.0;
    for (i, z) in col.iter().enumerate() {
        let mag = z.norm();
        if mag > best_mag + 1e-15 {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag > 0.0 {
        let phase = col[best] / best_mag;
        let correction = phase.conj();
        for z in &mut col {
            *z *= correction;
        }
        col[best] = Complex64::new(col[best].re, 0.0);
    }
    // Re-normalize to keep ‖v‖ = 1 under accumulated roundoff.
    if let Some(u) = vector::normalized(&col) {
        return u;
    }
    col
}
