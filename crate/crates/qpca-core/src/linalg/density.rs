//! Density matrices: Hermitian, positive semidefinite, unit trace.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{eigh, ComplexMatrix, LinalgError, Result, Spectrum, BUILD_TOL};
use crate::linalg::vector;
use crate::math;

/// A quantum state ρ on a power-of-two dimension: Hermitian within `1e−10`,
/// unit trace within `1e−10`, minimum eigenvalue ≥ `−1e−10`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validate and wrap a matrix as a density matrix.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() {
            return Err(LinalgError::NotPowerOfTwo(dim));
        }
        if matrix.hermiticity_error() > BUILD_TOL {
            return Err(LinalgError::InvalidDensity("not Hermitian within 1e-10"));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > BUILD_TOL || math::fabs(tr.im) > BUILD_TOL {
            return Err(LinalgError::InvalidDensity("trace differs from 1"));
        }
        let spec = eigh(&matrix.hermitian_part())?;
        let min = spec
            .eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min < -BUILD_TOL {
            return Err(LinalgError::InvalidDensity("negative eigenvalue"));
        }
        Ok(Self { dim, matrix })
    }

    /// Pure state `|ψ⟩⟨ψ|`; the vector is normalized first.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let v = vector::normalized(psi).ok_or(LinalgError::BadVectorNorm(vector::norm(psi)))?;
        Self::new(vector::outer(&v, &v))
    }

    /// Maximally mixed state `I/n`.
    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        if !dim.is_power_of_two() {
            return Err(LinalgError::NotPowerOfTwo(dim));
        }
        Ok(Self {
            dim,
            matrix: ComplexMatrix::identity(dim).scale_re(1.0 / dim as f64),
        })
    }

    /// `ρ = V diag(weights) V†` for a given orthonormal basis and probability
    /// weights; weights are renormalized to sum to 1.
    pub fn from_spectrum(basis: &ComplexMatrix, weights: &[f64]) -> Result<Self> {
        let n = basis.dim();
        assert_eq!(weights.len(), n);
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(LinalgError::InvalidDensity("weights sum to zero"));
        }
        let mut m = ComplexMatrix::zeros(n, n);
        for (k, &w) in weights.iter().enumerate() {
            let v = basis.col(k);
            let p = w / total;
            for i in 0..n {
                for j in 0..n {
                    m[(i, j)] += v[i] * v[j].conj() * p;
                }
            }
        }
        Self::new(m.hermitian_part())
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigendecomposition through the classical oracle.
    pub fn spectrum(&self) -> Spectrum {
        eigh(&self.matrix.hermitian_part()).expect("density matrix is Hermitian by construction")
    }

    /// Unitary evolution `exp(−iρt)`.
    pub fn evolution(&self, t: f64) -> ComplexMatrix {
        self.spectrum()
            .apply_function(|r| Complex64::from_polar(1.0, -r * t))
    }
}

/// Trace distance `½‖a − b‖₁` between Hermitian matrices.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let diff = a.sub(b).hermitian_part();
    let spec = eigh(&diff).expect("difference of Hermitian matrices is Hermitian");
    0.5 * spec
        .eigenvalues()
        .iter()
        .map(|r| math::fabs(*r))
        .sum::<f64>()
}

/// Hermitian positive tomography probes spanning the operator space: the `n`
/// basis projectors `|j⟩⟨j|` plus, for each `j < k`, the projectors onto
/// `(|j⟩ + |k⟩)/√2` and `(|j⟩ + i|k⟩)/√2`. Exactly `n²` probes, all valid
/// density matrices, in a fixed deterministic order.
pub fn probe_states(n: usize) -> Vec<DensityMatrix> {
    let mut probes = Vec::with_capacity(n * n);
    for j in 0..n {
        let mut v = vector::basis(n, j);
        probes.push(DensityMatrix::from_pure(&v).expect("basis projector is a valid state"));
        for k in (j + 1)..n {
            v = vector::basis(n, j);
            v[k] = Complex64::ONE;
            probes.push(DensityMatrix::from_pure(&v).expect("plus probe is a valid state"));
            v[k] = Complex64::new(0.0, 1.0);
            probes.push(DensityMatrix::from_pure(&v).expect("i probe is a valid state"));
        }
    }
    probes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    #[test]
    fn pure_state_is_valid() {
        let psi = [Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)];
        let rho = DensityMatrix::from_pure(&psi).unwrap();
        assert!((rho.matrix()[(0, 0)].re - 0.36).abs() < 1e-12);
        assert!((rho.matrix()[(1, 1)].re - 0.64).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_power_of_two_and_bad_trace() {
        let m3 = ComplexMatrix::identity(3).scale_re(1.0 / 3.0);
        assert!(matches!(
            DensityMatrix::new(m3),
            Err(LinalgError::NotPowerOfTwo(3))
        ));
        let m2 = ComplexMatrix::identity(2);
        assert!(DensityMatrix::new(m2).is_err());
    }

    #[test]
    fn probe_states_span_and_count() {
        let probes = probe_states(4);
        assert_eq!(probes.len(), 16);
        // Linear independence check via a Gram matrix of Frobenius inner
        // products: full rank means the probes span the operator space.
        let gram = ComplexMatrix::from_fn(16, 16, |a, b| {
            probes[a]
                .matrix()
                .adjoint()
                .matmul(probes[b].matrix())
                .trace()
        });
        let spec = eigh(&gram.hermitian_part()).unwrap();
        assert!(spec.eigenvalues().iter().all(|&x| x > 1e-6));
    }

    #[test]
    fn evolution_commutes_with_spectrum() {
        let mut rng = synth::rng(12);
        let rho = synth::random_density(2, 4, &mut rng).unwrap();
        let u = rho.evolution(0.7);
        assert!(u.unitarity_error() < 1e-9);
        // exp(−iρt) shares eigenvectors with ρ.
        let conj = u.matmul(rho.matrix()).matmul(&u.adjoint());
        assert!(conj.sub(rho.matrix()).frobenius_norm() < 1e-10);
    }

    #[test]
    fn trace_distance_of_orthogonal_pure_states_is_one() {
        let a = DensityMatrix::from_pure(&vector::basis(2, 0)).unwrap();
        let b = DensityMatrix::from_pure(&vector::basis(2, 1)).unwrap();
        assert!((trace_distance(a.matrix(), b.matrix()) - 1.0).abs() < 1e-12);
    }
}
