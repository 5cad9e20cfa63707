//! Seeded synthesis of random test objects: Haar-ish unitaries, Hermitian
//! matrices, density matrices with planted spectra, and unit vectors.
//!
//! Everything is driven by an explicit [`ChaCha8Rng`] so that any consumer
//! (tests, the CLI, the acceptance suite) is reproducible from a 64-bit seed.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::{vector, ComplexMatrix, DensityMatrix, Result};
use crate::math;

/// Default seed used when none is supplied.
pub const DEFAULT_SEED: u64 = 0x9E37_79B9_7F4A_7C15;

/// Deterministic RNG from a 64-bit seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream from a base seed (splitmix64 step), so
/// consumers forking off substreams never collide with the base stream.
pub fn derive(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One standard-normal sample (Box–Muller; two uniforms per call).
fn normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    math::sqrt(-2.0 * math::ln(u1)) * math::cos(2.0 * core::f64::consts::PI * u2)
}

/// Complex standard-normal sample.
fn complex_normal(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

/// Haar-distributed random unit vector.
pub fn random_unit_vector(dim: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        if let Some(u) = vector::normalized(&v) {
            return u;
        }
    }
}

/// Haar-distributed random unitary via Gram–Schmidt on a Gaussian matrix.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        for c in &cols {
            let proj = vector::inner(c, &v);
            for i in 0..dim {
                v[i] -= c[i] * proj;
            }
        }
        match vector::normalized(&v) {
            Some(u) => cols.push(u),
            None => continue,
        }
    }
    ComplexMatrix::from_fn(dim, dim, |i, j| cols[j][i])
}

/// Random Hermitian matrix with entries of order 1.
pub fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    g.hermitian_part()
}

/// Random Hermitian matrix rescaled to spectral norm `bound`.
pub fn random_hermitian_bounded(dim: usize, bound: f64, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let h = random_hermitian(dim, rng);
    let norm = h.spectral_norm();
    if norm == 0.0 {
        return h;
    }
    h.scale_re(bound / norm)
}

/// Random density matrix with Dirichlet-ish random spectrum in a Haar basis.
pub fn random_density(
    _unused_rank: usize,
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<DensityMatrix> {
    let weights: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.05..1.0)).collect();
    let basis = random_unitary(dim, rng);
    DensityMatrix::from_spectrum(&basis, &weights)
}

/// Density matrix with an exact planted spectrum in a Haar-random basis.
///
/// `spectrum` must be nonnegative; it is renormalized to sum to 1.
pub fn density_with_spectrum(
    spectrum: &[f64],
    dim: usize,
    rng: &mut ChaCha8Rng,
) -> Result<DensityMatrix> {
    assert!(spectrum.len() <= dim, "spectrum longer than dimension");
    let mut weights = alloc::vec![0.0; dim];
    weights[..spectrum.len()].copy_from_slice(spectrum);
    let basis = random_unitary(dim, rng);
    DensityMatrix::from_spectrum(&basis, &weights)
}
