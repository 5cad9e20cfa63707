//! Row-major dense complex matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};
use num_complex::Complex64;

use super::{LinalgError, Result};
use crate::math;

/// Dense complex matrix, row-major, `f64` precision.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build from row-major data. Panics if `data.len() != rows * cols` or a
    /// dimension is zero; shapes are programmer-controlled here.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Self {
        assert!(rows >= 1 && cols >= 1, "dimensions must be at least 1");
        assert_eq!(data.len(), rows * cols, "entry count must be rows × cols");
        Self { rows, cols, data }
    }

    /// Zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::ZERO; rows * cols])
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    /// Build entry-wise from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    /// Diagonal matrix from real entries.
    pub fn diag_real(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m[(i, i)] = Complex64::new(x, 0.0);
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// True when square.
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Square dimension; panics on non-square input.
    pub fn dim(&self) -> usize {
        assert!(self.is_square(), "matrix is not square");
        self.rows
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// One row as a slice.
    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// One column, copied out.
    pub fn col(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    /// Entry-wise sum; panics on shape mismatch.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    /// Entry-wise difference; panics on shape mismatch.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.rows, self.cols, data)
    }

    /// Scalar multiple.
    pub fn scale(&self, z: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * z).collect();
        Self::new(self.rows, self.cols, data)
    }

    /// Real scalar multiple.
    pub fn scale_re(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let mut out = vec![Complex64::ZERO; m * n];
        // i-k-j order keeps both operands streaming row-major.
        for i in 0..m {
            let arow = &self.data[i * k..(i + 1) * k];
            let orow = &mut out[i * n..(i + 1) * n];
            for (kk, &a) in arow.iter().enumerate() {
                if a == Complex64::ZERO {
                    continue;
                }
                let brow = &other.data[kk * n..(kk + 1) * n];
                for (o, &b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self::new(m, n, out)
    }

    /// Matrix–vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &x)| a * x)
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Spectral norm (largest singular value), via the Hermitian
    /// eigendecomposition of `A†A`.
    pub fn spectral_norm(&self) -> f64 {
        let gram = self.adjoint().matmul(self);
        let spec =
            super::eigh(&gram.hermitian_part()).expect("Gram matrix is Hermitian by construction");
        math::sqrt(spec.eigenvalues().first().copied().unwrap_or(0.0).max(0.0))
    }

    /// Hermitian part `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint()).scale_re(0.5)
    }

    /// `‖A − A†‖_F`.
    pub fn hermiticity_error(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// `‖U†U − I‖_F`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim();
        self.adjoint()
            .matmul(self)
            .sub(&Self::identity(n))
            .frobenius_norm()
    }

    /// Gate check: error if not Hermitian within `tol`.
    pub fn require_hermitian(&self, tol: f64) -> Result<()> {
        let err = self.hermiticity_error();
        if err > tol {
            Err(LinalgError::NotHermitian(err))
        } else {
            Ok(())
        }
    }

    /// Gate check: error if not unitary within `tol`.
    pub fn require_unitary(&self, tol: f64) -> Result<()> {
        let err = self.unitarity_error();
        if err > tol {
            Err(LinalgError::NotUnitary(err))
        } else {
            Ok(())
        }
    }

    /// Top-left `n × n` submatrix.
    pub fn top_left(&self, n: usize) -> Self {
        assert!(n <= self.rows && n <= self.cols);
        Self::from_fn(n, n, |i, j| self[(i, j)])
    }

    /// Largest entry-wise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}
