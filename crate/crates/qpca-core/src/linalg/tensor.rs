//! Tensor-register structure on dense matrices.
//!
//! Block-encoding combinators compose unitaries that act on a few registers
//! of a larger tensor-product space. Materializing each factor as a full
//! `D × D` matrix and multiplying naively costs `O(D³)`; the routines here
//! exploit the identity factors so a gate of dimension `d` applied inside a
//! `D`-dimensional space costs `O(D² d)`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::ComplexMatrix;

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let z = a[(i, j)];
            if z == Complex64::ZERO {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = z * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a list, left to right; panics on an empty list.
pub fn kron_all(ms: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = ms
        .split_first()
        .expect("kron_all needs at least one factor");
    let mut acc = (*first).clone();
    for m in rest {
        acc = kron(&acc, m);
    }
    acc
}

/// The SWAP operator on `n ⊗ n`: `S |i⟩|j⟩ = |j⟩|i⟩`.
pub fn swap_matrix(n: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            s[(i * n + j, j * n + i)] = Complex64::ONE;
        }
    }
    s
}

/// Partial trace over the first register of a matrix on `A ⊗ B`.
pub fn partial_trace_first(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.dim(), dim_a * dim_b);
    ComplexMatrix::from_fn(dim_b, dim_b, |i, j| {
        (0..dim_a).map(|a| m[(a * dim_b + i, a * dim_b + j)]).sum()
    })
}

/// Partial trace over the second register of a matrix on `A ⊗ B`.
pub fn partial_trace_second(m: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    assert_eq!(m.dim(), dim_a * dim_b);
    ComplexMatrix::from_fn(dim_a, dim_a, |a, b| {
        (0..dim_b).map(|i| m[(a * dim_b + i, b * dim_b + i)]).sum()
    })
}

fn product(dims: &[usize]) -> usize {
    dims.iter().product()
}

/// For each assignment of the non-`axes` factors, the `gate_dim` global
/// indices it spans, ordered by the gate's own sub-index.
fn index_groups(dims: &[usize], axes: &[usize]) -> (usize, Vec<Vec<usize>>) {
    let total = product(dims);
    let gate_dim: usize = axes.iter().map(|&a| dims[a]).product();
    let n_rest = total / gate_dim;

    // Strides of the full space.
    let r = dims.len();
    let mut stride = vec![1usize; r];
    for k in (0..r.saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    // Gate-local strides over `axes` (in the given order).
    let mut gstride = vec![1usize; axes.len()];
    for t in (0..axes.len().saturating_sub(1)).rev() {
        gstride[t] = gstride[t + 1] * dims[axes[t + 1]];
    }
    let mut is_axis = vec![false; r];
    for &a in axes {
        is_axis[a] = true;
    }
    // Rest-local strides over the remaining factors, in factor order.
    let rest_axes: Vec<usize> = (0..r).filter(|k| !is_axis[*k]).collect();
    let mut rstride = vec![1usize; rest_axes.len()];
    for t in (0..rest_axes.len().saturating_sub(1)).rev() {
        rstride[t] = rstride[t + 1] * dims[rest_axes[t + 1]];
    }

    let mut groups = vec![vec![0usize; gate_dim]; n_rest];
    for g in 0..total {
        let mut sub = 0;
        for (t, &a) in axes.iter().enumerate() {
            sub += (g / stride[a] % dims[a]) * gstride[t];
        }
        let mut rest = 0;
        for (t, &a) in rest_axes.iter().enumerate() {
            rest += (g / stride[a] % dims[a]) * rstride[t];
        }
        groups[rest][sub] = g;
    }
    (gate_dim, groups)
}

/// Full `D × D` matrix of `gate` acting on the factors `axes` of a space with
/// factor dimensions `dims`, identity elsewhere.
pub fn embed(dims: &[usize], axes: &[usize], gate: &ComplexMatrix) -> ComplexMatrix {
    let (gate_dim, groups) = index_groups(dims, axes);
    assert_eq!(gate.dim(), gate_dim, "gate dimension must match its axes");
    let total = product(dims);
    let mut out = ComplexMatrix::zeros(total, total);
    for group in &groups {
        for (sr, &gr) in group.iter().enumerate() {
            for (sc, &gc) in group.iter().enumerate() {
                out[(gr, gc)] = gate[(sr, sc)];
            }
        }
    }
    out
}

/// `m · embed(gate)` in `O(D² d)`.
pub fn apply_right(
    m: &ComplexMatrix,
    gate: &ComplexMatrix,
    dims: &[usize],
    axes: &[usize],
) -> ComplexMatrix {
    let (gate_dim, groups) = index_groups(dims, axes);
    assert_eq!(gate.dim(), gate_dim, "gate dimension must match its axes");
    let total = product(dims);
    assert_eq!(m.cols(), total, "matrix width must match the space");

    let mut out = ComplexMatrix::zeros(m.rows(), total);
    let mut gathered = vec![Complex64::ZERO; gate_dim];
    for i in 0..m.rows() {
        let row = m.row(i);
        for group in &groups {
            for (s, &g) in group.iter().enumerate() {
                gathered[s] = row[g];
            }
            for (sc, &gc) in group.iter().enumerate() {
                let mut acc = Complex64::ZERO;
                for (sr, &x) in gathered.iter().enumerate() {
                    acc += x * gate[(sr, sc)];
                }
                out[(i, gc)] = acc;
            }
        }
    }
    out
}

/// `embed(gate) · m` in `O(D² d)`.
pub fn apply_left(
    gate: &ComplexMatrix,
    m: &ComplexMatrix,
    dims: &[usize],
    axes: &[usize],
) -> ComplexMatrix {
    // (G · M)ᵀ = Mᵀ · Gᵀ keeps the inner loops row-contiguous.
    let mt = transpose(m);
    let gt = transpose(gate);
    transpose(&apply_right(&mt, &gt, dims, axes))
}

fn transpose(m: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.cols(), m.rows(), |i, j| m[(j, i)])
}

/// Reorder tensor factors: output factor `i` is input factor `perm[i]`.
pub fn permute_factors(m: &ComplexMatrix, dims: &[usize], perm: &[usize]) -> ComplexMatrix {
    let r = dims.len();
    assert_eq!(perm.len(), r);
    let total = product(dims);
    assert_eq!(m.dim(), total);

    let mut stride = vec![1usize; r];
    for k in (0..r.saturating_sub(1)).rev() {
        stride[k] = stride[k + 1] * dims[k + 1];
    }
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let mut new_stride = vec![1usize; r];
    for k in (0..r.saturating_sub(1)).rev() {
        new_stride[k] = new_stride[k + 1] * new_dims[k + 1];
    }

    let mut map = vec![0usize; total];
    for (g, slot) in map.iter_mut().enumerate() {
        let mut ng = 0;
        for i in 0..r {
            ng += (g / stride[perm[i]] % dims[perm[i]]) * new_stride[i];
        }
        *slot = ng;
    }

    let mut out = ComplexMatrix::zeros(total, total);
    for i in 0..total {
        for j in 0..total {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}
