//! Cyclic Jacobi eigensolver for dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so real
//! symmetric input stays exactly real throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{frobenius_sq, hermitian_residual, to_complex, CMat, RMat, RVec};
use crate::tolerance::Tolerances;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues non-increasing.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, aligned with `values`.
    pub vectors: CMat,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Real parts of the eigenvectors. Exact for real symmetric input.
    pub fn real_vectors(&self) -> RMat {
        self.vectors.map(|z| z.re)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Sum of the `k` largest eigenvalues.
    pub fn top_sum(&self, k: usize) -> f64 {
        self.values.iter().take(k).sum()
    }

    /// Sum of the `k` smallest eigenvalues.
    pub fn bottom_sum(&self, k: usize) -> f64 {
        self.values.iter().rev().take(k).sum()
    }

    /// V diag(values) V^dag.
    pub fn reconstruct(&self) -> CMat {
        let d = self.values.len();
        let mut scaled = self.vectors.clone();
        for (j, &lam) in self.values.iter().enumerate() {
            for i in 0..d {
                scaled[(i, j)] *= lam;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

pub fn hermitian_eig(a: &CMat) -> Result<Spectrum> {
    hermitian_eig_with(a, &Tolerances::default())
}

pub fn hermitian_eig_with(a: &CMat, tol: &Tolerances) -> Result<Spectrum> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            actual: a.ncols(),
        });
    }
    let residual = hermitian_residual(a);
    if residual > tol.eig_hermitian {
        return Err(Error::NotHermitian { residual });
    }
    Ok(jacobi(a, tol.jacobi_threshold, tol.jacobi_max_sweeps))
}

/// Eigen-decomposition of a real symmetric matrix through the same solver.
pub fn symmetric_eig(a: &RMat) -> Result<Spectrum> {
    hermitian_eig(&to_complex(a))
}

pub fn eigenvalues_real(a: &RMat) -> Result<RVec> {
    Ok(RVec::from_vec(symmetric_eig(a)?.values))
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn jacobi(input: &CMat, threshold: f64, max_sweeps: usize) -> Spectrum {
    let n = input.nrows();
    let mut a = (input + input.adjoint()) * Complex64::new(0.5, 0.0);
    let mut v = CMat::identity(n, n);
    let scale = frobenius_sq(&a).sqrt();

    for _ in 0..max_sweeps {
        let off = off_diagonal_norm(&a);
        if off == 0.0 || off <= threshold * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // stable: degenerate eigenvalues keep solver order
    order.sort_by(|&i, &j| {
        diag[j]
            .partial_cmp(&diag[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut column = v.column(src).clone_owned();
        fix_phase(column.as_mut_slice());
        vectors.set_column(col, &column);
    }
    Spectrum { values, vectors }
}

fn rotate(a: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + tau.hypot(1.0))
    } else {
        -1.0 / (-tau + tau.hypot(1.0))
    };
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let w = apq.conj() / r;

    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -w * s;
    let jqq = w * c;

    let n = a.nrows();
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    for i in 0..n {
        let api = a[(p, i)];
        let aqi = a[(q, i)];
        a[(p, i)] = jpp.conj() * api + jqp.conj() * aqi;
        a[(q, i)] = jpq.conj() * api + jqq.conj() * aqi;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for i in 0..n {
        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}

/// Rotate the global phase so the first entry of (near-)maximal modulus is
/// real and positive.
fn fix_phase(column: &mut [Complex64]) {
    let max = column.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let Some(pivot) = column.iter().position(|z| z.norm() >= max - 1e-12) else {
        return;
    };
    let z = column[pivot];
    let phase = z.conj() / z.norm();
    for entry in column.iter_mut() {
        *entry *= phase;
    }
    column[pivot] = Complex64::new(column[pivot].re, 0.0);
}
