//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's Bloch or bounds code: the qubit
//! formulas use explicit Pauli matrices and nalgebra's own eigensolvers.

#![allow(dead_code)]

use nalgebra::{DMatrix, Matrix3, SymmetricEigen, Vector3};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn paulis() -> [CMat; 3] {
    [
        CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        CMat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    ]
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// x_i = Tr(rho σ_i ⊗ I), T_ij = Tr(rho σ_i ⊗ σ_j) for a two-qubit state.
pub fn qubit_bloch(rho: &CMat) -> (Vector3<f64>, Matrix3<f64>) {
    let p = paulis();
    let id = CMat::identity(2, 2);
    let x = Vector3::from_fn(|i, _| (rho * kron(&p[i], &id)).trace().re);
    let t = Matrix3::from_fn(|i, j| (rho * kron(&p[i], &p[j])).trace().re);
    (x, t)
}

/// Known two-qubit geometric discord: ¼(|x|² + |T|² − λ_max(x xᵗ + T Tᵗ)).
pub fn qubit_gd(rho: &CMat) -> f64 {
    let (x, t) = qubit_bloch(rho);
    let k = x * x.transpose() + t * t.transpose();
    let eig = SymmetricEigen::new(k);
    let top = eig
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    0.25 * (x.norm_squared() + t.norm_squared() - top)
}

/// Sorted eigenvalues of x xᵗ + T Tᵗ.
pub fn qubit_k_spectrum(rho: &CMat) -> Vec<f64> {
    let (x, t) = qubit_bloch(rho);
    let k = x * x.transpose() + t * t.transpose();
    let mut v: Vec<f64> = SymmetricEigen::new(k).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Reduced state of qubits (i, k) (1-based, qubit 1 most significant) of an
/// N-qubit pure state, computed by explicit index summation.
pub fn pair_rdm(psi: &[Complex64], qubits: usize, i: usize, k: usize) -> CMat {
    let bit = |idx: usize, q: usize| (idx >> (qubits - q)) & 1;
    let mut rho = CMat::zeros(4, 4);
    for (a, &pa) in psi.iter().enumerate() {
        for (b, &pb) in psi.iter().enumerate() {
            let same_rest = (1..=qubits)
                .filter(|&q| q != i && q != k)
                .all(|q| bit(a, q) == bit(b, q));
            if !same_rest {
                continue;
            }
            let r = 2 * bit(a, i) + bit(a, k);
            let s = 2 * bit(b, i) + bit(b, k);
            rho[(r, s)] += pa * pb.conj();
        }
    }
    rho
}

/// Reduced state of qubit 1.
pub fn first_qubit_rdm(psi: &[Complex64], qubits: usize) -> CMat {
    let half = 1 << (qubits - 1);
    let mut rho = CMat::zeros(2, 2);
    for r in 0..2 {
        for s in 0..2 {
            rho[(r, s)] = (0..half)
                .map(|j| psi[r * half + j] * psi[s * half + j].conj())
                .sum();
        }
    }
    rho
}

/// Sorted eigenvalues of a Hermitian matrix via nalgebra.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let h = (a + a.adjoint()) * c(0.5, 0.0);
    let mut v: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}
