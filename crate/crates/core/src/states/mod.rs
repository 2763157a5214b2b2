//! Bipartite density matrices on `C^m ⊗ C^n`.
//!
//! Basis convention: `|i>_A ⊗ |j>_B` is row `i * n + j`.

mod eig;
mod families;
mod multiqubit;
pub mod random;

pub use eig::{eigenvalues_real, hermitian_eig, hermitian_eig_with, symmetric_eig, Spectrum};
pub use families::{
    bell_state, classical_correlated, isotropic, maximally_entangled, maximally_mixed,
    product_zero, swap_operator, werner,
};
pub use multiqubit::{reduce_pure_to_pair, MultiQubitPureState};
pub use random::{random_pure, random_state};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{frobenius_sq, hermitian_residual, CMat, CVec};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

/// A validated density matrix with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    m: usize,
    n: usize,
    rho: CMat,
}

impl BipartiteState {
    pub fn new(rho: CMat, m: usize, n: usize) -> Result<Self> {
        validate_state(rho, m, n, &Tolerances::default())
    }

    pub fn with_tolerances(rho: CMat, m: usize, n: usize, tol: &Tolerances) -> Result<Self> {
        validate_state(rho, m, n, tol)
    }

    /// |psi><psi| for a unit vector of length m*n.
    pub fn from_pure(psi: &CVec, m: usize, n: usize) -> Result<Self> {
        if psi.len() != m * n {
            return Err(Error::DimensionMismatch {
                expected: m * n,
                actual: psi.len(),
            });
        }
        Self::new(psi * psi.adjoint(), m, n)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.m * self.n
    }

    pub fn rho(&self) -> &CMat {
        &self.rho
    }

    pub fn into_rho(self) -> CMat {
        self.rho
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        frobenius_sq(&self.rho)
    }

    pub fn partial_trace(&self, keep: Side) -> CMat {
        partial_trace(&self.rho, self.m, self.n, keep)
    }

    /// (U ⊗ V) rho (U ⊗ V)^dag.
    pub fn conjugate_local(&self, u: &CMat, v: &CMat) -> Result<Self> {
        if u.nrows() != self.m || v.nrows() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                actual: u.nrows(),
            });
        }
        let w = u.kronecker(v);
        let rho = &w * &self.rho * w.adjoint();
        let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
        Self::new(rho, self.m, self.n)
    }
}

/// Checks shape, Hermiticity, unit trace and positivity, in that order.
pub fn validate_state(rho: CMat, m: usize, n: usize, tol: &Tolerances) -> Result<BipartiteState> {
    if m < 2 || n < 2 {
        return Err(Error::BadParameter(format!(
            "subsystem dimensions must be >= 2, got {m}x{n}"
        )));
    }
    let d = m * n;
    if rho.nrows() != d || rho.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: if rho.nrows() != d {
                rho.nrows()
            } else {
                rho.ncols()
            },
        });
    }
    let residual = hermitian_residual(&rho);
    if residual > tol.hermitian {
        return Err(Error::NotHermitian { residual });
    }
    let trace: Complex64 = rho.trace();
    let residual = (trace - Complex64::new(1.0, 0.0)).norm();
    if residual > tol.trace {
        return Err(Error::NotUnitTrace { residual });
    }
    let spectrum = hermitian_eig_with(&rho, tol)?;
    let min_eigenvalue = spectrum.min();
    if min_eigenvalue < -tol.psd {
        return Err(Error::NotPsd { min_eigenvalue });
    }
    Ok(BipartiteState { m, n, rho })
}

/// Partial trace of an (mn) x (mn) operator, keeping one factor.
pub fn partial_trace(rho: &CMat, m: usize, n: usize, keep: Side) -> CMat {
    match keep {
        Side::A => CMat::from_fn(m, m, |i, k| {
            (0..n).map(|j| rho[(i * n + j, k * n + j)]).sum()
        }),
        Side::B => CMat::from_fn(n, n, |j, l| {
            (0..m).map(|i| rho[(i * n + j, i * n + l)]).sum()
        }),
    }
}
