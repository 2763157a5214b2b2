//! Orthogonal (m-1) x (m-1) matrices whose last column is the normalized
//! all-ones vector. Rows of such a matrix, rescaled, become the coherence
//! vectors of the relaxed optimal measurement.

use crate::error::{Error, Result};
use crate::linalg::RMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    #[default]
    Helmert,
    /// Sylvester-Hadamard, orders 4 and 8 only.
    Hadamard,
}

impl Completion {
    pub fn matrix(self, order: usize) -> Result<RMat> {
        match self {
            Completion::Helmert => Ok(helmert(order)),
            Completion::Hadamard => hadamard(order),
        }
    }
}

/// Column j < order-1 is (1, ..., 1, -(j+1), 0, ..., 0) with j+1 leading
/// ones; the last column is all ones. Columns normalized.
pub fn helmert(order: usize) -> RMat {
    let mut h = RMat::zeros(order, order);
    if order == 0 {
        return h;
    }
    for j in 0..order - 1 {
        let k = (j + 1) as f64;
        let norm = (k + k * k).sqrt();
        for i in 0..=j {
            h[(i, j)] = 1.0 / norm;
        }
        h[(j + 1, j)] = -k / norm;
    }
    let last = 1.0 / (order as f64).sqrt();
    for i in 0..order {
        h[(i, order - 1)] = last;
    }
    h
}

/// Normalized Sylvester-Hadamard matrix with its all-ones column moved last.
pub fn hadamard(order: usize) -> Result<RMat> {
    if order != 4 && order != 8 {
        return Err(Error::BadParameter(format!(
            "Hadamard completion is available for orders 4 and 8, not {order}"
        )));
    }
    let scale = 1.0 / (order as f64).sqrt();
    let sylvester = |i: usize, j: usize| {
        if (i & j).count_ones().is_multiple_of(2) {
            scale
        } else {
            -scale
        }
    };
    Ok(RMat::from_fn(order, order, |i, j| {
        sylvester(i, (j + 1) % order)
    }))
}
