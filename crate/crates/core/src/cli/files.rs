//! JSON file formats read and written by the command-line tool.
//!
//! A state file holds a density matrix as separate real and imaginary parts,
//! row-major, with `|i>_A ⊗ |j>_B` at row `i * n + j`:
//!
//! ```json
//! { "m": 2, "n": 2,
//!   "re": [[0.25, 0, 0, 0], [0, 0.25, 0, 0], [0, 0, 0.25, 0], [0, 0, 0, 0.25]],
//!   "im": [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]] }
//! ```
//!
//! An amplitude file holds an N-qubit pure state, qubit 1 most significant:
//!
//! ```json
//! { "qubits": 3, "re": [0, 0.577, 0.577, 0, 0.577, 0, 0, 0], "im": [0, 0, 0, 0, 0, 0, 0, 0] }
//! ```

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};
use crate::states::{BipartiteState, MultiQubitPureState};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub m: usize,
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl StateFile {
    pub fn from_state(s: &BipartiteState) -> Self {
        let d = s.dim();
        let rho = s.rho();
        Self {
            m: s.m(),
            n: s.n(),
            re: (0..d)
                .map(|i| (0..d).map(|j| rho[(i, j)].re).collect())
                .collect(),
            im: (0..d)
                .map(|i| (0..d).map(|j| rho[(i, j)].im).collect())
                .collect(),
        }
    }

    pub fn to_state(&self, tol: &Tolerances) -> Result<BipartiteState> {
        let d = self.m * self.n;
        for part in [&self.re, &self.im] {
            if part.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: part.len(),
                });
            }
            if let Some(row) = part.iter().find(|r| r.len() != d) {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: row.len(),
                });
            }
        }
        let rho = CMat::from_fn(d, d, |i, j| Complex64::new(self.re[i][j], self.im[i][j]));
        BipartiteState::with_tolerances(rho, self.m, self.n, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplitudeFile {
    pub qubits: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl AmplitudeFile {
    pub fn to_state(&self) -> Result<MultiQubitPureState> {
        let len = 1usize
            .checked_shl(self.qubits as u32)
            .ok_or_else(|| Error::BadParameter(format!("{} qubits", self.qubits)))?;
        for part in [&self.re, &self.im] {
            if part.len() != len {
                return Err(Error::DimensionMismatch {
                    expected: len,
                    actual: part.len(),
                });
            }
        }
        let v = CVec::from_iterator(
            len,
            self.re
                .iter()
                .zip(&self.im)
                .map(|(&r, &i)| Complex64::new(r, i)),
        );
        MultiQubitPureState::new(v)
    }
}

/// SHA-256 over the dimensions and the little-endian bytes of every matrix
/// entry (real then imaginary, row-major).
pub fn state_digest(s: &BipartiteState) -> String {
    let mut h = Sha256::new();
    h.update((s.m() as u64).to_le_bytes());
    h.update((s.n() as u64).to_le_bytes());
    let d = s.dim();
    for i in 0..d {
        for j in 0..d {
            let z = s.rho()[(i, j)];
            h.update(z.re.to_le_bytes());
            h.update(z.im.to_le_bytes());
        }
    }
    format!("{:x}", h.finalize())
}

pub fn amplitude_digest(s: &MultiQubitPureState) -> String {
    let mut h = Sha256::new();
    h.update((s.qubits() as u64).to_le_bytes());
    for z in s.amplitudes().iter() {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    format!("{:x}", h.finalize())
}
