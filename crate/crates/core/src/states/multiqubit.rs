use super::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};
use crate::tolerance::Tolerances;

/// Pure state of N qubits. Qubit 1 is the most significant bit of the
/// amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiQubitPureState {
    qubits: usize,
    amplitudes: CVec,
}

impl MultiQubitPureState {
    pub fn new(amplitudes: CVec) -> Result<Self> {
        let len = amplitudes.len();
        if len < 4 || !len.is_power_of_two() {
            return Err(Error::BadParameter(format!(
                "amplitude vector length {len} is not 2^N with N >= 2"
            )));
        }
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > Tolerances::default().normalization {
            return Err(Error::NotNormalized { norm_sq });
        }
        Ok(Self {
            qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &CVec {
        &self.amplitudes
    }

    fn bit_position(&self, party: usize) -> usize {
        self.qubits - party
    }

    fn check_party(&self, party: usize) -> Result<()> {
        if party == 0 || party > self.qubits {
            return Err(Error::IndexOutOfRange {
                index: party,
                max: self.qubits,
            });
        }
        Ok(())
    }

    /// 2x2 reduced state of one qubit (1-based).
    pub fn single_qubit_marginal(&self, party: usize) -> Result<CMat> {
        self.check_party(party)?;
        let pos = self.bit_position(party);
        let mut rho = CMat::zeros(2, 2);
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            let a = (x >> pos) & 1;
            let rest = x & !(1 << pos);
            for b in 0..2 {
                let y = rest | (b << pos);
                rho[(a, b)] += amp * self.amplitudes[y].conj();
            }
        }
        Ok(rho)
    }
}

/// Two-qubit reduced density matrix of parties `i < k` (1-based), with
/// party `i` as subsystem A.
pub fn reduce_pure_to_pair(s: &MultiQubitPureState, i: usize, k: usize) -> Result<BipartiteState> {
    s.check_party(i)?;
    s.check_party(k)?;
    if i >= k {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: k - 1,
        });
    }
    let pi = s.bit_position(i);
    let pk = s.bit_position(k);
    let psi = &s.amplitudes;
    let mut rho = CMat::zeros(4, 4);
    for (x, &amp) in psi.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let row = 2 * ((x >> pi) & 1) + ((x >> pk) & 1);
        let rest = x & !(1 << pi) & !(1 << pk);
        for bi in 0..2 {
            for bk in 0..2 {
                let y = rest | (bi << pi) | (bk << pk);
                rho[(row, 2 * bi + bk)] += amp * psi[y].conj();
            }
        }
    }
    BipartiteState::new(rho, 2, 2)
}
