//! Monogamy of geometric discord for N-qubit pure states, anchored at
//! qubit 1:
//!
//! ```text
//! Σ_k D(rho_1k) <= D(rho_1|2..N)
//! ```
//!
//! Pair discords are exact because every 2x2 reduced state saturates the
//! lower bound. The cut discord of a pure state is `2 det(rho_1)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::decompose;
use crate::bounds::gd_lower_bound;
use crate::error::{Error, Result};
use crate::linalg::{re, CVec};
use crate::states::{reduce_pure_to_pair, MultiQubitPureState};
use crate::tolerance::Tolerances;

/// Families live on 3..=20 qubits; 20 keeps the dense amplitude vector
/// at 16 MiB.
fn check_qubits(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::BadParameter(format!(
            "need at least 3 qubits, got {n}"
        )));
    }
    if n > 20 {
        return Err(Error::BadParameter(format!(
            "{n} qubits is beyond dense storage"
        )));
    }
    Ok(())
}

fn check_norm(norm_sq: f64) -> Result<()> {
    if (norm_sq - 1.0).abs() > Tolerances::default().normalization {
        return Err(Error::NotNormalized { norm_sq });
    }
    Ok(())
}

/// Scales `coeffs` to unit Euclidean norm, returning the factor applied.
pub fn normalize(coeffs: &[f64]) -> Result<(Vec<f64>, f64)> {
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::BadParameter("coefficients have zero norm".into()));
    }
    Ok((coeffs.iter().map(|c| c / norm).collect(), 1.0 / norm))
}

/// a|0...0> + b|1...1>.
pub fn make_gghz(a: Complex64, b: Complex64, qubits: usize) -> Result<MultiQubitPureState> {
    check_qubits(qubits)?;
    check_norm(a.norm_sqr() + b.norm_sqr())?;
    let mut v = CVec::zeros(1 << qubits);
    v[0] = a;
    v[(1 << qubits) - 1] = b;
    MultiQubitPureState::new(v)
}

/// Σ_k c_k |0..1_k..0>.
pub fn make_gw(c: &[f64]) -> Result<MultiQubitPureState> {
    make_slocc_w(0.0, c)
}

/// c0 |0...0> + Σ_k c_k |0..1_k..0>.
pub fn make_slocc_w(c0: f64, c: &[f64]) -> Result<MultiQubitPureState> {
    let qubits = c.len();
    check_qubits(qubits)?;
    check_norm(c0 * c0 + c.iter().map(|x| x * x).sum::<f64>())?;
    let mut v = CVec::zeros(1 << qubits);
    v[0] = re(c0);
    for (k, &ck) in c.iter().enumerate() {
        v[1 << (qubits - 1 - k)] = re(ck);
    }
    MultiQubitPureState::new(v)
}

/// √p |0...0> + √(1-p) |+>|1...1>.
pub fn make_counterexample(p: f64, qubits: usize) -> Result<MultiQubitPureState> {
    check_qubits(qubits)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter(format!("p={p} outside [0, 1]")));
    }
    let dim = 1 << qubits;
    let tail = ((1.0 - p) / 2.0).sqrt();
    let mut v = CVec::zeros(dim);
    v[0] = re(p.sqrt());
    // |0 1...1> and |1 1...1>
    v[(dim >> 1) - 1] += re(tail);
    v[dim - 1] += re(tail);
    MultiQubitPureState::new(v)
}

/// Exact GD across the 1|2..N cut of a pure state: 2 det(rho_1).
pub fn cut_discord(s: &MultiQubitPureState) -> f64 {
    let r = s.single_qubit_marginal(1).expect("qubit 1 exists");
    2.0 * (r[(0, 0)].re * r[(1, 1)].re - r[(0, 1)].norm_sqr())
}

/// Exact GD of the two-qubit reduced state of qubits 1 and k.
pub fn pair_discord(s: &MultiQubitPureState, k: usize) -> Result<f64> {
    if k < 2 || k > s.qubits() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: s.qubits(),
        });
    }
    let pair = reduce_pure_to_pair(s, 1, k)?;
    Ok(gd_lower_bound(&decompose(&pair)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    pub qubits: usize,
    /// D(rho_1k) for k = 2..N.
    pub pair_discords: Vec<f64>,
    pub cut_discord: f64,
    pub lhs_sum: f64,
    pub deficit: f64,
    pub satisfied: bool,
}

pub fn monogamy_report(s: &MultiQubitPureState) -> Result<MonogamyReport> {
    check_qubits(s.qubits())?;
    let pair_discords = (2..=s.qubits())
        .map(|k| pair_discord(s, k))
        .collect::<Result<Vec<_>>>()?;
    let lhs_sum: f64 = pair_discords.iter().sum();
    let cut = cut_discord(s);
    let deficit = cut - lhs_sum;
    Ok(MonogamyReport {
        qubits: s.qubits(),
        pair_discords,
        cut_discord: cut,
        lhs_sum,
        deficit,
        satisfied: deficit >= -Tolerances::default().monogamy,
    })
}

/// D(rho_1k) of a generalized W state from its two coefficients:
/// `c1² ck² + ¼ min{4 c1² ck², (1-2c1²)² + (1-2c1²-2ck²)²}`.
pub fn w_pair_discord_closed_form(c1: f64, ck: f64) -> f64 {
    let (s1, sk) = (c1 * c1, ck * ck);
    let diag = (1.0 - 2.0 * s1).powi(2) + (1.0 - 2.0 * s1 - 2.0 * sk).powi(2);
    s1 * sk + 0.25 * (4.0 * s1 * sk).min(diag)
}

/// Closed-form pieces of the SLOCC-W pair spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SloccWSpectrum {
    /// Eigenvalues of x xᵗ + T Tᵗ: (4c1²ck², a + √b, a - √b).
    pub eigenvalues: [f64; 3],
    pub a: f64,
    pub b: f64,
    /// |x|² + |T|² - 8 c1² ck².
    pub c: f64,
}

impl SloccWSpectrum {
    /// |x|² + |T|².
    pub fn total(&self, c1: f64, ck: f64) -> f64 {
        8.0 * c1 * c1 * ck * ck + self.c
    }
}

pub fn slocc_w_spectrum(c0: f64, c1: f64, ck: f64) -> Result<SloccWSpectrum> {
    let (s0, s1, sk) = (c0 * c0, c1 * c1, ck * ck);
    if s0 + s1 + sk > 1.0 + 1e-12 {
        return Err(Error::BadParameter(format!(
            "c0² + c1² + ck² = {} exceeds one",
            s0 + s1 + sk
        )));
    }
    let a = (1.0 - 2.0 * s1).powi(2) - 2.0 * sk * (1.0 - s0 - sk - s1) + 4.0 * s1 * (s0 + sk);
    let b = 8.0
        * s1
        * sk
        * (-(-1.0 + 2.0 * s0 + 2.0 * s1).powi(2)
            - 2.0 * (-1.0 + 3.0 * s0 + 2.0 * s1) * sk
            - 2.0 * sk * sk)
        + a * a;
    if b < -1e-12 {
        return Err(Error::BadParameter(format!(
            "inconsistent coefficients: b = {b}"
        )));
    }
    let root = b.max(0.0).sqrt();
    let c = 8.0 * s0 * s1
        + (1.0 - 2.0 * s1).powi(2)
        + 4.0 * s0 * sk
        + (1.0 - 2.0 * s1 - 2.0 * sk).powi(2);
    Ok(SloccWSpectrum {
        eigenvalues: [4.0 * s1 * sk, a + root, a - root],
        a,
        b,
        c,
    })
}

/// D(rho_1k) of a SLOCC-W state, `¼ (|x|² + |T|² - λ_max)`.
pub fn slocc_w_pair_discord_closed_form(c0: f64, c1: f64, ck: f64) -> Result<f64> {
    let spec = slocc_w_spectrum(c0, c1, ck)?;
    let top = spec
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(0.25 * (spec.total(c1, ck) - top))
}

/// Closed-form monogamy test for the counterexample family:
/// `(N-1)/2 min{p², (1-p)²} <= p(1-p)`.
pub fn counterexample_satisfied(p: f64, qubits: usize) -> bool {
    let lhs = (qubits as f64 - 1.0) / 2.0 * (p * p).min((1.0 - p) * (1.0 - p));
    lhs <= p * (1.0 - p) + 1e-12
}
