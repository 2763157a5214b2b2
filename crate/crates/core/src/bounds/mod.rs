//! Lower bound on geometric discord, upper bound on measurement-induced
//! nonlocality, and the measurement that attains the relaxed optimum.
//!
//! With `G = (2/m) x xᵗ + (4/mn) T Tᵗ` and `λ↓` its eigenvalues,
//!
//! ```text
//! D(rho) >= 1/(mn) [ (2/m)|x|^2 + (4/mn)|T|^2 - Σ_{k<m} λ↓_k(G) ]
//! N(rho) <= 4/(m^2 n^2) Σ_{k <= m^2-m} λ↓_k(T Tᵗ)
//! ```
//!
//! The lower bound drops only the requirement that each `|k><k|` be a pure
//! state, so it is exact whenever the relaxed optimum happens to be a
//! genuine projective measurement. For qubits (m = 2) it always is.

mod completion;
mod measurement;

pub use completion::{hadamard, helmert, Completion};
pub(crate) use measurement::optimization_form_with;
pub use measurement::{
    checked_measurement_value, dephase, measurement_value, optimization_form_value,
    MeasurementCandidate, MeasurementSummary, OperatorRecord, ValueCheck,
};

use serde::{Deserialize, Serialize};

use crate::bloch::{gell_mann_basis, BlochForm};
use crate::error::{Error, Result};
use crate::linalg::{re, CMat, RMat};
use crate::states::{hermitian_eig, symmetric_eig, Spectrum};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundsConfig {
    pub completion: Completion,
    pub tol: Tolerances,
}

/// The matrix G, its spectrum, and the coherence vectors `a_k` of the
/// relaxed optimal measurement.
#[derive(Debug, Clone)]
pub struct RelaxationData {
    pub m: usize,
    pub n: usize,
    pub g: RMat,
    pub spectrum: Spectrum,
    /// Rows are `a_1 .. a_{m-1}`, each of length m^2 - 1.
    pub a_vectors: RMat,
    /// The (m-1) x (m-1) completion matrix used to build the rows.
    pub completion: RMat,
}

pub fn g_matrix(b: &BlochForm) -> RMat {
    let (m, n) = (b.m as f64, b.n as f64);
    let x = &b.local_a;
    let t = &b.correlation;
    x * x.transpose() * (2.0 / m) + t * t.transpose() * (4.0 / (m * n))
}

pub fn relaxation(b: &BlochForm) -> RelaxationData {
    relaxation_with(b, Completion::Helmert).expect("Helmert completion exists for every order")
}

pub fn relaxation_with(b: &BlochForm, completion: Completion) -> Result<RelaxationData> {
    let m = b.m;
    let g = g_matrix(b);
    let spectrum = symmetric_eig(&g)?;
    let u = completion.matrix(m - 1)?;

    // r_k = (row k of U) ∘ (1, ..., 1, 1/√m)
    let mut r = u.clone();
    let last = m - 2;
    let shrink = 1.0 / (m as f64).sqrt();
    for k in 0..m - 1 {
        r[(k, last)] *= shrink;
    }
    // Ṽ: top m-1 eigenvectors of G as rows
    let vecs = spectrum.real_vectors();
    let v_top = vecs.columns(0, m - 1).transpose();
    let a_vectors = r * v_top;

    Ok(RelaxationData {
        m,
        n: b.n,
        g,
        spectrum,
        a_vectors,
        completion: u,
    })
}

/// The unclamped lower bound; may be a few ulps below zero.
pub fn gd_lower_bound_raw(b: &BlochForm) -> f64 {
    let g = g_matrix(b);
    let spectrum = symmetric_eig(&g).expect("G is symmetric");
    lower_bound_from(b, &g, &spectrum)
}

fn lower_bound_from(b: &BlochForm, g: &RMat, spectrum: &Spectrum) -> f64 {
    let mn = (b.m * b.n) as f64;
    (g.trace() - spectrum.top_sum(b.m - 1)) / mn
}

pub fn gd_lower_bound(b: &BlochForm) -> f64 {
    gd_lower_bound_raw(b).max(0.0)
}

pub fn min_upper_bound(b: &BlochForm) -> f64 {
    let (m, n) = (b.m as f64, b.n as f64);
    let t = &b.correlation;
    let tt = t * t.transpose();
    let spectrum = symmetric_eig(&tt).expect("T Tᵗ is symmetric");
    let keep = b.m * b.m - b.m;
    (4.0 / (m * m * n * n) * spectrum.top_sum(keep)).max(0.0)
}

/// `P_k = I/m + (1/√2) Σ_i a_{k,i} λ_i` for k < m and `P_m = I - Σ P_k`.
pub fn candidate_measurement(r: &RelaxationData) -> MeasurementCandidate {
    let m = r.m;
    let basis = gell_mann_basis(m).expect("m >= 2");
    let id = CMat::identity(m, m);
    let mut ops = Vec::with_capacity(m);
    let mut rest = id.clone();
    for k in 0..m - 1 {
        let coeffs: Vec<f64> = r
            .a_vectors
            .row(k)
            .iter()
            .map(|&a| a * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let op = &id / re(m as f64) + basis.combine(&coeffs);
        rest -= &op;
        ops.push(op);
    }
    ops.push(rest);
    MeasurementCandidate::from_operators(ops).expect("candidate operators are Hermitian")
}

/// Rank-1 projectors onto the columns of a unitary.
pub(crate) fn projectors_from_columns(u: &CMat) -> Vec<CMat> {
    (0..u.ncols())
        .map(|k| {
            let col = u.column(k);
            col * col.adjoint()
        })
        .collect()
}

/// Returns the exact GD when some genuine measurement attains the lower
/// bound. The candidate is tried first; if it is not a projective
/// measurement, the computational basis and the eigenbasis of rho_A are
/// tried as witnesses.
pub fn certify_saturation(b: &BlochForm, c: &MeasurementCandidate) -> Option<f64> {
    certify_saturation_with(b, c, &Tolerances::default())
}

pub fn certify_saturation_with(
    b: &BlochForm,
    c: &MeasurementCandidate,
    tol: &Tolerances,
) -> Option<f64> {
    let bound = gd_lower_bound(b);
    let attains = |w: &MeasurementCandidate| {
        w.valid() && (optimization_form_value(b, w) - bound).abs() <= tol.saturation
    };
    if attains(c) {
        return Some(bound);
    }
    witnesses(b).iter().any(attains).then_some(bound)
}

fn witnesses(b: &BlochForm) -> Vec<MeasurementCandidate> {
    let m = b.m;
    let mut out = Vec::new();
    if let Ok(c) =
        MeasurementCandidate::from_operators(projectors_from_columns(&CMat::identity(m, m)))
    {
        out.push(c);
    }
    let basis = gell_mann_basis(m).expect("m >= 2");
    let rho_a = (CMat::identity(m, m) + basis.combine(b.local_a.as_slice())) / re(m as f64);
    if let Ok(spec) = hermitian_eig(&rho_a) {
        if let Ok(c) = MeasurementCandidate::from_operators(projectors_from_columns(&spec.vectors))
        {
            out.push(c);
        }
    }
    out
}

fn check_closed_form_dim(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::BadParameter(format!(
            "dimension must be >= 2, got {m}"
        )));
    }
    Ok(())
}

/// GD (= MIN) of the m x m Werner state with parameter z = Tr(rho F).
pub fn werner_gd(m: usize, z: f64) -> Result<f64> {
    check_closed_form_dim(m)?;
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::BadParameter(format!(
            "Werner parameter z={z} outside [-1, 1]"
        )));
    }
    let mf = m as f64;
    Ok((mf * z - 1.0).powi(2) / (mf * (mf - 1.0) * (mf + 1.0).powi(2)))
}

/// GD (= MIN) of the m x m isotropic state with fidelity z.
pub fn isotropic_gd(m: usize, z: f64) -> Result<f64> {
    check_closed_form_dim(m)?;
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::BadParameter(format!(
            "isotropic parameter z={z} outside [0, 1]"
        )));
    }
    let mf = m as f64;
    Ok((mf * mf * z - 1.0).powi(2) / (mf * (mf - 1.0) * (mf + 1.0).powi(2)))
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub gd_lower: f64,
    pub gd_lower_raw: f64,
    pub min_upper: f64,
    pub gd_exact: Option<f64>,
    pub min_exact: Option<f64>,
    pub saturated: bool,
    pub candidate: MeasurementCandidate,
    /// x = 0 and all eigenvalues of G equal, which forces the two bounds to
    /// coincide.
    pub d_equals_n_condition: bool,
    pub relaxation: RelaxationData,
}

impl BoundsReport {
    pub fn summary(&self) -> BoundsSummary {
        BoundsSummary {
            gd_lower: self.gd_lower,
            gd_lower_raw: self.gd_lower_raw,
            min_upper: self.min_upper,
            gd_exact: self.gd_exact,
            min_exact: self.min_exact,
            saturated: self.saturated,
            d_equals_n_condition: self.d_equals_n_condition,
            g_eigenvalues: self.relaxation.spectrum.values.clone(),
            candidate: self.candidate.summary(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsSummary {
    pub gd_lower: f64,
    pub gd_lower_raw: f64,
    pub min_upper: f64,
    pub gd_exact: Option<f64>,
    pub min_exact: Option<f64>,
    pub saturated: bool,
    pub d_equals_n_condition: bool,
    pub g_eigenvalues: Vec<f64>,
    pub candidate: MeasurementSummary,
}

pub fn bounds_report(b: &BlochForm) -> Result<BoundsReport> {
    bounds_report_with(b, &BoundsConfig::default())
}

pub fn bounds_report_with(b: &BlochForm, cfg: &BoundsConfig) -> Result<BoundsReport> {
    let tol = &cfg.tol;
    let relaxation = relaxation_with(b, cfg.completion)?;
    let gd_lower_raw = lower_bound_from(b, &relaxation.g, &relaxation.spectrum);
    let gd_lower = gd_lower_raw.max(0.0);
    let min_upper = min_upper_bound(b);
    let candidate = candidate_measurement(&relaxation);
    let gd_exact = certify_saturation_with(b, &candidate, tol);

    let x_zero = b.local_a.norm() <= tol.equality;
    let eigs = &relaxation.spectrum.values;
    let flat = eigs
        .first()
        .zip(eigs.last())
        .is_none_or(|(hi, lo)| hi - lo <= tol.equality);
    let d_equals_n_condition = x_zero && flat;

    // With x = 0 every measurement leaves rho_A = I/m invariant. For qubits
    // the minimizing direction of T Tᵗ is a legitimate projector, and when
    // the bounds coincide a saturated GD pins MIN as well.
    let min_exact = if x_zero && b.m == 2 {
        Some(min_upper)
    } else if d_equals_n_condition {
        gd_exact.map(|_| min_upper)
    } else {
        None
    };

    Ok(BoundsReport {
        gd_lower,
        gd_lower_raw,
        min_upper,
        saturated: gd_exact.is_some(),
        gd_exact,
        min_exact,
        candidate,
        d_equals_n_condition,
        relaxation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::decompose;
    use crate::linalg::RVec;
    use crate::states::{self, random};

    #[test]
    fn qubit_relaxation_uses_top_eigenvector() {
        let s = random::random_state(2, 3, 6, 12).unwrap();
        let r = relaxation(&decompose(&s));
        assert_eq!(r.completion, RMat::from_element(1, 1, 1.0));
        let v1 = r.spectrum.real_vectors().column(0).clone_owned();
        let a1 = r.a_vectors.row(0).transpose();
        assert!((a1 - v1 / 2f64.sqrt()).norm() < 1e-15);
    }

    #[test]
    fn qutrit_completion_is_normalized_helmert() {
        let s = random::random_state(3, 2, 6, 1).unwrap();
        let r = relaxation(&decompose(&s));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = RMat::from_row_slice(2, 2, &[h, h, -h, h]);
        assert!((&r.completion - expected).abs().max() < 1e-15);
    }

    #[test]
    fn a_vectors_satisfy_restricted_isometry() {
        for (m, n, seed) in [(2, 2, 1), (3, 3, 2), (4, 2, 3), (5, 2, 4)] {
            let s = random::random_state(m, n, m * n, seed).unwrap();
            let r = relaxation(&decompose(&s));
            let bbt = &r.a_vectors * r.a_vectors.transpose();
            let k = m - 1;
            let target = RMat::identity(k, k) - RMat::from_element(k, k, 1.0 / m as f64);
            assert!((bbt - target).abs().max() < 1e-9, "m={m}");
        }
    }

    #[test]
    fn zero_correlations_give_zero_g() {
        let b = decompose(&states::maximally_mixed(3, 3).unwrap());
        let r = relaxation(&b);
        assert_eq!(r.g.norm(), 0.0);
        assert!(r.spectrum.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn g_matches_definition() {
        let s = random::random_state(3, 2, 4, 6).unwrap();
        let b = decompose(&s);
        let r = relaxation(&b);
        let mut expected = RMat::zeros(8, 8);
        for i in 0..8 {
            for j in 0..8 {
                let xx = b.local_a[i] * b.local_a[j];
                let tt: f64 = (0..3)
                    .map(|l| b.correlation[(i, l)] * b.correlation[(j, l)])
                    .sum();
                expected[(i, j)] = 2.0 / 3.0 * xx + 4.0 / 6.0 * tt;
            }
        }
        assert!((r.g - expected).abs().max() < 1e-12);
    }

    #[test]
    fn bell_bounds() {
        let b = decompose(&states::bell_state());
        assert!((gd_lower_bound(&b) - 0.5).abs() < 1e-14);
        assert!((min_upper_bound(&b) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_bounds_are_zero() {
        for (m, n) in [(2, 2), (3, 4), (4, 3)] {
            let b = decompose(&states::maximally_mixed(m, n).unwrap());
            assert_eq!(gd_lower_bound(&b), 0.0);
            assert_eq!(min_upper_bound(&b), 0.0);
        }
    }

    #[test]
    fn classical_quantum_state_has_zero_bound() {
        // x = y = 0, T = diag(0,0,1): G = diag(0,0,1), bound = (1 - 1)/4
        let b = decompose(&states::classical_correlated());
        assert!(gd_lower_bound(&b).abs() < 1e-15);
    }

    #[test]
    fn product_state_min_bound() {
        // T Tᵗ = diag(0,0,1); keep the top two eigenvalues: 4/16 * 1
        let b = decompose(&states::product_zero(2, 2).unwrap());
        assert!((min_upper_bound(&b) - 0.25).abs() < 1e-15);
        assert_eq!(gd_lower_bound(&b), 0.0);
    }

    #[test]
    fn werner_qutrit_bound() {
        let b = decompose(&states::werner(3, 1.0).unwrap());
        assert!((gd_lower_bound(&b) - 1.0 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn min_bound_zero_without_correlations() {
        let b = BlochForm::new(
            3,
            2,
            RVec::from_element(8, 0.1),
            RVec::zeros(3),
            RMat::zeros(8, 3),
        )
        .unwrap();
        assert_eq!(min_upper_bound(&b), 0.0);
    }

    #[test]
    fn closed_forms() {
        assert!((werner_gd(2, -1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((werner_gd(3, 1.0).unwrap() - 1.0 / 24.0).abs() < 1e-15);
        assert!((isotropic_gd(3, 1.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((isotropic_gd(2, 1.0).unwrap() - 0.5).abs() < 1e-15);
        for m in 2..6 {
            assert!(werner_gd(m, 1.0 / m as f64).unwrap().abs() < 1e-30);
        }
        assert!(werner_gd(2, 1.1).is_err());
        assert!(isotropic_gd(2, -0.1).is_err());
        assert!(werner_gd(1, 0.0).is_err());
    }

    #[test]
    fn qubit_candidate_is_projective_and_attains_bound() {
        let s = random::random_state(2, 4, 8, 31).unwrap();
        let b = decompose(&s);
        let r = relaxation(&b);
        let c = candidate_measurement(&r);
        assert!(c.valid());
        let v = measurement_value(&s, &c).unwrap();
        assert!((v - gd_lower_bound(&b)).abs() < 1e-12);
        assert_eq!(certify_saturation(&b, &c), Some(gd_lower_bound(&b)));
    }

    #[test]
    fn bell_candidate_degenerate_top_space() {
        let s = states::bell_state();
        let b = decompose(&s);
        let c = candidate_measurement(&relaxation(&b));
        assert!(c.valid());
        assert!((measurement_value(&s, &c).unwrap() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn maximally_mixed_qutrit_candidate_flags() {
        let b = decompose(&states::maximally_mixed(3, 3).unwrap());
        let c = candidate_measurement(&relaxation(&b));
        assert!(c.each_trace_one);
        assert!(c.complete);
        // G = 0 leaves the eigenbasis arbitrary; the solver's choice is not
        // projective here, but any measurement attains the zero bound
        assert!(!c.valid());
        assert_eq!(certify_saturation(&b, &c), Some(0.0));
    }

    #[test]
    fn saturation_can_fail_for_qutrits() {
        let mut found = false;
        for seed in 0..50 {
            let s = random::random_state(3, 3, 9, seed).unwrap();
            let b = decompose(&s);
            let c = candidate_measurement(&relaxation(&b));
            if c.min_eigenvalues.iter().any(|&e| e < -1e-9) {
                assert_eq!(certify_saturation(&b, &c), None);
                found = true;
                break;
            }
        }
        assert!(found);
    }

    #[test]
    fn report_for_werner_qubits() {
        let b = decompose(&states::werner(2, -1.0).unwrap());
        let rep = bounds_report(&b).unwrap();
        assert!(rep.saturated);
        assert!(rep.d_equals_n_condition);
        assert!((rep.gd_lower - 0.5).abs() < 1e-12);
        assert_eq!(rep.min_exact, Some(rep.min_upper));
    }

    #[test]
    fn hadamard_completion_for_five_levels() {
        let s = random::random_state(5, 2, 10, 3).unwrap();
        let b = decompose(&s);
        let r = relaxation_with(&b, Completion::Hadamard).unwrap();
        let bbt = &r.a_vectors * r.a_vectors.transpose();
        let target = RMat::identity(4, 4) - RMat::from_element(4, 4, 0.2);
        assert!((bbt - target).abs().max() < 1e-9);
        assert!(relaxation_with(&decompose(&states::bell_state()), Completion::Hadamard).is_err());
    }
}
