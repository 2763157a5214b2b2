//! Measurement operators on subsystem A and the disturbance they cause.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bloch::{c_matrix, orthonormal_operator_basis, BlochForm};
use crate::error::{Error, Result};
use crate::linalg::{frobenius_sq, hermitian_residual, trace_product_re, CMat, RMat};
use crate::states::{hermitian_eig, BipartiteState};
use crate::tolerance::Tolerances;

/// m Hermitian unit-trace operators summing to the identity, plus the checks
/// that decide whether they form a rank-1 von Neumann measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementCandidate {
    pub operators: Vec<CMat>,
    pub each_trace_one: bool,
    pub psd: Vec<bool>,
    pub idempotent: Vec<bool>,
    pub complete: bool,
    pub min_eigenvalues: Vec<f64>,
    /// ||P^2 - P||_F per operator.
    pub idempotency_residuals: Vec<f64>,
}

impl MeasurementCandidate {
    pub fn from_operators(operators: Vec<CMat>) -> Result<Self> {
        Self::with_tolerances(operators, &Tolerances::default())
    }

    pub fn with_tolerances(operators: Vec<CMat>, tol: &Tolerances) -> Result<Self> {
        let Some(first) = operators.first() else {
            return Err(Error::BadParameter("empty measurement".into()));
        };
        let d = first.nrows();
        let mut sum = CMat::zeros(d, d);
        let mut each_trace_one = true;
        let mut psd = Vec::with_capacity(operators.len());
        let mut idempotent = Vec::with_capacity(operators.len());
        let mut min_eigenvalues = Vec::with_capacity(operators.len());
        let mut idempotency_residuals = Vec::with_capacity(operators.len());
        for op in &operators {
            if op.nrows() != d || op.ncols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: op.nrows(),
                });
            }
            let residual = hermitian_residual(op);
            if residual > tol.eig_hermitian {
                return Err(Error::NotHermitian { residual });
            }
            sum += op;
            each_trace_one &=
                (op.trace() - Complex64::new(1.0, 0.0)).norm() <= tol.measurement_trace;
            let min_eig = hermitian_eig(op)?.min();
            min_eigenvalues.push(min_eig);
            psd.push(min_eig >= -tol.measurement_psd);
            let idem = frobenius_sq(&(op * op - op)).sqrt();
            idempotency_residuals.push(idem);
            idempotent.push(idem <= tol.idempotent);
        }
        let complete = frobenius_sq(&(sum - CMat::identity(d, d))).sqrt() <= tol.measurement_trace;
        Ok(Self {
            operators,
            each_trace_one,
            psd,
            idempotent,
            complete,
            min_eigenvalues,
            idempotency_residuals,
        })
    }

    pub fn dim(&self) -> usize {
        self.operators[0].nrows()
    }

    /// Rank-1 projectors: every operator positive and idempotent.
    pub fn valid(&self) -> bool {
        self.each_trace_one
            && self.complete
            && self.psd.iter().all(|&p| p)
            && self.idempotent.iter().all(|&p| p)
    }

    /// Rows `a_k = (Tr(P_k X_i))_i` in the orthonormal basis
    /// `X_1 = I/√m, X_{i+1} = λ_i/√2`; an m x m^2 matrix.
    pub fn coefficient_matrix(&self) -> RMat {
        let d = self.dim();
        let basis = orthonormal_operator_basis(d).expect("measurement dimension >= 2");
        RMat::from_fn(self.operators.len(), d * d, |k, i| {
            trace_product_re(&self.operators[k], &basis[i])
        })
    }

    pub fn summary(&self) -> MeasurementSummary {
        MeasurementSummary {
            operators: self
                .operators
                .iter()
                .map(|op| OperatorRecord {
                    re: rows(op, |z| z.re),
                    im: rows(op, |z| z.im),
                })
                .collect(),
            each_trace_one: self.each_trace_one,
            psd: self.psd.clone(),
            idempotent: self.idempotent.clone(),
            complete: self.complete,
            min_eigenvalues: self.min_eigenvalues.clone(),
            valid: self.valid(),
        }
    }
}

fn rows(op: &CMat, f: impl Fn(&Complex64) -> f64) -> Vec<Vec<f64>> {
    (0..op.nrows())
        .map(|i| (0..op.ncols()).map(|j| f(&op[(i, j)])).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorRecord {
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

/// Serializable view of a [`MeasurementCandidate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSummary {
    pub operators: Vec<OperatorRecord>,
    pub each_trace_one: bool,
    pub psd: Vec<bool>,
    pub idempotent: Vec<bool>,
    pub complete: bool,
    pub min_eigenvalues: Vec<f64>,
    pub valid: bool,
}

/// Π(rho) = Σ_k (P_k ⊗ I) rho (P_k ⊗ I) for arbitrary operators P_k.
pub fn dephase(s: &BipartiteState, ops: &[CMat]) -> CMat {
    let (m, n) = (s.m(), s.n());
    let rho = s.rho();
    let mut out = CMat::zeros(m * n, m * n);
    for p in ops {
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let pac = p[(a, c)];
                    if pac.norm_sqr() == 0.0 {
                        continue;
                    }
                    for d in 0..m {
                        let w = pac * p[(d, b)];
                        if w.norm_sqr() == 0.0 {
                            continue;
                        }
                        for i in 0..n {
                            for j in 0..n {
                                out[(a * n + i, b * n + j)] += w * rho[(c * n + i, d * n + j)];
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// ||rho - Π(rho)||^2 for a genuine von Neumann measurement.
pub fn measurement_value(s: &BipartiteState, c: &MeasurementCandidate) -> Result<f64> {
    check_measurement(s, c)?;
    Ok(frobenius_sq(&(s.rho() - dephase(s, &c.operators))))
}

fn check_measurement(s: &BipartiteState, c: &MeasurementCandidate) -> Result<()> {
    if c.dim() != s.m() || c.operators.len() != s.m() {
        return Err(Error::DimensionMismatch {
            expected: s.m(),
            actual: c.dim(),
        });
    }
    if !c.valid() {
        return Err(Error::InvalidMeasurement(format!(
            "min eigenvalues {:?}, idempotency residuals {:?}",
            c.min_eigenvalues, c.idempotency_residuals
        )));
    }
    Ok(())
}

/// Tr(C Cᵗ) - Tr(A C Cᵗ Aᵗ) with `A` the coefficient matrix of the
/// candidate. For a genuine measurement this is the disturbance; for a
/// relaxed candidate it is the relaxed objective.
pub fn optimization_form_value(b: &BlochForm, c: &MeasurementCandidate) -> f64 {
    let cm = c_matrix(b);
    optimization_form_with(&cm, &c.coefficient_matrix())
}

pub(crate) fn optimization_form_with(cm: &RMat, a: &RMat) -> f64 {
    cm.norm_squared() - (a * cm).norm_squared()
}

/// Both GD formulations evaluated on the same measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueCheck {
    pub direct: f64,
    pub optimization_form: f64,
}

impl ValueCheck {
    pub fn residual(&self) -> f64 {
        (self.direct - self.optimization_form).abs()
    }
}

/// Evaluates [`measurement_value`] and checks it against the optimization
/// form within 1e-9.
pub fn checked_measurement_value(
    s: &BipartiteState,
    b: &BlochForm,
    c: &MeasurementCandidate,
) -> Result<ValueCheck> {
    let direct = measurement_value(s, c)?;
    let check = ValueCheck {
        direct,
        optimization_form: optimization_form_value(b, c),
    };
    if check.residual() > 1e-9 {
        return Err(Error::InvalidMeasurement(format!(
            "value identity violated by {:.3e}",
            check.residual()
        )));
    }
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::decompose;
    use crate::linalg::{re, ONE, ZERO};
    use crate::states;

    fn z_basis() -> MeasurementCandidate {
        let p0 = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
        let p1 = CMat::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
        MeasurementCandidate::from_operators(vec![p0, p1]).unwrap()
    }

    #[test]
    fn classical_state_undisturbed() {
        let s = states::classical_correlated();
        assert_eq!(measurement_value(&s, &z_basis()).unwrap(), 0.0);
    }

    #[test]
    fn bell_disturbance_is_half() {
        let s = states::bell_state();
        let b = decompose(&s);
        let v = checked_measurement_value(&s, &b, &z_basis()).unwrap();
        assert!((v.direct - 0.5).abs() < 1e-15);
        assert!(v.residual() < 1e-12);
    }

    #[test]
    fn maximally_mixed_undisturbed() {
        let s = states::maximally_mixed(2, 3).unwrap();
        assert!(measurement_value(&s, &z_basis()).unwrap().abs() < 1e-16);
    }

    #[test]
    fn invalid_measurement_rejected() {
        let half = CMat::identity(2, 2) * re(0.5);
        let c = MeasurementCandidate::from_operators(vec![half.clone(), half]).unwrap();
        assert!(c.each_trace_one && c.complete);
        assert!(c.psd.iter().all(|&p| p));
        assert!(!c.valid());
        assert!(matches!(
            measurement_value(&states::bell_state(), &c),
            Err(Error::InvalidMeasurement(_))
        ));
    }

    #[test]
    fn coefficient_matrix_rows() {
        let a = z_basis().coefficient_matrix();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = RMat::from_row_slice(2, 4, &[h, 0.0, 0.0, h, h, 0.0, 0.0, -h]);
        assert!((a - expected).abs().max() < 1e-15);
    }
}
