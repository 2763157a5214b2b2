//! Brute-force optimization of `||rho - Π(rho)||^2` over genuine von Neumann
//! measurements on subsystem A.
//!
//! A measurement is the set of projectors onto the columns of a unitary U.
//! Each restart starts from a Haar-random U and hill-climbs by mixing two
//! columns with `exp(iθ n·σ)`, keeping a move only if it improves the
//! objective. The step scale decays geometrically.
//!
//! For MIN the measurement must leave rho_A invariant, which pins U to the
//! eigenbasis of rho_A up to unitaries inside degenerate eigenspaces.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bloch::{c_matrix, decompose, orthonormal_operator_basis};
use crate::bounds::{
    gd_lower_bound, min_upper_bound, optimization_form_with, projectors_from_columns,
    MeasurementCandidate,
};
use crate::error::{Error, Result};
use crate::linalg::{frobenius_sq, CMat, RMat};
use crate::states::random::{haar_unitary, standard_normal, stream_rng};
use crate::states::{hermitian_eig, BipartiteState, Side};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub restarts: usize,
    pub iterations: usize,
    pub initial_step: f64,
    pub step_decay: f64,
    pub seed: u64,
    pub constraint_tolerance: f64,
    /// Evaluate the optimization form alongside the direct value at every
    /// visited point and record the worst disagreement.
    pub verify_identity: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            iterations: 400,
            initial_step: 0.3,
            step_decay: 0.97,
            seed: 0,
            constraint_tolerance: 1e-8,
            verify_identity: false,
        }
    }
}

impl OracleConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::BadParameter(
                "oracle needs at least one restart".into(),
            ));
        }
        if !(self.step_decay > 0.0 && self.step_decay < 1.0) {
            return Err(Error::BadParameter(format!(
                "step decay {} outside (0, 1)",
                self.step_decay
            )));
        }
        if self.initial_step.is_nan() || self.initial_step <= 0.0 {
            return Err(Error::BadParameter("initial step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub best_value: f64,
    pub best_measurement: MeasurementCandidate,
    pub best_unitary: CMat,
    pub per_restart_values: Vec<f64>,
    /// Worst ||Σ P_k rho_A P_k - rho_A||_F over the restart optima (MIN only).
    pub constraint_residual: Option<f64>,
    /// Worst |direct - optimization form| over all visited points, when
    /// `verify_identity` is set.
    pub identity_residual: Option<f64>,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub best_value: f64,
    pub per_restart_values: Vec<f64>,
    pub constraint_residual: Option<f64>,
    pub identity_residual: Option<f64>,
    pub evaluations: usize,
    pub best_measurement: crate::bounds::MeasurementSummary,
}

impl OracleResult {
    pub fn summary(&self) -> OracleSummary {
        OracleSummary {
            best_value: self.best_value,
            per_restart_values: self.per_restart_values.clone(),
            constraint_residual: self.constraint_residual,
            identity_residual: self.identity_residual,
            evaluations: self.evaluations,
            best_measurement: self.best_measurement.summary(),
        }
    }
}

/// Projectors `U|k><k|U^dag`.
pub fn measurement_from_unitary(u: &CMat) -> Result<MeasurementCandidate> {
    let d = u.nrows();
    if u.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: u.ncols(),
        });
    }
    let residual = frobenius_sq(&(u.adjoint() * u - CMat::identity(d, d))).sqrt();
    if residual > Tolerances::default().unitary {
        return Err(Error::NotUnitary { residual });
    }
    MeasurementCandidate::from_operators(projectors_from_columns(u))
}

/// Objective evaluation for rank-1 measurements given by unitary columns.
struct Evaluator {
    m: usize,
    n: usize,
    rho: Vec<Complex64>,
    c: RMat,
    basis: Vec<CMat>,
}

impl Evaluator {
    fn new(s: &BipartiteState) -> Self {
        let d = s.dim();
        let rho = (0..d * d).map(|idx| s.rho()[(idx / d, idx % d)]).collect();
        Self {
            m: s.m(),
            n: s.n(),
            rho,
            c: c_matrix(&decompose(s)),
            basis: orthonormal_operator_basis(s.m()).expect("m >= 2"),
        }
    }

    #[inline]
    fn rho(&self, r: usize, c: usize) -> Complex64 {
        self.rho[r * self.m * self.n + c]
    }

    /// ||rho - Σ_k (P_k ⊗ I) rho (P_k ⊗ I)||^2 with P_k onto column k.
    fn direct(&self, u: &CMat) -> f64 {
        let (m, n) = (self.m, self.n);
        // σ_k = (<u_k| ⊗ I) rho (|u_k> ⊗ I)
        let mut sigma = vec![Complex64::new(0.0, 0.0); m * n * n];
        for k in 0..m {
            let block = &mut sigma[k * n * n..(k + 1) * n * n];
            for c in 0..m {
                for d in 0..m {
                    let w = u[(c, k)].conj() * u[(d, k)];
                    for i in 0..n {
                        for j in 0..n {
                            block[i * n + j] += w * self.rho(c * n + i, d * n + j);
                        }
                    }
                }
            }
        }
        let mut acc = 0.0;
        for a in 0..m {
            for b in 0..m {
                for i in 0..n {
                    for j in 0..n {
                        let mut proj = Complex64::new(0.0, 0.0);
                        for k in 0..m {
                            proj += u[(a, k)] * u[(b, k)].conj() * sigma[k * n * n + i * n + j];
                        }
                        acc += (self.rho(a * n + i, b * n + j) - proj).norm_sqr();
                    }
                }
            }
        }
        acc
    }

    /// Tr(C Cᵗ) - Tr(A C Cᵗ Aᵗ) with a_ki = <u_k|X_i|u_k>.
    fn optimization_form(&self, u: &CMat) -> f64 {
        let m = self.m;
        let a = RMat::from_fn(m, m * m, |k, i| {
            let col = u.column(k);
            let x = &self.basis[i];
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..m {
                for q in 0..m {
                    acc += col[p].conj() * x[(p, q)] * col[q];
                }
            }
            acc.re
        });
        optimization_form_with(&self.c, &a)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    Minimize,
    Maximize,
}

impl Goal {
    fn better(self, candidate: f64, current: f64) -> bool {
        match self {
            Goal::Minimize => candidate < current,
            Goal::Maximize => candidate > current,
        }
    }
}

struct RestartOutcome {
    value: f64,
    unitary: CMat,
    identity_residual: f64,
    evaluations: usize,
}

/// U <- U · exp(iθ n·σ) acting on columns (j, k).
fn mix_columns(u: &CMat, j: usize, k: usize, theta: f64, axis: [f64; 3]) -> CMat {
    let (s, c) = theta.sin_cos();
    let [nx, ny, nz] = axis;
    let i = Complex64::new(0.0, 1.0);
    let j00 = Complex64::new(c, 0.0) + i * s * nz;
    let j01 = i * s * Complex64::new(nx, -ny);
    let j10 = i * s * Complex64::new(nx, ny);
    let j11 = Complex64::new(c, 0.0) - i * s * nz;
    let mut out = u.clone();
    for r in 0..u.nrows() {
        let a = u[(r, j)];
        let b = u[(r, k)];
        out[(r, j)] = a * j00 + b * j10;
        out[(r, k)] = a * j01 + b * j11;
    }
    out
}

fn random_axis<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v = [
            standard_normal(rng),
            standard_normal(rng),
            standard_normal(rng),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-12 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

fn climb<R: Rng + ?Sized>(
    eval: &Evaluator,
    start: CMat,
    moves: &[(usize, usize)],
    cfg: &OracleConfig,
    goal: Goal,
    rng: &mut R,
) -> RestartOutcome {
    let mut worst_identity: f64 = 0.0;
    let mut evaluate = |u: &CMat| {
        let v = eval.direct(u);
        if cfg.verify_identity {
            worst_identity = worst_identity.max((v - eval.optimization_form(u)).abs());
        }
        v
    };
    let mut current = start;
    let mut value = evaluate(&current);
    let mut evaluations = 1;
    let mut step = cfg.initial_step;
    if !moves.is_empty() {
        for _ in 0..cfg.iterations {
            let (j, k) = moves[rng.gen_range(0..moves.len())];
            let axis = random_axis(rng);
            let theta = step * standard_normal(rng);
            let proposal = mix_columns(&current, j, k, theta, axis);
            let v = evaluate(&proposal);
            evaluations += 1;
            if goal.better(v, value) {
                current = proposal;
                value = v;
            }
            step *= cfg.step_decay;
        }
    }
    RestartOutcome {
        value,
        unitary: current,
        identity_residual: worst_identity,
        evaluations,
    }
}

fn all_pairs(blocks: &[std::ops::Range<usize>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in blocks {
        for j in b.clone() {
            for k in (j + 1)..b.end {
                out.push((j, k));
            }
        }
    }
    out
}

fn run_restarts<F>(
    eval: &Evaluator,
    cfg: &OracleConfig,
    goal: Goal,
    moves: &[(usize, usize)],
    start: F,
) -> Vec<RestartOutcome>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> CMat + Sync,
{
    (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(cfg.seed, r as u64);
            let u0 = start(&mut rng);
            climb(eval, u0, moves, cfg, goal, &mut rng)
        })
        .collect()
}

fn assemble(
    outcomes: Vec<RestartOutcome>,
    goal: Goal,
    cfg: &OracleConfig,
    constraint_residual: Option<f64>,
) -> Result<OracleResult> {
    let mut best = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if goal.better(o.value, outcomes[best].value) {
            best = i;
        }
    }
    let best_measurement = measurement_from_unitary(&outcomes[best].unitary)?;
    Ok(OracleResult {
        best_value: outcomes[best].value,
        best_measurement,
        best_unitary: outcomes[best].unitary.clone(),
        per_restart_values: outcomes.iter().map(|o| o.value).collect(),
        constraint_residual,
        identity_residual: cfg.verify_identity.then(|| {
            outcomes
                .iter()
                .map(|o| o.identity_residual)
                .fold(0.0, f64::max)
        }),
        evaluations: outcomes.iter().map(|o| o.evaluations).sum(),
    })
}

/// Numerical minimum of the measurement disturbance: an upper estimate of
/// the geometric discord.
pub fn oracle_gd(s: &BipartiteState, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let eval = Evaluator::new(s);
    let m = s.m();
    let moves = all_pairs(std::slice::from_ref(&(0..m)));
    let outcomes = run_restarts(&eval, cfg, Goal::Minimize, &moves, |rng| {
        haar_unitary(m, rng)
    });
    assemble(outcomes, Goal::Minimize, cfg, None)
}

/// Groups of (sorted) eigenvalue indices closer than `gap`.
fn degenerate_blocks(values: &[f64], gap: f64) -> Vec<std::ops::Range<usize>> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || (values[i - 1] - values[i]).abs() > gap {
            blocks.push(start..i);
            start = i;
        }
    }
    blocks
}

fn local_invariance_residual(rho_a: &CMat, u: &CMat) -> f64 {
    let mut dephased = CMat::zeros(rho_a.nrows(), rho_a.ncols());
    for p in projectors_from_columns(u) {
        dephased += &p * rho_a * &p;
    }
    frobenius_sq(&(dephased - rho_a)).sqrt()
}

/// Numerical maximum of the disturbance over measurements that leave rho_A
/// invariant: a lower estimate of MIN.
pub fn oracle_min(s: &BipartiteState, cfg: &OracleConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let eval = Evaluator::new(s);
    let rho_a = s.partial_trace(Side::A);
    let spectrum = hermitian_eig(&rho_a)?;
    let blocks = degenerate_blocks(&spectrum.values, Tolerances::default().degeneracy_gap);
    let moves = all_pairs(&blocks);
    let eigvecs = spectrum.vectors.clone();

    let outcomes = if moves.is_empty() {
        let value = eval.direct(&eigvecs);
        let identity_residual = if cfg.verify_identity {
            (value - eval.optimization_form(&eigvecs)).abs()
        } else {
            0.0
        };
        vec![RestartOutcome {
            value,
            unitary: eigvecs,
            identity_residual,
            evaluations: 1,
        }]
    } else {
        run_restarts(&eval, cfg, Goal::Maximize, &moves, |rng| {
            let mut w = CMat::zeros(s.m(), s.m());
            for b in &blocks {
                let h = haar_unitary(b.len(), rng);
                w.view_mut((b.start, b.start), (b.len(), b.len()))
                    .copy_from(&h);
            }
            &eigvecs * w
        })
    };

    let residual = outcomes
        .iter()
        .map(|o| local_invariance_residual(&rho_a, &o.unitary))
        .fold(0.0, f64::max);
    if residual > cfg.constraint_tolerance {
        return Err(Error::InvalidMeasurement(format!(
            "MIN search left the invariant set (residual {residual:.3e})"
        )));
    }
    assemble(outcomes, Goal::Maximize, cfg, Some(residual))
}

/// Bounds next to their brute-force counterparts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub gd_lower: f64,
    pub oracle_gd: f64,
    pub min_upper: f64,
    pub oracle_min: f64,
    pub gd_gap: f64,
    pub min_gap: f64,
}

pub fn gap_report(s: &BipartiteState, cfg: &OracleConfig) -> Result<GapReport> {
    let b = decompose(s);
    let gd_lower = gd_lower_bound(&b);
    let min_upper = min_upper_bound(&b);
    let oracle_gd = oracle_gd(s, cfg)?.best_value;
    let oracle_min = oracle_min(s, cfg)?.best_value;
    Ok(GapReport {
        gd_lower,
        oracle_gd,
        min_upper,
        oracle_min,
        gd_gap: oracle_gd - gd_lower,
        min_gap: min_upper - oracle_min,
    })
}

/// Direct disturbance of the projective measurement defined by `u`, used by
/// tests that need the oracle's objective without running a search.
pub fn unitary_measurement_value(s: &BipartiteState, u: &CMat) -> f64 {
    Evaluator::new(s).direct(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::measurement_value;
    use crate::linalg::re;
    use crate::states::{self, random};

    fn quick(seed: u64) -> OracleConfig {
        OracleConfig {
            restarts: 8,
            iterations: 300,
            seed,
            ..OracleConfig::default()
        }
    }

    #[test]
    fn identity_unitary_gives_computational_basis() {
        let c = measurement_from_unitary(&CMat::identity(2, 2)).unwrap();
        assert!(c.valid());
        assert_eq!(c.operators[0][(0, 0)], re(1.0));
        assert_eq!(c.operators[1][(1, 1)], re(1.0));
    }

    #[test]
    fn hadamard_gives_plus_minus() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = CMat::from_row_slice(2, 2, &[re(h), re(h), re(h), re(-h)]);
        let c = measurement_from_unitary(&u).unwrap();
        for p in &c.operators {
            assert!((p[(0, 0)].re - 0.5).abs() < 1e-15);
        }
        assert!((c.operators[0][(0, 1)].re - 0.5).abs() < 1e-15);
        assert!((c.operators[1][(0, 1)].re + 0.5).abs() < 1e-15);
    }

    #[test]
    fn haar_unitary_measurement_is_complete() {
        let mut rng = random::seeded_rng(3);
        let u = haar_unitary(3, &mut rng);
        let c = measurement_from_unitary(&u).unwrap();
        assert!(c.valid());
        let sum = c.operators.iter().fold(CMat::zeros(3, 3), |acc, p| acc + p);
        assert!(crate::linalg::max_abs_diff(&sum, &CMat::identity(3, 3)) < 1e-10);
    }

    #[test]
    fn non_unitary_rejected() {
        let u = CMat::identity(2, 2) * re(2.0);
        assert!(matches!(
            measurement_from_unitary(&u),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn fast_objective_matches_generic_dephasing() {
        let s = random::random_state(3, 2, 6, 17).unwrap();
        let mut rng = random::seeded_rng(5);
        for _ in 0..5 {
            let u = haar_unitary(3, &mut rng);
            let generic = measurement_value(&s, &measurement_from_unitary(&u).unwrap()).unwrap();
            let eval = Evaluator::new(&s);
            assert!((eval.direct(&u) - generic).abs() < 1e-13);
            assert!((eval.optimization_form(&u) - generic).abs() < 1e-12);
        }
    }

    #[test]
    fn config_validation() {
        for cfg in [
            OracleConfig {
                restarts: 0,
                ..OracleConfig::default()
            },
            OracleConfig {
                step_decay: 1.0,
                ..OracleConfig::default()
            },
            OracleConfig {
                initial_step: f64::NAN,
                ..OracleConfig::default()
            },
        ] {
            assert!(cfg.validate().is_err());
        }
    }

    #[test]
    fn bell_gd() {
        let r = oracle_gd(&states::bell_state(), &quick(1)).unwrap();
        assert!((r.best_value - 0.5).abs() < 1e-6);
        assert!(r.best_measurement.valid());
    }

    #[test]
    fn maximally_mixed_gd() {
        let r = oracle_gd(&states::maximally_mixed(2, 2).unwrap(), &quick(2)).unwrap();
        assert!(r.best_value.abs() < 1e-12);
    }

    #[test]
    fn random_qubit_state_matches_bound() {
        let s = random::random_state(2, 3, 6, 44).unwrap();
        let r = oracle_gd(&s, &OracleConfig::with_seed(7)).unwrap();
        let bound = gd_lower_bound(&decompose(&s));
        assert!((r.best_value - bound).abs() < 1e-4);
    }

    #[test]
    fn min_for_bell_and_werner() {
        let r = oracle_min(&states::bell_state(), &quick(3)).unwrap();
        assert!((r.best_value - 0.5).abs() < 1e-6);
        let r = oracle_min(&states::werner(2, -1.0).unwrap(), &quick(4)).unwrap();
        assert!((r.best_value - 0.5).abs() < 1e-6);
        assert!(r.constraint_residual.unwrap() <= 1e-8);
    }

    #[test]
    fn min_for_product_state() {
        let r = oracle_min(&states::product_zero(2, 2).unwrap(), &quick(5)).unwrap();
        assert_eq!(r.per_restart_values.len(), 1);
        assert!(r.best_value.abs() < 1e-15);
    }

    #[test]
    fn degenerate_block_detection() {
        let blocks = degenerate_blocks(&[0.5, 0.25, 0.25, 0.0], 1e-8);
        assert_eq!(blocks, vec![0..1, 1..3, 3..4]);
        assert_eq!(all_pairs(&blocks), vec![(1, 2)]);
    }

    #[test]
    fn best_value_monotone_in_restarts() {
        let s = random::random_state(3, 2, 6, 9).unwrap();
        let mut last = f64::INFINITY;
        for restarts in [1, 2, 4, 8] {
            let cfg = OracleConfig {
                restarts,
                iterations: 100,
                seed: 13,
                ..OracleConfig::default()
            };
            let v = oracle_gd(&s, &cfg).unwrap().best_value;
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let s = random::random_state(3, 3, 9, 1).unwrap();
        let a = oracle_gd(&s, &quick(99)).unwrap();
        let b = oracle_gd(&s, &quick(99)).unwrap();
        assert_eq!(a.per_restart_values, b.per_restart_values);
    }

    #[test]
    fn identity_verified_on_visited_points() {
        let s = random::random_state(3, 2, 3, 2).unwrap();
        let cfg = OracleConfig {
            verify_identity: true,
            ..quick(6)
        };
        let r = oracle_gd(&s, &cfg).unwrap();
        assert!(r.identity_residual.unwrap() < 1e-9);
    }
}
