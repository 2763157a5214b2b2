use super::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::{re, CMat, CVec};

/// Swap operator F = Σ_kl |k><l| ⊗ |l><k| on C^m ⊗ C^m.
pub fn swap_operator(m: usize) -> CMat {
    let mut f = CMat::zeros(m * m, m * m);
    for k in 0..m {
        for l in 0..m {
            f[(k * m + l, l * m + k)] = re(1.0);
        }
    }
    f
}

/// (1/√m) Σ_k |kk>.
pub fn maximally_entangled(m: usize) -> CVec {
    let mut psi = CVec::zeros(m * m);
    let amp = re(1.0 / (m as f64).sqrt());
    for k in 0..m {
        psi[k * m + k] = amp;
    }
    psi
}

fn check_dim(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::BadParameter(format!(
            "dimension must be >= 2, got {m}"
        )));
    }
    Ok(())
}

/// Werner state ((m-z) I + (mz-1) F) / (m^3 - m), z = Tr(rho F) in [-1, 1].
pub fn werner(m: usize, z: f64) -> Result<BipartiteState> {
    check_dim(m)?;
    if !(-1.0..=1.0).contains(&z) {
        return Err(Error::BadParameter(format!(
            "Werner parameter z={z} outside [-1, 1]"
        )));
    }
    let mf = m as f64;
    let denom = mf * mf * mf - mf;
    let rho = CMat::identity(m * m, m * m) * re((mf - z) / denom)
        + swap_operator(m) * re((mf * z - 1.0) / denom);
    BipartiteState::new(rho, m, m)
}

/// Isotropic state ((1-z) I + (m^2 z - 1) |Ψ><Ψ|) / (m^2 - 1), z in [0, 1].
pub fn isotropic(m: usize, z: f64) -> Result<BipartiteState> {
    check_dim(m)?;
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::BadParameter(format!(
            "isotropic parameter z={z} outside [0, 1]"
        )));
    }
    let mf = m as f64;
    let denom = mf * mf - 1.0;
    let psi = maximally_entangled(m);
    let rho = CMat::identity(m * m, m * m) * re((1.0 - z) / denom)
        + (&psi * psi.adjoint()) * re((mf * mf * z - 1.0) / denom);
    BipartiteState::new(rho, m, m)
}

/// |Φ+><Φ+| on two qubits.
pub fn bell_state() -> BipartiteState {
    BipartiteState::from_pure(&maximally_entangled(2), 2, 2).expect("Bell state is valid")
}

pub fn maximally_mixed(m: usize, n: usize) -> Result<BipartiteState> {
    let d = m * n;
    BipartiteState::new(CMat::identity(d, d) / re(d as f64), m, n)
}

/// |00><00|.
pub fn product_zero(m: usize, n: usize) -> Result<BipartiteState> {
    let mut rho = CMat::zeros(m * n, m * n);
    rho[(0, 0)] = re(1.0);
    BipartiteState::new(rho, m, n)
}

/// (|00><00| + |11><11|) / 2 on two qubits.
pub fn classical_correlated() -> BipartiteState {
    let mut rho = CMat::zeros(4, 4);
    rho[(0, 0)] = re(0.5);
    rho[(3, 3)] = re(0.5);
    BipartiteState::new(rho, 2, 2).expect("classical state is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, trace_product_re};

    #[test]
    fn werner_half_is_maximally_mixed() {
        let s = werner(2, 0.5).unwrap();
        assert!(max_abs_diff(s.rho(), &(CMat::identity(4, 4) / re(4.0))) < 1e-15);
    }

    #[test]
    fn werner_parameter_is_swap_expectation() {
        for &(m, z) in &[(2, -1.0), (3, 1.0), (4, 0.3)] {
            let s = werner(m, z).unwrap();
            let tz = trace_product_re(s.rho(), &swap_operator(m));
            assert!((tz - z).abs() < 1e-12);
        }
    }

    #[test]
    fn isotropic_one_is_bell() {
        let s = isotropic(2, 1.0).unwrap();
        assert!(max_abs_diff(s.rho(), bell_state().rho()) < 1e-15);
    }

    #[test]
    fn isotropic_at_inverse_square_is_mixed() {
        for m in 2..=4 {
            let mf = m as f64;
            let s = isotropic(m, 1.0 / (mf * mf)).unwrap();
            let id = CMat::identity(m * m, m * m) / re(mf * mf);
            assert!(max_abs_diff(s.rho(), &id) < 1e-15);
        }
    }

    #[test]
    fn out_of_range_parameters() {
        assert!(matches!(werner(2, 1.5), Err(Error::BadParameter(_))));
        assert!(matches!(isotropic(3, -0.1), Err(Error::BadParameter(_))));
        assert!(matches!(werner(1, 0.0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn families_valid_on_grid() {
        for m in 2..=5 {
            for i in 0..21 {
                let t = i as f64 / 20.0;
                werner(m, -1.0 + 2.0 * t).unwrap();
                isotropic(m, t).unwrap();
            }
        }
    }
}
