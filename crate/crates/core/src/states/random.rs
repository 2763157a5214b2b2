//! Seeded sampling of states and unitaries.
//!
//! The generator is ChaCha8 (`rand_chacha`), whose output stream is fixed for
//! a given seed across releases. Gaussians come from the Box-Muller transform
//! implemented below, so every sampled matrix is reproducible bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BipartiteState;
use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};
use num_complex::Complex64;

pub type StateRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> StateRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// A pair of independent standard normals.
pub fn box_muller<R: Rng + ?Sized>(rng: &mut R) -> (f64, f64) {
    // gen() is in [0, 1); shift so ln never sees zero
    let u1 = 1.0 - rng.gen::<f64>();
    let u2 = rng.gen::<f64>();
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

pub fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    box_muller(rng).0
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let (a, b) = box_muller(rng);
    Complex64::new(a, b)
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    // column-major fill keeps the draw order independent of nalgebra's layout
    let mut g = CMat::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            g[(i, j)] = complex_normal(rng);
        }
    }
    g
}

/// Haar-distributed unitary via modified Gram-Schmidt on a Ginibre matrix.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let mut q = ginibre(d, d, rng);
    for j in 0..d {
        for k in 0..j {
            let proj: Complex64 = (0..d).map(|i| q[(i, k)].conj() * q[(i, j)]).sum();
            for i in 0..d {
                let qik = q[(i, k)];
                q[(i, j)] -= proj * qik;
            }
        }
        let norm = (0..d).map(|i| q[(i, j)].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..d {
            q[(i, j)] /= norm;
        }
    }
    q
}

/// Uniformly random unit vector of dimension `dim`.
pub fn random_pure_with<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVec {
    let mut v = CVec::from_iterator(dim, (0..dim).map(|_| complex_normal(rng)));
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}

pub fn random_pure(dim: usize, seed: u64) -> CVec {
    random_pure_with(dim, &mut seeded_rng(seed))
}

/// Mixed state G G^dag / Tr(G G^dag) with G an (mn) x rank Ginibre matrix.
pub fn random_state_with<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rank: usize,
    rng: &mut R,
) -> Result<BipartiteState> {
    let d = m * n;
    if m < 2 || n < 2 {
        return Err(Error::BadParameter(format!(
            "subsystem dimensions must be >= 2, got {m}x{n}"
        )));
    }
    if rank == 0 || rank > d {
        return Err(Error::BadParameter(format!("rank {rank} outside 1..={d}")));
    }
    let g = ginibre(d, rank, rng);
    let mut rho = &g * g.adjoint();
    let tr: f64 = (0..d).map(|i| rho[(i, i)].re).sum();
    rho /= Complex64::new(tr, 0.0);
    // remove rounding asymmetry so validation sees an exactly Hermitian matrix
    let rho = (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0);
    BipartiteState::new(rho, m, n)
}

pub fn random_state(m: usize, n: usize, rank: usize, seed: u64) -> Result<BipartiteState> {
    random_state_with(m, n, rank, &mut seeded_rng(seed))
}

/// Random pure bipartite state as a density matrix.
pub fn random_pure_state_with<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<BipartiteState> {
    let psi = random_pure_with(m * n, rng);
    BipartiteState::from_pure(&psi, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    #[test]
    fn random_state_is_deterministic() {
        let a = random_state(2, 2, 4, 7).unwrap();
        let b = random_state(2, 2, 4, 7).unwrap();
        assert_eq!(a.rho(), b.rho());
    }

    #[test]
    fn rank_one_is_pure() {
        let s = random_state(2, 3, 1, 1).unwrap();
        assert!((s.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn full_rank_three_by_three_validates() {
        let s = random_state(3, 3, 9, 2).unwrap();
        assert_eq!(s.dim(), 9);
    }

    #[test]
    fn bad_rank_rejected() {
        assert!(matches!(
            random_state(2, 2, 0, 1),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            random_state(2, 2, 5, 1),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = seeded_rng(3);
        let u = haar_unitary(4, &mut rng);
        assert!(max_abs_diff(&(u.adjoint() * &u), &CMat::identity(4, 4)) < 1e-12);
    }

    #[test]
    fn streams_differ() {
        let a = stream_rng(5, 0).gen::<u64>();
        let b = stream_rng(5, 1).gen::<u64>();
        assert_ne!(a, b);
    }

    #[test]
    fn box_muller_moments() {
        let mut rng = seeded_rng(11);
        let n = 20000;
        let xs: Vec<f64> = (0..n).map(|_| standard_normal(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.03);
        assert!((var - 1.0).abs() < 0.05);
    }
}
