//! Numerical tolerances shared by every module.

/// All thresholds in one place; `Tolerances::default()` carries the values
/// the library is tested against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max |rho - rho^dag| entry for a density matrix.
    pub hermitian: f64,
    /// |Tr rho - 1|.
    pub trace: f64,
    /// Smallest admissible eigenvalue of a density matrix is `-psd`.
    pub psd: f64,
    /// Max |A - A^dag| entry accepted by the eigensolver.
    pub eig_hermitian: f64,
    /// Jacobi stops once the off-diagonal Frobenius norm falls below
    /// `jacobi_threshold * ||A||_F`.
    pub jacobi_threshold: f64,
    pub jacobi_max_sweeps: usize,
    /// Norm tolerance for pure-state amplitude vectors.
    pub normalization: f64,
    /// Smallest eigenvalue a measurement operator may have.
    pub measurement_psd: f64,
    /// Frobenius bound on P^2 - P for a measurement operator.
    pub idempotent: f64,
    /// Trace and completeness of measurement operators.
    pub measurement_trace: f64,
    /// ||U^dag U - I|| accepted when building a measurement from a unitary.
    pub unitary: f64,
    /// Two eigenvalues of rho_A closer than this are treated as degenerate.
    pub degeneracy_gap: f64,
    /// Used for "x = 0" and "all eigenvalues equal" decisions.
    pub equality: f64,
    /// Agreement required between a witness measurement's value and the bound.
    pub saturation: f64,
    /// Slack on the monogamy deficit.
    pub monogamy: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-10,
            trace: 1e-10,
            psd: 1e-10,
            eig_hermitian: 1e-8,
            jacobi_threshold: 1e-13,
            jacobi_max_sweeps: 100,
            normalization: 1e-12,
            measurement_psd: 1e-9,
            idempotent: 1e-8,
            measurement_trace: 1e-10,
            unitary: 1e-9,
            degeneracy_gap: 1e-8,
            equality: 1e-10,
            saturation: 1e-9,
            monogamy: 1e-9,
        }
    }
}
