//! Generalized Gell-Mann generators and the Bloch decomposition
//!
//! ```text
//! rho = 1/(mn) [ I⊗I + Σ x_i λ_i⊗I + Σ y_j I⊗λ_j + Σ T_ij λ_i⊗λ_j ]
//! ```
//!
//! Generators are ordered: symmetric off-diagonal `(j,k)` pairs in
//! lexicographic order, then the antisymmetric ones in the same order, then
//! the `d-1` diagonal generators by increasing rank. All satisfy
//! `Tr(λ_i λ_j) = 2 δ_ij`.

use crate::error::{Error, Result};
use crate::linalg::{re, trace_product_re, CMat, RMat, RVec, I};
use crate::states::BipartiteState;

#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    d: usize,
    generators: Vec<CMat>,
}

impl GeneratorBasis {
    pub fn new(d: usize) -> Result<Self> {
        gell_mann_basis(d)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    pub fn get(&self, i: usize) -> &CMat {
        &self.generators[i]
    }

    /// Coefficients `Tr(H λ_i) / 2` of a Hermitian matrix.
    pub fn coefficients(&self, h: &CMat) -> RVec {
        RVec::from_iterator(
            self.len(),
            self.generators.iter().map(|g| 0.5 * trace_product_re(h, g)),
        )
    }

    /// Σ c_i λ_i.
    pub fn combine(&self, coeffs: &[f64]) -> CMat {
        let mut out = CMat::zeros(self.d, self.d);
        for (g, &c) in self.generators.iter().zip(coeffs) {
            if c != 0.0 {
                out += g * re(c);
            }
        }
        out
    }
}

pub fn gell_mann_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::BadParameter(format!(
            "generator dimension must be >= 2, got {d}"
        )));
    }
    let mut generators = Vec::with_capacity(d * d - 1);
    for j in 0..d {
        for k in (j + 1)..d {
            let mut g = CMat::zeros(d, d);
            g[(j, k)] = re(1.0);
            g[(k, j)] = re(1.0);
            generators.push(g);
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut g = CMat::zeros(d, d);
            g[(j, k)] = -I;
            g[(k, j)] = I;
            generators.push(g);
        }
    }
    for l in 1..d {
        let lf = l as f64;
        let scale = (2.0 / (lf * (lf + 1.0))).sqrt();
        let mut g = CMat::zeros(d, d);
        for j in 0..l {
            g[(j, j)] = re(scale);
        }
        g[(l, l)] = re(-lf * scale);
        generators.push(g);
    }
    Ok(GeneratorBasis { d, generators })
}

/// Local Bloch vectors and correlation matrix of a bipartite state.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochForm {
    pub m: usize,
    pub n: usize,
    /// x, length m^2 - 1.
    pub local_a: RVec,
    /// y, length n^2 - 1.
    pub local_b: RVec,
    /// T, (m^2 - 1) x (n^2 - 1).
    pub correlation: RMat,
}

impl BlochForm {
    pub fn new(
        m: usize,
        n: usize,
        local_a: RVec,
        local_b: RVec,
        correlation: RMat,
    ) -> Result<Self> {
        let (da, db) = (m * m - 1, n * n - 1);
        for (expected, actual) in [
            (da, local_a.len()),
            (db, local_b.len()),
            (da, correlation.nrows()),
            (db, correlation.ncols()),
        ] {
            if expected != actual {
                return Err(Error::DimensionMismatch { expected, actual });
            }
        }
        Ok(Self {
            m,
            n,
            local_a,
            local_b,
            correlation,
        })
    }

    /// Tr(rho^2) from the Bloch data alone.
    pub fn purity(&self) -> f64 {
        let (m, n) = (self.m as f64, self.n as f64);
        (1.0 + (2.0 / m) * self.local_a.norm_squared()
            + (2.0 / n) * self.local_b.norm_squared()
            + (4.0 / (m * n)) * self.correlation.norm_squared())
            / (m * n)
    }
}

pub fn decompose(s: &BipartiteState) -> BlochForm {
    let (m, n) = (s.m(), s.n());
    let basis_a = gell_mann_basis(m).expect("m >= 2");
    let basis_b = gell_mann_basis(n).expect("n >= 2");
    let rho = s.rho();
    let rho_a = s.partial_trace(crate::states::Side::A);
    let rho_b = s.partial_trace(crate::states::Side::B);

    let mf = m as f64;
    let nf = n as f64;
    let local_a = basis_a.coefficients(&rho_a) * mf;
    let local_b = basis_b.coefficients(&rho_b) * nf;

    let mut correlation = RMat::zeros(basis_a.len(), basis_b.len());
    for (i, la) in basis_a.generators().iter().enumerate() {
        // contract subsystem A with λ_i: P[c, d] = Σ_ab λ_i[b, a] ρ[(a,c), (b,d)]
        let p = CMat::from_fn(n, n, |c, d| {
            let mut acc = num_complex::Complex64::new(0.0, 0.0);
            for a in 0..m {
                for b in 0..m {
                    let l = la[(b, a)];
                    if l.re != 0.0 || l.im != 0.0 {
                        acc += l * rho[(a * n + c, b * n + d)];
                    }
                }
            }
            acc
        });
        for (j, lb) in basis_b.generators().iter().enumerate() {
            correlation[(i, j)] = mf * nf / 4.0 * trace_product_re(&p, lb);
        }
    }
    BlochForm {
        m,
        n,
        local_a,
        local_b,
        correlation,
    }
}

/// Inverse of [`decompose`]; the result is Hermitian with unit trace but is
/// only positive if the Bloch data describes a state.
pub fn reconstruct(b: &BlochForm) -> Result<CMat> {
    let b = BlochForm::new(
        b.m,
        b.n,
        b.local_a.clone(),
        b.local_b.clone(),
        b.correlation.clone(),
    )?;
    let (m, n) = (b.m, b.n);
    let basis_a = gell_mann_basis(m)?;
    let basis_b = gell_mann_basis(n)?;
    let id_a = CMat::identity(m, m);
    let id_b = CMat::identity(n, n);

    let mut rho = CMat::identity(m * n, m * n);
    rho += basis_a.combine(b.local_a.as_slice()).kronecker(&id_b);
    rho += id_a.kronecker(&basis_b.combine(b.local_b.as_slice()));
    for (i, la) in basis_a.generators().iter().enumerate() {
        let row: Vec<f64> = b.correlation.row(i).iter().copied().collect();
        if row.iter().any(|&t| t != 0.0) {
            rho += la.kronecker(&basis_b.combine(&row));
        }
    }
    Ok(rho / re((m * n) as f64))
}

/// Coefficient matrix `c_ij = Tr(rho X_i ⊗ Y_j)` in the orthonormal operator
/// bases `X_1 = I/√m, X_{i+1} = λ_i/√2` (and likewise `Y`), built from the
/// Bloch data:
///
/// ```text
/// C = 1/√(mn) [ 1          √(2/n) yᵗ     ]
///             [ √(2/m) x   2/√(mn) T     ]
/// ```
pub fn c_matrix(b: &BlochForm) -> RMat {
    let (m, n) = (b.m as f64, b.n as f64);
    let da = b.m * b.m;
    let db = b.n * b.n;
    let pre = 1.0 / (m * n).sqrt();
    let mut c = RMat::zeros(da, db);
    c[(0, 0)] = pre;
    let ys = pre * (2.0 / n).sqrt();
    for j in 1..db {
        c[(0, j)] = ys * b.local_b[j - 1];
    }
    let xs = pre * (2.0 / m).sqrt();
    let ts = pre * 2.0 / (m * n).sqrt();
    for i in 1..da {
        c[(i, 0)] = xs * b.local_a[i - 1];
        for j in 1..db {
            c[(i, j)] = ts * b.correlation[(i - 1, j - 1)];
        }
    }
    c
}

/// Orthonormal operator basis `X_1 = I/√d, X_{i+1} = λ_i/√2`.
pub fn orthonormal_operator_basis(d: usize) -> Result<Vec<CMat>> {
    let basis = gell_mann_basis(d)?;
    let mut out = Vec::with_capacity(d * d);
    out.push(CMat::identity(d, d) / re((d as f64).sqrt()));
    let s = re(std::f64::consts::FRAC_1_SQRT_2);
    out.extend(basis.generators().iter().map(|g| g * s));
    Ok(out)
}
