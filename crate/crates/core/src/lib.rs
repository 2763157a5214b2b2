//! Geometric discord and measurement-induced nonlocality of bipartite
//! quantum states.
//!
//! - [`states`]: validated density matrices, partial traces, named families,
//!   seeded sampling and a Jacobi eigensolver.
//! - [`bloch`]: Gell-Mann generators and the `(x, y, T)` decomposition.
//! - [`bounds`]: the eigenvalue lower bound on geometric discord, the upper
//!   bound on MIN, the relaxed optimal measurement and its certification.
//! - [`oracle`]: brute-force search over projective measurements.
//! - [`monogamy`]: monogamy of discord for N-qubit pure states.
//! - [`cli`]: the `qdiscord` command-line front end.

pub mod bloch;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod monogamy;
pub mod oracle;
pub mod states;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
