//! Exact computer algebra for abelian 3-cocycles, modularization of pointed
//! braided categories, root-lattice data of small quantum groups, and
//! brute-force verification of the resulting quasi-Hopf algebras.

pub mod abgroup;
pub mod cyclo;
pub mod modularize;
pub mod nichols;
pub mod qform;
pub mod quasiqg;
pub mod rootlat;
pub mod zlin;

pub use abgroup::{Bihomomorphism, FiniteAbelianGroup, QuotientWithSection, Subgroup};
pub use cyclo::{cyclotomic_poly, CycloNum, RootOfUnity};
pub use qform::{AbelianThreeCocycle, QuadraticForm, RibbonDatum, TwoCochain};

/// Error type shared by the whole toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("dimension bound exceeded: {0}")]
    Bound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Dimension bound for tensor powers in the symmetrizer, overridable via the
/// QUASIMOD_MAX_DIM environment variable.
pub fn max_tensor_dim() -> usize {
    std::env::var("QUASIMOD_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(4096)
}

/// Dimension bound for assembled algebras.
pub fn max_algebra_dim() -> usize {
    std::env::var("QUASIMOD_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(64)
}
