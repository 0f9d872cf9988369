//! Dense Hermitian and positive definite matrix primitives.
//!
//! Every fractional power goes through the Hermitian eigendecomposition:
//! `(U D U*)^p = U D^p U*`.

mod hermitian;
mod json;
mod ops;
pub mod pdm;
pub mod random;

pub use hermitian::{eig_hermitian, CMat, HermitianMatrix, PdMatrix, SpectralDecomposition};
pub(crate) use hermitian::{check_same_dim, check_square};
pub use json::MatrixJson;
pub use ops::{
    condition_estimate, congruence, geometric_mean, matrix_power, max_imaginary, pd_congruence,
    relative_difference, spectral_norm, MAX_CONDITION,
};
pub(crate) use ops::check_invertible;
pub use random::{random_pd, Field};
