//! Generalized words in two positive definite letters `A` and `B`,
//! and solvers for symmetric word equations `S(A, B) = P`.

pub mod error;
pub mod explorer;
pub mod genword;
pub mod matcore;
pub mod reducer;
pub mod solver;
pub mod wordlang;

pub use error::{Error, Result};
pub use matcore::{CMat, HermitianMatrix, PdMatrix};
