//! Generalized symmetric words `A^{p_1} C_1 ⋯ C_1^* A^{p_1}` with invertible
//! coefficient matrices, and complete invertibility of those coefficients.

mod fov;
mod solve;
mod word;

pub use fov::{is_completely_invertible, rotated_margin, FovCertificate, BOUNDARY_RTOL, GRID_POINTS};
pub use solve::{evaluate_genword, solve_genword, CoefficientCertificate, GenSolveReport};
pub use word::{CoeffRef, GenFactor, GenSymWord};
