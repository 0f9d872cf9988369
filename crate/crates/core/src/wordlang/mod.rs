//! Generalized words in two letters: syntax, normalization, structure,
//! and evaluation on PD matrices.

mod eval;
mod exponent;
mod parse;
mod power;
mod word;

pub use eval::{evaluate, evaluate_inverse_identity_check, evaluate_symmetric};
pub use exponent::Exponent;
pub use parse::parse_word;
pub use power::detect_power;
pub use word::{normalize, shape, Factor, Letter, WordExpr, WordShape};
