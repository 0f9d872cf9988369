use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix must have at least one row")]
    EmptyMatrix,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e}, threshold {threshold:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular or too ill-conditioned (condition estimate {condition:.3e})")]
    Singular { condition: f64 },

    #[error("Hermitian eigensolver did not converge for a {n}x{n} matrix")]
    EigenNoConvergence { n: usize },

    #[error("non-finite value in matrix")]
    NonFinite,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("PDM format error at line {line}: {message}")]
    PdmFormat { line: usize, message: String },

    #[error("equation word must be symmetric and A-positive: {0}")]
    NotSymmetricWordEquation(String),

    #[error("word has non-integer exponent {exponent} on letter {letter}; {hint}")]
    NonIntegerExponent {
        letter: char,
        exponent: String,
        hint: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver did not converge after {starts} start(s), best relative residual {best_residual:.3e}")]
    NotConverged { starts: usize, best_residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
