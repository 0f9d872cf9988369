//! The map `f_k(X) = (P # S(X + I/k, B)^{-1}) / g_k(X)` on
//! `M = {X PSD : ‖X‖ ≤ 1}`, for an equation written as `A S(A, B) A = P`.
//!
//! `g_k(X) = ‖P‖ ‖P^{-1}‖^{1/2} ‖B‖^{S_{-B}/2} ‖B^{-1}‖^{S_B/2} ‖(X + I/k)^{-1}‖^{S_A/2}`
//! with the exponent sums taken over the inner word `S`. Only the map is
//! provided; iterating it is not a solver.

use crate::error::{Error, Result};
use crate::matcore::{geometric_mean, CMat, HermitianMatrix, PdMatrix};
use crate::reducer::Equation;
use crate::wordlang::{evaluate_symmetric, Factor, WordExpr};

const DOMAIN_TOL: f64 = 1e-12;

/// Inner word `S` of `A S A`; fails unless the outer exponents allow
/// peeling one `A` off each end and leave an A-positive word.
pub fn inner_word(word: &WordExpr) -> Result<WordExpr> {
    let inner = WordExpr::from_factors(
        std::iter::once(Factor::a(-1))
            .chain(word.factors().iter().copied())
            .chain(std::iter::once(Factor::a(-1))),
    );
    if !inner.shape().a_positive || !inner.is_symmetric() {
        return Err(Error::InvalidArgument(format!(
            "`{word}` is not of the form A S(A,B) A with A-positive S"
        )));
    }
    Ok(inner)
}

fn shifted(x: &HermitianMatrix, k: u32) -> Result<PdMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let ev = x.eigenvalues()?;
    let (min, max) = (ev[0], ev[ev.len() - 1]);
    if min < -DOMAIN_TOL || max > 1.0 + DOMAIN_TOL {
        return Err(Error::InvalidArgument(format!(
            "X must be PSD with spectral norm <= 1 (eigenvalues in [{min:.3e}, {max:.3e}])"
        )));
    }
    let n = x.dim();
    let shift = CMat::identity(n, n) / num_complex::Complex64::new(k as f64, 0.0);
    PdMatrix::from_matrix(x.as_matrix() + shift)
}

/// `g_k(X)`.
pub fn fixed_point_scale(x: &HermitianMatrix, eq: &Equation, k: u32) -> Result<f64> {
    let inner = inner_word(&eq.word)?;
    let y = shifted(x, k)?;
    Ok(scale_for(&inner, &y, eq))
}

fn scale_for(inner: &WordExpr, y: &PdMatrix, eq: &Equation) -> f64 {
    let shape = inner.shape();
    let p_norm = eq.p.spectral_norm();
    let p_inv_norm = 1.0 / eq.p.min_eigenvalue();
    let b_norm = eq.b.spectral_norm();
    let b_inv_norm = 1.0 / eq.b.min_eigenvalue();
    let y_inv_norm = 1.0 / y.min_eigenvalue();
    p_norm
        * p_inv_norm.sqrt()
        * b_norm.powf(shape.s_b_neg.to_f64() / 2.0)
        * b_inv_norm.powf(shape.s_b_pos.to_f64() / 2.0)
        * y_inv_norm.powf(shape.s_a.to_f64() / 2.0)
}

/// `f_k(X)`; PD with `‖f_k(X)‖ ≤ 1`.
pub fn fixed_point_map(x: &HermitianMatrix, eq: &Equation, k: u32) -> Result<PdMatrix> {
    let inner = inner_word(&eq.word)?;
    let y = shifted(x, k)?;
    let s_inv = evaluate_symmetric(&inner, &y, &eq.b)?.inverse();
    let mean = geometric_mean(&eq.p, &s_inv)?;
    Ok(mean.scaled(1.0 / scale_for(&inner, &y, eq)))
}
