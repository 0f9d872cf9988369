use std::collections::HashMap;

use super::word::{Factor, Letter, WordExpr};
use crate::error::{Error, Result};
use crate::matcore::{check_same_dim, relative_difference, CMat, HermitianMatrix, PdMatrix};

/// Left-to-right product of the matrices `value(f)` for the factors `f` of
/// `w`, with each distinct factor evaluated once.
fn product_with(
    w: &WordExpr,
    n: usize,
    mut value: impl FnMut(&Factor) -> CMat,
) -> CMat {
    let mut cache: HashMap<Factor, CMat> = HashMap::new();
    let mut acc = CMat::identity(n, n);
    for f in w.factors() {
        let m = cache.entry(*f).or_insert_with(|| value(f));
        acc *= &*m;
    }
    acc
}

/// Evaluates `w(A, B)` with primary powers. Non-symmetric words give general
/// (non-Hermitian) matrices.
pub fn evaluate(w: &WordExpr, a: &PdMatrix, b: &PdMatrix) -> Result<CMat> {
    check_same_dim(a.dim(), b.dim())?;
    Ok(product_with(w, a.dim(), |f| {
        let base = match f.letter {
            Letter::A => a,
            Letter::B => b,
        };
        base.pow(f.exp.to_f64()).as_matrix().clone()
    }))
}

/// Evaluates a symmetric word and validates that the value is PD.
pub fn evaluate_symmetric(w: &WordExpr, a: &PdMatrix, b: &PdMatrix) -> Result<PdMatrix> {
    if !w.is_symmetric() {
        return Err(Error::InvalidArgument(format!("word `{w}` is not symmetric")));
    }
    PdMatrix::new(HermitianMatrix::hermitize(&evaluate(w, a, b)?))
}

/// Checks `w(A, B)^{-1} = w(A^{-1}, B^{-1})` to `1e-9` relative, for
/// symmetric `w`.
pub fn evaluate_inverse_identity_check(w: &WordExpr, a: &PdMatrix, b: &PdMatrix) -> Result<bool> {
    if !w.is_symmetric() {
        return Err(Error::InvalidArgument(format!("word `{w}` is not symmetric")));
    }
    let value = evaluate_symmetric(w, a, b)?;
    let of_inverses = evaluate(w, &a.inverse(), &b.inverse())?;
    Ok(relative_difference(&of_inverses, value.inverse().as_matrix()) <= 1e-9)
}
