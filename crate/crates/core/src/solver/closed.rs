use crate::error::{Error, Result};
use crate::matcore::{check_same_dim, geometric_mean, pd_congruence, PdMatrix};
use crate::wordlang::Exponent;

/// Unique PD solution of `A^q = P`, namely `P^{1/q}`.
pub fn solve_power(q: Exponent, p: &PdMatrix) -> Result<PdMatrix> {
    if q.is_zero() {
        return Err(Error::InvalidArgument("exponent q must be nonzero".into()));
    }
    Ok(p.pow(1.0 / q.to_f64()))
}

/// Unique PD solution of `A B A = P`:
/// `A = B^{-1/2} (B^{1/2} P B^{1/2})^{1/2} B^{-1/2}`.
pub fn solve_aba(b: &PdMatrix, p: &PdMatrix) -> Result<PdMatrix> {
    check_same_dim(b.dim(), p.dim())?;
    let b_half = b.sqrt();
    let inner = pd_congruence(p, b_half.as_matrix())?;
    pd_congruence(&inner.sqrt(), b.pow(-0.5).as_matrix())
}

/// The same solution through the geometric mean, `A = B^{-1} # P`.
pub fn solve_aba_geometric(b: &PdMatrix, p: &PdMatrix) -> Result<PdMatrix> {
    geometric_mean(&b.inverse(), p)
}
