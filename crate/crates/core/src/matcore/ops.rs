
use super::hermitian::{check_same_dim, check_square, CMat, HermitianMatrix, PdMatrix};
use crate::error::{Error, Result};

/// Largest condition estimate accepted for matrices that must be invertible.
pub const MAX_CONDITION: f64 = 1e14;

/// Primary power `(U D U*)^p = U D^p U*`. `p = 0` yields the identity.
pub fn matrix_power(a: &PdMatrix, p: f64) -> PdMatrix {
    if p == 0.0 {
        return PdMatrix::identity(a.dim());
    }
    if p == 1.0 {
        return a.clone();
    }
    let s = a.spectral();
    let powered: Vec<f64> = s.eigenvalues.iter().map(|&x| x.powf(p)).collect();
    PdMatrix::from_eigensystem(&s.unitary, &powered)
}

impl PdMatrix {
    pub fn pow(&self, p: f64) -> PdMatrix {
        matrix_power(self, p)
    }

    pub fn sqrt(&self) -> PdMatrix {
        matrix_power(self, 0.5)
    }

    pub fn inverse(&self) -> PdMatrix {
        matrix_power(self, -1.0)
    }

    /// `c·A` for `c > 0`.
    pub fn scaled(&self, c: f64) -> PdMatrix {
        assert!(c > 0.0, "scale must be positive");
        let s = self.spectral();
        let ev: Vec<f64> = s.eigenvalues.iter().map(|&x| c * x).collect();
        PdMatrix::from_eigensystem(&s.unitary, &ev)
    }
}

/// Spectral norm of a general square matrix: its largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().copied().fold(0.0, f64::max)
}

/// `σ_max / σ_min`; infinite for exactly singular input.
pub fn condition_estimate(m: &CMat) -> f64 {
    let sv = m.singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

pub(crate) fn check_invertible(m: &CMat) -> Result<()> {
    check_square(m)?;
    let condition = condition_estimate(m);
    if !(condition <= MAX_CONDITION) {
        return Err(Error::Singular { condition });
    }
    Ok(())
}

/// Congruence transform `Z* X Z`.
pub fn congruence(x: &HermitianMatrix, z: &CMat) -> Result<HermitianMatrix> {
    check_square(z)?;
    check_same_dim(x.dim(), z.nrows())?;
    check_invertible(z)?;
    let y = z.adjoint() * x.as_matrix() * z;
    Ok(HermitianMatrix::hermitize(&y))
}

/// Congruence that keeps the PD evidence: `Z* X Z` for PD `X`.
pub fn pd_congruence(x: &PdMatrix, z: &CMat) -> Result<PdMatrix> {
    PdMatrix::new(congruence(x.as_hermitian(), z)?)
}

/// Geometric mean `C # D = C^{1/2} (C^{-1/2} D C^{-1/2})^{1/2} C^{1/2}`.
pub fn geometric_mean(c: &PdMatrix, d: &PdMatrix) -> Result<PdMatrix> {
    check_same_dim(c.dim(), d.dim())?;
    let c_half = c.sqrt();
    let c_neg_half = c.pow(-0.5);
    // C^{-1/2} is Hermitian, so Z* = Z.
    let inner = PdMatrix::new(HermitianMatrix::hermitize(
        &(c_neg_half.as_matrix() * d.as_matrix() * c_neg_half.as_matrix()),
    ))?;
    let root = inner.sqrt();
    PdMatrix::new(HermitianMatrix::hermitize(
        &(c_half.as_matrix() * root.as_matrix() * c_half.as_matrix()),
    ))
}

/// `‖X - Y‖_F / ‖Y‖_F`.
pub fn relative_difference(x: &CMat, y: &CMat) -> f64 {
    let denom = y.norm();
    let num = (x - y).norm();
    if denom == 0.0 {
        num
    } else {
        num / denom
    }
}

/// Largest `|Im|` over all entries.
pub fn max_imaginary(m: &CMat) -> f64 {
    m.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
}
