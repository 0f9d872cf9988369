use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix, column-major.
pub type CMat = DMatrix<Complex64>;

const HERMITIAN_RTOL: f64 = 1e-12;
const PD_RTOL: f64 = 1e-12;
const EIG_MAX_ITERS: usize = 10_000;

/// A dense complex Hermitian matrix stored exactly Hermitian.
///
/// The constructor accepts inputs that are Hermitian up to
/// `1e-12 * (1 + max |entry|)` and then replaces the payload with `(H + H*)/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: CMat,
}

impl HermitianMatrix {
    pub fn new(m: CMat) -> Result<Self> {
        check_square(&m)?;
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let max_entry = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tolerance = HERMITIAN_RTOL * (1.0 + max_entry);
        let deviation = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(Self::hermitize(&m))
    }

    /// Projects any square matrix onto its Hermitian part `(M + M*)/2`.
    pub fn hermitize(m: &CMat) -> Self {
        let h = (m + m.adjoint()).scale(0.5);
        Self { m: h }
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(m.map(|x| Complex64::new(x, 0.0)))
    }

    pub fn identity(n: usize) -> Self {
        Self {
            m: CMat::identity(n, n),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let v = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::new(CMat::from_diagonal(&v))
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn as_matrix(&self) -> &CMat {
        &self.m
    }

    pub fn into_matrix(self) -> CMat {
        self.m
    }

    /// True when every imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.m.iter().all(|z| z.im == 0.0)
    }

    pub fn eigen(&self) -> Result<SpectralDecomposition> {
        eig_hermitian(self)
    }

    /// Eigenvalues only, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let eig = SymmetricEigen::try_new(self.m.clone(), f64::EPSILON, EIG_MAX_ITERS)
            .ok_or(Error::EigenNoConvergence { n: self.dim() })?;
        let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        v.sort_by(f64::total_cmp);
        Ok(v)
    }

    /// Spectral norm, i.e. the largest eigenvalue magnitude.
    pub fn spectral_norm(&self) -> Result<f64> {
        let ev = self.eigenvalues()?;
        Ok(ev.iter().map(|x| x.abs()).fold(0.0, f64::max))
    }

    /// Counts of (positive, negative, zero) eigenvalues, with zero meaning
    /// `|λ| <= tol * ‖H‖`.
    pub fn inertia(&self, tol: f64) -> Result<(usize, usize, usize)> {
        let ev = self.eigenvalues()?;
        let scale = ev.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let cut = tol * scale;
        let pos = ev.iter().filter(|&&x| x > cut).count();
        let neg = ev.iter().filter(|&&x| x < -cut).count();
        Ok((pos, neg, ev.len() - pos - neg))
    }
}

/// Eigendecomposition `H = U diag(λ) U*` with eigenvalues ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDecomposition {
    pub unitary: CMat,
    pub eigenvalues: DVector<f64>,
}

impl SpectralDecomposition {
    /// `U diag(f(λ)) U*`.
    pub fn map_eigenvalues(&self, f: impl Fn(f64) -> f64) -> CMat {
        let u = &self.unitary;
        let mut scaled = u.clone();
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= Complex64::new(f(self.eigenvalues[j]), 0.0);
        }
        scaled * u.adjoint()
    }

    pub fn reconstruct(&self) -> CMat {
        self.map_eigenvalues(|x| x)
    }
}

pub fn eig_hermitian(h: &HermitianMatrix) -> Result<SpectralDecomposition> {
    let n = h.dim();
    let eig = SymmetricEigen::try_new(h.m.clone(), f64::EPSILON, EIG_MAX_ITERS)
        .ok_or(Error::EigenNoConvergence { n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let unitary = CMat::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenNoConvergence { n });
    }
    Ok(SpectralDecomposition {
        unitary,
        eigenvalues,
    })
}

/// A Hermitian positive definite matrix together with its eigendecomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PdMatrix {
    base: HermitianMatrix,
    spectral: SpectralDecomposition,
}

impl PdMatrix {
    /// Validates positive definiteness: `λ_min > 1e-12 * ‖H‖`.
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let spectral = eig_hermitian(&h)?;
        let n = h.dim();
        let min = spectral.eigenvalues[0];
        let norm = spectral.eigenvalues[n - 1].abs().max(min.abs());
        let threshold = PD_RTOL * norm;
        if !(min > threshold) {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: min,
                threshold,
            });
        }
        Ok(Self { base: h, spectral })
    }

    pub fn from_matrix(m: CMat) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        Self::new(HermitianMatrix::from_real(m)?)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_diagonal(diag)?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            base: HermitianMatrix::identity(n),
            spectral: SpectralDecomposition {
                unitary: CMat::identity(n, n),
                eigenvalues: DVector::from_element(n, 1.0),
            },
        }
    }

    /// Builds `U diag(λ) U*` from a known eigensystem with strictly positive
    /// eigenvalues. The eigenvalues are re-sorted ascending.
    pub(crate) fn from_eigensystem(unitary: &CMat, eigenvalues: &[f64]) -> Self {
        debug_assert!(eigenvalues.iter().all(|&x| x > 0.0 && x.is_finite()));
        let n = eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
        let spectral = SpectralDecomposition {
            unitary: CMat::from_fn(n, n, |r, c| unitary[(r, order[c])]),
            eigenvalues: DVector::from_iterator(n, order.iter().map(|&i| eigenvalues[i])),
        };
        let base = HermitianMatrix::hermitize(&spectral.reconstruct());
        Self { base, spectral }
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn as_hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn as_matrix(&self) -> &CMat {
        self.base.as_matrix()
    }

    pub fn spectral(&self) -> &SpectralDecomposition {
        &self.spectral
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectral.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.spectral.eigenvalues[self.dim() - 1]
    }

    /// ‖A‖ for the spectral norm; equals the largest eigenvalue.
    pub fn spectral_norm(&self) -> f64 {
        self.max_eigenvalue()
    }

    pub fn condition_number(&self) -> f64 {
        self.max_eigenvalue() / self.min_eigenvalue()
    }

    pub fn is_real(&self) -> bool {
        self.base.is_real()
    }

    pub fn into_hermitian(self) -> HermitianMatrix {
        self.base
    }
}

pub(crate) fn check_square(m: &CMat) -> Result<()> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

pub(crate) fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMat::from_row_slice(2, 2, &[c(1., 0.), c(2., 0.), c(0., 0.), c(1., 0.)]);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn tiny_asymmetry_is_averaged_away() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[c(1., 0.), c(0.5, 1e-14), c(0.5, -2e-14), c(1., 1e-15)],
        );
        let h = HermitianMatrix::new(m).unwrap();
        let d = h.as_matrix() - h.as_matrix().adjoint();
        assert_eq!(d.iter().map(|z| z.norm()).fold(0.0, f64::max), 0.0);
    }

    #[test]
    fn rejects_empty_and_rectangular() {
        assert_eq!(HermitianMatrix::new(CMat::zeros(0, 0)), Err(Error::EmptyMatrix));
        assert!(matches!(
            HermitianMatrix::new(CMat::zeros(2, 3)),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn identity_eigen() {
        let d = HermitianMatrix::identity(3).eigen().unwrap();
        assert_eq!(d.eigenvalues.as_slice(), &[1.0, 1.0, 1.0]);
        let err = (d.reconstruct() - CMat::identity(3, 3)).norm();
        assert!(err < 1e-15);
    }

    #[test]
    fn diagonal_eigen_is_ascending() {
        let d = HermitianMatrix::from_diagonal(&[3.0, 1.0]).unwrap().eigen().unwrap();
        assert_eq!(d.eigenvalues.as_slice(), &[1.0, 3.0]);
    }

    #[test]
    fn pd_validation() {
        assert!(PdMatrix::from_diagonal(&[1.0, 2.0]).is_ok());
        assert!(matches!(
            PdMatrix::from_diagonal(&[1.0, 0.0]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            PdMatrix::from_diagonal(&[1.0, 1e-13]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let a = PdMatrix::from_diagonal(&[4.0, 0.5]).unwrap();
        assert_eq!(a.min_eigenvalue(), 0.5);
        assert_eq!(a.spectral_norm(), 4.0);
    }

    #[test]
    fn inertia_counts() {
        let h = HermitianMatrix::from_diagonal(&[2.0, -1.0, 0.0]).unwrap();
        assert_eq!(h.inertia(1e-12).unwrap(), (1, 1, 1));
    }
}
