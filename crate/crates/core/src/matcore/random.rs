//! Seeded generators for test fixtures and multi-start solvers.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::hermitian::{CMat, HermitianMatrix, PdMatrix};

/// Scalar field of generated matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> CMat {
    CMat::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match field {
            Field::Real => 0.0,
            Field::Complex => rng.sample(StandardNormal),
        };
        Complex64::new(re, im)
    })
}

/// Haar-distributed unitary (orthogonal for `Field::Real`).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> CMat {
    let g = gaussian_matrix(rng, n, field);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

/// Random Hermitian matrix with i.i.d. Gaussian entries (GUE/GOE-like).
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, field: Field) -> HermitianMatrix {
    HermitianMatrix::hermitize(&gaussian_matrix(rng, n, field))
}

/// Random PD matrix `Q diag(λ) Q*` with Haar `Q`, log-spaced eigenvalues of
/// ratio `cond`, and an overall random scale in `[e^-1, e]`.
pub fn random_pd_with<R: Rng + ?Sized>(rng: &mut R, n: usize, cond: f64, field: Field) -> PdMatrix {
    assert!(n >= 1, "dimension must be positive");
    assert!(cond >= 1.0, "condition target must be >= 1");
    let q = random_unitary(rng, n, field);
    let scale = rng.gen_range(-1.0f64..1.0).exp();
    let eigenvalues: Vec<f64> = (0..n)
        .map(|i| {
            let t = if n == 1 { 0.5 } else { i as f64 / (n - 1) as f64 };
            scale * cond.powf(t - 0.5)
        })
        .collect();
    let pd = PdMatrix::from_eigensystem(&q, &eigenvalues);
    if field == Field::Real {
        // Drop round-off imaginary parts so the matrix is exactly real.
        let m = pd.as_matrix().map(|z| Complex64::new(z.re, 0.0));
        return PdMatrix::from_matrix(m).expect("real part of a PD matrix is PD");
    }
    pd
}

/// Deterministic random PD matrix for `(n, seed, cond)`.
pub fn random_pd(n: usize, seed: u64, cond: f64, field: Field) -> PdMatrix {
    random_pd_with(&mut seeded_rng(seed), n, cond, field)
}

/// Diagonal PD matrix with entries log-uniform in `[lo, hi]`.
pub fn random_diagonal_pd<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: f64, hi: f64) -> PdMatrix {
    let d: Vec<f64> = (0..n)
        .map(|_| rng.gen_range(lo.ln()..=hi.ln()).exp())
        .collect();
    let v = DVector::from_iterator(n, d.iter().map(|&x| Complex64::new(x, 0.0)));
    PdMatrix::from_matrix(CMat::from_diagonal(&v)).expect("positive diagonal")
}

/// Log-uniform sample in `[lo, hi]`.
pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        return lo;
    }
    rng.gen_range(lo.ln()..=hi.ln()).exp()
}
