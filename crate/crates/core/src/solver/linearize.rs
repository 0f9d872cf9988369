//! First-order expansion of a word in `A0 + D` around `A0`.
//!
//! An occurrence `A^m` with constant prefix `L` and suffix `R` contributes
//! `Σ_{j<m} (L A0^j) D (A0^{m-1-j} R)`, assembled through
//! `vec(L D R) = (Rᵀ ⊗ L) vec(D)` with column-major `vec`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matcore::{check_same_dim, CMat, HermitianMatrix, PdMatrix};
use crate::wordlang::{Letter, WordExpr};

/// A factor of a product that is linear-izable in the unknown: either a
/// constant matrix or a positive integer power of the unknown.
#[derive(Clone, Debug)]
pub(crate) enum Piece {
    Const(CMat),
    APow(u32),
}

pub(crate) fn word_pieces(w: &WordExpr, b: &PdMatrix) -> Result<Vec<Piece>> {
    w.factors()
        .iter()
        .map(|f| match f.letter {
            Letter::B => Ok(Piece::Const(b.pow(f.exp.to_f64()).as_matrix().clone())),
            Letter::A => {
                if !f.exp.is_integer() || !f.exp.is_positive() {
                    return Err(Error::NonIntegerExponent {
                        letter: 'A',
                        exponent: f.exp.to_string(),
                        hint: "linearization needs positive integer A exponents; reduce the equation first",
                    });
                }
                Ok(Piece::APow(f.exp.numer() as u32))
            }
        })
        .collect()
}

fn max_power(pieces: &[Piece]) -> u32 {
    pieces
        .iter()
        .map(|p| match p {
            Piece::APow(m) => *m,
            Piece::Const(_) => 0,
        })
        .max()
        .unwrap_or(0)
}

/// `[I, A, A², …, A^max]`.
fn powers(a: &CMat, max: u32) -> Vec<CMat> {
    let n = a.nrows();
    let mut out = vec![CMat::identity(n, n)];
    for j in 1..=max as usize {
        out.push(&out[j - 1] * a);
    }
    out
}

pub(crate) fn evaluate_pieces(pieces: &[Piece], a: &CMat) -> CMat {
    let n = a.nrows();
    let pw = powers(a, max_power(pieces));
    pieces.iter().fold(CMat::identity(n, n), |acc, p| match p {
        Piece::Const(c) => acc * c,
        Piece::APow(m) => acc * &pw[*m as usize],
    })
}

/// Operator `K` and constant term `S(A0)` for a piece product.
pub(crate) fn linearize_pieces(pieces: &[Piece], a0: &CMat) -> (CMat, CMat) {
    let n = a0.nrows();
    let pw = powers(a0, max_power(pieces));
    let values: Vec<&CMat> = pieces
        .iter()
        .map(|p| match p {
            Piece::Const(c) => c,
            Piece::APow(m) => &pw[*m as usize],
        })
        .collect();

    let r = values.len();
    let mut prefix = Vec::with_capacity(r + 1);
    prefix.push(CMat::identity(n, n));
    for v in &values {
        let next = prefix.last().unwrap() * *v;
        prefix.push(next);
    }
    let mut suffix = vec![CMat::identity(n, n); r + 1];
    for i in (0..r).rev() {
        suffix[i] = values[i] * &suffix[i + 1];
    }

    let mut k = CMat::zeros(n * n, n * n);
    for (i, piece) in pieces.iter().enumerate() {
        if let Piece::APow(m) = piece {
            let m = *m as usize;
            for j in 0..m {
                let left = &prefix[i] * &pw[j];
                let right = &pw[m - 1 - j] * &suffix[i + 1];
                k += right.transpose().kronecker(&left);
            }
        }
    }
    (k, prefix[r].clone())
}

pub(crate) fn vec_of(m: &CMat) -> DVector<Complex64> {
    DVector::from_column_slice(m.as_slice())
}

pub(crate) fn unvec(v: &DVector<Complex64>, n: usize) -> CMat {
    CMat::from_column_slice(n, n, v.as_slice())
}

/// `K vec(D) = vec(P − S(A0, B))`, the linear system of one Newton step.
#[derive(Clone, Debug)]
pub struct LinearizedSystem {
    /// `n² × n²` operator collecting every term with exactly one `D`.
    pub operator: CMat,
    /// `S(A0, B)`.
    pub constant: CMat,
    /// `vec(P − S(A0, B))`.
    pub rhs: DVector<Complex64>,
}

impl LinearizedSystem {
    /// The first-order part `S'(A0 + D) − S(A0)` applied to `D`.
    pub fn apply(&self, d: &CMat) -> CMat {
        unvec(&(&self.operator * vec_of(d)), d.nrows())
    }
}

/// Linearizes `S(A0 + D, B) = P` in `D`. Every `A` exponent must be a
/// positive integer; `A0` only needs to be Hermitian.
pub fn linearize(
    w: &WordExpr,
    a0: &HermitianMatrix,
    b: &PdMatrix,
    p: &PdMatrix,
) -> Result<LinearizedSystem> {
    check_same_dim(a0.dim(), b.dim())?;
    check_same_dim(a0.dim(), p.dim())?;
    let pieces = word_pieces(w, b)?;
    let (operator, constant) = linearize_pieces(&pieces, a0.as_matrix());
    let rhs = vec_of(&(p.as_matrix() - &constant));
    Ok(LinearizedSystem {
        operator,
        constant,
        rhs,
    })
}
