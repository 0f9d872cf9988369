use num_integer::Integer;
use serde::Serialize;

use super::fov::{is_completely_invertible, FovCertificate};
use super::word::{CoeffRef, GenFactor, GenSymWord};
use crate::error::{Error, Result};
use crate::matcore::{
    check_invertible, max_imaginary, relative_difference, CMat, HermitianMatrix, PdMatrix,
};
use crate::reducer::{ReductionStep, ReductionTrail};
use crate::solver::{run_multistart, solve_aba, solve_power, Method, NewtonProblem, Piece, SolveOptions, SolveReport};
use crate::wordlang::Exponent;

fn coefficient(coeffs: &[CMat], c: CoeffRef) -> Result<CMat> {
    let m = coeffs.get(c.index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "word uses C{} but only {} coefficient(s) were given",
            c.index + 1,
            coeffs.len()
        ))
    })?;
    Ok(if c.adjoint { m.adjoint() } else { m.clone() })
}

fn check_coefficients(w: &GenSymWord, n: usize, coeffs: &[CMat]) -> Result<()> {
    for &i in &w.coefficient_indices() {
        let c = coefficient(coeffs, CoeffRef::plain(i))?;
        check_invertible(&c)?;
        if c.nrows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.nrows(),
            });
        }
    }
    Ok(())
}

/// Evaluates the expanded product and certifies it PD.
pub fn evaluate_genword(w: &GenSymWord, a: &PdMatrix, coeffs: &[CMat]) -> Result<PdMatrix> {
    let n = a.dim();
    check_coefficients(w, n, coeffs)?;
    let mut out = CMat::identity(n, n);
    for f in w.expand() {
        out = match f {
            GenFactor::A(e) => out * a.pow(e.to_f64()).as_matrix(),
            GenFactor::C(c) => out * coefficient(coeffs, c)?,
        };
    }
    PdMatrix::new(HermitianMatrix::hermitize(&out))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCertificate {
    /// One-based, as in `C1`.
    pub coefficient: usize,
    pub certificate: FovCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenSolveReport {
    #[serde(flatten)]
    pub report: SolveReport,
    pub certificates: Vec<CoefficientCertificate>,
    pub warnings: Vec<String>,
}

fn rescale_factor(w: &GenSymWord) -> i64 {
    w.a_exponents().fold(1, |l, e| l.lcm(&e.denom()))
}

fn newton_pieces(w: &GenSymWord, coeffs: &[CMat]) -> Result<Vec<Piece>> {
    w.expand()
        .into_iter()
        .map(|f| match f {
            GenFactor::A(e) => Ok(Piece::APow(e.numer() as u32)),
            GenFactor::C(c) => Ok(Piece::Const(coefficient(coeffs, c)?)),
        })
        .collect()
}

/// `a` with `a^{S_A} ‖W(I)‖ = ‖P‖`, `S_A` the total `A` exponent.
fn scalar_start(w: &GenSymWord, coeffs: &[CMat], p: &PdMatrix) -> Result<f64> {
    let s_a: f64 = w.expand().iter().map(|f| match f {
        GenFactor::A(e) => e.to_f64(),
        GenFactor::C(_) => 0.0,
    }).sum();
    let at_identity = evaluate_genword(w, &PdMatrix::identity(p.dim()), coeffs)?;
    let a = (p.spectral_norm() / at_identity.spectral_norm()).powf(1.0 / s_a);
    Ok(if a.is_finite() && a > 0.0 { a } else { 1.0 })
}

/// Solves `W(A; C_1..C_m) = P` for PD `A`.
///
/// Coefficients whose field of values contains zero are reported in
/// `warnings`; the solve is still attempted.
pub fn solve_genword(w: &GenSymWord, coeffs: &[CMat], p: &PdMatrix, opts: &SolveOptions) -> Result<GenSolveReport> {
    opts.validate()?;
    let n = p.dim();
    check_coefficients(w, n, coeffs)?;

    let mut certificates = Vec::new();
    let mut warnings = Vec::new();
    for i in w.coefficient_indices() {
        let certificate = is_completely_invertible(&coeffs[i])?;
        if certificate.contains_zero {
            warnings.push(format!(
                "C{} is not completely invertible (0 lies in its field of values); a solution is not guaranteed",
                i + 1
            ));
        }
        certificates.push(CoefficientCertificate {
            coefficient: i + 1,
            certificate,
        });
    }

    let mut trail = ReductionTrail::default();
    let (solution, method, iterations, residual_history, starts_used) = match (w.half(), w.center()) {
        ([], Some(c)) => (solve_power(c, p)?, Method::ClosedFormPower, 0, vec![], 1),
        ([(q, c)], None) => {
            let cm = coefficient(coeffs, *c)?;
            let m = PdMatrix::new(HermitianMatrix::hermitize(&(&cm * cm.adjoint())))?;
            let x = solve_aba(&m, p)?;
            (x.pow(1.0 / q.to_f64()), Method::ClosedFormABA, 0, vec![], 1)
        }
        _ => {
            let l = rescale_factor(w);
            let scaled = if l > 1 {
                trail.steps.push(ReductionStep::RescaleA { l: l as u64 });
                w.rescaled(Exponent::integer(l))
            } else {
                w.clone()
            };
            let real = p.is_real() && w.coefficient_indices().iter().all(|&i| max_imaginary(&coeffs[i]) == 0.0);
            let problem = NewtonProblem {
                pieces: newton_pieces(&scaled, coeffs)?,
                p: p.clone(),
                real,
                scalar_start: scalar_start(&scaled, coeffs, p)?,
            };
            let run = run_multistart(&problem, opts)?;
            let a = if l > 1 { run.solution.pow(l as f64) } else { run.solution };
            (a, Method::Newton, run.iterations, run.history, run.starts_used)
        }
    };

    let value = evaluate_genword(w, &solution, coeffs)?;
    let relative_residual = relative_difference(value.as_matrix(), p.as_matrix());
    Ok(GenSolveReport {
        report: SolveReport {
            solution,
            relative_residual,
            iterations,
            residual_history,
            trail,
            starts_used,
            dispersion: 0.0,
            method,
        },
        certificates,
        warnings,
    })
}

