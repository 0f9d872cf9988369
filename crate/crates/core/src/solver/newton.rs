//! Damped Newton iteration on the linearized word equation.
//!
//! Each step solves `K vec(D) = vec(P − S(A))` in the least-squares sense,
//! projects `D` onto its Hermitian part (its real part too, for real data),
//! and halves the step length until the relative residual strictly drops.

use num_complex::Complex64;

use super::linearize::{evaluate_pieces, linearize_pieces, unvec, vec_of, word_pieces, Piece};
use super::{Method, SolveOptions, SolveReport};
use crate::error::{Error, Result};
use crate::matcore::random::{random_pd_with, stream_rng, Field};
use crate::matcore::{relative_difference, CMat, HermitianMatrix, PdMatrix};
use crate::reducer::{Equation, ReductionTrail};

/// Condition number target of random restart matrices.
const RESTART_COND: f64 = 10.0;

pub(crate) struct NewtonProblem {
    pub pieces: Vec<Piece>,
    pub p: PdMatrix,
    pub real: bool,
    /// Scalar `a` such that `a·I` is the natural starting point.
    pub scalar_start: f64,
}

impl NewtonProblem {
    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    fn residual(&self, a: &CMat) -> f64 {
        relative_difference(&evaluate_pieces(&self.pieces, a), self.p.as_matrix())
    }

    /// Start 0 is `scalar_start·I`; start `i > 0` is a random PD matrix from
    /// stream `i` of `seed`, rescaled to mean eigenvalue `scalar_start`.
    pub fn start(&self, index: usize, opts: &SolveOptions) -> CMat {
        let n = self.dim();
        let scale = self.scalar_start * opts.start_scale;
        if index == 0 {
            return CMat::identity(n, n) * Complex64::new(scale, 0.0);
        }
        let field = if self.real { Field::Real } else { Field::Complex };
        let mut rng = stream_rng(opts.seed, index as u64);
        let r = random_pd_with(&mut rng, n, RESTART_COND, field);
        let trace: f64 = r.spectral().eigenvalues.iter().sum();
        r.as_matrix() * Complex64::new(scale * n as f64 / trace, 0.0)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct StartOutcome {
    /// Set when the residual reached `tol` at a PD iterate.
    pub solution: Option<PdMatrix>,
    pub residual: f64,
    pub history: Vec<f64>,
    pub iterations: usize,
}

fn least_squares(k: CMat, rhs: &nalgebra::DVector<Complex64>) -> Option<nalgebra::DVector<Complex64>> {
    let svd = k.svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if smax == 0.0 || !smax.is_finite() {
        return None;
    }
    svd.solve(rhs, smax * 1e-14).ok()
}

pub(crate) fn run_from(problem: &NewtonProblem, a0: CMat, opts: &SolveOptions) -> StartOutcome {
    let n = problem.dim();
    let mut a = a0;
    let mut r = problem.residual(&a);
    let mut history = vec![r];
    let mut iterations = 0;

    while r > opts.tol && iterations < opts.max_iters {
        let (k, constant) = linearize_pieces(&problem.pieces, &a);
        let rhs = vec_of(&(problem.p.as_matrix() - constant));
        let Some(step) = least_squares(k, &rhs) else {
            break;
        };
        let mut d = HermitianMatrix::hermitize(&unvec(&step, n)).into_matrix();
        if problem.real {
            d.iter_mut().for_each(|z| z.im = 0.0);
        }

        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let candidate = &a + &d * Complex64::new(alpha, 0.0);
            let rc = problem.residual(&candidate);
            if rc < r {
                accepted = Some((candidate, rc));
                break;
            }
            alpha *= 0.5;
        }
        let Some((next, rn)) = accepted else {
            break;
        };
        a = next;
        r = rn;
        iterations += 1;
        history.push(r);
    }

    let solution = if r <= opts.tol {
        PdMatrix::from_matrix(a).ok()
    } else {
        None
    };
    StartOutcome {
        solution,
        residual: r,
        history,
        iterations,
    }
}

pub(crate) struct MultiStartRun {
    pub solution: PdMatrix,
    pub residual: f64,
    pub iterations: usize,
    pub history: Vec<f64>,
    pub starts_used: usize,
}

/// Tries start 0, 1, … until one converges or `opts.starts` are exhausted.
pub(crate) fn run_multistart(problem: &NewtonProblem, opts: &SolveOptions) -> Result<MultiStartRun> {
    let mut history = Vec::new();
    let mut iterations = 0;
    let mut best = f64::INFINITY;
    for index in 0..opts.starts {
        let outcome = run_from(problem, problem.start(index, opts), opts);
        history.extend_from_slice(&outcome.history);
        iterations += outcome.iterations;
        best = best.min(outcome.residual);
        if let Some(solution) = outcome.solution {
            return Ok(MultiStartRun {
                solution,
                residual: outcome.residual,
                iterations,
                history,
                starts_used: index + 1,
            });
        }
    }
    Err(Error::NotConverged {
        starts: opts.starts,
        best_residual: best,
    })
}

/// Scalar solution `a = (p · b^{-S_B'})^{1/S_A}` of the word with
/// `b = ‖B‖`, `p = ‖P‖`.
pub(crate) fn scalar_start(eq: &Equation) -> f64 {
    let shape = eq.word.shape();
    let s_a = shape.s_a.to_f64();
    let s_b = shape.s_b_total().to_f64();
    let a = (eq.p.spectral_norm() * eq.b.spectral_norm().powf(-s_b)).powf(1.0 / s_a);
    if a.is_finite() && a > 0.0 {
        a
    } else {
        1.0
    }
}

pub(crate) fn problem_for(eq: &Equation) -> Result<NewtonProblem> {
    Ok(NewtonProblem {
        pieces: word_pieces(&eq.word, &eq.b)?,
        p: eq.p.clone(),
        real: eq.is_real(),
        scalar_start: scalar_start(eq),
    })
}

/// Newton iteration with multi-start fallback for an equation whose `A`
/// exponents are positive integers.
pub fn newton_solve(eq: &Equation, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let problem = problem_for(eq)?;
    let run = run_multistart(&problem, opts)?;
    Ok(SolveReport {
        solution: run.solution,
        relative_residual: run.residual,
        iterations: run.iterations,
        residual_history: run.history,
        trail: ReductionTrail::default(),
        starts_used: run.starts_used,
        dispersion: 0.0,
        method: Method::Newton,
    })
}
