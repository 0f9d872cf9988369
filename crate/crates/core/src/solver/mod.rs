//! Solvers for symmetric word equations `S(A, B) = P`.
//!
//! [`solve`] reduces the equation, then dispatches: a pure power of `A` and
//! the pattern `A^p B^q A^p` have closed forms; everything else goes through
//! the damped Newton iteration. The solution is mapped back through the
//! reduction trail and its residual measured on the original equation.

mod closed;
mod fixed_point;
mod linearize;
mod newton;
mod probe;

use serde::{Deserialize, Serialize};

pub use closed::{solve_aba, solve_aba_geometric, solve_power};
pub use fixed_point::{fixed_point_map, fixed_point_scale, inner_word};
pub use linearize::{linearize, LinearizedSystem};
pub use newton::newton_solve;
pub use probe::{dispersion, uniqueness_probe, ProbeStart, UniquenessReport};

pub(crate) use linearize::Piece;
pub(crate) use newton::{run_multistart, NewtonProblem};

use crate::error::{Error, Result};
use crate::matcore::{relative_difference, PdMatrix};
use crate::reducer::{map_back, reduce_fully, Equation, ReductionTrail};
use crate::wordlang::{evaluate, Letter};
#[cfg(test)]
use crate::wordlang::Exponent;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Target relative Frobenius residual.
    pub tol: f64,
    /// Newton iterations per start.
    pub max_iters: usize,
    /// Step halvings per Newton iteration.
    pub max_halvings: usize,
    /// Total starts, the first being a scaled identity.
    pub starts: usize,
    pub seed: u64,
    /// Multiplier on the scalar starting value.
    pub start_scale: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iters: 100,
            max_halvings: 30,
            starts: 8,
            seed: 0,
            start_scale: 1.0,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument("tol must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be at least 1".into()));
        }
        if self.starts == 0 {
            return Err(Error::InvalidArgument("starts must be at least 1".into()));
        }
        if !(self.start_scale > 0.0) {
            return Err(Error::InvalidArgument("start_scale must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedFormPower,
    ClosedFormABA,
    Newton,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub solution: PdMatrix,
    pub relative_residual: f64,
    pub iterations: usize,
    pub residual_history: Vec<f64>,
    pub trail: ReductionTrail,
    pub starts_used: usize,
    pub dispersion: f64,
    pub method: Method,
}

/// `‖S(A, B) − P‖_F / ‖P‖_F`.
pub fn verify(eq: &Equation, a: &PdMatrix) -> Result<f64> {
    let value = evaluate(&eq.word, a, &eq.b)?;
    Ok(relative_difference(&value, eq.p.as_matrix()))
}

/// Solves `S(A, B) = P` for PD `A`.
pub fn solve(eq: &Equation, opts: &SolveOptions) -> Result<SolveReport> {
    opts.validate()?;
    let (reduced, trail) = reduce_fully(eq);
    let f = reduced.word.factors();

    let (reduced_solution, method, iterations, residual_history, starts_used) = match f {
        [only] if only.letter == Letter::A => {
            (solve_power(only.exp, &reduced.p)?, Method::ClosedFormPower, 0, vec![], 1)
        }
        [outer, mid, last] if outer.letter == Letter::A && mid.letter == Letter::B && outer == last => {
            let x = solve_aba(&reduced.b.pow(mid.exp.to_f64()), &reduced.p)?;
            let a = x.pow(1.0 / outer.exp.to_f64());
            (a, Method::ClosedFormABA, 0, vec![], 1)
        }
        _ => {
            let problem = newton::problem_for(&reduced)?;
            let run = run_multistart(&problem, opts)?;
            (run.solution, Method::Newton, run.iterations, run.history, run.starts_used)
        }
    };

    let solution = map_back(&trail, &reduced_solution);
    let relative_residual = verify(eq, &solution)?;
    Ok(SolveReport {
        solution,
        relative_residual,
        iterations,
        residual_history,
        trail,
        starts_used,
        dispersion: 0.0,
        method,
    })
}

#[cfg(test)]
mod tests;
