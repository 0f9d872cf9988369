use serde::Serialize;

use super::newton::{problem_for, run_from};
use super::SolveOptions;
use crate::error::Result;
use crate::matcore::{relative_difference, PdMatrix};
use crate::reducer::{map_back, reduce_fully, Equation};

#[derive(Clone, Debug, Serialize)]
pub struct ProbeStart {
    pub start: usize,
    pub converged: bool,
    pub residual: f64,
    pub iterations: usize,
}

/// Multi-start evidence for unique solvability.
#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub starts: Vec<ProbeStart>,
    /// Converged solutions of the original equation, in start order.
    pub solutions: Vec<PdMatrix>,
    /// Max pairwise `‖X_i − X_j‖_F / max(‖X_i‖_F, ‖X_j‖_F)` over converged
    /// solutions; zero with fewer than two.
    pub dispersion: f64,
}

impl UniquenessReport {
    pub fn converged_count(&self) -> usize {
        self.solutions.len()
    }
}

pub fn dispersion(solutions: &[PdMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, x) in solutions.iter().enumerate() {
        for y in &solutions[i + 1..] {
            let (nx, ny) = (x.as_matrix().norm(), y.as_matrix().norm());
            let d = if nx >= ny {
                relative_difference(y.as_matrix(), x.as_matrix())
            } else {
                relative_difference(x.as_matrix(), y.as_matrix())
            };
            worst = worst.max(d);
        }
    }
    worst
}

/// Runs single-start Newton from `opts.starts` independent random starts
/// (streams `1..=starts` of `opts.seed`) on the reduced equation.
/// Non-converged starts are recorded, not fatal.
pub fn uniqueness_probe(eq: &Equation, opts: &SolveOptions) -> Result<UniquenessReport> {
    opts.validate()?;
    let (reduced, trail) = reduce_fully(eq);
    let problem = problem_for(&reduced)?;
    let mut starts = Vec::with_capacity(opts.starts);
    let mut solutions = Vec::new();
    for i in 0..opts.starts {
        let outcome = run_from(&problem, problem.start(i + 1, opts), opts);
        starts.push(ProbeStart {
            start: i + 1,
            converged: outcome.solution.is_some(),
            residual: outcome.residual,
            iterations: outcome.iterations,
        });
        if let Some(x) = outcome.solution {
            solutions.push(map_back(&trail, &x));
        }
    }
    Ok(UniquenessReport {
        dispersion: dispersion(&solutions),
        starts,
        solutions,
    })
}
