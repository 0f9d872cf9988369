use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::random::{log_uniform, random_pd_with, stream_rng, Field};
use crate::matcore::{spectral_norm, CMat, HermitianMatrix, PdMatrix};
use crate::wordlang::{evaluate, WordExpr};

const SAMPLE_COND_MAX: f64 = 100.0;
const POLISH_MAX_EVALS: usize = 4000;

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub b: PdMatrix,
    pub trials: usize,
    pub seed: u64,
    /// Best `‖A^{-1} B A^2 B A^{-1} − I‖₂` over the samples.
    pub sampled_min: f64,
    /// After derivative-free polishing from the best sample.
    pub polished_min: f64,
    pub best_a: PdMatrix,
    pub polish_evaluations: usize,
}

fn obstruction_word() -> WordExpr {
    "A^-1 B A^2 B A^-1".parse().expect("valid word")
}

/// `‖A^{-1} B A^2 B A^{-1} − I‖₂`.
pub fn counterexample_residual(a: &PdMatrix, b: &PdMatrix) -> Result<f64> {
    let n = a.dim();
    let v = evaluate(&obstruction_word(), a, b)?;
    Ok(spectral_norm(&(v - CMat::identity(n, n))))
}

/// Coordinates of a Hermitian `H`: the real diagonal, then real and (for
/// complex data) imaginary parts of the strict upper triangle.
fn to_coords(h: &CMat, real: bool) -> Vec<f64> {
    let n = h.nrows();
    let mut x: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
    for j in 0..n {
        for i in 0..j {
            x.push(h[(i, j)].re);
            if !real {
                x.push(h[(i, j)].im);
            }
        }
    }
    x
}

fn from_coords(x: &[f64], n: usize, real: bool) -> CMat {
    let mut h = CMat::zeros(n, n);
    let mut k = n;
    for i in 0..n {
        h[(i, i)] = Complex64::new(x[i], 0.0);
    }
    for j in 0..n {
        for i in 0..j {
            let im = if real { 0.0 } else { x[k + 1] };
            h[(i, j)] = Complex64::new(x[k], im);
            h[(j, i)] = h[(i, j)].conj();
            k += if real { 1 } else { 2 };
        }
    }
    h
}

/// `exp(H)`.
fn exp_hermitian(h: &CMat) -> Result<PdMatrix> {
    let d = HermitianMatrix::hermitize(h).eigen()?;
    let ev: Vec<f64> = d.eigenvalues.iter().map(|l| l.exp()).collect();
    Ok(PdMatrix::from_eigensystem(&d.unitary, &ev))
}

/// `log(A)`.
fn log_pd(a: &PdMatrix) -> CMat {
    a.spectral().map_eigenvalues(f64::ln)
}

/// Nelder-Mead with the standard coefficients. Returns the best point, its
/// value, and the number of evaluations.
fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], step: f64, max_evals: usize) -> (Vec<f64>, f64, usize) {
    let dim = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((x0.to_vec(), f(x0)));
    for i in 0..dim {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }
    let mut evals = dim + 1;
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };

    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[dim].1);
        if (worst - best).abs() <= 1e-14 * best.abs().max(1e-300) {
            break;
        }
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..dim] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let reflected = lerp(&centroid, &simplex[dim].0, -1.0);
        let fr = f(&reflected);
        evals += 1;
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &simplex[dim].0, -2.0);
            let fe = f(&expanded);
            evals += 1;
            simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr < simplex[dim - 1].1 {
            simplex[dim] = (reflected, fr);
        } else {
            let contracted = if fr < worst {
                lerp(&centroid, &reflected, 0.5)
            } else {
                lerp(&centroid, &simplex[dim].0, 0.5)
            };
            let fc = f(&contracted);
            evals += 1;
            if fc < fr.min(worst) {
                simplex[dim] = (contracted, fc);
            } else {
                let x_best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    *x = lerp(&x_best, x, 0.5);
                    *v = f(x);
                }
                evals += dim;
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, v) = simplex.swap_remove(0);
    (x, v, evals)
}

/// Searches for PD `A` with `A^{-1} B A^2 B A^{-1}` close to `I`, which is
/// impossible unless `B = I`: random samples first, then a Nelder-Mead
/// polish in `log A` coordinates.
pub fn counterexample_demo(b: &PdMatrix, trials: usize, seed: u64) -> Result<CounterexampleReport> {
    let n = b.dim();
    let dist = spectral_norm(&(b.as_matrix() - CMat::identity(n, n))) / b.spectral_norm();
    if dist <= 1e-6 {
        return Err(Error::InvalidArgument(
            "B must differ from the identity; B = I makes every A a solution".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("counterexample search needs at least one trial".into()));
    }
    let real = b.is_real();
    let field = if real { Field::Real } else { Field::Complex };

    let mut best: Option<(f64, PdMatrix)> = None;
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial as u64);
        let cond = log_uniform(&mut rng, 1.0, SAMPLE_COND_MAX);
        let a = random_pd_with(&mut rng, n, cond, field);
        let r = counterexample_residual(&a, b)?;
        if best.as_ref().is_none_or(|(m, _)| r < *m) {
            best = Some((r, a));
        }
    }
    let (sampled_min, sampled_a) = best.expect("trials > 0");

    let objective = |x: &[f64]| -> f64 {
        exp_hermitian(&from_coords(x, n, real))
            .and_then(|a| counterexample_residual(&a, b))
            .unwrap_or(f64::INFINITY)
    };
    let x0 = to_coords(&log_pd(&sampled_a), real);
    let (x, polished, polish_evaluations) = nelder_mead(objective, &x0, 0.25, POLISH_MAX_EVALS);
    let (polished_min, best_a) = if polished < sampled_min {
        (polished, exp_hermitian(&from_coords(&x, n, real))?)
    } else {
        (sampled_min, sampled_a)
    };
    Ok(CounterexampleReport {
        b: b.clone(),
        trials,
        seed,
        sampled_min,
        polished_min,
        best_a,
        polish_evaluations,
    })
}
