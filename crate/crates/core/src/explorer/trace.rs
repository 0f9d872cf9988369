use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matcore::random::{log_uniform, random_pd_with, stream_rng, Field};
use crate::matcore::PdMatrix;
use crate::wordlang::{evaluate, WordExpr};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceWitness {
    pub trial: usize,
    pub a: PdMatrix,
    pub b: PdMatrix,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceSearchReport {
    pub word: WordExpr,
    pub trials: usize,
    pub dimension: usize,
    pub seed: u64,
    pub cond_range: (f64, f64),
    pub min_trace: f64,
    pub witness: TraceWitness,
}

/// `Re tr w(A, B)`.
fn real_trace(w: &WordExpr, a: &PdMatrix, b: &PdMatrix) -> Result<f64> {
    Ok(evaluate(w, a, b)?.trace().re)
}

/// Re-evaluates the trace at the stored witness.
pub fn witness_trace(report: &TraceSearchReport) -> Result<f64> {
    real_trace(&report.word, &report.witness.a, &report.witness.b)
}

/// Samples real PD pairs with condition numbers log-uniform over
/// `cond_range` and keeps the smallest trace. Trial `t` draws from stream
/// `t` of `seed`, so the result does not depend on evaluation order.
pub fn trace_search(
    w: &WordExpr,
    n: usize,
    trials: usize,
    seed: u64,
    cond_range: (f64, f64),
) -> Result<TraceSearchReport> {
    if !w.has_integer_exponents() {
        return Err(Error::InvalidArgument(format!("trace search needs integer exponents, got `{w}`")));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("trace search needs dimension at least 2".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trace search needs at least one trial".into()));
    }
    let (lo, hi) = cond_range;
    if !(lo >= 1.0 && hi >= lo && hi.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "condition range must satisfy 1 <= lo <= hi, got ({lo}, {hi})"
        )));
    }

    let mut best: Option<(f64, TraceWitness)> = None;
    for trial in 0..trials {
        let mut rng = stream_rng(seed, trial as u64);
        let cond_a = log_uniform(&mut rng, lo, hi);
        let a = random_pd_with(&mut rng, n, cond_a, Field::Real);
        let cond_b = log_uniform(&mut rng, lo, hi);
        let b = random_pd_with(&mut rng, n, cond_b, Field::Real);
        let t = real_trace(w, &a, &b)?;
        if best.as_ref().is_none_or(|(m, _)| t < *m) {
            best = Some((t, TraceWitness { trial, a, b }));
        }
    }
    let (min_trace, witness) = best.expect("trials > 0");
    Ok(TraceSearchReport {
        word: w.clone(),
        trials,
        dimension: n,
        seed,
        cond_range,
        min_trace,
        witness,
    })
}
