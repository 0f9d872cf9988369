use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use symword_core::explorer::{classify_word, trace_search as search, TraceSearchReport, WordClass};
use symword_core::genword::{is_completely_invertible, solve_genword};
use symword_core::matcore::pdm::write_pdm_auto;
use symword_core::matcore::{geometric_mean, MatrixJson};
use symword_core::reducer::{reduce_fully, Equation, ReductionTrail};
use symword_core::solver::{solve as solve_equation, uniqueness_probe, SolveOptions, SolveReport};
use symword_core::wordlang::{detect_power, evaluate, Letter, WordExpr};
use symword_core::{Error, PdMatrix};

use crate::input;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Self { code: 1, message }
    }

    /// Non-convergence is a solver failure; everything else is bad input.
    fn core(context: &str, e: Error) -> Self {
        let code = match e {
            Error::NotConverged { .. } | Error::EigenNoConvergence { .. } => 2,
            _ => 1,
        };
        Self {
            code,
            message: format!("{context}: {e}"),
        }
    }

    pub fn code(&self) -> u8 {
        self.code
    }

    pub fn message(&self) -> &str {
        &self.message
    }
}

pub struct Outcome {
    pub json: String,
    pub text: String,
    pub success: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(report: &impl Serialize, text: String) -> Self {
        Self {
            json: serde_json::to_string_pretty(report).expect("reports serialize"),
            text,
            success: true,
            warnings: Vec::new(),
        }
    }
}

pub fn no_out(command: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(_) => Err(Failure::input(format!("--out: `{command}` produces no matrix to write"))),
        None => Ok(()),
    }
}

fn matrix_text(m: &symword_core::CMat) -> String {
    write_pdm_auto(m)
}

fn trail_text(trail: &ReductionTrail) -> String {
    if trail.steps.is_empty() {
        return "none".into();
    }
    trail
        .steps
        .iter()
        .map(|s| serde_json::to_string(s).expect("steps serialize"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn report_text(r: &SolveReport) -> String {
    let mut t = String::new();
    writeln!(t, "method: {:?}", r.method).unwrap();
    writeln!(t, "relative residual: {:.3e}", r.relative_residual).unwrap();
    writeln!(t, "iterations: {}", r.iterations).unwrap();
    writeln!(t, "starts used: {}", r.starts_used).unwrap();
    writeln!(t, "reduction: {}", trail_text(&r.trail)).unwrap();
    writeln!(t, "dispersion: {:.3e}", r.dispersion).unwrap();
    writeln!(t, "solution:\n{}", matrix_text(r.solution.as_matrix())).unwrap();
    t
}

fn write_out(out: Option<&Path>, m: &symword_core::CMat) -> Result<(), Failure> {
    match out {
        Some(path) => input::write_matrix(path, m),
        None => Ok(()),
    }
}

pub fn solve(
    word: &str,
    b: Option<&Path>,
    p: &Path,
    probe: bool,
    opts: &SolveOptions,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let w = input::word(word)?;
    let p = input::pd_matrix("--P", p)?;
    let b = match b {
        Some(path) => input::pd_matrix("--B", path)?,
        None if !w.contains(Letter::B) => PdMatrix::identity(p.dim()),
        None => return Err(Failure::input(format!("--B: required because `{w}` contains B"))),
    };
    opts.validate().map_err(|e| Failure::core("options", e))?;
    let eq = Equation::new(w, b, p).map_err(|e| Failure::core("--word", e))?;
    let mut report = solve_equation(&eq, opts).map_err(|e| Failure::core("solve", e))?;
    if probe {
        let u = uniqueness_probe(&eq, opts).map_err(|e| Failure::core("probe", e))?;
        report.dispersion = u.dispersion;
    }
    write_out(out, report.solution.as_matrix())?;
    let mut outcome = Outcome::new(&report, report_text(&report));
    outcome.success = report.relative_residual <= opts.tol;
    if !outcome.success {
        outcome.warnings.push(format!(
            "residual {:.3e} exceeds tolerance {:.3e}",
            report.relative_residual, opts.tol
        ));
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct EvalReport {
    word: WordExpr,
    symmetric: bool,
    /// Present for symmetric words, whose value is PD.
    min_eigenvalue: Option<f64>,
    value: MatrixJson,
}

pub fn eval(word: &str, a: &Path, b: &Path, out: Option<&Path>) -> Result<Outcome, Failure> {
    let w = input::word(word)?;
    let a = input::pd_matrix("--A", a)?;
    let b = input::pd_matrix("--B", b)?;
    if a.dim() != b.dim() {
        return Err(Failure::input(format!(
            "--B: dimension {} does not match --A dimension {}",
            b.dim(),
            a.dim()
        )));
    }
    let value = evaluate(&w, &a, &b).map_err(|e| Failure::core("eval", e))?;
    let min_eigenvalue = if w.is_symmetric() {
        let pd = PdMatrix::from_matrix(value.clone()).map_err(|e| Failure::core("eval", e))?;
        Some(pd.min_eigenvalue())
    } else {
        None
    };
    write_out(out, &value)?;
    let mut text = format!("word: {w}\nsymmetric: {}\n", w.is_symmetric());
    if let Some(m) = min_eigenvalue {
        writeln!(text, "min eigenvalue: {m:.6e}").unwrap();
    }
    writeln!(text, "value:\n{}", matrix_text(&value)).unwrap();
    let report = EvalReport {
        symmetric: w.is_symmetric(),
        word: w,
        min_eigenvalue,
        value: MatrixJson::from(&value),
    };
    Ok(Outcome::new(&report, text))
}

#[derive(Serialize)]
struct PowerJson {
    base: WordExpr,
    k: u32,
}

#[derive(Serialize)]
struct CheckReport {
    word: WordExpr,
    symmetric: bool,
    a_positive: bool,
    class: usize,
    s_a: String,
    s_b_pos: String,
    s_b_neg: String,
    power: PowerJson,
}

pub fn check(word: &str) -> Result<Outcome, Failure> {
    let w = input::word(word)?;
    let shape = w.shape();
    let (base, k) = detect_power(&w);
    let report = CheckReport {
        word: w.clone(),
        symmetric: shape.symmetric,
        a_positive: shape.a_positive,
        class: shape.class_number,
        s_a: shape.s_a.to_string(),
        s_b_pos: shape.s_b_pos.to_string(),
        s_b_neg: shape.s_b_neg.to_string(),
        power: PowerJson { base, k },
    };
    let text = format!(
        "word: {}\nsymmetric: {}\nA-positive: {}\nclass: {}\nA exponent sum: {}\nB exponent sums: +{} / -{}\npower: ({})^{}\n",
        report.word,
        report.symmetric,
        report.a_positive,
        report.class,
        report.s_a,
        report.s_b_pos,
        report.s_b_neg,
        report.power.base,
        report.power.k
    );
    Ok(Outcome::new(&report, text))
}

#[derive(Serialize)]
struct ReduceReport {
    word: WordExpr,
    reduced_word: WordExpr,
    trail: ReductionTrail,
}

pub fn reduce(word: &str) -> Result<Outcome, Failure> {
    let w = input::word(word)?;
    // The rules act on the word alone; 1x1 identities stand in for B and P.
    let one = PdMatrix::identity(1);
    let eq = Equation::new(w.clone(), one.clone(), one).map_err(|e| Failure::core("--word", e))?;
    let (reduced, trail) = reduce_fully(&eq);
    let text = format!("word: {w}\nreduced: {}\nsteps: {}\n", reduced.word, trail_text(&trail));
    let report = ReduceReport {
        word: w,
        reduced_word: reduced.word,
        trail,
    };
    Ok(Outcome::new(&report, text))
}

#[derive(Serialize)]
struct GeomeanReport {
    mean: PdMatrix,
}

pub fn geomean(c: &Path, d: &Path, out: Option<&Path>) -> Result<Outcome, Failure> {
    let c = input::pd_matrix("--C", c)?;
    let d = input::pd_matrix("--D", d)?;
    let mean = geometric_mean(&c, &d).map_err(|e| Failure::core("--D", e))?;
    write_out(out, mean.as_matrix())?;
    let text = format!("geometric mean:\n{}", matrix_text(mean.as_matrix()));
    Ok(Outcome::new(&GeomeanReport { mean }, text))
}

pub fn fov(c: &Path) -> Result<Outcome, Failure> {
    let m = input::general_matrix("--C", c)?;
    let cert = is_completely_invertible(&m).map_err(|e| Failure::core("--C", e))?;
    let text = format!(
        "contains zero: {}\nmargin: {:.6e}\ntheta*: {:.6}\ngrid points: {}\n",
        cert.contains_zero, cert.margin, cert.theta_star, cert.grid_points
    );
    Ok(Outcome::new(&cert, text))
}

#[derive(Serialize)]
struct TraceOutput {
    #[serde(flatten)]
    report: TraceSearchReport,
    /// Absent when the word has non-positive exponents.
    class: Option<WordClass>,
}

pub fn trace_search(
    word: &str,
    n: usize,
    trials: usize,
    seed: u64,
    cond_range: (f64, f64),
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let w = input::word(word)?;
    let report = search(&w, n, trials, seed, cond_range).map_err(|e| Failure::core("trace-search", e))?;
    let class = classify_word(&w).ok();
    if let Some(dir) = out {
        fs::create_dir_all(dir).map_err(|e| Failure::input(format!("--out {}: {e}", dir.display())))?;
        let path = |name: &str| -> PathBuf { dir.join(name) };
        input::write_matrix(&path("witness_a.pdm"), report.witness.a.as_matrix())?;
        input::write_matrix(&path("witness_b.pdm"), report.witness.b.as_matrix())?;
    }
    let mut text = format!(
        "word: {}\nclass: {}\ntrials: {} (n = {}, seed = {})\nmin trace: {:.6e} at trial {}\n",
        report.word,
        class.as_ref().map_or("unclassified".to_string(), |c| format!("{:?}", c.tag)),
        report.trials,
        report.dimension,
        report.seed,
        report.min_trace,
        report.witness.trial
    );
    if report.min_trace <= 0.0 {
        writeln!(text, "non-positive trace found").unwrap();
    }
    Ok(Outcome::new(&TraceOutput { report, class }, text))
}

pub fn gen_solve(
    word: &str,
    coeff_paths: &[PathBuf],
    p: &Path,
    opts: &SolveOptions,
    out: Option<&Path>,
) -> Result<Outcome, Failure> {
    let w = input::gen_word(word)?;
    let coeffs = coeff_paths
        .iter()
        .map(|path| input::general_matrix("--C", path))
        .collect::<Result<Vec<_>, _>>()?;
    let p = input::pd_matrix("--P", p)?;
    let report = solve_genword(&w, &coeffs, &p, opts).map_err(|e| Failure::core("gen-solve", e))?;
    write_out(out, report.report.solution.as_matrix())?;
    let mut text = report_text(&report.report);
    for c in &report.certificates {
        writeln!(
            text,
            "C{}: completely invertible = {} (margin {:.3e})",
            c.coefficient, !c.certificate.contains_zero, c.certificate.margin
        )
        .unwrap();
    }
    let mut outcome = Outcome::new(&report, text);
    outcome.warnings = report.warnings.clone();
    outcome.success = report.report.relative_residual <= opts.tol;
    if !outcome.success {
        outcome.warnings.push(format!(
            "residual {:.3e} exceeds tolerance {:.3e}",
            report.report.relative_residual, opts.tol
        ));
    }
    Ok(outcome)
}
