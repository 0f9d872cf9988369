//! `symword`: solve and explore symmetric word equations from the shell.
//!
//! Exit codes: 0 success, 1 input error, 2 solver failure.

mod commands;
mod input;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symword_core::solver::SolveOptions;

use commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "symword", version, about = "Symmetric word equations in positive definite matrices")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct Global {
    /// Report format; JSON is the stable machine interface.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Target relative residual.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Newton iterations per start.
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Newton starts, the first being a scaled identity.
    #[arg(long, global = true)]
    starts: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Where to write the resulting matrix (a directory for trace-search).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Global {
    fn solve_options(&self) -> Result<SolveOptions, commands::Failure> {
        let d = SolveOptions::default();
        let opts = SolveOptions {
            tol: self.tol.unwrap_or(d.tol),
            max_iters: self.max_iters.unwrap_or(d.max_iters),
            starts: self.starts.unwrap_or(d.starts),
            seed: self.seed,
            ..d
        };
        let bad = |m: &str| Err(commands::Failure::input(m.to_string()));
        if !(opts.tol > 0.0) {
            return bad("--tol: must be positive");
        }
        if opts.max_iters == 0 {
            return bad("--max-iters: must be at least 1");
        }
        if opts.starts == 0 {
            return bad("--starts: must be at least 1");
        }
        Ok(opts)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve S(A, B) = P for positive definite A.
    Solve {
        #[arg(long)]
        word: String,
        /// Required when the word contains B.
        #[arg(long = "B", value_name = "FILE")]
        b: Option<PathBuf>,
        #[arg(long = "P", value_name = "FILE")]
        p: PathBuf,
        /// Also run the multi-start uniqueness probe and report dispersion.
        #[arg(long)]
        probe: bool,
    },
    /// Evaluate a word at given A and B.
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
    },
    /// Structural summary of a word.
    Check {
        #[arg(long)]
        word: String,
    },
    /// Apply the reduction rules to an equation word.
    Reduce {
        #[arg(long)]
        word: String,
    },
    /// Geometric mean C # D.
    Geomean {
        #[arg(long = "C", value_name = "FILE")]
        c: PathBuf,
        #[arg(long = "D", value_name = "FILE")]
        d: PathBuf,
    },
    /// Field-of-values test for complete invertibility.
    Fov {
        #[arg(long = "C", value_name = "FILE")]
        c: PathBuf,
    },
    /// Random search for small traces over real PD pairs.
    TraceSearch {
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 1.0)]
        cond_min: f64,
        #[arg(long, default_value_t = 1e3)]
        cond_max: f64,
    },
    /// Solve a generalized symmetric word equation W(A; C1..Cm) = P.
    GenSolve {
        /// Full word, e.g. "A C1 A^2 C1* A".
        #[arg(long)]
        word: String,
        /// Coefficient files in order C1, C2, ...
        #[arg(long = "C", value_name = "FILE")]
        c: Vec<PathBuf>,
        #[arg(long = "P", value_name = "FILE")]
        p: PathBuf,
    },
}

fn run(cli: &Cli) -> Result<Outcome, commands::Failure> {
    let g = &cli.global;
    let opts = g.solve_options()?;
    let out = g.out.as_deref();
    match &cli.command {
        Command::Solve { word, b, p, probe } => commands::solve(word, b.as_deref(), p, *probe, &opts, out),
        Command::Eval { word, a, b } => commands::eval(word, a, b, out),
        Command::Check { word } => commands::no_out("check", out).and_then(|_| commands::check(word)),
        Command::Reduce { word } => commands::no_out("reduce", out).and_then(|_| commands::reduce(word)),
        Command::Geomean { c, d } => commands::geomean(c, d, out),
        Command::Fov { c } => commands::no_out("fov", out).and_then(|_| commands::fov(c)),
        Command::TraceSearch {
            word,
            n,
            trials,
            cond_min,
            cond_max,
        } => commands::trace_search(word, *n, *trials, g.seed, (*cond_min, *cond_max), out),
        Command::GenSolve { word, c, p } => commands::gen_solve(word, c, p, &opts, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let rendered = match cli.global.output {
                Output::Json => outcome.json,
                Output::Text => outcome.text,
            };
            // A closed pipe is not an error worth reporting.
            let _ = writeln!(io::stdout(), "{}", rendered.trim_end());
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            if outcome.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
