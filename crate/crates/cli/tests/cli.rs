use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn symword(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symword"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Self {
        let f = Self {
            dir: TempDir::new().unwrap(),
        };
        f.put("b.pdm", "# B\npdm1 2 real\n2 0.5\n0.5 1\n");
        f.put("p.pdm", "pdm1 2 real\n3 1\n1 2\n");
        f.put("c.pdm", "pdm1 3 complex\n2 0 0 1 0 0\n0 -1 3 0 1 0\n0 0 1 0 1 0\n");
        f.put("d.pdm", "pdm1 3 real\n1 0.2 0\n0.2 2 0.3\n0 0.3 4\n");
        f.put("indef.pdm", "pdm1 2 real\n1 0\n0 -1\n");
        f
    }

    fn put(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn s(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
}

fn read_matrix(path: &Path) -> Vec<f64> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .flat_map(|l| l.split_whitespace().map(|x| x.parse::<f64>().unwrap()).collect::<Vec<_>>())
        .collect()
}

#[test]
fn solve_aba_closed_form() {
    let f = Files::new();
    let o = symword(&["solve", "--word", "A B A", "--B", &f.s("b.pdm"), "--P", &f.s("p.pdm"), "--output", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert!(r["relative_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["method"], "ClosedFormABA");
}

#[test]
fn solve_rejects_non_symmetric_word() {
    let f = Files::new();
    let o = symword(&["solve", "--word", "A^-1 B A", "--B", &f.s("b.pdm"), "--P", &f.s("p.pdm")]);
    assert_eq!(code(&o), 1);
    let e = stderr(&o);
    assert!(e.contains("--word") && e.contains("symmetric"), "{e}");
}

#[test]
fn solve_plain_a_writes_p() {
    let f = Files::new();
    let out = f.path("a.pdm");
    let o = symword(&["solve", "--word", "A", "--P", &f.s("p.pdm"), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let a = read_matrix(&out);
    for (x, y) in a.iter().zip([3.0, 1.0, 1.0, 2.0]) {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn solve_needs_b_for_words_with_b() {
    let f = Files::new();
    let o = symword(&["solve", "--word", "A B A", "--P", &f.s("p.pdm")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--B"));
}

#[test]
fn solve_newton_is_deterministic() {
    let f = Files::new();
    let args = ["solve", "--word", "A^2 B A B A^2", "--B", &f.s("b.pdm"), "--P", &f.s("p.pdm"), "--output", "json", "--probe", "--seed", "5"];
    let a = symword(&args);
    let b = symword(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a);
    assert_eq!(r["method"], "Newton");
    assert!(r["dispersion"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn solver_failure_exits_two() {
    let f = Files::new();
    let o = symword(&[
        "solve", "--word", "A^2 B A B A^2", "--B", &f.s("b.pdm"), "--P", &f.s("p.pdm"), "--max-iters", "1", "--starts", "1",
    ]);
    assert_eq!(code(&o), 2, "{}", stderr(&o));
}

#[test]
fn input_errors_name_the_source() {
    let f = Files::new();
    let bad = f.put("bad.pdm", "pdm1 2 real\n3 1\n1\n");
    let o = symword(&["solve", "--word", "A", "--P", &bad]);
    assert_eq!(code(&o), 1);
    let e = stderr(&o);
    assert!(e.contains("--P") && e.contains("line 3"), "{e}");

    let o = symword(&["solve", "--word", "A", "--P", &f.s("missing.pdm")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("missing.pdm"));

    let nonherm = f.put("nh.pdm", "pdm1 2 real\n1 2\n0 1\n");
    let o = symword(&["geomean", "--C", &nonherm, "--D", &f.s("p.pdm")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("Hermitian"));

    let o = symword(&["check", "--word", "A^(1/0)"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--word"));

    let o = symword(&["solve", "--word", "A", "--P", &f.s("p.pdm"), "--tol", "0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--tol"));

    let o = symword(&["check", "--word", "ABA", "--out", &f.s("x.pdm")]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("--out"));
}

#[test]
fn check_json_shape() {
    let o = symword(&["check", "--word", "A B A^2 B A", "--output", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["symmetric"], true);
    assert_eq!(r["a_positive"], true);
    assert_eq!(r["class"], 2);
    assert_eq!(r["s_a"], "4");
    assert_eq!(r["s_b_pos"], "2");
    assert_eq!(r["s_b_neg"], "0");
    assert_eq!(r["power"]["base"], "A B A");
    assert_eq!(r["power"]["k"], 2);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 8);
}

#[test]
fn reduce_reports_trail() {
    let o = symword(&["reduce", "--word", "B^2 A^(1/2) B A B A B A^(1/2) B^2", "--output", "json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["reduced_word"], "A B A");
    assert_eq!(r["trail"]["steps"].as_array().unwrap().len(), 3);
}

#[test]
fn eval_symmetric_word_is_pd() {
    let f = Files::new();
    let o = symword(&["eval", "--word", "A B^2 A", "--A", &f.s("p.pdm"), "--B", &f.s("b.pdm"), "--output", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert!(r["min_eigenvalue"].as_f64().unwrap() > 0.0);

    let o = symword(&["eval", "--word", "A B", "--A", &f.s("p.pdm"), "--B", &f.s("d.pdm")]);
    assert_eq!(code(&o), 1);
}

#[test]
fn geomean_is_symmetric_in_arguments() {
    let f = Files::new();
    let cd = f.put("c2.pdm", "pdm1 3 real\n4 1 0\n1 3 0.5\n0 0.5 2\n");
    let x = f.path("x.pdm");
    let y = f.path("y.pdm");
    let a = symword(&["geomean", "--C", &cd, "--D", &f.s("d.pdm"), "--out", x.to_str().unwrap()]);
    let b = symword(&["geomean", "--C", &f.s("d.pdm"), "--D", &cd, "--out", y.to_str().unwrap()]);
    assert_eq!((code(&a), code(&b)), (0, 0));
    for (u, v) in read_matrix(&x).iter().zip(read_matrix(&y)) {
        assert!((u - v).abs() <= 1e-9 * v.abs().max(1.0));
    }
}

#[test]
fn fov_certificates() {
    let f = Files::new();
    let o = symword(&["fov", "--C", &f.s("d.pdm"), "--output", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["contains_zero"], false);
    let o = symword(&["fov", "--C", &f.s("indef.pdm"), "--output", "json"]);
    assert_eq!(json(&o)["contains_zero"], true);
    let o = symword(&["fov", "--C", &f.s("c.pdm"), "--output", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn trace_search_is_reproducible_and_dumps_witness() {
    let f = Files::new();
    let dir = f.path("witness");
    let args = ["trace-search", "--word", "A B A^2 B^2", "--trials", "500", "--seed", "3", "--output", "json"];
    let a = symword(&args);
    let b = symword(&args);
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["class"]["tag"]["kind"], "Neither");

    let mut with_out = args.to_vec();
    let d = dir.to_str().unwrap().to_string();
    with_out.extend(["--out", &d]);
    assert_eq!(code(&symword(&with_out)), 0);
    assert_eq!(read_matrix(&dir.join("witness_a.pdm")).len(), 9);
    assert_eq!(read_matrix(&dir.join("witness_b.pdm")).len(), 9);

    let sym = symword(&["trace-search", "--word", "A B A", "--trials", "300", "--output", "json"]);
    assert!(json(&sym)["min_trace"].as_f64().unwrap() > 0.0);
}

#[test]
fn gen_solve_warns_on_coefficients_containing_zero() {
    let f = Files::new();
    let o = symword(&[
        "gen-solve", "--word", "A C1 C1* A", "--C", &f.s("indef.pdm"), "--P", &f.s("p.pdm"), "--output", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("warning"));
    let r = json(&o);
    assert!(r["relative_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(r["certificates"][0]["certificate"]["contains_zero"], true);

    let o = symword(&[
        "gen-solve", "--word", "A C1 A C1* A", "--C", &f.s("b.pdm"), "--P", &f.s("p.pdm"), "--output", "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(json(&o)["method"], "Newton");

    let o = symword(&["gen-solve", "--word", "A C2 C2* A", "--C", &f.s("b.pdm"), "--P", &f.s("p.pdm")]);
    assert_eq!(code(&o), 1);
}
