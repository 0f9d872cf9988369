use num_complex::Complex64;

use super::*;
use crate::matcore::random::{random_diagonal_pd, random_hermitian, random_pd, random_unitary, seeded_rng, Field};
use crate::matcore::{max_imaginary, CMat, HermitianMatrix};
use crate::wordlang::WordExpr;

fn w(s: &str) -> WordExpr {
    s.parse().unwrap()
}

fn instance(word: &str, n: usize, seed: u64, field: Field) -> Equation {
    let b = random_pd(n, seed, 10.0, field);
    let p = random_pd(n, seed ^ 0xabcd, 10.0, field);
    Equation::new(w(word), b, p).unwrap()
}

#[test]
fn newton_matches_closed_form_aba() {
    for seed in 0..5 {
        let eq = instance("ABA", 4, seed, Field::Complex);
        let report = newton_solve(&eq, &SolveOptions::default()).unwrap();
        let exact = solve_aba(&eq.b, &eq.p).unwrap();
        assert!(relative_difference(report.solution.as_matrix(), exact.as_matrix()) <= 1e-8);
        assert_eq!(report.method, Method::Newton);
        assert_eq!(report.residual_history.len(), report.iterations + 1);
    }
}

#[test]
fn diagonal_instances_match_scalar_solutions() {
    let word = w("A^2 B A B A^2");
    let mut rng = seeded_rng(3);
    let b = random_diagonal_pd(&mut rng, 4, 0.2, 5.0);
    let p = random_diagonal_pd(&mut rng, 4, 0.2, 5.0);
    let eq = Equation::new(word, b.clone(), p.clone()).unwrap();
    let report = newton_solve(&eq, &SolveOptions::default()).unwrap();
    let a = report.solution.as_matrix();
    for i in 0..4 {
        // a^5 b^2 = p
        let (bi, pi) = (b.as_matrix()[(i, i)].re, p.as_matrix()[(i, i)].re);
        let want = (pi / (bi * bi)).powf(1.0 / 5.0);
        assert!((a[(i, i)].re - want).abs() <= 1e-10 * want);
        for j in 0..4 {
            if i != j {
                assert_eq!(a[(i, j)], Complex64::new(0.0, 0.0));
            }
        }
    }
}

#[test]
fn hard_word_converges() {
    let eq = instance("A^2 B A B A^2", 4, 17, Field::Complex);
    let report = newton_solve(&eq, &SolveOptions::default()).unwrap();
    assert!(report.relative_residual <= 1e-8);
    assert!(verify(&eq, &report.solution).unwrap() <= 1e-8);
}

#[test]
fn newton_requires_integer_exponents() {
    let eq = instance("A^(1/2) B A^(1/2)", 2, 1, Field::Complex);
    assert!(matches!(
        newton_solve(&eq, &SolveOptions::default()),
        Err(Error::NonIntegerExponent { .. })
    ));
}

#[test]
fn solve_reduces_then_solves() {
    let eq = instance("A^(1/2) B A B A^(1/2)", 3, 5, Field::Complex);
    let report = solve(&eq, &SolveOptions::default()).unwrap();
    assert!(report.relative_residual <= 1e-8);
    assert!(!report.trail.is_empty());
}

#[test]
fn solve_pure_power() {
    let p = random_pd(3, 8, 10.0, Field::Complex);
    let q = Exponent::new(5, 3).unwrap();
    let eq = Equation::new(WordExpr::from_factors([crate::wordlang::Factor::a(q)]), PdMatrix::identity(3), p.clone()).unwrap();
    let report = solve(&eq, &SolveOptions::default()).unwrap();
    assert_eq!(report.method, Method::ClosedFormPower);
    assert!(relative_difference(report.solution.as_matrix(), p.pow(0.6).as_matrix()) < 1e-12);
}

#[test]
fn solve_class_one_closed_form() {
    let eq = instance("B A^(3/2) B^-2 A^(3/2) B", 4, 9, Field::Complex);
    let report = solve(&eq, &SolveOptions::default()).unwrap();
    assert_eq!(report.method, Method::ClosedFormABA);
    assert!(report.relative_residual <= 1e-10);
}

#[test]
fn scalar_equations_match_closed_algebra() {
    for (i, word) in ["A^2 B A B A^2", "A B^(-1/2) A^3 B^(-1/2) A", "B A^(1/3) B", "A^2 B^3 A^2"].iter().enumerate() {
        let (bv, pv) = (0.7 + i as f64, 2.5 / (1.0 + i as f64));
        let eq = Equation::new(
            w(word),
            PdMatrix::from_diagonal(&[bv]).unwrap(),
            PdMatrix::from_diagonal(&[pv]).unwrap(),
        )
        .unwrap();
        let shape = eq.word.shape();
        let want = (pv * bv.powf(-shape.s_b_total().to_f64())).powf(1.0 / shape.s_a.to_f64());
        let got = solve(&eq, &SolveOptions::default()).unwrap().solution.as_matrix()[(0, 0)].re;
        assert!((got - want).abs() <= 1e-12 * want, "{word}: {got} vs {want}");
    }
}

#[test]
fn real_inputs_give_real_solution() {
    let eq = instance("A^2 B A B A^2", 4, 23, Field::Real);
    let report = solve(&eq, &SolveOptions::default()).unwrap();
    assert!(max_imaginary(report.solution.as_matrix()) <= 1e-10 * report.solution.spectral_norm());
}

#[test]
fn probe_on_aba_is_tight() {
    let eq = instance("ABA", 3, 31, Field::Complex);
    let report = uniqueness_probe(&eq, &SolveOptions::default()).unwrap();
    assert_eq!(report.starts.len(), 8);
    assert!(report.converged_count() >= 2);
    assert!(report.dispersion <= 1e-6);
}

#[test]
fn probe_scalar_has_no_dispersion() {
    let eq = Equation::new(
        w("A^2 B A B A^2"),
        PdMatrix::from_diagonal(&[1.7]).unwrap(),
        PdMatrix::from_diagonal(&[0.3]).unwrap(),
    )
    .unwrap();
    let report = uniqueness_probe(&eq, &SolveOptions::default()).unwrap();
    assert_eq!(report.converged_count(), 8);
    assert!(report.dispersion <= 1e-12);
}

#[test]
fn verify_examples() {
    let eq = instance("ABA", 3, 40, Field::Complex);
    let a = solve_aba(&eq.b, &eq.p).unwrap();
    assert!(verify(&eq, &a).unwrap() <= 1e-12);

    let bump = random_hermitian(&mut seeded_rng(41), 3, Field::Complex);
    let perturbed = PdMatrix::from_matrix(a.as_matrix() + bump.as_matrix() * Complex64::new(1e-3, 0.0)).unwrap();
    assert!(verify(&eq, &perturbed).unwrap() > 1e-6);

    let trivial = Equation {
        word: WordExpr::identity(),
        b: PdMatrix::identity(2),
        p: PdMatrix::identity(2),
    };
    assert_eq!(verify(&trivial, &PdMatrix::identity(2)).unwrap(), 0.0);
}

#[test]
fn options_validation() {
    let bad = SolveOptions {
        starts: 0,
        ..SolveOptions::default()
    };
    assert!(bad.validate().is_err());
    let bad = SolveOptions {
        tol: 0.0,
        ..SolveOptions::default()
    };
    assert!(bad.validate().is_err());
}

fn random_in_m(n: usize, seed: u64) -> HermitianMatrix {
    let mut rng = seeded_rng(seed);
    let u = random_unitary(&mut rng, n, Field::Complex);
    let d: Vec<f64> = (0..n)
        .map(|i| if i == 0 { 0.0 } else { rand::Rng::gen_range(&mut rng, 0.0..=1.0) })
        .collect();
    let diag = CMat::from_diagonal(&nalgebra::DVector::from_iterator(n, d.iter().map(|&x| Complex64::new(x, 0.0))));
    HermitianMatrix::hermitize(&(&u * diag * u.adjoint()))
}

#[test]
fn fixed_point_scalar_case_is_one() {
    let eq = Equation::new(
        w("A^2 B^-1 A B^3 A B^-1 A^2"),
        PdMatrix::from_diagonal(&[2.3]).unwrap(),
        PdMatrix::from_diagonal(&[0.4]).unwrap(),
    )
    .unwrap();
    for (x, k) in [(0.0, 1), (0.37, 10), (1.0, 100)] {
        let fx = fixed_point_map(&HermitianMatrix::from_diagonal(&[x]).unwrap(), &eq, k).unwrap();
        assert!((fx.as_matrix()[(0, 0)].re - 1.0).abs() <= 1e-14);
    }
}

#[test]
fn fixed_point_maps_into_m() {
    let eq = instance("A^2 B A B A^2", 4, 50, Field::Complex);
    for seed in 0..10 {
        let x = random_in_m(4, seed);
        let fx = fixed_point_map(&x, &eq, 10).unwrap();
        assert!(fx.min_eigenvalue() > 0.0);
        assert!(fx.spectral_norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn fixed_point_cross_check() {
    // X = I, B = I, P = I, word A·A·A: both routes give I.
    let eq = Equation::new(w("A^3"), PdMatrix::identity(3), PdMatrix::identity(3)).unwrap();
    let x = HermitianMatrix::identity(3);
    let k = 4;
    let fx = fixed_point_map(&x, &eq, k).unwrap();
    let y = PdMatrix::identity(3).scaled(1.0 + 1.0 / k as f64);
    // S(Y)^{-1} = S(Y^{-1}) for the inner word A, then D # P
    let q = y.inverse();
    let g = fixed_point_scale(&x, &eq, k).unwrap();
    let direct = crate::matcore::geometric_mean(&q, &eq.p).unwrap().scaled(1.0 / g);
    assert!(relative_difference(fx.as_matrix(), direct.as_matrix()) <= 1e-12);
    assert!(relative_difference(fx.as_matrix(), &CMat::identity(3, 3)) <= 1e-12);
}

#[test]
fn fixed_point_domain_errors() {
    let eq = instance("ABA", 2, 60, Field::Complex);
    let big = HermitianMatrix::from_diagonal(&[0.5, 1.5]).unwrap();
    assert!(fixed_point_map(&big, &eq, 1).is_err());
    let neg = HermitianMatrix::from_diagonal(&[-0.1, 0.5]).unwrap();
    assert!(fixed_point_map(&neg, &eq, 1).is_err());
    let not_asa = instance("A^(1/2) B A^(1/2)", 2, 61, Field::Complex);
    assert!(fixed_point_map(&HermitianMatrix::from_diagonal(&[0.5, 0.5]).unwrap(), &not_asa, 1).is_err());
}
