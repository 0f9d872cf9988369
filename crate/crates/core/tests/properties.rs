use proptest::prelude::*;
use symword_core::matcore::{geometric_mean, matrix_power, random_pd, relative_difference, spectral_norm, Field};
use symword_core::wordlang::{detect_power, evaluate, normalize, Exponent, Factor, Letter, WordExpr};
use symword_core::{CMat, PdMatrix};

fn exponent() -> impl Strategy<Value = Exponent> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Exponent::new(p, q).unwrap())
}

fn factor() -> impl Strategy<Value = Factor> {
    (prop_oneof![Just(Letter::A), Just(Letter::B)], exponent()).prop_map(|(l, e)| Factor::new(l, e))
}

fn raw_factors() -> impl Strategy<Value = Vec<Factor>> {
    prop::collection::vec(factor(), 0..8)
}

fn word() -> impl Strategy<Value = WordExpr> {
    raw_factors().prop_map(WordExpr::from_factors)
}

/// Alternating letters with nonzero integer exponents, so both letters occur.
fn two_letter_integer_word() -> impl Strategy<Value = WordExpr> {
    let e = prop_oneof![-3i64..=-1, 1i64..=3];
    (any::<bool>(), prop::collection::vec(e, 2..8)).prop_map(|(b_first, exps)| {
        let letters = if b_first { [Letter::B, Letter::A] } else { [Letter::A, Letter::B] };
        WordExpr::from_factors(exps.into_iter().enumerate().map(|(i, e)| Factor::new(letters[i % 2], e)))
    })
}

fn pair(n: usize, seed: u64, field: Field) -> (PdMatrix, PdMatrix) {
    (random_pd(n, seed, 3.0, field), random_pd(n, seed.wrapping_add(1), 3.0, field))
}

fn raw_product(f: &[Factor], a: &PdMatrix, b: &PdMatrix) -> CMat {
    let n = a.dim();
    f.iter().fold(CMat::identity(n, n), |acc, f| {
        let base = if f.letter == Letter::A { a } else { b };
        acc * base.pow(f.exp.to_f64()).as_matrix()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(w in word()) {
        let text = w.to_string();
        let back: WordExpr = text.parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn normalize_is_idempotent(f in raw_factors()) {
        let once = normalize(f);
        prop_assert_eq!(normalize(once.clone()), once);
    }

    #[test]
    fn normalize_preserves_value(f in prop::collection::vec(factor(), 0..5), seed in any::<u64>()) {
        let (a, b) = pair(2, seed, Field::Complex);
        let direct = raw_product(&f, &a, &b);
        let normalized = evaluate(&WordExpr::from_factors(f), &a, &b).unwrap();
        prop_assert!(relative_difference(&normalized, &direct) < 1e-9);
    }

    #[test]
    fn reversal_is_an_anti_homomorphism(u in word(), v in word()) {
        prop_assert_eq!(u.concat(&v).reversal(), v.reversal().concat(&u.reversal()));
        prop_assert_eq!(u.reversal().reversal(), u.clone());
        prop_assert_eq!(u.concat(&u.inverse()), WordExpr::identity());
    }

    #[test]
    fn reversal_is_transpose_on_real_pairs(f in prop::collection::vec(factor(), 0..5), seed in any::<u64>()) {
        let (a, b) = pair(3, seed, Field::Real);
        let w = WordExpr::from_factors(f);
        let x = evaluate(&w, &a, &b).unwrap();
        let y = evaluate(&w.reversal(), &a, &b).unwrap();
        prop_assert!(relative_difference(&y, &x.transpose()) < 1e-9);
    }

    #[test]
    fn detected_power_reconstructs(w in word()) {
        prop_assume!(!w.is_identity());
        let (base, k) = detect_power(&w);
        prop_assert!(k >= 1);
        prop_assert_eq!(base.repeat(k as usize), w);
    }

    #[test]
    fn repetition_is_detected(v in two_letter_integer_word(), m in 1usize..4) {
        // with fractional exponents a single-letter core can collapse, e.g. (A B^(1/3) A^-1)^3
        let (base, k) = detect_power(&v.repeat(m));
        prop_assert_eq!(k as usize % m, 0);
        prop_assert_eq!(base.repeat(k as usize), v.repeat(m));
    }

    #[test]
    fn power_laws(seed in any::<u64>(), s in -2.0f64..2.0, t in -2.0f64..2.0, n in 1usize..5) {
        let a = random_pd(n, seed, 10.0, Field::Complex);
        let lhs = a.pow(s).as_matrix() * a.pow(t).as_matrix();
        prop_assert!(relative_difference(&lhs, a.pow(s + t).as_matrix()) < 1e-9);
        prop_assert!(relative_difference(matrix_power(&a.pow(s), t).as_matrix(), a.pow(s * t).as_matrix()) < 1e-9);
        let id = a.inverse().as_matrix() * a.as_matrix();
        prop_assert!(relative_difference(&id, &CMat::identity(n, n)) < 1e-10);
    }

    #[test]
    fn spectral_norm_is_submultiplicative(seed in any::<u64>(), n in 1usize..5) {
        let (x, y) = pair(n, seed, Field::Complex);
        let x = x.as_matrix() * CMat::identity(n, n).map(|z| z * num_complex::Complex64::new(0.0, 1.0));
        let xy = &x * y.as_matrix();
        prop_assert!(spectral_norm(&xy) <= spectral_norm(&x) * spectral_norm(y.as_matrix()) * (1.0 + 1e-12));
    }

    #[test]
    fn geometric_mean_properties(seed in any::<u64>(), n in 1usize..5) {
        let (c, d) = pair(n, seed, Field::Complex);
        let g = geometric_mean(&c, &d).unwrap();
        let h = geometric_mean(&d, &c).unwrap();
        prop_assert!(relative_difference(g.as_matrix(), h.as_matrix()) < 1e-9);
        let riccati = g.as_matrix() * c.inverse().as_matrix() * g.as_matrix();
        prop_assert!(relative_difference(&riccati, d.as_matrix()) < 1e-9);
    }
}
