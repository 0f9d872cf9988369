//! Rewrites a symmetric word equation into a uniquely equivalent simpler
//! one, recording how to carry a solution back.
//!
//! Rules, tried in this order until none applies:
//! 1. strip an outer `B^s ... B^s`, replacing `P` by `B^{-s} P B^{-s}`;
//! 2. take a `k`-th root of a power word `V^k`, replacing `P` by `P^{1/k}`;
//! 3. rescale fractional `A` exponents by `L = lcm(denominators)`; the new
//!    unknown is `X = A^{1/L}`, so `A = X^L`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{check_same_dim, pd_congruence, PdMatrix};
use crate::wordlang::{detect_power, Exponent, Factor, Letter, WordExpr};

/// `S(A, B) = P` with `S` symmetric and A-positive.
#[derive(Clone, Debug, Serialize)]
pub struct Equation {
    pub word: WordExpr,
    pub b: PdMatrix,
    pub p: PdMatrix,
}

impl Equation {
    /// Checks that the word is symmetric, A-positive and contains `A`, and
    /// that `B`, `P` share a dimension.
    pub fn new(word: WordExpr, b: PdMatrix, p: PdMatrix) -> Result<Self> {
        check_word_equation(&word)?;
        check_same_dim(b.dim(), p.dim())?;
        Ok(Self { word, b, p })
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn is_real(&self) -> bool {
        self.b.is_real() && self.p.is_real()
    }
}

pub(crate) fn check_word_equation(word: &WordExpr) -> Result<()> {
    if !word.contains(Letter::A) {
        return Err(Error::NotSymmetricWordEquation(format!(
            "`{word}` does not contain the unknown A"
        )));
    }
    if !word.is_symmetric() {
        return Err(Error::NotSymmetricWordEquation(format!("`{word}` is not symmetric")));
    }
    if !word.shape().a_positive {
        return Err(Error::NotSymmetricWordEquation(format!(
            "`{word}` has a non-positive exponent on A (mixed-sign words may have no PD solution)"
        )));
    }
    Ok(())
}

/// One applied rewrite, with what is needed to invert it on a solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule")]
pub enum ReductionStep {
    /// Removed `B^s` from both ends; the unknown is unchanged.
    StripOuterB { s: Exponent },
    /// Replaced `V^k = P` with `V = P^{1/k}`; the unknown is unchanged.
    RootReduce { k: u32 },
    /// New unknown `X = A^{1/l}`; maps back by `A = X^l`.
    RescaleA { l: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReductionTrail {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrail {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn strip_outer_b(eq: &Equation) -> Option<(Equation, ReductionStep)> {
    let f = eq.word.factors();
    let first = *f.first()?;
    if first.letter != Letter::B {
        return None;
    }
    let inner = WordExpr::from_factors(f[1..f.len() - 1].iter().copied());
    let b_neg = eq.b.pow(-first.exp.to_f64());
    let p = pd_congruence(&eq.p, b_neg.as_matrix()).ok()?;
    let reduced = Equation {
        word: inner,
        b: eq.b.clone(),
        p,
    };
    Some((reduced, ReductionStep::StripOuterB { s: first.exp }))
}

pub fn root_reduce(eq: &Equation) -> Option<(Equation, ReductionStep)> {
    let (base, k) = detect_power(&eq.word);
    if k < 2 || check_word_equation(&base).is_err() {
        return None;
    }
    let reduced = Equation {
        word: base,
        b: eq.b.clone(),
        p: eq.p.pow(1.0 / k as f64),
    };
    Some((reduced, ReductionStep::RootReduce { k }))
}

pub fn rescale_a_to_integer(eq: &Equation) -> Option<(Equation, ReductionStep)> {
    let l = eq
        .word
        .exponents(Letter::A)
        .fold(1i64, |acc, e| acc.lcm(&e.denom()));
    if l == 1 {
        return None;
    }
    let scale = Exponent::integer(l);
    let word = WordExpr::from_factors(eq.word.factors().iter().map(|f| match f.letter {
        Letter::A => Factor::a(f.exp * scale),
        Letter::B => *f,
    }));
    let reduced = Equation {
        word,
        b: eq.b.clone(),
        p: eq.p.clone(),
    };
    Some((reduced, ReductionStep::RescaleA { l: l as u64 }))
}

/// Applies the rules to a fixpoint. Every rule strictly decreases
/// (factor count, A-denominator lcm, power multiplicity) lexicographically.
pub fn reduce_fully(eq: &Equation) -> (Equation, ReductionTrail) {
    let mut current = eq.clone();
    let mut trail = ReductionTrail::default();
    loop {
        let next = strip_outer_b(&current)
            .or_else(|| root_reduce(&current))
            .or_else(|| rescale_a_to_integer(&current));
        match next {
            Some((reduced, step)) => {
                trail.steps.push(step);
                current = reduced;
            }
            None => return (current, trail),
        }
    }
}

/// Carries a solution of the reduced equation back to the original one.
pub fn map_back(trail: &ReductionTrail, reduced_solution: &PdMatrix) -> PdMatrix {
    trail
        .steps
        .iter()
        .rev()
        .fold(reduced_solution.clone(), |a, step| match step {
            ReductionStep::RescaleA { l } => a.pow(*l as f64),
            ReductionStep::StripOuterB { .. } | ReductionStep::RootReduce { .. } => a,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::random::{random_pd, Field};
    use crate::matcore::relative_difference;
    use crate::wordlang::evaluate;

    fn w(s: &str) -> WordExpr {
        s.parse().unwrap()
    }

    fn eq(word: &str, seed: u64) -> Equation {
        let b = random_pd(3, seed, 5.0, Field::Complex);
        let p = random_pd(3, seed + 100, 5.0, Field::Complex);
        Equation::new(w(word), b, p).unwrap()
    }

    #[test]
    fn equation_preconditions() {
        let b = PdMatrix::identity(2);
        let p = PdMatrix::identity(2);
        for bad in ["A B", "A^-1 B A^2 B A^-1", "B", "B A^-1 B"] {
            let e = Equation::new(w(bad), b.clone(), p.clone()).unwrap_err();
            assert!(matches!(e, Error::NotSymmetricWordEquation(_)), "{bad}");
        }
        assert!(Equation::new(w("ABA"), b, PdMatrix::identity(3)).is_err());
    }

    #[test]
    fn strip_examples() {
        let e = eq("B A B", 1);
        let (r, step) = strip_outer_b(&e).unwrap();
        assert_eq!(r.word, w("A"));
        assert_eq!(step, ReductionStep::StripOuterB { s: Exponent::ONE });
        let binv = e.b.inverse();
        let want = binv.as_matrix() * e.p.as_matrix() * binv.as_matrix();
        assert!(relative_difference(r.p.as_matrix(), &want) < 1e-12);

        let e = eq("B^(1/2) A^2 B^(1/2)", 2);
        let (r, _) = strip_outer_b(&e).unwrap();
        assert_eq!(r.word, w("A^2"));
        let bh = e.b.pow(-0.5);
        let want = bh.as_matrix() * e.p.as_matrix() * bh.as_matrix();
        assert!(relative_difference(r.p.as_matrix(), &want) < 1e-12);

        assert!(strip_outer_b(&eq("ABA", 3)).is_none());
    }

    #[test]
    fn root_examples() {
        let e = eq("A B A^2 B A", 4);
        let (r, step) = root_reduce(&e).unwrap();
        assert_eq!(r.word, w("ABA"));
        assert_eq!(step, ReductionStep::RootReduce { k: 2 });
        assert!(relative_difference(r.p.as_matrix(), e.p.sqrt().as_matrix()) < 1e-14);

        let e = Equation::new(
            w("A^2"),
            PdMatrix::identity(2),
            PdMatrix::from_diagonal(&[4.0, 9.0]).unwrap(),
        )
        .unwrap();
        let (r, _) = root_reduce(&e).unwrap();
        assert_eq!(r.word, w("A"));
        let want = PdMatrix::from_diagonal(&[2.0, 3.0]).unwrap();
        assert!(relative_difference(r.p.as_matrix(), want.as_matrix()) < 1e-15);

        assert!(root_reduce(&eq("ABA", 5)).is_none());
    }

    #[test]
    fn rescale_examples() {
        let (r, step) = rescale_a_to_integer(&eq("A^(1/2) B A^(1/2)", 6)).unwrap();
        assert_eq!(r.word, w("ABA"));
        assert_eq!(step, ReductionStep::RescaleA { l: 2 });
        let (r, _) = rescale_a_to_integer(&eq("A^(3/2) B A^(3/2)", 6)).unwrap();
        assert_eq!(r.word, w("A^3 B A^3"));
        assert!(rescale_a_to_integer(&eq("ABA", 7)).is_none());
    }

    #[test]
    fn rescale_back_map_is_sound() {
        // X solves X B X = P  =>  A = X^2 solves A^{1/2} B A^{1/2} = P
        let x = random_pd(3, 8, 5.0, Field::Complex);
        let b = random_pd(3, 9, 5.0, Field::Complex);
        let p = PdMatrix::from_matrix(evaluate(&w("ABA"), &x, &b).unwrap()).unwrap();
        let trail = ReductionTrail {
            steps: vec![ReductionStep::RescaleA { l: 2 }],
        };
        let a = map_back(&trail, &x);
        let v = evaluate(&w("A^(1/2) B A^(1/2)"), &a, &b).unwrap();
        assert!(relative_difference(&v, p.as_matrix()) < 1e-10);
    }

    #[test]
    fn reduce_fully_examples() {
        let (r, trail) = reduce_fully(&eq("B A B A B", 10));
        assert_eq!(r.word, w("ABA"));
        assert_eq!(trail.steps, vec![ReductionStep::StripOuterB { s: Exponent::ONE }]);

        let (r, trail) = reduce_fully(&eq("A B A^2 B A", 11));
        assert_eq!(r.word, w("ABA"));
        assert_eq!(trail.steps, vec![ReductionStep::RootReduce { k: 2 }]);

        let e = eq("ABA", 12);
        let (r, trail) = reduce_fully(&e);
        assert_eq!(r.word, e.word);
        assert!(trail.is_empty());
        assert_eq!(map_back(&trail, &e.p).as_matrix(), e.p.as_matrix());

        let (r, trail) = reduce_fully(&eq("B^2 A^(1/2) B A B A B A^(1/2) B^2", 13));
        assert_eq!(r.word, w("ABA"));
        assert_eq!(trail.steps.len(), 3);
    }

    #[test]
    fn fixpoint() {
        let (r, _) = reduce_fully(&eq("B A^(2/3) B^-1 A^(4/3) B^-1 A^(2/3) B", 14));
        assert!(strip_outer_b(&r).is_none());
        assert!(root_reduce(&r).is_none());
        assert!(rescale_a_to_integer(&r).is_none());
        assert!(r.word.has_integer_exponents());
    }
}
