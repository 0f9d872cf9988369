use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::exponent::Exponent;
use super::parse::parse_word;
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub letter: Letter,
    pub exp: Exponent,
}

impl Factor {
    pub fn new(letter: Letter, exp: impl Into<Exponent>) -> Self {
        Self {
            letter,
            exp: exp.into(),
        }
    }

    pub fn a(exp: impl Into<Exponent>) -> Self {
        Self::new(Letter::A, exp)
    }

    pub fn b(exp: impl Into<Exponent>) -> Self {
        Self::new(Letter::B, exp)
    }
}

/// A generalized word in `A` and `B`, always kept normalized: no two
/// adjacent factors share a letter and no exponent is zero. The empty
/// factor list is the identity word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct WordExpr {
    factors: Vec<Factor>,
}

/// Merges adjacent same-letter factors and drops zero exponents until
/// nothing changes. A single stack pass reaches the fixpoint because a
/// cancellation exposes the previous factor to the next one.
pub fn normalize(factors: impl IntoIterator<Item = Factor>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    for f in factors {
        if f.exp.is_zero() {
            continue;
        }
        match out.last_mut() {
            Some(top) if top.letter == f.letter => {
                top.exp = top.exp + f.exp;
                if top.exp.is_zero() {
                    out.pop();
                }
            }
            _ => out.push(f),
        }
    }
    out
}

impl WordExpr {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_factors(factors: impl IntoIterator<Item = Factor>) -> Self {
        Self {
            factors: normalize(factors),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// `W*`: the factor list reversed.
    pub fn reversal(&self) -> Self {
        Self {
            factors: self.factors.iter().rev().copied().collect(),
        }
    }

    /// Group inverse: reversed with negated exponents.
    pub fn inverse(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor::new(f.letter, -f.exp))
                .collect(),
        }
    }

    pub fn concat(&self, other: &WordExpr) -> Self {
        Self::from_factors(self.factors.iter().chain(&other.factors).copied())
    }

    /// `self` juxtaposed `k` times, normalized.
    pub fn repeat(&self, k: usize) -> Self {
        Self::from_factors((0..k).flat_map(|_| self.factors.iter().copied()))
    }

    pub fn is_symmetric(&self) -> bool {
        self.factors.iter().eq(self.factors.iter().rev())
    }

    pub fn contains(&self, letter: Letter) -> bool {
        self.factors.iter().any(|f| f.letter == letter)
    }

    pub fn exponents(&self, letter: Letter) -> impl Iterator<Item = Exponent> + '_ {
        self.factors
            .iter()
            .filter(move |f| f.letter == letter)
            .map(|f| f.exp)
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.factors.iter().all(|f| f.exp.is_integer())
    }

    pub fn shape(&self) -> WordShape {
        shape(self)
    }
}

/// Structural summary of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordShape {
    pub class_number: usize,
    pub symmetric: bool,
    pub a_positive: bool,
    /// Sum of all `A` exponents.
    pub s_a: Exponent,
    /// Sum of the positive `B` exponents.
    pub s_b_pos: Exponent,
    /// Sum of `|q|` over the negative `B` exponents.
    pub s_b_neg: Exponent,
}

impl WordShape {
    /// Net `B` exponent `s_b_pos - s_b_neg`.
    pub fn s_b_total(&self) -> Exponent {
        self.s_b_pos + -self.s_b_neg
    }
}

pub fn shape(w: &WordExpr) -> WordShape {
    WordShape {
        class_number: w.exponents(Letter::B).count(),
        symmetric: w.is_symmetric(),
        a_positive: w.exponents(Letter::A).all(|e| e.is_positive()),
        s_a: w.exponents(Letter::A).sum(),
        s_b_pos: w.exponents(Letter::B).filter(|e| e.is_positive()).sum(),
        s_b_neg: w
            .exponents(Letter::B)
            .filter(|e| e.is_negative())
            .map(|e| e.abs())
            .sum(),
    }
}

impl fmt::Display for WordExpr {
    /// Canonical form: one space between factors, parentheses only around
    /// fractional or negative exponents. The identity word prints as `A^0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "A^0");
        }
        for (i, factor) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", factor.letter.as_char())?;
            let e = factor.exp;
            if e == Exponent::ONE {
                continue;
            }
            if e.is_integer() && e.is_positive() {
                write!(f, "^{e}")?;
            } else {
                write!(f, "^({e})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for WordExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_word(s)
    }
}

impl Serialize for WordExpr {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WordExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
