use std::fmt;
use std::ops::{Add, Mul, Neg};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational exponent in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Ratio<i64>);

impl Exponent {
    pub const ZERO: Exponent = Exponent(Ratio::new_raw(0, 1));
    pub const ONE: Exponent = Exponent(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidArgument(format!(
                "exponent {numer}/0 has a zero denominator"
            )));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    pub const fn integer(n: i64) -> Self {
        Self(Ratio::new_raw(n, 1))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }
}

impl From<i64> for Exponent {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 + rhs.0)
    }
}

impl Neg for Exponent {
    type Output = Exponent;
    fn neg(self) -> Exponent {
        Exponent(-self.0)
    }
}

impl Mul for Exponent {
    type Output = Exponent;
    fn mul(self, rhs: Exponent) -> Exponent {
        Exponent(self.0 * rhs.0)
    }
}

impl std::iter::Sum for Exponent {
    fn sum<I: Iterator<Item = Exponent>>(iter: I) -> Exponent {
        iter.fold(Exponent::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    /// Accepts `p` or `p/q` with integer `p`, `q`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("malformed rational `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(Exponent::integer).map_err(|_| bad()),
            Some((n, d)) => {
                let n = n.trim().parse::<i64>().map_err(|_| bad())?;
                let d = d.trim().parse::<i64>().map_err(|_| bad())?;
                Exponent::new(n, d)
            }
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
