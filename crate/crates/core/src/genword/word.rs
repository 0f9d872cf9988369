use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::wordlang::Exponent;

/// Reference to coefficient `C_{index+1}` or its adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CoeffRef {
    /// Zero-based position in the coefficient list.
    pub index: usize,
    pub adjoint: bool,
}

impl CoeffRef {
    pub fn plain(index: usize) -> Self {
        Self {
            index,
            adjoint: false,
        }
    }

    pub fn adjointed(self) -> Self {
        Self {
            adjoint: !self.adjoint,
            ..self
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenFactor {
    A(Exponent),
    C(CoeffRef),
}

impl GenFactor {
    fn adjointed(self) -> Self {
        match self {
            GenFactor::A(e) => GenFactor::A(e),
            GenFactor::C(c) => GenFactor::C(c.adjointed()),
        }
    }
}

/// `W(A; C_1..C_m) = A^{p_1} C_{i_1} A^{p_2} C_{i_2} ⋯ [centre] ⋯ C_{i_2}^* A^{p_2} C_{i_1}^* A^{p_1}`.
///
/// The centre is either a power `A^c` or nothing, in which case the last
/// half coefficient meets its own adjoint (`C C^*`). All `A` exponents are
/// positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSymWord {
    half: Vec<(Exponent, CoeffRef)>,
    center: Option<Exponent>,
}

impl GenSymWord {
    pub fn new(half: Vec<(Exponent, CoeffRef)>, center: Option<Exponent>) -> Result<Self> {
        if half.is_empty() && center.is_none() {
            return Err(Error::InvalidArgument("generalized word is empty".into()));
        }
        let positive = half.iter().map(|(p, _)| p).chain(center.iter()).all(|e| e.is_positive());
        if !positive {
            return Err(Error::InvalidArgument(
                "generalized symmetric words need positive A exponents".into(),
            ));
        }
        Ok(Self { half, center })
    }

    pub fn half(&self) -> &[(Exponent, CoeffRef)] {
        &self.half
    }

    pub fn center(&self) -> Option<Exponent> {
        self.center
    }

    /// Full factor sequence.
    pub fn expand(&self) -> Vec<GenFactor> {
        let mut out = Vec::with_capacity(4 * self.half.len() + 1);
        for &(p, c) in &self.half {
            out.push(GenFactor::A(p));
            out.push(GenFactor::C(c));
        }
        if let Some(c) = self.center {
            out.push(GenFactor::A(c));
        }
        for &(p, c) in self.half.iter().rev() {
            out.push(GenFactor::C(c.adjointed()));
            out.push(GenFactor::A(p));
        }
        out
    }

    /// Symbolic `W* = W`: the reversed sequence with every factor adjointed
    /// equals the sequence.
    pub fn is_self_adjoint(&self) -> bool {
        let f = self.expand();
        f.iter().copied().eq(f.iter().rev().map(|x| x.adjointed()))
    }

    /// Coefficient indices referenced, sorted and deduplicated.
    pub fn coefficient_indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.half.iter().map(|(_, c)| c.index).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn a_exponents(&self) -> impl Iterator<Item = Exponent> + '_ {
        self.half.iter().map(|(p, _)| *p).chain(self.center)
    }

    /// Multiplies every `A` exponent by `s`.
    pub fn rescaled(&self, s: Exponent) -> Self {
        Self {
            half: self.half.iter().map(|&(p, c)| (p * s, c)).collect(),
            center: self.center.map(|c| c * s),
        }
    }
}

fn fmt_a(f: &mut fmt::Formatter<'_>, e: Exponent) -> fmt::Result {
    if e == Exponent::ONE {
        write!(f, "A")
    } else if e.is_integer() {
        write!(f, "A^{e}")
    } else {
        write!(f, "A^({e})")
    }
}

impl fmt::Display for GenSymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.expand().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match factor {
                GenFactor::A(e) => fmt_a(f, e)?,
                GenFactor::C(c) => {
                    write!(f, "C{}", c.index + 1)?;
                    if c.adjoint {
                        write!(f, "*")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for GenSymWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn tokenize(text: &str) -> Result<Vec<GenFactor>> {
    let bytes = text.as_bytes();
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            c if c.is_ascii_whitespace() => i += 1,
            b'A' => {
                i += 1;
                let mut exp = Exponent::ONE;
                if bytes.get(i) == Some(&b'^') {
                    i += 1;
                    let start = i;
                    let body = if bytes.get(i) == Some(&b'(') {
                        let close = text[i..]
                            .find(')')
                            .map(|k| i + k)
                            .ok_or_else(|| err(i, "expected `)`"))?;
                        i = close + 1;
                        &text[start + 1..close]
                    } else {
                        if bytes.get(i) == Some(&b'-') {
                            i += 1;
                        }
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                        &text[start..i]
                    };
                    exp = body.parse().map_err(|_| err(start, "malformed exponent"))?;
                }
                out.push(GenFactor::A(exp));
            }
            b'C' => {
                let start = i;
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let k: usize = text[digits..i]
                    .parse()
                    .map_err(|_| err(start, "expected coefficient number after `C`"))?;
                if k == 0 {
                    return Err(err(start, "coefficients are numbered from C1"));
                }
                let adjoint = bytes.get(i) == Some(&b'*');
                if adjoint {
                    i += 1;
                }
                out.push(GenFactor::C(CoeffRef {
                    index: k - 1,
                    adjoint,
                }));
            }
            c => return Err(err(i, &format!("unexpected character `{}`", c as char))),
        }
    }
    Ok(out)
}

impl FromStr for GenSymWord {
    type Err = Error;

    /// Parses the full expanded form, e.g. `A C1 A^2 C2 A^(1/2) C2* A^2 C1* A`
    /// or `A C1 C1* A`, and folds it into half and centre.
    fn from_str(text: &str) -> Result<Self> {
        let items = tokenize(text)?;
        let not_sym = |why: &str| Error::InvalidArgument(format!("`{text}` is not a generalized symmetric word: {why}"));
        if items.is_empty() {
            return Err(not_sym("empty"));
        }
        let len = items.len();
        if !items.iter().copied().eq(items.iter().rev().map(|x| x.adjointed())) {
            return Err(not_sym("it differs from its adjoint reversal"));
        }
        let center = if len % 2 == 1 {
            match items[len / 2] {
                GenFactor::A(e) => Some(e),
                GenFactor::C(_) => return Err(not_sym("a coefficient cannot be its own centre")),
            }
        } else {
            None
        };
        let first = &items[..len / 2];
        if first.len() % 2 != 0 {
            return Err(not_sym("A powers and coefficients must alternate, starting with A"));
        }
        let mut half = Vec::with_capacity(first.len() / 2);
        for pair in first.chunks(2) {
            match (pair[0], pair[1]) {
                (GenFactor::A(p), GenFactor::C(c)) => half.push((p, c)),
                _ => return Err(not_sym("A powers and coefficients must alternate, starting with A")),
            }
        }
        GenSymWord::new(half, center)
    }
}
