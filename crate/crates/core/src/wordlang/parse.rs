//! Hand-written parser for the word grammar:
//!
//! ```text
//! word   := ws? factor (ws? factor)* ws?
//! factor := letter exp?
//! letter := "A" | "B"
//! exp    := "^" signed | "^(" signed ("/" unsigned)? ")"
//! signed := "-"? unsigned
//! ```

use super::exponent::Exponent;
use super::word::{Factor, Letter, WordExpr};
use crate::error::{Error, Result};

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn unsigned(&mut self) -> Result<i64> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<i64>().map_err(|_| Error::Parse {
            position: start,
            message: format!("integer `{text}` out of range"),
        })
    }

    fn signed(&mut self) -> Result<i64> {
        let negative = self.eat(b'-');
        let v = self.unsigned()?;
        Ok(if negative { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Exponent> {
        if self.eat(b'(') {
            let numer = self.signed()?;
            let denom = if self.eat(b'/') {
                let at = self.pos;
                let d = self.unsigned()?;
                if d == 0 {
                    return Err(Error::Parse {
                        position: at,
                        message: "malformed rational: zero denominator".into(),
                    });
                }
                d
            } else {
                1
            };
            self.expect(b')')?;
            Exponent::new(numer, denom)
        } else {
            if self.peek() == Some(b'/') {
                return Err(self.error("fractional exponents need parentheses, e.g. A^(1/2)"));
            }
            let v = self.signed()?;
            if self.peek() == Some(b'/') {
                return Err(self.error("fractional exponents need parentheses, e.g. A^(1/2)"));
            }
            Ok(Exponent::integer(v))
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let letter = match self.peek() {
            Some(b'A') => Letter::A,
            Some(b'B') => Letter::B,
            Some(c) => return Err(self.error(format!("unexpected character `{}`", c as char))),
            None => return Err(self.error("expected a factor")),
        };
        self.pos += 1;
        let exp = if self.eat(b'^') {
            self.exponent()?
        } else {
            Exponent::ONE
        };
        Ok(Factor::new(letter, exp))
    }
}

/// Parses and normalizes a word such as `A^(1/2) B A B A^(1/2)`.
pub fn parse_word(text: &str) -> Result<WordExpr> {
    let mut cur = Cursor {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut factors = Vec::new();
    cur.skip_ws();
    factors.push(cur.factor()?);
    loop {
        cur.skip_ws();
        if cur.peek().is_none() {
            break;
        }
        factors.push(cur.factor()?);
    }
    Ok(WordExpr::from_factors(factors))
}
