use serde::Serialize;

use crate::error::{Error, Result};
use crate::wordlang::{Factor, Letter, WordExpr};

/// Longest letter string accepted for classification.
const MAX_LETTERS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    /// Letters in the left part.
    pub position: usize,
    pub left: WordExpr,
    pub right: WordExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ClassTag {
    Symmetric,
    TwoSymmetricProduct { left: WordExpr, right: WordExpr },
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordClass {
    pub word: WordExpr,
    pub tag: ClassTag,
    /// Every split of the letter string into two nonempty palindromes.
    pub splits: Vec<Split>,
    /// A cyclic rotation of a non-palindromic word that is a palindrome.
    /// Rotations share traces but are classified separately.
    pub symmetric_rotation: Option<WordExpr>,
}

fn check_positive_integer(w: &WordExpr) -> Result<()> {
    if w.is_identity() {
        return Err(Error::InvalidArgument("cannot classify the empty word".into()));
    }
    for f in w.factors() {
        if !f.exp.is_integer() || !f.exp.is_positive() {
            return Err(Error::NonIntegerExponent {
                letter: f.letter.as_char(),
                exponent: f.exp.to_string(),
                hint: "classification works on words with positive integer powers",
            });
        }
    }
    Ok(())
}

/// The word as a plain letter string, `A^2 B` → `[A, A, B]`.
pub fn letters(w: &WordExpr) -> Result<Vec<Letter>> {
    check_positive_integer(w)?;
    let total: i64 = w.factors().iter().map(|f| f.exp.numer()).sum();
    if total as usize > MAX_LETTERS {
        return Err(Error::InvalidArgument(format!(
            "word has {total} letters, more than the {MAX_LETTERS} supported"
        )));
    }
    Ok(w.factors()
        .iter()
        .flat_map(|f| std::iter::repeat_n(f.letter, f.exp.numer() as usize))
        .collect())
}

fn palindrome(s: &[Letter]) -> bool {
    s.iter().eq(s.iter().rev())
}

fn word_of(s: &[Letter]) -> WordExpr {
    WordExpr::from_factors(s.iter().map(|&l| Factor::new(l, 1)))
}

fn palindromic_splits(s: &[Letter]) -> impl Iterator<Item = usize> + '_ {
    (1..s.len()).filter(|&i| palindrome(&s[..i]) && palindrome(&s[i..]))
}

/// Classifies a word with positive integer powers at the letter level, so
/// `A^3` may split as `A · A^2`.
pub fn classify_word(w: &WordExpr) -> Result<WordClass> {
    let s = letters(w)?;
    let splits: Vec<Split> = palindromic_splits(&s)
        .map(|i| Split {
            position: i,
            left: word_of(&s[..i]),
            right: word_of(&s[i..]),
        })
        .collect();
    let tag = if palindrome(&s) {
        ClassTag::Symmetric
    } else if let Some(first) = splits.first() {
        ClassTag::TwoSymmetricProduct {
            left: first.left.clone(),
            right: first.right.clone(),
        }
    } else {
        ClassTag::Neither
    };
    let symmetric_rotation = if tag == ClassTag::Symmetric {
        None
    } else {
        (1..s.len())
            .map(|r| [&s[r..], &s[..r]].concat())
            .find(|rot| palindrome(rot))
            .map(|rot| word_of(&rot))
    };
    Ok(WordClass {
        word: w.clone(),
        tag,
        splits,
        symmetric_rotation,
    })
}
