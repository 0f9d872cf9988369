use super::exponent::Exponent;
use super::word::{Factor, WordExpr};

/// Finds the largest `k` and a base `V` with `normalize(V^k) = w`.
///
/// The word is written as `U C U^{-1}` with `C` cyclically reduced (first
/// and last letters differ, or `C` is a single factor). Roots of `w` are
/// conjugates by `U` of roots of `C`. For a multi-factor `C` the root is its
/// shortest period; for a single factor `X^{p/q}` the base is `X^{±1/q}`
/// and `k = |p|`. The identity word returns `(identity, 1)`.
pub fn detect_power(w: &WordExpr) -> (WordExpr, u32) {
    let factors = w.factors();
    if factors.is_empty() {
        return (w.clone(), 1);
    }

    // Peel conjugators off the ends.
    let mut conj: Vec<Factor> = Vec::new();
    let mut core: Vec<Factor> = factors.to_vec();
    while core.len() >= 2 && core[0].letter == core[core.len() - 1].letter {
        let first = core[0];
        let last = core[core.len() - 1];
        conj.push(first);
        let mut inner: Vec<Factor> = core[1..core.len() - 1].to_vec();
        let merged = first.exp + last.exp;
        if !merged.is_zero() {
            inner.push(Factor::new(first.letter, merged));
        }
        core = inner;
    }

    let (root, k) = match core.len() {
        0 => unreachable!("a normalized nonempty word has a nonempty cyclic core"),
        1 => {
            let f = core[0];
            let numer = f.exp.numer();
            let unit = Exponent::new(numer.signum(), f.exp.denom()).expect("positive denominator");
            (vec![Factor::new(f.letter, unit)], numer.unsigned_abs() as u32)
        }
        len => {
            let period = (1..=len)
                .filter(|d| len % d == 0)
                .find(|&d| (d..len).all(|i| core[i] == core[i - d]))
                .unwrap_or(len);
            (core[..period].to_vec(), (len / period) as u32)
        }
    };

    let conj_word = WordExpr::from_factors(conj);
    let base = conj_word
        .concat(&WordExpr::from_factors(root))
        .concat(&conj_word.inverse());
    (base, k)
}
