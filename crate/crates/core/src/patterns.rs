//! Coalitions as patterns over Σ ∪ {#}.
//!
//! Patterns and words are index sequences; the placeholder is whatever
//! index the caller designates as `hash` (by convention `|Σ|`).

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::{factorial, Rat};
use crate::wa::{Alphabet, HASH};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    tokens: Vec<Option<usize>>,
}

impl Pattern {
    /// `None` is `#`.
    pub fn new(tokens: Vec<Option<usize>>) -> Self {
        Pattern { tokens }
    }

    /// Reads a word as a pattern without placeholders.
    pub fn from_word(w: &[usize]) -> Self {
        Pattern { tokens: w.iter().map(|&s| Some(s)).collect() }
    }

    /// Pattern that keeps the positions in `mask` (0-based) and hides the rest.
    pub fn from_mask(w: &[usize], keep: &[bool]) -> Self {
        Pattern {
            tokens: w.iter().zip(keep).map(|(&s, &k)| k.then_some(s)).collect(),
        }
    }

    /// Parses e.g. `"0#1#"` against Σ (the `#` token is implicit).
    pub fn parse(s: &str, sigma: &Alphabet) -> Result<Self> {
        let base = sigma.base();
        let sh = base.with_hash();
        let idx = sh.parse_word(s)?;
        let h = sh.len() - 1;
        Ok(Pattern {
            tokens: idx.into_iter().map(|i| (i != h).then_some(i)).collect(),
        })
    }

    pub fn format(&self, sigma: &Alphabet) -> String {
        let base = sigma.base();
        let single = base.symbols().iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = self
            .tokens
            .iter()
            .map(|t| match t {
                Some(s) => base.symbol(*s),
                None => HASH,
            })
            .collect();
        parts.join(if single { "" } else { " " })
    }

    /// Index form over Σ_#, with `#` at index `sigma_len`.
    pub fn to_indices(&self, sigma_len: usize) -> Vec<usize> {
        self.tokens.iter().map(|t| t.unwrap_or(sigma_len)).collect()
    }

    pub fn from_indices(p: &[usize], sigma_len: usize) -> Self {
        Pattern {
            tokens: p.iter().map(|&s| (s != sigma_len).then_some(s)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn tokens(&self) -> &[Option<usize>] {
        &self.tokens
    }

    /// |p|_#
    pub fn hash_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_none()).count()
    }

    pub fn is_hash(&self, i: usize) -> bool {
        self.tokens[i - 1].is_none()
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.tokens {
            match t {
                Some(s) => write!(f, "{s}")?,
                None => write!(f, "#")?,
            }
        }
        Ok(())
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

fn check_len(a: usize, b: usize, what: &str) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch(format!("{what}: {a} vs {b}")));
    }
    Ok(())
}

/// Overwrites position `i` (1-based) with the symbol `sigma`.
pub fn swap(p: &Pattern, sigma: usize, i: usize) -> Result<Pattern> {
    check_index(i, p.len())?;
    let mut out = p.clone();
    out.tokens[i - 1] = Some(sigma);
    Ok(out)
}

/// `uᵢ = w′ᵢ` where `pᵢ = #`, else `wᵢ`.
pub fn do_op(p: &Pattern, w_prime: &[usize], w: &[usize]) -> Result<Vec<usize>> {
    check_len(p.len(), w_prime.len(), "pattern vs w'")?;
    check_len(p.len(), w.len(), "pattern vs w")?;
    Ok(p.tokens
        .iter()
        .enumerate()
        .map(|(k, t)| if t.is_none() { w_prime[k] } else { w[k] })
        .collect())
}

/// `w ∈ L_p`.
pub fn matches(w: &[usize], p: &Pattern) -> Result<bool> {
    check_len(w.len(), p.len(), "word vs pattern")?;
    Ok(p.tokens.iter().zip(w).all(|(t, s)| t.is_none_or(|t| t == *s)))
}

/// 𝒫ᵢʷ(p) = (|p|_# − 1)!(|w| − |p|_#)!/|w|! if w ∈ L_p and pᵢ = #, else 0.
pub fn coalition_weight(p: &Pattern, w: &[usize], i: usize) -> Result<Rat> {
    check_len(p.len(), w.len(), "pattern vs word")?;
    check_index(i, w.len())?;
    if !p.is_hash(i) || !matches(w, p)? {
        return Ok(Rat::from_integer(BigInt::from(0)));
    }
    let n = w.len();
    let k = p.hash_count();
    Ok(Rat::new(factorial(k - 1) * factorial(n - k), factorial(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn sigma() -> Alphabet {
        Alphabet::from_chars("01").unwrap()
    }

    fn p(s: &str) -> Pattern {
        Pattern::parse(s, &sigma()).unwrap()
    }

    fn w(s: &str) -> Vec<usize> {
        sigma().parse_word(s).unwrap()
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap(&p("0#0#"), 1, 2).unwrap(), p("010#"));
        assert_eq!(swap(&p("##"), 0, 1).unwrap(), p("0#"));
        assert_eq!(swap(&p("01"), 1, 2).unwrap(), p("01"));
        assert!(swap(&p("01"), 1, 3).is_err());
        assert!(swap(&p("01"), 1, 0).is_err());
    }

    #[test]
    fn do_examples() {
        assert_eq!(do_op(&p("0#0#"), &w("1100"), &w("1111")).unwrap(), w("1110"));
        assert_eq!(do_op(&p("###"), &w("010"), &w("111")).unwrap(), w("010"));
        assert_eq!(do_op(&p("011"), &w("000"), &w("101")).unwrap(), w("101"));
        assert!(do_op(&p("0#"), &w("1"), &w("11")).is_err());
    }

    #[test]
    fn matches_examples() {
        assert!(matches(&w("0011"), &p("0#1#")).unwrap());
        assert!(matches(&w("0110"), &p("0110")).unwrap());
        assert!(!matches(&w("00"), &p("01")).unwrap());
        assert!(matches(&w("0"), &p("01")).is_err());
    }

    #[test]
    fn weight_examples() {
        let ab = Alphabet::from_chars("ab").unwrap();
        let wab = ab.parse_word("ab").unwrap();
        let pp = |s: &str| Pattern::parse(s, &ab).unwrap();
        assert_eq!(coalition_weight(&pp("#b"), &wab, 1).unwrap(), ratio(1, 2));
        assert_eq!(coalition_weight(&pp("ab"), &wab, 1).unwrap(), ratio(0, 1));
        assert_eq!(coalition_weight(&pp("#a"), &wab, 1).unwrap(), ratio(0, 1));
        assert_eq!(p("0#1#").to_string(), "0#1#");
        assert_eq!(p("0#1#").format(&sigma()), "0#1#");
    }
}
