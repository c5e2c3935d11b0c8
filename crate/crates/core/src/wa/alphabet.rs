use std::fmt;

use crate::error::{Error, Result};

/// Reserved placeholder token of pattern alphabets.
pub const HASH: &str = "#";

/// Ordered finite set of distinct tokens.
///
/// `#` is only allowed as the final symbol, which makes the alphabet a
/// pattern alphabet Σ_#.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidModel("empty alphabet".into()));
        }
        for (k, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.contains(',') || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidModel(format!("bad symbol {s:?}")));
            }
            if symbols[..k].contains(s) {
                return Err(Error::InvalidModel(format!("duplicate symbol {s:?}")));
            }
            if s == HASH && k + 1 != symbols.len() {
                return Err(Error::InvalidModel("`#` must be the last symbol".into()));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// One symbol per character of `s`, e.g. `"01"` or `"ab"`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Self::new(s.chars().map(|c| c.to_string()))
    }

    /// `{0, 1, ..., k-1}` with decimal tokens.
    pub fn numeric(k: usize) -> Self {
        Alphabet {
            symbols: (0..k).map(|d| d.to_string()).collect(),
        }
    }

    pub fn binary() -> Self {
        Self::numeric(2)
    }

    /// Σ_# = Σ ∪ {#}; `#` gets index `|Σ|`.
    pub fn with_hash(&self) -> Self {
        if self.has_hash() {
            return self.clone();
        }
        let mut symbols = self.symbols.clone();
        symbols.push(HASH.to_string());
        Alphabet { symbols }
    }

    /// Drops `#` from a pattern alphabet.
    pub fn base(&self) -> Self {
        let mut symbols = self.symbols.clone();
        if self.has_hash() {
            symbols.pop();
        }
        Alphabet { symbols }
    }

    pub fn has_hash(&self) -> bool {
        self.symbols.last().map(String::as_str) == Some(HASH)
    }

    pub fn hash_index(&self) -> Option<usize> {
        self.has_hash().then(|| self.symbols.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, idx: usize) -> &str {
        &self.symbols[idx]
    }

    pub fn index_of(&self, tok: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == tok)
            .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
    }

    fn single_char(&self) -> bool {
        self.symbols.iter().all(|s| s.chars().count() == 1)
    }

    /// Parses a word. Single-character alphabets read `s` char by char;
    /// otherwise tokens are separated by whitespace or commas.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        if self.single_char() {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| self.index_of(&c.to_string()))
                .collect()
        } else {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| self.index_of(t))
                .collect()
        }
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        let sep = if self.single_char() { "" } else { " " };
        w.iter()
            .map(|&i| self.symbols[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols.join(","))
    }
}

/// All words of length `len` over an alphabet of size `k`, lexicographic.
pub fn all_words(k: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = k.checked_pow(len as u32).expect("word space too large");
    (0..total).map(move |mut code| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = code % k;
            code /= k;
        }
        w
    })
}
