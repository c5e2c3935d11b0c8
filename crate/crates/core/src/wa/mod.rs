//! N-Alphabet weighted automata over exact rationals.

mod algebra;
mod alphabet;
mod dfa;
mod json;
mod matrix;

pub use algebra::{add, kron, pi0, pi1, project, scale, sub, trim};
pub use alphabet::{all_words, Alphabet, HASH};
pub use dfa::{dfa_to_wa, Dfa};
pub use json::WaJson;
pub use matrix::SparseMat;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// `f(w¹,…,wᴺ) = αᵀ · ∏ⱼ A_{(w¹ⱼ,…,wᴺⱼ)} · β`.
///
/// Transitions are sparse in the tuple: an absent tuple is the zero matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Wa {
    alphabets: Vec<Alphabet>,
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
    trans: BTreeMap<Vec<usize>, SparseMat>,
}

impl Wa {
    pub fn new(
        alphabets: Vec<Alphabet>,
        alpha: Vec<Rat>,
        beta: Vec<Rat>,
        trans: BTreeMap<Vec<usize>, SparseMat>,
    ) -> Result<Self> {
        if alphabets.is_empty() {
            return Err(Error::InvalidModel("arity must be positive".into()));
        }
        let n = alpha.len();
        if n == 0 {
            return Err(Error::InvalidModel("dimension must be positive".into()));
        }
        if beta.len() != n {
            return Err(Error::InvalidModel(format!(
                "alpha has length {n} but beta has length {}",
                beta.len()
            )));
        }
        let mut trans = trans;
        for (t, m) in &trans {
            if t.len() != alphabets.len() {
                return Err(Error::InvalidModel(format!("tuple {t:?} has wrong arity")));
            }
            for (k, s) in t.iter().enumerate() {
                if *s >= alphabets[k].len() {
                    return Err(Error::InvalidModel(format!("tuple {t:?} out of alphabet")));
                }
            }
            if m.dim() != n {
                return Err(Error::InvalidModel(format!(
                    "matrix for {t:?} is {}x{0}, expected {n}x{n}",
                    m.dim()
                )));
            }
        }
        trans.retain(|_, m| !m.is_zero());
        Ok(Wa { alphabets, alpha, beta, trans })
    }

    /// Single-tape WA given dense matrices, one per symbol in order.
    pub fn from_dense(alphabet: Alphabet, alpha: Vec<Rat>, mats: Vec<Vec<Vec<Rat>>>, beta: Vec<Rat>) -> Result<Self> {
        if mats.len() != alphabet.len() {
            return Err(Error::InvalidModel("one matrix per symbol required".into()));
        }
        let trans = mats
            .iter()
            .enumerate()
            .map(|(s, m)| (vec![s], SparseMat::from_dense(m)))
            .collect();
        Self::new(vec![alphabet], alpha, beta, trans)
    }

    /// The single-state automaton returning `c` on every word tuple.
    pub fn constant(alphabets: Vec<Alphabet>, c: Rat) -> Self {
        let one = Rat::from_integer(1.into());
        let mut trans = BTreeMap::new();
        for t in tuples(&alphabets) {
            trans.insert(t, SparseMat::identity(1));
        }
        Wa::new(alphabets, vec![c], vec![one], trans).expect("constant automaton is well formed")
    }

    pub fn zero(alphabets: Vec<Alphabet>) -> Self {
        Self::constant(alphabets, Rat::zero())
    }

    pub fn arity(&self) -> usize {
        self.alphabets.len()
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn alphabets(&self) -> &[Alphabet] {
        &self.alphabets
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabets[0]
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    pub fn transitions(&self) -> &BTreeMap<Vec<usize>, SparseMat> {
        &self.trans
    }

    /// Matrix for a tuple, `None` meaning the zero matrix.
    pub fn matrix(&self, tuple: &[usize]) -> Option<&SparseMat> {
        self.trans.get(tuple)
    }

    /// Total number of stored nonzero transition weights.
    pub fn nnz(&self) -> usize {
        self.trans.values().map(SparseMat::nnz).sum()
    }

    /// Evaluates on N equal-length words given as symbol indices.
    pub fn eval(&self, words: &[&[usize]]) -> Result<Rat> {
        if words.len() != self.arity() {
            return Err(Error::LengthMismatch(format!(
                "{} tapes given, automaton has arity {}",
                words.len(),
                self.arity()
            )));
        }
        let len = words[0].len();
        if words.iter().any(|w| w.len() != len) {
            return Err(Error::LengthMismatch("tapes of unequal length".into()));
        }
        for (w, a) in words.iter().zip(&self.alphabets) {
            if let Some(&s) = w.iter().find(|&&s| s >= a.len()) {
                return Err(Error::UnknownSymbol(format!("index {s} in {a}")));
            }
        }
        let mut v = self.alpha.clone();
        let mut tuple = vec![0; self.arity()];
        for j in 0..len {
            for (k, w) in words.iter().enumerate() {
                tuple[k] = w[j];
            }
            match self.trans.get(&tuple) {
                Some(m) => v = m.vec_mul(&v),
                None => return Ok(Rat::zero()),
            }
        }
        Ok(dot(&v, &self.beta))
    }

    /// Single-tape convenience.
    pub fn eval1(&self, w: &[usize]) -> Result<Rat> {
        self.eval(&[w])
    }

    /// Evaluates on words written as strings over the respective alphabets.
    pub fn eval_str(&self, words: &[&str]) -> Result<Rat> {
        let parsed: Vec<Vec<usize>> = words
            .iter()
            .zip(&self.alphabets)
            .map(|(w, a)| a.parse_word(w))
            .collect::<Result<_>>()?;
        let refs: Vec<&[usize]> = parsed.iter().map(Vec::as_slice).collect();
        self.eval(&refs)
    }
}

/// Every tuple of Σ₁ × … × Σ_N in lexicographic order.
pub fn tuples(alphabets: &[Alphabet]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for a in alphabets {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..a.len()).map(move |s| {
                    let mut t = t.clone();
                    t.push(s);
                    t
                })
            })
            .collect();
    }
    out
}

pub(crate) fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
