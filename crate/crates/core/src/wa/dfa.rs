use std::collections::{BTreeMap, BTreeSet};

use super::{Alphabet, SparseMat, Wa};
use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Deterministic N-tape automaton with a partial transition map.
#[derive(Clone, Debug)]
pub struct Dfa {
    pub alphabets: Vec<Alphabet>,
    pub states: usize,
    pub initial: usize,
    pub delta: BTreeMap<(usize, Vec<usize>), usize>,
    pub finals: BTreeSet<usize>,
}

impl Dfa {
    pub fn new(alphabets: Vec<Alphabet>, states: usize, initial: usize) -> Result<Self> {
        if initial >= states {
            return Err(Error::InvalidModel("initial state out of range".into()));
        }
        Ok(Dfa { alphabets, states, initial, delta: BTreeMap::new(), finals: BTreeSet::new() })
    }

    /// Adds `q --tuple--> r`; a second, different successor is rejected.
    pub fn add(&mut self, q: usize, tuple: Vec<usize>, r: usize) -> Result<()> {
        if q >= self.states || r >= self.states {
            return Err(Error::InvalidModel("state out of range".into()));
        }
        match self.delta.get(&(q, tuple.clone())) {
            Some(&prev) if prev != r => Err(Error::InvalidModel(format!(
                "nondeterministic transition from {q} on {tuple:?}"
            ))),
            _ => {
                self.delta.insert((q, tuple), r);
                Ok(())
            }
        }
    }

    pub fn accepts(&self, words: &[&[usize]]) -> bool {
        let len = words.first().map_or(0, |w| w.len());
        let mut q = self.initial;
        for j in 0..len {
            let t: Vec<usize> = words.iter().map(|w| w[j]).collect();
            match self.delta.get(&(q, t)) {
                Some(&r) => q = r,
                None => return false,
            }
        }
        self.finals.contains(&q)
    }
}

/// 0/1 indicator automaton of the accepted language.
pub fn dfa_to_wa(d: &Dfa) -> Result<Wa> {
    let one = Rat::from_integer(1.into());
    let zero = Rat::from_integer(0.into());
    let mut trans: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
    for ((q, t), r) in &d.delta {
        trans
            .entry(t.clone())
            .or_insert_with(|| SparseMat::zeros(d.states))
            .add_at(*q, *r, one.clone());
    }
    let alpha = (0..d.states).map(|s| if s == d.initial { one.clone() } else { zero.clone() }).collect();
    let beta = (0..d.states).map(|s| if d.finals.contains(&s) { one.clone() } else { zero.clone() }).collect();
    Wa::new(d.alphabets.clone(), alpha, beta, trans)
}
