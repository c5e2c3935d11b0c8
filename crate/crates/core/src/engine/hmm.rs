use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, parse_rat, Rat};
use crate::wa::{Alphabet, SparseMat, Wa, WaJson};

/// Stationary HMM ⟨α, T, O⟩ over a finite alphabet.
///
/// As a weighted automaton it uses `A_σ[s][s′] = O[s][σ] · T[s][s′]` and
/// β = 1, so `f(w)` is the probability that a generated sequence starts
/// with `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hmm {
    alphabet: Alphabet,
    initial: Vec<Rat>,
    transition: Vec<Vec<Rat>>,
    emission: Vec<Vec<Rat>>,
}

fn check_stochastic(v: &[Rat], what: &str) -> Result<()> {
    if v.iter().any(|x| x < &Rat::zero()) {
        return Err(Error::InvalidModel(format!("{what} has a negative entry")));
    }
    let s: Rat = v.iter().sum();
    if !s.is_one() {
        return Err(Error::InvalidModel(format!("{what} sums to {}", fmt_rat(&s))));
    }
    Ok(())
}

impl Hmm {
    pub fn new(alphabet: Alphabet, initial: Vec<Rat>, transition: Vec<Vec<Rat>>, emission: Vec<Vec<Rat>>) -> Result<Self> {
        let m = initial.len();
        if m == 0 {
            return Err(Error::InvalidModel("HMM needs at least one state".into()));
        }
        check_stochastic(&initial, "initial distribution")?;
        if transition.len() != m || emission.len() != m {
            return Err(Error::InvalidModel("HMM matrices disagree on the state count".into()));
        }
        for (s, row) in transition.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidModel(format!("transition row {s} has wrong length")));
            }
            check_stochastic(row, &format!("transition row {s}"))?;
        }
        for (s, row) in emission.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(Error::InvalidModel(format!("emission row {s} has wrong length")));
            }
            check_stochastic(row, &format!("emission row {s}"))?;
        }
        Ok(Hmm { alphabet, initial, transition, emission })
    }

    /// One state, uniform emissions: the uniform distribution on Σⁿ for every n.
    pub fn uniform(alphabet: Alphabet) -> Self {
        let k = alphabet.len() as i64;
        let e = vec![Rat::new(1.into(), k.into()); alphabet.len()];
        Hmm {
            alphabet,
            initial: vec![Rat::one()],
            transition: vec![vec![Rat::one()]],
            emission: vec![e],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn initial(&self) -> &[Rat] {
        &self.initial
    }

    pub fn transition(&self) -> &[Vec<Rat>] {
        &self.transition
    }

    pub fn emission(&self) -> &[Vec<Rat>] {
        &self.emission
    }

    pub fn to_wa(&self) -> Wa {
        let m = self.states();
        let mut trans = BTreeMap::new();
        for sym in 0..self.alphabet.len() {
            let mut a = SparseMat::zeros(m);
            for s in 0..m {
                let o = &self.emission[s][sym];
                if o.is_zero() {
                    continue;
                }
                for (t, p) in self.transition[s].iter().enumerate() {
                    a.add_at(s, t, o * p);
                }
            }
            trans.insert(vec![sym], a);
        }
        Wa::new(vec![self.alphabet.clone()], self.initial.clone(), vec![Rat::one(); m], trans)
            .expect("HMM automaton is well formed")
    }

    /// Prefix probability of `w`.
    pub fn prob(&self, w: &[usize]) -> Result<Rat> {
        self.to_wa().eval1(w)
    }
}

#[derive(Serialize, Deserialize)]
struct HmmJson {
    alphabet: Vec<String>,
    initial: Vec<String>,
    transition: Vec<Vec<String>>,
    emission: Vec<Vec<String>>,
}

fn rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn strs(v: &[Rat]) -> Vec<String> {
    v.iter().map(fmt_rat).collect()
}

impl Hmm {
    /// Serializes as the automaton form tagged `"kind": "hmm"`, together
    /// with the raw parameters.
    pub fn to_json_value(&self) -> serde_json::Value {
        let mut wa = WaJson::from_wa(&self.to_wa());
        wa.kind = Some("hmm".into());
        let mut v = serde_json::to_value(&wa).expect("serializable");
        let params = HmmJson {
            alphabet: self.alphabet.symbols().to_vec(),
            initial: strs(&self.initial),
            transition: self.transition.iter().map(|r| strs(r)).collect(),
            emission: self.emission.iter().map(|r| strs(r)).collect(),
        };
        v["hmm"] = serde_json::to_value(params).expect("serializable");
        v
    }

    /// Accepts `{alphabet, initial, transition, emission}` either at the top
    /// level or under an `"hmm"` key.
    pub fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let body = v.get("hmm").unwrap_or(v);
        let j: HmmJson = serde_json::from_value(body.clone())?;
        Hmm::new(
            Alphabet::new(j.alphabet)?,
            rats(&j.initial)?,
            j.transition.iter().map(|r| rats(r)).collect::<Result<_>>()?,
            j.emission.iter().map(|r| rats(r)).collect::<Result<_>>()?,
        )
    }
}
