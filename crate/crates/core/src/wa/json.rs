use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Alphabet, SparseMat, Wa};
use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, parse_rat, Rat};

/// On-disk form: rationals as `"p/q"` strings, transitions keyed by
/// comma-joined symbol tuples, dense matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WaJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    pub alphabets: Vec<Vec<String>>,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub transitions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

fn rats(v: &[String]) -> Result<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

impl WaJson {
    pub fn from_wa(wa: &Wa) -> Self {
        let transitions = wa
            .transitions()
            .iter()
            .map(|(t, m)| {
                let key = t
                    .iter()
                    .zip(wa.alphabets())
                    .map(|(s, a)| a.symbol(*s))
                    .collect::<Vec<_>>()
                    .join(",");
                let dense = m.to_dense().iter().map(|r| r.iter().map(fmt_rat).collect()).collect();
                (key, dense)
            })
            .collect();
        WaJson {
            kind: None,
            alphabets: wa.alphabets().iter().map(|a| a.symbols().to_vec()).collect(),
            alpha: wa.alpha().iter().map(fmt_rat).collect(),
            beta: wa.beta().iter().map(fmt_rat).collect(),
            transitions,
            provenance: None,
        }
    }

    pub fn to_wa(&self) -> Result<Wa> {
        let alphabets: Vec<Alphabet> =
            self.alphabets.iter().map(|a| Alphabet::new(a.iter().cloned())).collect::<Result<_>>()?;
        let mut trans = BTreeMap::new();
        for (key, m) in &self.transitions {
            let toks: Vec<&str> = key.split(',').map(str::trim).collect();
            if toks.len() != alphabets.len() {
                return Err(Error::Parse(format!("transition key {key:?} has wrong arity")));
            }
            let t = toks
                .iter()
                .zip(&alphabets)
                .map(|(s, a)| a.index_of(s))
                .collect::<Result<Vec<_>>>()?;
            let dense = m.iter().map(|r| rats(r)).collect::<Result<Vec<_>>>()?;
            if dense.iter().any(|r| r.len() != dense.len()) {
                return Err(Error::Parse(format!("matrix for {key:?} is not square")));
            }
            trans.insert(t, SparseMat::from_dense(&dense));
        }
        Wa::new(alphabets, rats(&self.alpha)?, rats(&self.beta)?, trans)
    }
}

impl Wa {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&WaJson::from_wa(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: WaJson = serde_json::from_str(s)?;
        j.to_wa()
    }
}
