//! Feature distributions and their compilation into HMMs.
//!
//! `order[pos]` is the (0-based) feature read at sequence position `pos`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::engine::Hmm;
use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, json_cube, json_mat, json_vec, parse_rat, Rat};
use crate::wa::Alphabet;

fn check_stochastic(v: &[Rat], what: &str) -> Result<()> {
    if v.iter().any(|x| x < &Rat::zero()) || !v.iter().sum::<Rat>().is_one() {
        return Err(Error::InvalidModel(format!("{what} is not a probability vector")));
    }
    Ok(())
}

pub fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn check_order(order: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(Error::InvalidModel(format!("order has length {}, expected {n}", order.len())));
    }
    for &f in order {
        if f >= n || seen[f] {
            return Err(Error::InvalidModel(format!("order {order:?} is not a permutation")));
        }
        seen[f] = true;
    }
    Ok(())
}

/// Feature vector → sequence.
pub fn sequentialize(x: &[usize], order: &[usize]) -> Vec<usize> {
    order.iter().map(|&f| x[f]).collect()
}

/// Sequence → feature vector.
pub fn desequentialize(seq: &[usize], order: &[usize]) -> Vec<usize> {
    let mut x = vec![0; seq.len()];
    for (pos, &f) in order.iter().enumerate() {
        x[f] = seq[pos];
    }
    x
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub rows: Vec<Vec<usize>>,
    pub domain: usize,
}

impl Dataset {
    pub fn new(rows: Vec<Vec<usize>>, domain: usize) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidModel("empty dataset".into()));
        };
        let n = first.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModel("dataset rows must be non-empty and of equal length".into()));
        }
        if rows.iter().flatten().any(|&v| v >= domain) {
            return Err(Error::InvalidModel("dataset value outside the domain".into()));
        }
        Ok(Dataset { rows, domain })
    }

    /// Rows as strings over `alphabet`.
    pub fn parse(rows: &[String], alphabet: &Alphabet) -> Result<Self> {
        let rows = rows.iter().map(|r| alphabet.parse_word(r)).collect::<Result<Vec<_>>>()?;
        Dataset::new(rows, alphabet.len())
    }

    /// Either an array of row strings or `{"rows": [...], "domain": k}`;
    /// without a domain the largest digit seen decides it (at least 2).
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let rows = v.get("rows").unwrap_or(v);
        let rows: Vec<String> = serde_json::from_value(rows.clone())?;
        let seen = rows.iter().flat_map(|r| r.chars()).filter_map(|c| c.to_digit(10)).max().unwrap_or(1) as usize + 1;
        let domain = v.get("domain").and_then(Value::as_u64).map_or(seen.max(2), |d| d as usize);
        Dataset::parse(&rows, &Alphabet::numeric(domain))
    }

    pub fn n_features(&self) -> usize {
        self.rows[0].len()
    }
}

/// Independent features: `p[i][v]`.
#[derive(Clone, Debug, PartialEq)]
pub struct IndDist {
    pub p: Vec<Vec<Rat>>,
}

impl IndDist {
    pub fn new(p: Vec<Vec<Rat>>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidModel("no features".into()));
        }
        let k = p[0].len();
        for (i, row) in p.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidModel("marginals must share a domain".into()));
            }
            check_stochastic(row, &format!("marginal of feature {}", i + 1))?;
        }
        Ok(IndDist { p })
    }

    /// `{"p": [[rat]]}`, one marginal per feature.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        IndDist::new(json_mat(v.get("p").ok_or_else(|| Error::Parse("missing `p`".into()))?)?)
    }

    pub fn uniform(n: usize, k: usize) -> Self {
        IndDist { p: vec![vec![Rat::new(1.into(), (k as i64).into()); k]; n] }
    }
}

/// First-order Markov chain on the symbols themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct MarkovDist {
    pub initial: Vec<Rat>,
    pub transition: Vec<Vec<Rat>>,
}

impl MarkovDist {
    pub fn new(initial: Vec<Rat>, transition: Vec<Vec<Rat>>) -> Result<Self> {
        check_stochastic(&initial, "initial distribution")?;
        if transition.len() != initial.len() {
            return Err(Error::InvalidModel("transition matrix has wrong size".into()));
        }
        for row in &transition {
            if row.len() != initial.len() {
                return Err(Error::InvalidModel("transition matrix has wrong size".into()));
            }
            check_stochastic(row, "transition row")?;
        }
        Ok(MarkovDist { initial, transition })
    }

    /// `{"initial": [rat], "transition": [[rat]]}`.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
        MarkovDist::new(json_vec(get("initial")?)?, json_mat(get("transition")?)?)
    }
}

/// Features conditionally independent given a latent class:
/// `P(x) = Σ_y prior[y] · ∏ᵢ cond[i][y][xᵢ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NaiveBayes {
    pub prior: Vec<Rat>,
    pub cond: Vec<Vec<Vec<Rat>>>,
}

impl NaiveBayes {
    pub fn new(prior: Vec<Rat>, cond: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        check_stochastic(&prior, "class prior")?;
        if cond.is_empty() {
            return Err(Error::InvalidModel("no features".into()));
        }
        let k = cond[0].first().map_or(0, Vec::len);
        for table in &cond {
            if table.len() != prior.len() {
                return Err(Error::InvalidModel("one conditional row per class required".into()));
            }
            for row in table {
                if row.len() != k {
                    return Err(Error::InvalidModel("conditionals must share a domain".into()));
                }
                check_stochastic(row, "conditional row")?;
            }
        }
        Ok(NaiveBayes { prior, cond })
    }

    /// `{"prior": [rat], "cond": [[[rat]]]}` with `cond[feature][class][value]`.
    pub fn from_json_value(v: &Value) -> Result<Self> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")));
        NaiveBayes::new(json_vec(get("prior")?)?, json_cube(get("cond")?)?)
    }
}

/// Non-stationary HMM over a permuted feature order.
#[derive(Clone, Debug, PartialEq)]
pub struct HmmVec {
    pub order: Vec<usize>,
    pub initial: Vec<Rat>,
    /// `n − 1` matrices, `transitions[t]` moves from position t to t+1.
    pub transitions: Vec<Vec<Vec<Rat>>>,
    /// `n` matrices of shape states × domain.
    pub emissions: Vec<Vec<Vec<Rat>>>,
}

impl HmmVec {
    pub fn new(
        order: Vec<usize>,
        initial: Vec<Rat>,
        transitions: Vec<Vec<Vec<Rat>>>,
        emissions: Vec<Vec<Vec<Rat>>>,
    ) -> Result<Self> {
        let n = emissions.len();
        if n == 0 {
            return Err(Error::InvalidModel("HmmVec needs at least one position".into()));
        }
        check_order(&order, n)?;
        check_stochastic(&initial, "initial distribution")?;
        let m = initial.len();
        if transitions.len() != n - 1 {
            return Err(Error::InvalidModel(format!("expected {} transition matrices", n - 1)));
        }
        for t in &transitions {
            if t.len() != m || t.iter().any(|r| r.len() != m) {
                return Err(Error::InvalidModel("transition matrix has wrong shape".into()));
            }
            for row in t {
                check_stochastic(row, "transition row")?;
            }
        }
        let k = emissions[0].first().map_or(0, Vec::len);
        for o in &emissions {
            if o.len() != m || o.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidModel("emission matrix has wrong shape".into()));
            }
            for row in o {
                check_stochastic(row, "emission row")?;
            }
        }
        Ok(HmmVec { order, initial, transitions, emissions })
    }

    pub fn len(&self) -> usize {
        self.emissions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.emissions.is_empty()
    }

    pub fn states(&self) -> usize {
        self.initial.len()
    }

    pub fn domain(&self) -> usize {
        self.emissions[0][0].len()
    }

    pub fn to_json_value(&self) -> Value {
        let mat = |m: &Vec<Vec<Rat>>| m.iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>();
        serde_json::json!({
            "order": self.order.iter().map(|f| f + 1).collect::<Vec<_>>(),
            "initial": self.initial.iter().map(fmt_rat).collect::<Vec<_>>(),
            "transitions": self.transitions.iter().map(mat).collect::<Vec<_>>(),
            "emissions": self.emissions.iter().map(mat).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let mats: Vec<Vec<Vec<String>>> = serde_json::from_value(v.get("transitions").cloned().unwrap_or(Value::Array(vec![])))?;
        let ems: Vec<Vec<Vec<String>>> =
            serde_json::from_value(v.get("emissions").cloned().ok_or_else(|| Error::Parse("missing `emissions`".into()))?)?;
        let init: Vec<String> = serde_json::from_value(v.get("initial").cloned().ok_or_else(|| Error::Parse("missing `initial`".into()))?)?;
        let n = ems.len();
        let order = match v.get("order") {
            Some(o) => {
                let o: Vec<usize> = serde_json::from_value(o.clone())?;
                if o.contains(&0) {
                    return Err(Error::Parse("order is 1-based".into()));
                }
                o.into_iter().map(|f| f - 1).collect()
            }
            None => identity_order(n),
        };
        let conv = |m: &Vec<Vec<String>>| -> Result<Vec<Vec<Rat>>> {
            m.iter().map(|r| r.iter().map(|s| parse_rat(s)).collect()).collect()
        };
        HmmVec::new(
            order,
            init.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?,
            mats.iter().map(conv).collect::<Result<_>>()?,
            ems.iter().map(conv).collect::<Result<_>>()?,
        )
    }
}

fn unit(m: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); m];
    v[j] = Rat::one();
    v
}

/// Prefix-tree construction: states at position t are the distinct length-t
/// prefixes, emitting their last symbol, with transition N(wσ)/N(w).
pub fn emp_to_hmmvec(d: &Dataset, order: &[usize]) -> Result<HmmVec> {
    let n = d.n_features();
    check_order(order, n)?;
    let k = d.domain;
    let seqs: Vec<Vec<usize>> = d.rows.iter().map(|r| sequentialize(r, order)).collect();
    // counts[t]: prefix of length t+1 → count, in sorted order for determinism
    let mut counts: Vec<BTreeMap<&[usize], usize>> = vec![BTreeMap::new(); n];
    for s in &seqs {
        for t in 0..n {
            *counts[t].entry(&s[..=t]).or_default() += 1;
        }
    }
    let index: Vec<BTreeMap<&[usize], usize>> =
        counts.iter().map(|c| c.keys().enumerate().map(|(j, p)| (*p, j)).collect()).collect();
    let m = counts.iter().map(BTreeMap::len).max().unwrap_or(1);
    let total = Rat::from_integer((d.rows.len() as i64).into());

    let mut initial = vec![Rat::zero(); m];
    for (p, c) in &counts[0] {
        initial[index[0][p]] = Rat::from_integer((*c as i64).into()) / &total;
    }
    let mut emissions = Vec::with_capacity(n);
    for t in 0..n {
        let mut o: Vec<Vec<Rat>> = (0..m).map(|_| unit(k, 0)).collect();
        for (p, &j) in &index[t] {
            o[j] = unit(k, p[t]);
        }
        emissions.push(o);
    }
    let mut transitions = Vec::with_capacity(n.saturating_sub(1));
    for t in 0..n.saturating_sub(1) {
        let mut tr: Vec<Vec<Rat>> = (0..m).map(|j| unit(m, j)).collect();
        for (p, &j) in &index[t] {
            tr[j] = vec![Rat::zero(); m];
            let parent = Rat::from_integer((counts[t][p] as i64).into());
            for (q, &c) in &counts[t + 1] {
                if q[..=t] == **p {
                    tr[j][index[t + 1][q]] = Rat::from_integer((c as i64).into()) / &parent;
                }
            }
        }
        transitions.push(tr);
    }
    HmmVec::new(order.to_vec(), initial, transitions, emissions)
}

/// Unrolls an HmmVec into a stationary HMM with states (s, t), t ∈ 1..=n+1;
/// block n+1 absorbs and emits uniformly.
pub fn hmmvec_to_hmm(h: &HmmVec, alphabet: &Alphabet) -> Result<Hmm> {
    let (m, n, k) = (h.states(), h.len(), h.domain());
    if alphabet.len() != k {
        return Err(Error::AlphabetMismatch(format!("alphabet {alphabet} for domain size {k}")));
    }
    let id = |s: usize, t: usize| t * m + s; // t 0-based
    let total = m * (n + 1);
    let mut initial = vec![Rat::zero(); total];
    let mut transition = vec![vec![Rat::zero(); total]; total];
    let mut emission = vec![vec![Rat::zero(); k]; total];
    for s in 0..m {
        initial[id(s, 0)] = h.initial[s].clone();
        for t in 0..n {
            emission[id(s, t)] = h.emissions[t][s].clone();
            if t + 1 < n {
                for s2 in 0..m {
                    transition[id(s, t)][id(s2, t + 1)] = h.transitions[t][s][s2].clone();
                }
            } else {
                transition[id(s, t)][id(s, n)] = Rat::one();
            }
        }
        emission[id(s, n)] = vec![Rat::new(1.into(), (k as i64).into()); k];
        transition[id(s, n)][id(s, n)] = Rat::one();
    }
    Hmm::new(alphabet.clone(), initial, transition, emission)
}

/// Single latent state.
pub fn ind_to_hmmvec(p: &IndDist, order: &[usize]) -> Result<HmmVec> {
    let n = p.p.len();
    check_order(order, n)?;
    HmmVec::new(
        order.to_vec(),
        vec![Rat::one()],
        vec![vec![vec![Rat::one()]]; n - 1],
        order.iter().map(|&f| vec![p.p[f].clone()]).collect(),
    )
}

/// Latent class is drawn once and kept (identity transitions).
pub fn nb_to_hmmvec(nb: &NaiveBayes, order: &[usize]) -> Result<HmmVec> {
    let n = nb.cond.len();
    check_order(order, n)?;
    let m = nb.prior.len();
    let ident: Vec<Vec<Rat>> = (0..m).map(|j| unit(m, j)).collect();
    HmmVec::new(
        order.to_vec(),
        nb.prior.clone(),
        vec![ident; n - 1],
        order.iter().map(|&f| nb.cond[f].clone()).collect(),
    )
}

/// Hidden state = last symbol; state σ emits σ.
pub fn markov_to_hmm(mk: &MarkovDist, alphabet: &Alphabet) -> Result<Hmm> {
    let k = mk.initial.len();
    if alphabet.len() != k {
        return Err(Error::AlphabetMismatch(format!("alphabet {alphabet} for {k} Markov states")));
    }
    Hmm::new(alphabet.clone(), mk.initial.clone(), mk.transition.clone(), (0..k).map(|j| unit(k, j)).collect())
}
