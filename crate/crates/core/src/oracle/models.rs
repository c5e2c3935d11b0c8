//! Model classes evaluated by direct forward computation.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frontends::{DecisionTree, EnsembleMode, LinearModel, TreeEnsemble, TreeNode};
use crate::scalar::{to_f64, Rat};
use crate::wa::Wa;

/// Dense copy of a single-tape WA, evaluated right to left (`A·β` first).
#[derive(Clone, Debug)]
pub struct DenseWa {
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
    mats: Vec<Vec<Vec<Rat>>>,
}

impl DenseWa {
    pub fn new(wa: &Wa) -> Result<Self> {
        if wa.arity() != 1 {
            return Err(Error::InvalidModel("only single-tape automata are models".into()));
        }
        let n = wa.dim();
        let mats = (0..wa.alphabet().len())
            .map(|s| wa.matrix(&[s]).map(|m| m.to_dense()).unwrap_or_else(|| vec![vec![Rat::zero(); n]; n]))
            .collect();
        Ok(DenseWa { alpha: wa.alpha().to_vec(), beta: wa.beta().to_vec(), mats })
    }

    pub fn eval(&self, x: &[usize]) -> Rat {
        let mut v = self.beta.clone();
        for &s in x.iter().rev() {
            let m = &self.mats[s];
            v = m
                .iter()
                .map(|row| row.iter().zip(&v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
                .collect();
        }
        self.alpha.iter().zip(&v).map(|(a, b)| a * b).sum()
    }
}

pub fn eval_tree(t: &DecisionTree, x: &[usize]) -> Rat {
    let mut v = t.root;
    loop {
        match &t.nodes[v] {
            TreeNode::Leaf(c) => return c.clone(),
            TreeNode::Split { feature, children } => v = children[x[feature - 1]],
        }
    }
}

/// `step(x) = 1 ⟺ x ≥ 0`.
pub fn step(x: &Rat) -> Rat {
    if x.is_negative() {
        Rat::zero()
    } else {
        Rat::one()
    }
}

pub fn eval_ensemble(e: &TreeEnsemble, x: &[usize]) -> Rat {
    match e.mode {
        EnsembleMode::Regression => e.trees.iter().zip(&e.weights).map(|(t, w)| w * eval_tree(t, x)).sum(),
        EnsembleMode::Vote => {
            let two = Rat::from_integer(2.into());
            let s: Rat = e
                .trees
                .iter()
                .zip(&e.weights)
                .map(|(t, w)| w * (&two * eval_tree(t, x) - Rat::one()))
                .sum();
            step(&s)
        }
    }
}

pub fn eval_linear(m: &LinearModel, x: &[usize]) -> Rat {
    m.weights.iter().zip(x).map(|(row, &v)| row[v].clone()).sum::<Rat>() + &m.intercept
}

/// `h_{w′σ} = ReLU(W·h_{w′} + v_σ)`, `f(w) = I(Oᵀ·h_w ≥ 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RnnRelu {
    pub h_init: Vec<Rat>,
    pub w: Vec<Vec<Rat>>,
    pub v: Vec<Vec<Rat>>,
    pub out: Vec<Rat>,
}

impl RnnRelu {
    pub fn new(h_init: Vec<Rat>, w: Vec<Vec<Rat>>, v: Vec<Vec<Rat>>, out: Vec<Rat>) -> Result<Self> {
        let d = h_init.len();
        if w.len() != d || w.iter().any(|r| r.len() != d) || v.iter().any(|r| r.len() != d) || out.len() != d {
            return Err(Error::InvalidModel("inconsistent RNN dimensions".into()));
        }
        Ok(RnnRelu { h_init, w, v, out })
    }

    pub fn dim(&self) -> usize {
        self.h_init.len()
    }

    pub fn hidden(&self, x: &[usize]) -> Vec<Rat> {
        let mut h = self.h_init.clone();
        for &s in x {
            h = self
                .w
                .iter()
                .zip(&self.v[s])
                .map(|(row, b)| {
                    let z: Rat = row.iter().zip(&h).filter(|(a, _)| !a.is_zero()).map(|(a, c)| a * c).sum::<Rat>() + b;
                    if z.is_negative() {
                        Rat::zero()
                    } else {
                        z
                    }
                })
                .collect();
        }
        h
    }

    pub fn score(&self, x: &[usize]) -> Rat {
        self.out.iter().zip(self.hidden(x)).map(|(o, h)| o * h).sum()
    }

    pub fn eval(&self, x: &[usize]) -> Rat {
        step(&self.score(x))
    }
}

/// `σ(C·(Σ wⱼxⱼ + b))` evaluated in binary-64.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmoidNet {
    pub weights: Vec<Rat>,
    pub bias: Rat,
    pub gain: f64,
}

impl SigmoidNet {
    pub fn eval(&self, x: &[usize]) -> f64 {
        let z: Rat = self.weights.iter().zip(x).map(|(w, &v)| w * Rat::from_integer((v as i64).into())).sum::<Rat>() + &self.bias;
        let t = self.gain * to_f64(&z);
        1.0 / (1.0 + (-t).exp())
    }

    /// Same function with the weights converted once, for bulk enumeration.
    pub fn compiled(&self) -> impl Fn(&[usize]) -> f64 {
        let w: Vec<f64> = self.weights.iter().map(to_f64).collect();
        let b = to_f64(&self.bias);
        let gain = self.gain;
        move |x: &[usize]| {
            let z: f64 = w.iter().zip(x).map(|(w, &v)| w * v as f64).sum::<f64>() + b;
            1.0 / (1.0 + (-gain * z).exp())
        }
    }
}

/// Weighted majority game ⟨N, (nᵢ), q⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wmg {
    pub powers: Vec<u64>,
    pub quota: u64,
}

impl Wmg {
    pub fn new(powers: Vec<u64>, quota: u64) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidModel("a game needs players".into()));
        }
        Ok(Wmg { powers, quota })
    }

    pub fn players(&self) -> usize {
        self.powers.len()
    }

    /// v_G(S) for the coalition given as a 0/1 vector.
    pub fn value(&self, x: &[usize]) -> bool {
        let s: u64 = self.powers.iter().zip(x).filter(|(_, &b)| b == 1).map(|(p, _)| *p).sum();
        s >= self.quota
    }
}

/// CNF over variables 1..=n; literals are ±var.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl CnfFormula {
    pub fn new(vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for c in &clauses {
            for &l in c {
                if l == 0 || l.unsigned_abs() as usize > vars {
                    return Err(Error::InvalidModel(format!("literal {l} out of range")));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    pub fn satisfied_by(&self, x: &[usize]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| lit_true(l, x)))
    }

    pub fn parse_dimacs(s: &str) -> Result<Self> {
        let mut vars = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 || parts[0] != "cnf" {
                    return Err(Error::Parse(format!("bad problem line {line:?}")));
                }
                vars = Some(parts[1].parse::<usize>().map_err(|_| Error::Parse("bad variable count".into()))?);
                continue;
            }
            for tok in line.split_whitespace() {
                let l: i64 = tok.parse().map_err(|_| Error::Parse(format!("bad literal {tok:?}")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else {
                    cur.push(l);
                }
            }
        }
        if !cur.is_empty() {
            clauses.push(cur);
        }
        let vars = vars.ok_or_else(|| Error::Parse("missing `p cnf` line".into()))?;
        CnfFormula::new(vars, clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                s.push_str(&format!("{l} "));
            }
            s.push_str("0\n");
        }
        s
    }
}

pub fn lit_true(l: i64, x: &[usize]) -> bool {
    let v = x[l.unsigned_abs() as usize - 1] == 1;
    if l > 0 {
        v
    } else {
        !v
    }
}

/// Closest-string instance: is there a string within Hamming radius `k`
/// of every string in `strings`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub strings: Vec<Vec<usize>>,
    pub k: usize,
    pub alphabet_size: usize,
}

impl CspInstance {
    pub fn new(strings: Vec<Vec<usize>>, k: usize, alphabet_size: usize) -> Result<Self> {
        let n = strings.first().map_or(0, Vec::len);
        if strings.iter().any(|s| s.len() != n) {
            return Err(Error::InvalidModel("CSP strings must share a length".into()));
        }
        if strings.iter().flatten().any(|&s| s >= alphabet_size) {
            return Err(Error::InvalidModel("CSP symbol outside the alphabet".into()));
        }
        Ok(CspInstance { strings, k, alphabet_size })
    }

    pub fn len(&self) -> usize {
        self.strings.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}
