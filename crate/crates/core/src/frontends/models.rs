//! Tabular models → weighted automata.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::dist::check_order;
use super::tabular::{DecisionTree, EnsembleMode, LinearModel, TreeEnsemble, TreeNode};
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::wa::{add, scale, Alphabet, SparseMat, Wa};

/// Alphabet of feature values `0..k`.
pub fn value_alphabet(k: usize) -> Alphabet {
    Alphabet::numeric(k)
}

/// Chain automaton: `value` on sequences meeting `constraint` (by feature).
fn chain(alphabet: &Alphabet, order: &[usize], constraint: &[Option<usize>], value: &Rat) -> Wa {
    let n = order.len();
    let mut trans: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
    for (pos, &f) in order.iter().enumerate() {
        for s in 0..alphabet.len() {
            if constraint[f].is_none_or(|v| v == s) {
                trans.entry(vec![s]).or_insert_with(|| SparseMat::zeros(n + 1)).add_at(pos, pos + 1, Rat::one());
            }
        }
    }
    let mut alpha = vec![Rat::zero(); n + 1];
    alpha[0] = Rat::one();
    let mut beta = vec![Rat::zero(); n + 1];
    beta[n] = value.clone();
    Wa::new(vec![alphabet.clone()], alpha, beta, trans).expect("chain automaton is well formed")
}

fn leaves(t: &DecisionTree, v: usize, path: &mut Vec<Option<usize>>, out: &mut Vec<(Vec<Option<usize>>, Rat)>) {
    match &t.nodes[v] {
        TreeNode::Leaf(c) => out.push((path.clone(), c.clone())),
        TreeNode::Split { feature, children } => {
            for (val, &c) in children.iter().enumerate() {
                path[feature - 1] = Some(val);
                leaves(t, c, path, out);
            }
            path[feature - 1] = None;
        }
    }
}

/// Sum over leaves of value × indicator of the leaf's path constraints.
pub fn dt_to_wa(t: &DecisionTree, order: &[usize]) -> Result<Wa> {
    check_order(order, t.n_features)?;
    let alphabet = value_alphabet(t.domain);
    let mut out = Vec::new();
    leaves(t, t.root, &mut vec![None; t.n_features], &mut out);
    let mut acc: Option<Wa> = None;
    for (path, value) in out.iter().filter(|(_, v)| !v.is_zero()) {
        let c = chain(&alphabet, order, path, value);
        acc = Some(match acc {
            None => c,
            Some(a) => add(&a, &c)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Wa::zero(vec![alphabet])))
}

/// Weighted sum of compiled trees. Voting ensembles are refused: computing
/// their SHAP values is intractable, so no polynomial compilation exists.
pub fn ensemble_reg_to_wa(e: &TreeEnsemble, order: &[usize]) -> Result<Wa> {
    if e.mode == EnsembleMode::Vote {
        return Err(Error::Unsupported(
            "voting ensembles cannot be compiled: SHAP for them is NP-hard (reduction from 3-SAT)".into(),
        ));
    }
    let mut acc: Option<Wa> = None;
    for (t, w) in e.trees.iter().zip(&e.weights) {
        let part = scale(w, &dt_to_wa(t, order)?);
        acc = Some(match acc {
            None => part,
            Some(a) => add(&a, &part)?,
        });
    }
    Ok(acc.expect("ensemble is non-empty"))
}

/// Two-rail accumulator: rail 0 has not yet taken a weight, rail 1 has.
/// Every accepting run switches rails exactly once, at the position whose
/// weight it contributes, so the total is Σᵢ w[i][xᵢ]; the intercept is a
/// separate constant automaton.
pub fn linear_to_wa(m: &LinearModel, order: &[usize]) -> Result<Wa> {
    let n = m.n_features();
    check_order(order, n)?;
    let alphabet = value_alphabet(m.domain());
    let id = |q: usize, rail: usize| 2 * q + rail;
    let dim = 2 * (n + 1);
    let mut trans: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
    for (pos, &f) in order.iter().enumerate() {
        for s in 0..alphabet.len() {
            let a = trans.entry(vec![s]).or_insert_with(|| SparseMat::zeros(dim));
            a.add_at(id(pos, 0), id(pos + 1, 0), Rat::one());
            a.add_at(id(pos, 0), id(pos + 1, 1), m.weights[f][s].clone());
            a.add_at(id(pos, 1), id(pos + 1, 1), Rat::one());
        }
    }
    let mut alpha = vec![Rat::zero(); dim];
    alpha[id(0, 0)] = Rat::one();
    let mut beta = vec![Rat::zero(); dim];
    beta[id(n, 1)] = Rat::one();
    let sum = Wa::new(vec![alphabet.clone()], alpha, beta, trans)?;
    add(&sum, &Wa::constant(vec![alphabet], m.intercept.clone()))
}
