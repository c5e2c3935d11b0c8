//! Seeded generators for random test instances.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::engine::Hmm;
use crate::frontends::{Dataset, DecisionTree, EnsembleMode, HmmVec, LinearModel, TreeEnsemble, TreeNode};
use crate::oracle::{CnfFormula, CspInstance, Wmg};
use crate::scalar::{int, ratio, Rat};
use crate::wa::{dfa_to_wa, Alphabet, Dfa, SparseMat, Wa};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small signed rational p/q with |p| ≤ 3, q ≤ 4.
pub fn rat(r: &mut impl Rng) -> Rat {
    ratio(r.gen_range(-3..=3), r.gen_range(1..=4))
}

/// Dense-ish random rational WA.
pub fn random_wa(r: &mut impl Rng, alphabet: &Alphabet, dim: usize) -> Wa {
    let alpha = (0..dim).map(|_| rat(r)).collect();
    let beta = (0..dim).map(|_| rat(r)).collect();
    let mut trans = BTreeMap::new();
    for s in 0..alphabet.len() {
        let mut m = SparseMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if r.gen_bool(0.6) {
                    m.add_at(i, j, rat(r));
                }
            }
        }
        trans.insert(vec![s], m);
    }
    Wa::new(vec![alphabet.clone()], alpha, beta, trans).expect("random WA is well formed")
}

fn rat_dyn(r: &mut dyn rand::RngCore) -> Rat {
    ratio(r.gen_range(-3..=3), r.gen_range(1..=4))
}

/// Random WA with N tapes (used by the algebra tests).
pub fn random_wa_n(r: &mut impl Rng, alphabets: &[Alphabet], dim: usize) -> Wa {
    let alpha = (0..dim).map(|_| rat(r)).collect();
    let beta = (0..dim).map(|_| rat(r)).collect();
    let mut trans = BTreeMap::new();
    for t in crate::wa::tuples(alphabets) {
        let mut m = SparseMat::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                if r.gen_bool(0.5) {
                    m.add_at(i, j, rat(r));
                }
            }
        }
        trans.insert(t, m);
    }
    Wa::new(alphabets.to_vec(), alpha, beta, trans).expect("random WA is well formed")
}

/// 0/1-valued WA from a random complete DFA.
pub fn random_01_wa(r: &mut impl Rng, alphabet: &Alphabet, states: usize) -> Wa {
    let mut d = Dfa::new(vec![alphabet.clone()], states, 0).expect("states > 0");
    for q in 0..states {
        for s in 0..alphabet.len() {
            d.add(q, vec![s], r.gen_range(0..states)).expect("fresh key");
        }
        if r.gen_bool(0.5) {
            d.finals.insert(q);
        }
    }
    dfa_to_wa(&d).expect("DFA embeds")
}

/// Probability vector with entries in multiples of 1/sum, some zeros.
pub fn stochastic_row(r: &mut impl Rng, len: usize) -> Vec<Rat> {
    let mut w: Vec<i64> = (0..len).map(|_| r.gen_range(0..=3)).collect();
    if w.iter().all(|&v| v == 0) {
        let j = r.gen_range(0..len);
        w[j] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|v| ratio(v, total)).collect()
}

pub fn random_hmm(r: &mut impl Rng, alphabet: &Alphabet, states: usize) -> Hmm {
    let initial = stochastic_row(r, states);
    let transition = (0..states).map(|_| stochastic_row(r, states)).collect();
    let emission = (0..states).map(|_| stochastic_row(r, alphabet.len())).collect();
    Hmm::new(alphabet.clone(), initial, transition, emission).expect("random HMM is stochastic")
}

pub fn random_word(r: &mut impl Rng, k: usize, n: usize) -> Vec<usize> {
    (0..n).map(|_| r.gen_range(0..k)).collect()
}

pub fn random_order(r: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut o: Vec<usize> = (0..n).collect();
    o.shuffle(r);
    o
}

/// Random tree with at most `max_nodes` nodes; leaves carry small rationals
/// (or 0/1 classes when `classes` is set).
pub fn random_tree(r: &mut impl Rng, n: usize, k: usize, max_nodes: usize, classes: bool) -> DecisionTree {
    fn grow(
        r: &mut dyn rand::RngCore,
        n: usize,
        k: usize,
        budget: &mut usize,
        used: &mut Vec<bool>,
        nodes: &mut Vec<TreeNode>,
        classes: bool,
    ) -> usize {
        let free: Vec<usize> = (0..n).filter(|&f| !used[f]).collect();
        let me = nodes.len();
        if free.is_empty() || *budget < k + 1 || r.gen_bool(0.3) {
            let l = if classes { int(r.gen_range(0..=1)) } else { rat_dyn(r) };
            nodes.push(TreeNode::Leaf(l));
            *budget = budget.saturating_sub(1);
            return me;
        }
        let f = free[r.gen_range(0..free.len())];
        nodes.push(TreeNode::Leaf(int(0)));
        *budget -= 1;
        // reserve one slot per child so the tree stays within budget
        *budget -= k;
        used[f] = true;
        let mut children = Vec::with_capacity(k);
        for _ in 0..k {
            *budget += 1;
            children.push(grow(r, n, k, budget, used, nodes, classes));
        }
        used[f] = false;
        nodes[me] = TreeNode::Split { feature: f + 1, children };
        me
    }
    let mut nodes = Vec::new();
    let mut budget = max_nodes.max(1);
    let root = grow(r, n, k, &mut budget, &mut vec![false; n], &mut nodes, classes);
    DecisionTree::new(n, k, nodes, root).expect("generated tree is valid")
}

pub fn random_ensemble(r: &mut impl Rng, n: usize, k: usize, trees: usize, max_nodes: usize) -> TreeEnsemble {
    let ts = (0..trees).map(|_| random_tree(r, n, k, max_nodes, false)).collect();
    let ws = (0..trees).map(|_| rat(r)).collect();
    TreeEnsemble::new(ts, ws, EnsembleMode::Regression).expect("valid ensemble")
}

pub fn random_linear(r: &mut impl Rng, n: usize, k: usize) -> LinearModel {
    LinearModel::new((0..n).map(|_| (0..k).map(|_| rat(r)).collect()).collect(), rat(r)).expect("valid linear model")
}

pub fn random_dataset(r: &mut impl Rng, n: usize, k: usize, rows: usize) -> Dataset {
    Dataset::new((0..rows).map(|_| random_word(r, k, n)).collect(), k).expect("valid dataset")
}

pub fn random_hmmvec(r: &mut impl Rng, n: usize, k: usize, states: usize) -> HmmVec {
    HmmVec::new(
        random_order(r, n),
        stochastic_row(r, states),
        (1..n).map(|_| (0..states).map(|_| stochastic_row(r, states)).collect()).collect(),
        (0..n).map(|_| (0..states).map(|_| stochastic_row(r, k)).collect()).collect(),
    )
    .expect("valid HmmVec")
}

pub fn random_wmg(r: &mut impl Rng, players: usize, max_power: u64) -> Wmg {
    let powers: Vec<u64> = (0..players).map(|_| r.gen_range(0..=max_power)).collect();
    let total: u64 = powers.iter().sum();
    Wmg::new(powers, r.gen_range(1..=total.max(1))).expect("players > 0")
}

/// Clauses of up to three distinct variables with random signs.
pub fn random_3cnf(r: &mut impl Rng, vars: usize, clauses: usize) -> CnfFormula {
    let vs: Vec<i64> = (1..=vars as i64).collect();
    let cs = (0..clauses)
        .map(|_| {
            vs.choose_multiple(r, vars.min(3))
                .map(|&v| if r.gen_bool(0.5) { v } else { -v })
                .collect()
        })
        .collect();
    CnfFormula::new(vars, cs).expect("literals in range")
}

pub fn random_csp(r: &mut impl Rng, strings: usize, n: usize, k: usize) -> CspInstance {
    let ss = (0..strings).map(|_| random_word(r, k, n)).collect();
    CspInstance::new(ss, r.gen_range(0..=n), k).expect("valid CSP instance")
}
