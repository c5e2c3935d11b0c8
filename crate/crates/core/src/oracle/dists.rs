//! Probabilities of complete inputs, computed straight from parameters.

use num_traits::Zero;

use crate::engine::Hmm;
use crate::frontends::{Dataset, HmmVec, IndDist, MarkovDist, NaiveBayes};
use crate::scalar::Rat;

/// Standard forward recursion: a_1(s) = π(s)·O(s,x₁),
/// a_{t+1}(s′) = Σ_s a_t(s)·T(s,s′)·O(s′,x_{t+1}).
fn forward(initial: &[Rat], trans: &dyn Fn(usize) -> Vec<Vec<Rat>>, emit: &dyn Fn(usize) -> Vec<Vec<Rat>>, x: &[usize]) -> Rat {
    if x.is_empty() {
        return initial.iter().sum();
    }
    let o0 = emit(0);
    let mut a: Vec<Rat> = initial.iter().enumerate().map(|(s, p)| p * &o0[s][x[0]]).collect();
    for t in 1..x.len() {
        let tr = trans(t - 1);
        let o = emit(t);
        a = (0..a.len())
            .map(|s2| {
                let inflow: Rat = a.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(s, v)| v * &tr[s][s2]).sum();
                inflow * &o[s2][x[t]]
            })
            .collect();
    }
    a.into_iter().sum()
}

/// Probability that the HMM's output starts with `x`.
pub fn hmm_prob(h: &Hmm, x: &[usize]) -> Rat {
    let t = h.transition().to_vec();
    let o = h.emission().to_vec();
    forward(h.initial(), &|_| t.clone(), &|_| o.clone(), x)
}

/// `x` is in feature order; the model reads it through its order.
pub fn hmmvec_prob(h: &HmmVec, x: &[usize]) -> Rat {
    let seq: Vec<usize> = h.order.iter().map(|&f| x[f]).collect();
    forward(&h.initial, &|t| h.transitions[t].clone(), &|t| h.emissions[t].clone(), &seq)
}

pub fn emp_prob(d: &Dataset, x: &[usize]) -> Rat {
    let hits = d.rows.iter().filter(|r| r.as_slice() == x).count();
    Rat::new((hits as i64).into(), (d.rows.len() as i64).into())
}

pub fn ind_prob(p: &IndDist, x: &[usize]) -> Rat {
    p.p.iter().zip(x).map(|(row, &v)| row[v].clone()).product()
}

pub fn markov_prob(m: &MarkovDist, x: &[usize]) -> Rat {
    let Some(&first) = x.first() else {
        return Rat::from_integer(1.into());
    };
    let mut p = m.initial[first].clone();
    for w in x.windows(2) {
        p *= &m.transition[w[0]][w[1]];
    }
    p
}

pub fn nb_prob(m: &NaiveBayes, x: &[usize]) -> Rat {
    m.prior
        .iter()
        .enumerate()
        .map(|(y, py)| py * m.cond.iter().zip(x).map(|(table, &v)| table[y][v].clone()).product::<Rat>())
        .sum()
}

pub fn point_prob(w_ref: &[usize], x: &[usize]) -> Rat {
    Rat::from_integer(i64::from(w_ref == x).into())
}

pub fn uniform_prob(k: usize, x: &[usize]) -> Rat {
    Rat::new(1.into(), num_traits::pow(num_bigint::BigInt::from(k), x.len()))
}
