//! The automata of the Lemma 2 pipelines.
//!
//! Conventions: patterns live over Σ_# with `#` at index `|Σ|`; positions
//! and feature indices are 1-based.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Hmm;
use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, Rat};
use crate::wa::{add, dfa_to_wa, kron, scale, trim, Alphabet, Dfa, SparseMat, Wa};

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

/// 𝒫ᵢʷ weight of a pattern with k placeholders out of n: 1/(n·C(n−1,k−1)).
fn count_weight(n: usize, k: usize) -> Rat {
    Rat::new(factorial(k - 1) * factorial(n - k), factorial(n))
}

/// Layered state index for (ℓ, e), ℓ ∈ 1..=n+1, e < ℓ.
fn layer_id(l: usize, e: usize) -> usize {
    (l - 1) * l / 2 + e
}

fn layered_dim(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Shared skeleton of A_{w,i} and the weight half of A_{i,n}.
/// `allowed(ℓ, σ)` says whether the non-`#` symbol σ may be read at ℓ.
fn layered_weights(
    alphabets: Vec<Alphabet>,
    n: usize,
    i: usize,
    hash: usize,
    symbols: usize,
    tapes: impl Fn(usize) -> Vec<Vec<usize>>,
    allowed: impl Fn(usize, usize) -> bool,
) -> Wa {
    let dim = layered_dim(n);
    let mut trans: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
    for l in 1..=n {
        for e in 0..l {
            let from = layer_id(l, e);
            for s in 0..symbols {
                let to = if s == hash {
                    layer_id(l + 1, e + 1)
                } else if l != i && allowed(l, s) {
                    layer_id(l + 1, e)
                } else {
                    continue;
                };
                for t in tapes(s) {
                    trans.entry(t).or_insert_with(|| SparseMat::zeros(dim)).add_at(from, to, Rat::one());
                }
            }
        }
    }
    let mut alpha = vec![Rat::zero(); dim];
    alpha[layer_id(1, 0)] = Rat::one();
    let mut beta = vec![Rat::zero(); dim];
    for k in 1..=n {
        beta[layer_id(n + 1, k)] = count_weight(n, k);
    }
    Wa::new(alphabets, alpha, beta, trans).expect("layered automaton is well formed")
}

/// A_{w,i}: single-tape WA over Σ_# with `f = 𝒫ᵢʷ`.
///
/// States are (position, #-count); the final weight at count k is
/// 1/(|w|·|ℒ_{i,k}|), so one automaton covers every k.
pub fn build_a_wi(sigma: &Alphabet, w: &[usize], i: usize) -> Result<Wa> {
    let n = w.len();
    check_index(i, n)?;
    let sh = sigma.with_hash();
    let hash = sigma.len();
    Ok(trim(&layered_weights(vec![sh.clone()], n, i, hash, sh.len(), |s| vec![vec![s]], |l, s| s == w[l - 1])))
}

/// DFA for ℒ_{i,k}^{(w)} = {p : w ∈ L_p, |p|_# = k, pᵢ = #}.
pub fn lik_dfa(sigma: &Alphabet, w: &[usize], i: usize, k: usize) -> Result<Dfa> {
    let n = w.len();
    check_index(i, n)?;
    check_index(k, n)?;
    let sh = sigma.with_hash();
    let hash = sigma.len();
    // state (ℓ, e) with e ≤ k, id = (ℓ-1)(k+1) + e
    let id = |l: usize, e: usize| (l - 1) * (k + 1) + e;
    let mut d = Dfa::new(vec![sh], (n + 1) * (k + 1), id(1, 0))?;
    for l in 1..=n {
        for e in 0..=k.min(l - 1) {
            if e < k {
                d.add(id(l, e), vec![hash], id(l + 1, e + 1))?;
            }
            if l != i {
                d.add(id(l, e), vec![w[l - 1]], id(l + 1, e))?;
            }
        }
    }
    d.finals.insert(id(n + 1, k));
    Ok(d)
}

/// The construction that sums one normalized DFA per placeholder count.
/// Same function as [`build_a_wi`], O(|w|³) states.
pub fn build_a_wi_summed(sigma: &Alphabet, w: &[usize], i: usize) -> Result<Wa> {
    let n = w.len();
    check_index(i, n)?;
    let mut acc: Option<Wa> = None;
    for k in 1..=n {
        let part = scale(&count_weight(n, k), &dfa_to_wa(&lik_dfa(sigma, w, i, k)?)?);
        acc = Some(match acc {
            None => part,
            Some(a) => add(&a, &part)?,
        });
    }
    Ok(trim(&acc.expect("n >= 1")))
}

/// |ℒ_{i,k}^{(w)}| = C(|w|−1, k−1).
pub fn count_lik(n: usize, i: usize, k: usize) -> Result<BigInt> {
    check_index(i, n)?;
    check_index(k, n)?;
    Ok(binomial(n - 1, k - 1))
}

/// Membership half of A_{i,n}: accepts (p, w) iff w ∈ L_p and pᵢ = #.
pub fn membership_dfa(sigma: &Alphabet, i: usize, n: usize) -> Result<Dfa> {
    check_index(i, n)?;
    let sh = sigma.with_hash();
    let hash = sigma.len();
    let mut d = Dfa::new(vec![sh, sigma.clone()], n + 1, 0)?;
    for q in 1..=n {
        for s in 0..=hash {
            for s2 in 0..sigma.len() {
                let ok = if q != i { s == hash || s == s2 } else { s == hash };
                if ok {
                    d.add(q - 1, vec![s, s2], q)?;
                }
            }
        }
    }
    d.finals.insert(n);
    Ok(d)
}

/// A_{i,n}: 2-tape WA over Σ_# × Σ with `f(p, w) = I(p ∈ ℒᵢʷ)·𝒫ᵢʷ(p)`.
pub fn build_a_in(sigma: &Alphabet, i: usize, n: usize) -> Result<Wa> {
    let member = dfa_to_wa(&membership_dfa(sigma, i, n)?)?;
    let sh = sigma.with_hash();
    let k = sigma.len();
    let weights = layered_weights(
        vec![sh.clone(), sigma.clone()],
        n,
        i,
        k,
        sh.len(),
        |s| (0..k).map(|s2| vec![s, s2]).collect(),
        |_, _| true,
    );
    Ok(trim(&kron(&member, &weights)?))
}

/// Φ(σ₁,σ₂,σ₃,σ₄) = (σ₁ = # ∧ σ₃ = σ₂) ∨ (σ₁ ≠ # ∧ σ₃ = σ₄).
fn phi(hash: usize, s1: usize, s2: usize, s3: usize, s4: usize) -> bool {
    (s1 == hash && s3 == s2) || (s1 != hash && s3 == s4)
}

fn three_tapes(sigma: &Alphabet) -> Vec<Alphabet> {
    vec![sigma.with_hash(), sigma.clone(), sigma.clone()]
}

fn four_tapes(sigma: &Alphabet) -> Vec<Alphabet> {
    vec![sigma.with_hash(), sigma.clone(), sigma.clone(), sigma.clone()]
}

fn chain_3(sigma: &Alphabet, w: &[usize], swapped: Option<usize>) -> Result<Wa> {
    let n = w.len();
    let hash = sigma.len();
    let k = sigma.len();
    let mut d = Dfa::new(three_tapes(sigma), n + 1, 0)?;
    for q in 1..=n {
        for s1 in 0..=hash {
            for s2 in 0..k {
                for s3 in 0..k {
                    let ok = if swapped == Some(q) { s3 == w[q - 1] } else { phi(hash, s1, s2, s3, w[q - 1]) };
                    if ok {
                        d.add(q - 1, vec![s1, s2, s3], q)?;
                    }
                }
            }
        }
    }
    d.finals.insert(n);
    dfa_to_wa(&d)
}

/// T_w: `g_w(p, w′, u) = I(do(p, w′, w) = u)`.
pub fn build_t_w(sigma: &Alphabet, w: &[usize]) -> Result<Wa> {
    chain_3(sigma, w, None)
}

/// T_{w,i}: `g_{w,i}(p, w′, u) = I(do(swap(p, wᵢ, i), w′, w) = u)`.
pub fn build_t_wi(sigma: &Alphabet, w: &[usize], i: usize) -> Result<Wa> {
    check_index(i, w.len())?;
    chain_3(sigma, w, Some(i))
}

/// T: `g(p, w′, u, w) = g_w(p, w′, u)`; a single state.
pub fn build_t(sigma: &Alphabet) -> Result<Wa> {
    let hash = sigma.len();
    let k = sigma.len();
    let mut d = Dfa::new(four_tapes(sigma), 1, 0)?;
    for s1 in 0..=hash {
        for s2 in 0..k {
            for s3 in 0..k {
                for s4 in 0..k {
                    if phi(hash, s1, s2, s3, s4) {
                        d.add(0, vec![s1, s2, s3, s4], 0)?;
                    }
                }
            }
        }
    }
    d.finals.insert(0);
    dfa_to_wa(&d)
}

/// T_i: `g_i(p, w′, u, w) = g_{w,i}(p, w′, u)`; i+1 states.
pub fn build_t_i(sigma: &Alphabet, i: usize, n: usize) -> Result<Wa> {
    check_index(i, n)?;
    let hash = sigma.len();
    let k = sigma.len();
    let mut d = Dfa::new(four_tapes(sigma), i + 1, 0)?;
    for s1 in 0..=hash {
        for s2 in 0..k {
            for s3 in 0..k {
                for s4 in 0..k {
                    let t = vec![s1, s2, s3, s4];
                    let p = phi(hash, s1, s2, s3, s4);
                    for q in 1..i {
                        if p {
                            d.add(q - 1, t.clone(), q)?;
                        }
                    }
                    if s3 == s4 {
                        d.add(i - 1, t.clone(), i)?;
                    }
                    if p {
                        d.add(i, t, i)?;
                    }
                }
            }
        }
    }
    d.finals.insert(i);
    dfa_to_wa(&d)
}

/// HMM that emits `w_ref` with probability 1, then uniform symbols forever.
pub fn build_point_hmm(sigma: &Alphabet, w_ref: &[usize]) -> Result<Hmm> {
    let n = w_ref.len();
    let m = n + 1;
    let k = sigma.len();
    let mut initial = vec![Rat::zero(); m];
    initial[0] = Rat::one();
    let mut transition = vec![vec![Rat::zero(); m]; m];
    let mut emission = vec![vec![Rat::zero(); k]; m];
    for q in 0..n {
        if w_ref[q] >= k {
            return Err(Error::UnknownSymbol(format!("index {}", w_ref[q])));
        }
        transition[q][q + 1] = Rat::one();
        emission[q][w_ref[q]] = Rat::one();
    }
    transition[n][n] = Rat::one();
    emission[n] = vec![Rat::new(1.into(), (k as i64).into()); k];
    Hmm::new(sigma.clone(), initial, transition, emission)
}
