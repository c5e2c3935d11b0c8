use std::collections::BTreeMap;

use num_traits::Zero;

use super::{dot, SparseMat, Wa};
use crate::error::{Error, Result};
use crate::scalar::Rat;

fn same_signature(a: &Wa, b: &Wa) -> Result<()> {
    if a.alphabets() != b.alphabets() {
        return Err(Error::AlphabetMismatch(format!(
            "{:?} vs {:?}",
            a.alphabets().iter().map(ToString::to_string).collect::<Vec<_>>(),
            b.alphabets().iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

fn kron_vec(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() { Rat::zero() } else { x * y });
        }
    }
    out
}

/// Block-diagonal sum: `f_{A+B} = f_A + f_B`.
pub fn add(a: &Wa, b: &Wa) -> Result<Wa> {
    same_signature(a, b)?;
    let (da, db) = (a.dim(), b.dim());
    let mut trans = BTreeMap::new();
    for t in a.trans.keys().chain(b.trans.keys()) {
        if trans.contains_key(t) {
            continue;
        }
        let ma = a.trans.get(t).cloned().unwrap_or_else(|| SparseMat::zeros(da));
        let mb = b.trans.get(t).cloned().unwrap_or_else(|| SparseMat::zeros(db));
        trans.insert(t.clone(), ma.direct_sum(&mb));
    }
    let alpha = a.alpha.iter().chain(&b.alpha).cloned().collect();
    let beta = a.beta.iter().chain(&b.beta).cloned().collect();
    Wa::new(a.alphabets.clone(), alpha, beta, trans)
}

/// `f_{c·A} = c · f_A`; only α is touched.
pub fn scale(c: &Rat, a: &Wa) -> Wa {
    let mut out = a.clone();
    for x in &mut out.alpha {
        *x = &*x * c;
    }
    out
}

/// `f_A - f_B`.
pub fn sub(a: &Wa, b: &Wa) -> Result<Wa> {
    add(a, &scale(&-Rat::from_integer(1.into()), b))
}

/// Pointwise product via Kronecker products of all components.
pub fn kron(a: &Wa, b: &Wa) -> Result<Wa> {
    same_signature(a, b)?;
    let mut trans = BTreeMap::new();
    for (t, ma) in &a.trans {
        if let Some(mb) = b.trans.get(t) {
            trans.insert(t.clone(), ma.kron(mb));
        }
    }
    Wa::new(
        a.alphabets.clone(),
        kron_vec(&a.alpha, &b.alpha),
        kron_vec(&a.beta, &b.beta),
        trans,
    )
}

/// Marginalizes tape `i` (1-based) of `t` against the single-tape `a`:
/// `g(…) = Σ_{w ∈ Σᵢ^L} f_A(w) · f_T(…, w at slot i, …)`.
pub fn project(i: usize, a: &Wa, t: &Wa) -> Result<Wa> {
    if a.arity() != 1 {
        return Err(Error::InvalidModel("projected automaton must have one tape".into()));
    }
    if t.arity() < 2 {
        return Err(Error::InvalidModel("projection target needs arity at least 2".into()));
    }
    if i == 0 || i > t.arity() {
        return Err(Error::IndexOutOfRange { index: i, max: t.arity() });
    }
    let slot = i - 1;
    if a.alphabet() != &t.alphabets[slot] {
        return Err(Error::AlphabetMismatch(format!(
            "projecting {} onto tape {i} over {}",
            a.alphabet(),
            t.alphabets[slot]
        )));
    }
    let dim = a.dim() * t.dim();
    let mut trans: BTreeMap<Vec<usize>, SparseMat> = BTreeMap::new();
    for (tup, mt) in &t.trans {
        let Some(ma) = a.trans.get(&tup[slot..=slot]) else {
            continue;
        };
        let mut key = tup.clone();
        key.remove(slot);
        trans
            .entry(key)
            .or_insert_with(|| SparseMat::zeros(dim))
            .add_assign(&ma.kron(mt));
    }
    let mut alphabets = t.alphabets.clone();
    alphabets.remove(slot);
    Wa::new(
        alphabets,
        kron_vec(&a.alpha, &t.alpha),
        kron_vec(&a.beta, &t.beta),
        trans,
    )
}

/// `Σ_{w ∈ Σ^len} f_A(w) · f_B(w)` for single-tape automata.
///
/// Computes `αᵀ (Σ_σ A_σ ⊗ B_σ)^len β` in factored form: the state is kept
/// as a `dim A × dim B` matrix X (rows allocated lazily) and updated as
/// `X ← Σ_σ A_σᵀ X B_σ`, so the Kronecker matrix is never built.
pub fn pi1(a: &Wa, b: &Wa, len: usize) -> Result<Rat> {
    if a.arity() != 1 || b.arity() != 1 {
        return Err(Error::InvalidModel("pi1 takes single-tape automata".into()));
    }
    same_signature(a, b)?;
    let (da, db) = (a.dim(), b.dim());
    let mut x: Vec<Option<Vec<Rat>>> = a
        .alpha
        .iter()
        .map(|c| (!c.is_zero()).then(|| b.alpha.iter().map(|v| c * v).collect()))
        .collect();
    for _ in 0..len {
        let mut next: Vec<Option<Vec<Rat>>> = vec![None; da];
        for (tup, ma) in &a.trans {
            let Some(mb) = b.trans.get(tup) else { continue };
            for (r, row) in x.iter().enumerate() {
                let Some(row) = row else { continue };
                if ma.row(r).is_empty() {
                    continue;
                }
                let y = mb.vec_mul(row);
                if y.iter().all(Zero::is_zero) {
                    continue;
                }
                for (r2, coef) in ma.row(r) {
                    let target = next[*r2].get_or_insert_with(|| vec![Rat::zero(); db]);
                    for (slot, v) in target.iter_mut().zip(&y) {
                        if !v.is_zero() {
                            *slot += coef * v;
                        }
                    }
                }
            }
        }
        for row in &mut next {
            if row.as_ref().is_some_and(|r| r.iter().all(Zero::is_zero)) {
                *row = None;
            }
        }
        x = next;
    }
    let mut total = Rat::zero();
    for (r, row) in x.iter().enumerate() {
        if let Some(row) = row {
            if !a.beta[r].is_zero() {
                total += &a.beta[r] * dot(row, &b.beta);
            }
        }
    }
    Ok(total)
}

/// `Σ_{w ∈ Σ^len} f_A(w)`, i.e. `pi1(A, 1, len)`.
pub fn pi0(a: &Wa, len: usize) -> Result<Rat> {
    if a.arity() != 1 {
        return Err(Error::InvalidModel("pi0 takes a single-tape automaton".into()));
    }
    let mut sum = SparseMat::zeros(a.dim());
    for m in a.trans.values() {
        sum.add_assign(m);
    }
    let mut v = a.alpha.clone();
    for _ in 0..len {
        v = sum.vec_mul(&v);
    }
    Ok(dot(&v, &a.beta))
}

/// Drops states that are unreachable from α or cannot reach β. The
/// computed function is unchanged.
pub fn trim(a: &Wa) -> Wa {
    let n = a.dim();
    let mut fwd = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&s| !a.alpha[s].is_zero()).collect();
    for &s in &stack {
        fwd[s] = true;
    }
    while let Some(s) = stack.pop() {
        for m in a.trans.values() {
            for (t, _) in m.row(s) {
                if !fwd[*t] {
                    fwd[*t] = true;
                    stack.push(*t);
                }
            }
        }
    }
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in a.trans.values() {
        for s in 0..n {
            for (t, _) in m.row(s) {
                preds[*t].push(s);
            }
        }
    }
    let mut bwd = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&s| !a.beta[s].is_zero()).collect();
    for &s in &stack {
        bwd[s] = true;
    }
    while let Some(s) = stack.pop() {
        for &p in &preds[s] {
            if !bwd[p] {
                bwd[p] = true;
                stack.push(p);
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&s| fwd[s] && bwd[s]).collect();
    if keep.len() == n {
        return a.clone();
    }
    if keep.is_empty() {
        return Wa::zero(a.alphabets.clone());
    }
    let mut new_id = vec![usize::MAX; n];
    for (k, &s) in keep.iter().enumerate() {
        new_id[s] = k;
    }
    let m = keep.len();
    let trans = a
        .trans
        .iter()
        .map(|(t, mat)| {
            let mut out = SparseMat::zeros(m);
            for &s in &keep {
                for (d, v) in mat.row(s) {
                    if new_id[*d] != usize::MAX {
                        out.add_at(new_id[s], new_id[*d], v.clone());
                    }
                }
            }
            (t.clone(), out)
        })
        .collect();
    let pick = |v: &[Rat]| keep.iter().map(|&s| v[s].clone()).collect();
    Wa::new(a.alphabets.clone(), pick(&a.alpha), pick(&a.beta), trans).expect("trimmed automaton is well formed")
}
