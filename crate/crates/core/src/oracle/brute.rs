//! Exhaustive decision procedures.

use super::models::{hamming, CnfFormula, CspInstance, Wmg};
use super::shapley::{check_guard, enumeration_bits};
use crate::error::Result;
use crate::wa::all_words;

/// True iff adding `i` (1-based) never changes any coalition's value.
pub fn dummy_check(g: &Wmg, i: usize) -> Result<bool> {
    let n = g.players();
    if i == 0 || i > n {
        return Err(crate::error::Error::IndexOutOfRange { index: i, max: n });
    }
    check_guard(n.saturating_sub(1) as u32)?;
    Ok(all_words(2, n).filter(|x| x[i - 1] == 0).all(|mut x| {
        let without = g.value(&x);
        x[i - 1] = 1;
        g.value(&x) == without
    }))
}

/// A string within radius k of every string, if one exists.
pub fn csp_brute(inst: &CspInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.len();
    check_guard(enumeration_bits(inst.alphabet_size, n))?;
    Ok(all_words(inst.alphabet_size, n).find(|c| inst.strings.iter().all(|s| hamming(s, c) <= inst.k)))
}

/// Is `{x ∈ Σⁿ : f(x) = 1}` empty?
pub fn empty_brute(f: &dyn Fn(&[usize]) -> bool, k: usize, n: usize) -> Result<bool> {
    check_guard(enumeration_bits(k, n))?;
    Ok(!all_words(k, n).any(|x| f(&x)))
}

/// Satisfiability by trying every assignment.
pub fn sat_brute(cnf: &CnfFormula) -> Result<Option<Vec<usize>>> {
    check_guard(cnf.vars as u32)?;
    Ok(all_words(2, cnf.vars).find(|x| cnf.satisfied_by(x)))
}
