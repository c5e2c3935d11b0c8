use super::builders::{build_a_in, build_a_wi, build_point_hmm, build_t, build_t_i, build_t_w, build_t_wi};
use super::Hmm;
use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::wa::{kron, pi0, pi1, project, sub, trim, Wa};

fn check_model(f: &Wa) -> Result<()> {
    if f.arity() != 1 {
        return Err(Error::InvalidModel("the explained model must be a single-tape automaton".into()));
    }
    if f.alphabet().has_hash() {
        return Err(Error::InvalidModel("model alphabet may not contain `#`".into()));
    }
    Ok(())
}

fn check_dist(f: &Wa, d: &Hmm) -> Result<()> {
    if f.alphabet() != d.alphabet() {
        return Err(Error::AlphabetMismatch(format!("model over {}, distribution over {}", f.alphabet(), d.alphabet())));
    }
    Ok(())
}

fn check_word(f: &Wa, w: &[usize]) -> Result<()> {
    if let Some(&s) = w.iter().find(|&&s| s >= f.alphabet().len()) {
        return Err(Error::UnknownSymbol(format!("index {s}")));
    }
    Ok(())
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    Ok(())
}

/// Π₁(A_{w,i}, Π₂(D, Π₃(f, T_{w,i}) − Π₃(f, T_w))).
fn local(f: &Wa, w: &[usize], i: usize, d: &Hmm) -> Result<Rat> {
    let sigma = f.alphabet();
    let n = w.len();
    let with_i = project(3, f, &build_t_wi(sigma, w, i)?)?;
    let without = project(3, f, &build_t_w(sigma, w)?)?;
    let diff = sub(&with_i, &without)?;
    let inner = trim(&project(2, &d.to_wa(), &diff)?);
    pi1(&build_a_wi(sigma, w, i)?, &inner, n)
}

/// Π₀(Π₂(D, A_{i,n} ⊗ Π₂(D′, Π₃(f, T_i) − Π₃(f, T)))).
fn global(f: &Wa, i: usize, n: usize, inner_dist: &Hmm, outer: &Hmm) -> Result<Rat> {
    let sigma = f.alphabet();
    let with_i = project(3, f, &build_t_i(sigma, i, n)?)?;
    let without = project(3, f, &build_t(sigma)?)?;
    let diff = sub(&with_i, &without)?;
    let inner = trim(&project(2, &inner_dist.to_wa(), &diff)?);
    let weighted = trim(&kron(&trim(&build_a_in(sigma, i, n)?), &inner)?);
    pi0(&trim(&project(2, &outer.to_wa(), &weighted)?), n)
}

/// Local interventional SHAP φᵢ(f, w, i, D).
pub fn loc_i_shap(f: &Wa, w: &[usize], i: usize, d: &Hmm) -> Result<Rat> {
    check_model(f)?;
    check_dist(f, d)?;
    check_word(f, w)?;
    check_index(i, w.len())?;
    local(f, w, i, d)
}

/// Local baseline SHAP φ_b(f, w, i, w_ref).
pub fn loc_b_shap(f: &Wa, w: &[usize], i: usize, w_ref: &[usize]) -> Result<Rat> {
    check_model(f)?;
    check_word(f, w)?;
    check_word(f, w_ref)?;
    if w.len() != w_ref.len() {
        return Err(Error::LengthMismatch(format!("input {} vs reference {}", w.len(), w_ref.len())));
    }
    check_index(i, w.len())?;
    local(f, w, i, &build_point_hmm(f.alphabet(), w_ref)?)
}

/// Global interventional SHAP Φᵢ(f, i, n, D).
pub fn glo_i_shap(f: &Wa, i: usize, n: usize, d: &Hmm) -> Result<Rat> {
    check_model(f)?;
    check_dist(f, d)?;
    check_index(i, n)?;
    global(f, i, n, d, d)
}

/// Global baseline SHAP Φ_b(f, i, n, w_ref, D).
pub fn glo_b_shap(f: &Wa, i: usize, n: usize, w_ref: &[usize], d: &Hmm) -> Result<Rat> {
    check_model(f)?;
    check_dist(f, d)?;
    check_word(f, w_ref)?;
    if w_ref.len() != n {
        return Err(Error::LengthMismatch(format!("reference has length {}, expected {n}", w_ref.len())));
    }
    check_index(i, n)?;
    global(f, i, n, &build_point_hmm(f.alphabet(), w_ref)?, d)
}
