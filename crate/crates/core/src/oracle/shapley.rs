//! Value functions and Shapley values by full enumeration.

use crate::error::{Error, Result};
use crate::scalar::{shapley_weight, Field};
use crate::wa::all_words;

/// Which value function defines the game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Conditional,
    Interventional,
    Baseline,
}

/// Enumerated distribution: every input of positive probability.
#[derive(Clone, Debug)]
pub struct Support<S> {
    pub points: Vec<(Vec<usize>, S)>,
}

impl<S: Field> Support<S> {
    /// Enumerates `[k]ⁿ`, keeping points of nonzero probability.
    pub fn enumerate(k: usize, n: usize, prob: impl Fn(&[usize]) -> S) -> Result<Self> {
        check_guard(enumeration_bits(k, n))?;
        let points = all_words(k, n)
            .filter_map(|x| {
                let p = prob(&x);
                (!p.is_zero()).then_some((x, p))
            })
            .collect();
        Ok(Support { points })
    }
}

/// What absent features are filled with.
#[derive(Clone, Debug)]
pub enum Context<S> {
    Reference(Vec<usize>),
    Distribution(Support<S>),
}

pub const DEFAULT_GUARD_BITS: u32 = 24;

/// Enumeration budget in bits, overridable through `SHAPWA_GUARD_BITS`.
pub fn guard_bits() -> u32 {
    std::env::var("SHAPWA_GUARD_BITS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GUARD_BITS)
}

/// ⌈n·log₂ k⌉.
pub fn enumeration_bits(k: usize, n: usize) -> u32 {
    if k <= 1 {
        return 0;
    }
    let bits_per = usize::BITS - (k - 1).leading_zeros();
    bits_per.saturating_mul(n as u32)
}

pub fn check_guard(needed: u32) -> Result<()> {
    let limit = guard_bits();
    if needed > limit {
        return Err(Error::Guard { needed, limit });
    }
    Ok(())
}

/// Coalition mask: `keep[j]` means feature j+1 is present.
fn fill(x: &[usize], z: &[usize], keep: &[bool]) -> Vec<usize> {
    x.iter().zip(z).zip(keep).map(|((&a, &b), &k)| if k { a } else { b }).collect()
}

/// v(S) for one coalition.
pub fn value_fn<S: Field>(
    variant: Variant,
    f: &dyn Fn(&[usize]) -> S,
    x: &[usize],
    keep: &[bool],
    ctx: &Context<S>,
) -> Result<S> {
    match (variant, ctx) {
        (Variant::Baseline, Context::Reference(z)) => Ok(f(&fill(x, z, keep))),
        (Variant::Interventional, Context::Distribution(d)) => {
            let mut acc = S::zero();
            for (z, p) in &d.points {
                acc = acc + p.clone() * f(&fill(x, z, keep));
            }
            Ok(acc)
        }
        (Variant::Conditional, Context::Distribution(d)) => {
            let mut num = S::zero();
            let mut den = S::zero();
            for (z, p) in &d.points {
                if z.iter().zip(x).zip(keep).all(|((a, b), &k)| !k || a == b) {
                    num = num + p.clone() * f(z);
                    den = den + p.clone();
                }
            }
            if den.is_zero() {
                let s = keep.iter().enumerate().filter(|(_, &k)| k).map(|(j, _)| j + 1).collect();
                return Err(Error::ZeroProbability(s));
            }
            Ok(num / den)
        }
        (Variant::Baseline, _) => Err(Error::InvalidModel("baseline SHAP needs a reference input".into())),
        _ => Err(Error::InvalidModel("this variant needs a distribution".into())),
    }
}

fn mask(bits: usize, n: usize) -> Vec<bool> {
    (0..n).map(|j| bits >> j & 1 == 1).collect()
}

/// Local SHAP values of every feature, from one pass over all 2ⁿ coalitions.
pub fn shap_local_all<S: Field>(
    variant: Variant,
    f: &dyn Fn(&[usize]) -> S,
    x: &[usize],
    ctx: &Context<S>,
) -> Result<Vec<S>> {
    let n = x.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n > 20 {
        return Err(Error::Guard { needed: n as u32, limit: 20 });
    }
    if let Context::Reference(z) = ctx {
        if z.len() != n {
            return Err(Error::LengthMismatch(format!("input {n} vs reference {}", z.len())));
        }
    }
    let values: Vec<S> = (0..1usize << n)
        .map(|b| value_fn(variant, f, x, &mask(b, n), ctx))
        .collect::<Result<_>>()?;
    let weights: Vec<S> = (0..n).map(|s| S::from_rat(&shapley_weight(n, s))).collect();
    Ok((0..n)
        .map(|i| {
            let mut acc = S::zero();
            for b in 0..1usize << n {
                if b >> i & 1 == 1 {
                    continue;
                }
                let s = b.count_ones() as usize;
                acc = acc + weights[s].clone() * (values[b | 1 << i].clone() - values[b].clone());
            }
            acc
        })
        .collect())
}

/// Eq. 1 for feature `i` (1-based).
pub fn shap_local<S: Field>(
    variant: Variant,
    f: &dyn Fn(&[usize]) -> S,
    x: &[usize],
    i: usize,
    ctx: &Context<S>,
) -> Result<S> {
    if i == 0 || i > x.len() {
        return Err(Error::IndexOutOfRange { index: i, max: x.len() });
    }
    Ok(shap_local_all(variant, f, x, ctx)?.swap_remove(i - 1))
}

/// Expected local SHAP under `dist`: Σₓ D(x)·φᵢ(f, x).
pub fn shap_global<S: Field>(
    variant: Variant,
    f: &dyn Fn(&[usize]) -> S,
    i: usize,
    n: usize,
    ctx: &Context<S>,
    dist: &Support<S>,
) -> Result<S> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let mut acc = S::zero();
    for (x, p) in &dist.points {
        if x.len() != n {
            return Err(Error::LengthMismatch("distribution support has the wrong length".into()));
        }
        acc = acc + p.clone() * shap_local(variant, f, x, i, ctx)?;
    }
    Ok(acc)
}
