//! Exponential-time ground truth.
//!
//! Nothing in here calls into the engine: models are evaluated directly
//! and every expectation is a sum over the enumerated support.

mod brute;
pub mod dists;
mod models;
mod shapley;

pub use brute::{csp_brute, dummy_check, empty_brute, sat_brute};
pub use models::{
    eval_ensemble, eval_linear, eval_tree, hamming, lit_true, step, CnfFormula, CspInstance, DenseWa, RnnRelu,
    SigmoidNet, Wmg,
};
pub use shapley::{
    check_guard, enumeration_bits, guard_bits, shap_global, shap_local, shap_local_all, value_fn, Context, Support,
    Variant, DEFAULT_GUARD_BITS,
};
