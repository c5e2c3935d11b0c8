//! Polynomial-time SHAP for weighted automata under HMM distributions.

pub mod builders;
mod hmm;
mod shap;

pub use builders::*;
pub use hmm::Hmm;
pub use shap::{glo_b_shap, glo_i_shap, loc_b_shap, loc_i_shap};
