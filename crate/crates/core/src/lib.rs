//! Exact SHAP values for weighted automata.

pub mod engine;
pub mod error;
pub mod frontends;
pub mod gadgets;
pub mod oracle;
pub mod patterns;
pub mod random;
pub mod scalar;
pub mod verify;
pub mod wa;

pub use error::{Error, Result};
pub use scalar::Rat;
