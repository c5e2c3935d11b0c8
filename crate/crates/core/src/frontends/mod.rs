//! Compilers from tabular models and feature distributions.

pub mod dist;
pub mod models;
pub mod tabular;

pub use dist::{
    check_order, desequentialize, emp_to_hmmvec, hmmvec_to_hmm, identity_order, ind_to_hmmvec, markov_to_hmm, nb_to_hmmvec,
    sequentialize, Dataset, HmmVec, IndDist, MarkovDist, NaiveBayes,
};
pub use models::{dt_to_wa, ensemble_reg_to_wa, linear_to_wa, value_alphabet};
pub use tabular::{DecisionTree, EnsembleMode, LinearModel, TreeEnsemble, TreeNode};
