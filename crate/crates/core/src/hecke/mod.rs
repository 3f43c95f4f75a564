//! q-binomials, the coefficients `c_s`, the Hafner–Walling operator basis
//! and the relation `T(p^2) = T(p)^2 - sum_s c_s T_s(p^2)`.

mod qbinomial;
mod relation;
pub(crate) mod weight;

pub use qbinomial::{coefficient_c, gauss_binomial_check, q_binomial};
pub use relation::{
    derive_main_relation, expanded_tilde_identity, tilde_operator, tp2_alias, MainRelation,
    TildeBasisContext,
};
pub use weight::{tn_scalar, weight_sum_from_tn, Weight};
