//! Exact computations in the local Hecke algebra of `Sp(2n)` at a prime `p`.
//!
//! The crate models the algebra as a commutative polynomial ring over the
//! standard generators `T(p), T_0(p^2), ..., T_n(p^2)` (plus the alias
//! `T(p^2)`), derives the quadratic relation for `T(p^2)` from the
//! Hafner–Walling relation, expands the degree-2 spin Euler factor into the
//! operators `T(p^r)`, and uses the resulting identities as decision
//! procedures that tell two eigenforms of different weight apart. The last
//! layer is a certified-interval toolkit for the explicit prime bounds that
//! turn these procedures into effective statements.
//!
//! Everything is exact: big integers, reduced rationals, and dyadic intervals
//! with outward rounding where logarithms are involved.

pub mod bounds;
pub mod distinguish;
pub mod error;
pub mod euler;
pub mod exact;
pub mod fourier;
pub mod hecke;
pub mod parallel;
pub mod prime;
pub mod symplectic;
pub mod verify;

pub use error::{Error, Result};
pub use prime::Prime;
