//! Exact arithmetic: rationals, polynomials over the Hecke generators, and
//! truncated power series with polynomial coefficients.

mod generator;
mod parse;
mod polynomial;
pub mod rational;
mod series;

pub use generator::{Generator, Monomial};
pub use polynomial::{Binding, HeckePolynomial, Substitution};
pub use series::TruncatedSeries;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
