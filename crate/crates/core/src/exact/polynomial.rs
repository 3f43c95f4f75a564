use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::generator::{Generator, Monomial};
use super::rational::format_rational;
use crate::error::{Error, Result};

/// A polynomial in the Hecke generators of degree `n` with exact rational
/// coefficients.
///
/// The algebra is commutative, so a commutative polynomial ring is a faithful
/// model for every identity in this crate. Zero coefficients are never
/// stored, which makes structural equality coincide with equality of
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckePolynomial {
    degree: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl HeckePolynomial {
    pub fn zero(degree: usize) -> Self {
        HeckePolynomial {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::constant(degree, BigRational::one())
    }

    pub fn constant(degree: usize, c: BigRational) -> Self {
        let mut p = Self::zero(degree);
        p.add_term(Monomial::one(degree), c);
        p
    }

    pub fn integer(degree: usize, c: impl Into<BigInt>) -> Self {
        Self::constant(degree, BigRational::from_integer(c.into()))
    }

    pub fn generator(degree: usize, g: Generator) -> Result<Self> {
        Self::monomial(degree, &[(g, 1)], BigRational::one())
    }

    pub fn monomial(degree: usize, powers: &[(Generator, u32)], c: BigRational) -> Result<Self> {
        let mut p = Self::zero(degree);
        p.add_term(Monomial::from_powers(degree, powers)?, c);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial `prod g^e`; zero if absent.
    pub fn coefficient(&self, powers: &[(Generator, u32)]) -> BigRational {
        Monomial::from_powers(self.degree, powers)
            .ok()
            .and_then(|m| self.terms.get(&m).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&[])
    }

    /// Generators that occur with nonzero exponent somewhere.
    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms
            .keys()
            .flat_map(|m| m.powers().map(|(g, _)| g))
            .collect()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Evaluates to a scalar when no generator remains.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one(self.degree)).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = Self::zero(self.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HeckePolynomial {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.degree);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces bound generators by scalars or polynomials. Unbound
    /// generators stay symbolic. This is a ring homomorphism.
    pub fn substitute(&self, bindings: &Substitution) -> Result<Self> {
        for b in bindings.0.values() {
            if let Binding::Poly(p) = b {
                self.check_degree(p)?;
            }
        }
        if bindings.0.is_empty() {
            return Ok(self.clone());
        }
        let mut powers: HashMap<(Generator, u32), Binding> = HashMap::new();
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            let mut factors: Vec<HeckePolynomial> = Vec::new();
            for (g, e) in m.powers() {
                let Some(binding) = bindings.0.get(&g) else {
                    continue;
                };
                rest = rest.without(g);
                let value = powers
                    .entry((g, e))
                    .or_insert_with(|| binding.pow(e))
                    .clone();
                match value {
                    Binding::Scalar(s) => coeff *= s,
                    Binding::Poly(p) => factors.push(p),
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let mut term = HeckePolynomial::zero(self.degree);
            term.add_term(rest, coeff);
            for f in &factors {
                term = &term * f;
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Parses the canonical rendering produced by `Display`.
    pub fn parse(degree: usize, s: &str) -> Result<Self> {
        super::parse::parse_polynomial(degree, s)
    }
}

/// Value bound to a generator in [`HeckePolynomial::substitute`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Scalar(BigRational),
    Poly(HeckePolynomial),
}

impl Binding {
    fn pow(&self, e: u32) -> Binding {
        match self {
            Binding::Scalar(s) => Binding::Scalar(num_traits::pow(s.clone(), e as usize)),
            Binding::Poly(p) => Binding::Poly(p.pow(e)),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<Generator, Binding>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn scalar(mut self, g: Generator, value: BigRational) -> Self {
        self.0.insert(g, Binding::Scalar(value));
        self
    }

    pub fn poly(mut self, g: Generator, value: HeckePolynomial) -> Self {
        self.0.insert(g, Binding::Poly(value));
        self
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for HeckePolynomial {
    /// Canonical form, e.g. `T(p)^2 - T(p^2) - 2*T_1(p^2) - 14*T_2(p^2)`.
    ///
    /// A coefficient is omitted only when it is exactly `+1`; a negative
    /// coefficient is written as ` - |c|*` after the first term.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&magnitude))?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&magnitude))?;
            }
        }
        Ok(())
    }
}

/// Parses with the degree inferred from the largest `T_j(p^2)` index
/// mentioned (at least 1). Prefer [`HeckePolynomial::parse`] when the degree
/// is known.
impl FromStr for HeckePolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degree = super::parse::max_index(s).unwrap_or(1).max(1);
        Self::parse(degree, s)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&HeckePolynomial> for &HeckePolynomial {
            type Output = HeckePolynomial;

            /// Panics if the degree contexts differ; use the `checked_*`
            /// methods to get an error instead.
            fn $method(self, rhs: &HeckePolynomial) -> HeckePolynomial {
                self.$checked(rhs)
                    .expect("degree mismatch in polynomial arithmetic")
            }
        }

        impl $trait<HeckePolynomial> for HeckePolynomial {
            type Output = HeckePolynomial;

            fn $method(self, rhs: HeckePolynomial) -> HeckePolynomial {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&HeckePolynomial> for HeckePolynomial {
            type Output = HeckePolynomial;

            fn $method(self, rhs: &HeckePolynomial) -> HeckePolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &HeckePolynomial {
    type Output = HeckePolynomial;

    fn neg(self) -> HeckePolynomial {
        self.scale(&-BigRational::one())
    }
}

impl Neg for HeckePolynomial {
    type Output = HeckePolynomial;

    fn neg(self) -> HeckePolynomial {
        -&self
    }
}
