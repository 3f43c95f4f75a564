use std::fmt;

use super::polynomial::HeckePolynomial;
use crate::error::{Error, Result};

/// `g_0 + g_1 z + ... + g_R z^R + O(z^{R+1})` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    degree: usize,
    coeffs: Vec<HeckePolynomial>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize, order: usize) -> Self {
        TruncatedSeries {
            degree,
            coeffs: vec![HeckePolynomial::zero(degree); order + 1],
        }
    }

    pub fn one(degree: usize, order: usize) -> Self {
        let mut s = Self::zero(degree, order);
        s.coeffs[0] = HeckePolynomial::one(degree);
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// anything past `order` is dropped.
    pub fn from_coeffs(
        degree: usize,
        order: usize,
        coeffs: impl IntoIterator<Item = HeckePolynomial>,
    ) -> Result<Self> {
        let mut s = Self::zero(degree, order);
        for (k, c) in coeffs.into_iter().take(order + 1).enumerate() {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: c.degree(),
                });
            }
            s.coeffs[k] = c;
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, k: usize) -> Option<&HeckePolynomial> {
        self.coeffs.get(k)
    }

    pub fn coeffs(&self) -> &[HeckePolynomial] {
        &self.coeffs
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(TruncatedSeries {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product, truncated at the common order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let order = self.order();
        let mut out = Self::zero(self.degree, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*z^{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Generator;

    fn c(n: i64) -> HeckePolynomial {
        HeckePolynomial::integer(2, n)
    }

    #[test]
    fn one_plus_z_times_one_minus_z() {
        let a = TruncatedSeries::from_coeffs(2, 2, [c(1), c(1)]).unwrap();
        let b = TruncatedSeries::from_coeffs(2, 2, [c(1), c(-1)]).unwrap();
        let prod = a.checked_mul(&b).unwrap();
        assert_eq!(
            prod,
            TruncatedSeries::from_coeffs(2, 2, [c(1), c(0), c(-1)]).unwrap()
        );
    }

    #[test]
    fn multiplicative_identity() {
        let t = HeckePolynomial::generator(2, Generator::Tp).unwrap();
        let a = TruncatedSeries::from_coeffs(2, 4, [c(3), t.clone(), t.pow(2)]).unwrap();
        let one = TruncatedSeries::one(2, 4);
        assert_eq!(a.checked_mul(&one).unwrap(), a);
    }

    #[test]
    fn geometric_series_telescopes() {
        let geo = TruncatedSeries::from_coeffs(2, 5, (0..=5).map(|_| c(1))).unwrap();
        let one_minus_z = TruncatedSeries::from_coeffs(2, 5, [c(1), c(-1)]).unwrap();
        assert_eq!(
            geo.checked_mul(&one_minus_z).unwrap(),
            TruncatedSeries::one(2, 5)
        );
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = TruncatedSeries::one(2, 3);
        let b = TruncatedSeries::one(2, 4);
        assert_eq!(
            a.checked_mul(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        );
    }
}
