use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Highest weight `(l_1 >= l_2 >= ... >= l_n)` of a representation of
/// `GL_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "{parts:?} is not nonincreasing"
            )));
        }
        Ok(Weight(parts))
    }

    /// The scalar weight `(k, ..., k)`.
    pub fn scalar(n: usize, k: i64) -> Result<Self> {
        Self::new(vec![k; n])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Whitespace- or comma-separated integers.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::InvalidWeight(format!("not an integer: `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Weight::new(parts)
    }
}

fn triangular(n: usize) -> i64 {
    (n * (n + 1) / 2) as i64
}

/// Eigenvalue of `T_n(p^2)` on a form of the given weight:
/// `p^(sum l_j - n(n+1)/2)`.
pub fn tn_scalar(weight: &Weight, p: Prime) -> BigRational {
    p.pow_rational(weight.sum() - triangular(weight.degree()))
}

/// Inverts [`tn_scalar`]: recovers `sum l_j` from an eigenvalue of
/// `T_n(p^2)`. Fails unless `a` is an exact (possibly negative) power of `p`.
pub fn weight_sum_from_tn(a: &BigRational, p: Prime, n: usize) -> Result<i64> {
    Ok(exact_log(a, p)? + triangular(n))
}

/// `e` with `a = p^e`.
pub(crate) fn exact_log(a: &BigRational, p: Prime) -> Result<i64> {
    let not_power = || Error::NotPowerOf {
        value: crate::exact::rational::format_rational(a),
        base: p.get(),
    };
    if a <= &BigRational::zero() {
        return Err(not_power());
    }
    let pb = p.to_bigint();
    let strip = |mut v: num_bigint::BigInt| -> Option<i64> {
        let mut e = 0;
        while !v.is_one() {
            let (q, r) = v.div_rem(&pb);
            if !r.is_zero() {
                return None;
            }
            v = q;
            e += 1;
        }
        Some(e)
    };
    let num_exp = strip(a.numer().clone()).ok_or_else(not_power)?;
    let den_exp = strip(a.denom().clone()).ok_or_else(not_power)?;
    Ok(num_exp - den_exp)
}
