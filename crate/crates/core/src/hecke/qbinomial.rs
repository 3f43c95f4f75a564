use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::prime::Prime;

/// Gaussian binomial `[m choose l]_p`, the number of `l`-dimensional
/// subspaces of `F_p^m`. Zero when `l > m`.
pub fn q_binomial(m: u32, l: u32, p: Prime) -> BigInt {
    if l > m {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 1..=l {
        num *= p.pow(m - l + i) - 1;
        den *= p.pow(i) - 1;
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "q-binomial product is always integral");
    q
}

fn c_sum_form(s: u32, p: Prime) -> BigInt {
    (1..=s)
        .map(|i| p.pow(i * (i + 1) / 2) * q_binomial(s, i, p))
        .sum()
}

fn c_product_form(s: u32, p: Prime) -> BigInt {
    (1..=s).map(|i| p.pow(i) + 1).product::<BigInt>() - 1
}

/// `c_s = sum_{i=1}^s p^(i(i+1)/2) [s choose i]_p = prod_{i=1}^s (p^i + 1) - 1`.
///
/// Both forms are evaluated; disagreement is reported as an internal error.
pub fn coefficient_c(s: u32, p: Prime) -> Result<BigInt> {
    if s == 0 {
        return Err(Error::OutOfRange {
            what: "coefficient index s",
            value: 0,
        });
    }
    let sum = c_sum_form(s, p);
    let product = c_product_form(s, p);
    if sum != product {
        return Err(Error::Internal(format!(
            "c_{s} at p={p}: sum form {sum} != product form {product}"
        )));
    }
    if sum <= BigInt::zero() {
        return Err(Error::Internal(format!("c_{s} at p={p} is not positive")));
    }
    Ok(sum)
}

/// Gauss's binomial formula at `x = 1, a = q = p`:
/// `sum_{i=0}^s p^(i(i+1)/2) [s choose i]_p == prod_{j=1}^s (1 + p^j)`.
pub fn gauss_binomial_check(s: u32, p: Prime) -> bool {
    let lhs: BigInt = (0..=s)
        .map(|i| p.pow(i * (i + 1) / 2) * q_binomial(s, i, p))
        .sum();
    let rhs: BigInt = (1..=s).map(|j| p.pow(j) + 1).product();
    lhs == rhs
}
