use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::qbinomial::{coefficient_c, q_binomial};
use crate::error::{Error, Result};
use crate::exact::{Generator, HeckePolynomial, Substitution};
use crate::prime::Prime;

/// Parameters of the Hafner–Walling basis: degree `n`, scalar weight
/// parameter `k >= n + 1`, and the prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TildeBasisContext {
    n: usize,
    k: i64,
    p: Prime,
}

impl TildeBasisContext {
    pub fn new(n: usize, k: i64, p: Prime) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange {
                what: "degree n",
                value: 0,
            });
        }
        if k < n as i64 + 1 {
            return Err(Error::InvalidArgument(format!(
                "weight parameter k={k} must be at least n+1={}",
                n + 1
            )));
        }
        Ok(TildeBasisContext { n, k, p })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `n(k - n - 1)`, the exponent of the overall normalisation.
    fn normalisation_exponent(&self) -> i64 {
        self.n as i64 * (self.k - self.n as i64 - 1)
    }
}

fn tj(n: usize, j: usize) -> HeckePolynomial {
    HeckePolynomial::generator(n, Generator::Tj(j)).expect("index within degree")
}

/// `T(p^2)` written in the standard basis: `T_0(p^2) + ... + T_n(p^2)`.
pub fn tp2_alias(n: usize) -> HeckePolynomial {
    (0..=n).fold(HeckePolynomial::zero(n), |acc, j| acc + tj(n, j))
}

/// The Hafner–Walling operator `~T_j(p^2)` in the standard generators,
///
/// `p^(j(k-n-1)) * sum_{t=0}^j [n-t choose j-t]_p * T_{n-t}(p^2)`.
pub fn tilde_operator(j: usize, ctx: &TildeBasisContext) -> Result<HeckePolynomial> {
    let n = ctx.n;
    if j > n {
        return Err(Error::OutOfRange {
            what: "tilde operator index j",
            value: j as i64,
        });
    }
    let sum = (0..=j).fold(HeckePolynomial::zero(n), |acc, t| {
        let binom = q_binomial((n - t) as u32, (j - t) as u32, ctx.p);
        acc + tj(n, n - t).scale(&BigRational::from_integer(binom))
    });
    let scale = ctx.p.pow_rational(j as i64 * (ctx.k - n as i64 - 1));
    Ok(sum.scale(&scale))
}

/// `LHS - RHS` of the Hafner–Walling relation
///
/// `~T_n(p^2) = TT(p)^2 - sum_{j<n} p^(k(n-j) + j(j+1)/2 - n(n+1)/2) ~T_j(p^2)`
///
/// rewritten in the standard generators, where `TT(p) = p^(n(k-n-1)/2) T(p)`.
/// Only the square of `TT(p)` appears, so the half-integral exponent never
/// materialises.
pub fn expanded_tilde_identity(ctx: &TildeBasisContext) -> Result<HeckePolynomial> {
    let n = ctx.n;
    let ni = n as i64;
    let tp = HeckePolynomial::generator(n, Generator::Tp)?;
    let scaled_tp_squared = tp
        .pow(2)
        .scale(&ctx.p.pow_rational(ctx.normalisation_exponent()));

    let mut identity = tilde_operator(n, ctx)? - scaled_tp_squared;
    for j in 0..n {
        let ji = j as i64;
        let e = ctx.k * (ni - ji) + ji * (ji + 1) / 2 - ni * (ni + 1) / 2;
        identity = identity + tilde_operator(j, ctx)?.scale(&ctx.p.pow_rational(e));
    }
    Ok(identity)
}

/// The relation `T(p^2) = T(p)^2 - sum_{s=1}^n c_s T_s(p^2)`, as derived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainRelation {
    pub degree: usize,
    pub prime: Prime,
    /// `c_1, ..., c_n`.
    pub coefficients: Vec<BigInt>,
    /// `T(p)^2 - T(p^2) - sum_s c_s T_s(p^2)`, which vanishes in the algebra.
    pub relation: HeckePolynomial,
}

impl MainRelation {
    /// The right-hand side `T(p)^2 - sum_s c_s T_s(p^2)`.
    pub fn tp2_expression(&self) -> HeckePolynomial {
        let tp2 = HeckePolynomial::generator(self.degree, Generator::Tp2).expect("valid");
        &self.relation + &tp2
    }
}

impl fmt::Display for MainRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T(p^2) = {}", self.tp2_expression())
    }
}

fn normalised_identity(ctx: &TildeBasisContext) -> Result<HeckePolynomial> {
    let identity = expanded_tilde_identity(ctx)?;
    Ok(identity.scale(&ctx.p.pow_rational(-ctx.normalisation_exponent())))
}

/// Replays the translation of the Hafner–Walling relation into the standard
/// generators and checks the result against the closed form of `c_s`.
///
/// The identity is expanded at `k` and at `k + 1`; the two normalised
/// expansions must agree, which certifies that the weight parameter has
/// cancelled. Any residual `k`-dependence, fractional coefficient, stray
/// term, or mismatch with [`coefficient_c`] is an internal error.
pub fn derive_main_relation(n: usize, p: Prime, k: i64) -> Result<MainRelation> {
    let ctx = TildeBasisContext::new(n, k, p)?;
    let normalised = normalised_identity(&ctx)?;
    let shifted = normalised_identity(&TildeBasisContext::new(n, k + 1, p)?)?;
    if normalised != shifted {
        return Err(Error::Internal(format!(
            "residual k-dependence at n={n}, p={p}: {normalised} vs {shifted} (k={k}, k+1)"
        )));
    }
    if !normalised.has_integer_coefficients() {
        return Err(Error::Internal(format!(
            "fractional coefficient in derived identity at n={n}, p={p}: {normalised}"
        )));
    }

    // The normalised identity reads T(p^2) - T(p)^2 + sum_s c_s T_s(p^2) = 0
    // with T(p^2) expanded, so T_0 carries 1 and T_s carries 1 + c_s.
    let leading = normalised.coefficient(&[(Generator::Tp, 2)]);
    if leading != -BigRational::one() {
        return Err(Error::Internal(format!(
            "coefficient of T(p)^2 is {leading}, expected -1"
        )));
    }
    let t0 = normalised.coefficient(&[(Generator::Tj(0), 1)]);
    if !t0.is_one() {
        return Err(Error::Internal(format!(
            "coefficient of T_0(p^2) is {t0}, expected 1"
        )));
    }
    let mut coefficients = Vec::with_capacity(n);
    for s in 1..=n {
        let derived = normalised.coefficient(&[(Generator::Tj(s), 1)]) - BigRational::one();
        let expected = coefficient_c(s as u32, p)?;
        if derived != BigRational::from_integer(expected.clone()) {
            return Err(Error::Internal(format!(
                "derived c_{s} = {derived} but closed form gives {expected} (n={n}, p={p})"
            )));
        }
        coefficients.push(expected);
    }

    let tp = HeckePolynomial::generator(n, Generator::Tp)?;
    let tp2 = HeckePolynomial::generator(n, Generator::Tp2)?;
    let correction = coefficients
        .iter()
        .enumerate()
        .fold(HeckePolynomial::zero(n), |acc, (i, c)| {
            acc + tj(n, i + 1).scale(&BigRational::from_integer(c.clone()))
        });
    let relation = tp.pow(2) - tp2 - correction;

    let expanded = relation.substitute(&Substitution::new().poly(Generator::Tp2, tp2_alias(n)))?;
    if expanded != -&normalised {
        return Err(Error::Internal(format!(
            "stray terms: derived {normalised}, closed form expands to {}",
            -&expanded
        )));
    }
    if normalised.coefficient(&[]) != BigRational::zero() {
        return Err(Error::Internal("nonzero constant term".into()));
    }

    Ok(MainRelation {
        degree: n,
        prime: p,
        coefficients,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn context_requires_k_at_least_n_plus_one() {
        assert!(TildeBasisContext::new(2, 2, p(3)).is_err());
        assert!(TildeBasisContext::new(2, 3, p(3)).is_ok());
        assert!(TildeBasisContext::new(0, 3, p(3)).is_err());
    }

    #[test]
    fn tilde_zero_is_tn() {
        let ctx = TildeBasisContext::new(3, 9, p(5)).unwrap();
        assert_eq!(tilde_operator(0, &ctx).unwrap(), tj(3, 3));
        assert!(tilde_operator(4, &ctx).is_err());
    }

    #[test]
    fn tilde_n_is_scaled_tp2_alias() {
        for n in 1..5 {
            let ctx = TildeBasisContext::new(n, n as i64 + 3, p(3)).unwrap();
            let normalised = tilde_operator(n, &ctx)
                .unwrap()
                .scale(&p(3).pow_rational(-(n as i64) * 2));
            assert_eq!(normalised, tp2_alias(n));
        }
    }

    #[test]
    fn tilde_one_in_degree_one() {
        // n=1, k=2: p^0 * ([1 choose 1]_p T_1 + [0 choose 0]_p T_0).
        let ctx = TildeBasisContext::new(1, 2, p(7)).unwrap();
        assert_eq!(tilde_operator(1, &ctx).unwrap(), tj(1, 0) + tj(1, 1));
        // n=2, j=1, k=4: p^1 * ([2 choose 1]_p T_2 + T_1) = 3*(4 T_2 + T_1) at p=3.
        let ctx = TildeBasisContext::new(2, 4, p(3)).unwrap();
        assert_eq!(
            tilde_operator(1, &ctx).unwrap(),
            tj(2, 2).scale(&int(12)) + tj(2, 1).scale(&int(3))
        );
    }

    #[test]
    fn degree_one_relation() {
        for &q in &[2, 3, 5, 7, 11] {
            let rel = derive_main_relation(1, p(q), 2).unwrap();
            assert_eq!(rel.coefficients, vec![BigInt::from(q)]);
            assert_eq!(rel.to_string(), format!("T(p^2) = T(p)^2 - {q}*T_1(p^2)"));
        }
    }

    #[test]
    fn degree_two_at_two() {
        let rel = derive_main_relation(2, p(2), 3).unwrap();
        assert_eq!(rel.coefficients, vec![BigInt::from(2), BigInt::from(14)]);
        assert_eq!(
            rel.relation.to_string(),
            "T(p)^2 - 1*T(p^2) - 2*T_1(p^2) - 14*T_2(p^2)"
        );
    }

    #[test]
    fn output_is_independent_of_k() {
        for n in 1..5 {
            let a = derive_main_relation(n, p(3), n as i64 + 1).unwrap();
            let b = derive_main_relation(n, p(3), n as i64 + 7).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn unnormalised_identity_depends_on_k() {
        let a = expanded_tilde_identity(&TildeBasisContext::new(2, 3, p(2)).unwrap()).unwrap();
        let b = expanded_tilde_identity(&TildeBasisContext::new(2, 4, p(2)).unwrap()).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.scale(&int(4)), b);
    }
}
