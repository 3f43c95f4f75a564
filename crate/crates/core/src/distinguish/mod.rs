//! Deciding whether two eigenforms of different weight can share data.
//!
//! Two engines are provided. [`compare_profiles`] works in any degree with
//! the eigenvalues of `T(p), T(p^2), T_1(p^2), ..., T_{n-1}(p^2)`: the
//! quadratic relation for `T(p^2)` pins down the eigenvalue of `T_n(p^2)`,
//! which in turn determines the weight sum. [`compare_tpr`] works in degree
//! 2 with the eigenvalues of `T(p^r)` through the identities of
//! [`crate::euler`].
//!
//! Both are contrapositive: equal data with different weight sums is
//! reported as [`Verdict::Inconsistent`], never as an error.

mod profile;
mod verdict;

pub use profile::{EigenvalueProfile, OperatorName};
pub use verdict::{Verdict, Witness};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::euler::{self, Identity};
use crate::exact::rational::format_rational;
use crate::exact::{Generator, HeckePolynomial, Substitution};
use crate::hecke::{coefficient_c, tn_scalar, Weight};
use crate::prime::Prime;

fn int(c: num_bigint::BigInt) -> BigRational {
    BigRational::from_integer(c)
}

/// `(a(T(p))^2 - a(T(p^2)) - sum_{s<n} c_s a(T_s(p^2))) / c_n`.
pub fn implied_tn_eigenvalue(profile: &EigenvalueProfile) -> Result<BigRational> {
    let n = profile.degree();
    let p = profile.prime();
    let tp = profile.require(OperatorName::Tp)?;
    let tp2 = profile.require(OperatorName::Tp2)?;
    let mut acc = tp * tp - tp2;
    for s in 1..n {
        let c = int(coefficient_c(s as u32, p)?);
        acc -= c * profile.require(OperatorName::Tjp2(s))?;
    }
    Ok(acc / int(coefficient_c(n as u32, p)?))
}

/// A profile satisfying the quadratic relation, with `a(T_n(p^2))` fixed by
/// the weight. `ts` holds `a(T_s(p^2))` for `s = 1, ..., n-1`.
pub fn forward_profile(
    p: Prime,
    weight: &Weight,
    tp: BigRational,
    ts: &[BigRational],
) -> Result<EigenvalueProfile> {
    let n = weight.degree();
    if ts.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "expected {} free T_s(p^2) values in degree {n}, got {}",
            n - 1,
            ts.len()
        )));
    }
    let tn = tn_scalar(weight, p);
    let mut tp2 = &tp * &tp - int(coefficient_c(n as u32, p)?) * &tn;
    let mut profile = EigenvalueProfile::new(n, p)?.with_weight(weight.clone())?;
    for (i, v) in ts.iter().enumerate() {
        let s = i + 1;
        tp2 -= int(coefficient_c(s as u32, p)?) * v;
        profile.insert(OperatorName::Tjp2(s), v.clone())?;
    }
    profile.insert(OperatorName::Tp, tp)?;
    profile.insert(OperatorName::Tp2, tp2)?;
    Ok(profile)
}

fn check_pair(
    f: &EigenvalueProfile,
    g: &EigenvalueProfile,
    wf: &Weight,
    wg: &Weight,
) -> Result<()> {
    if f.prime() != g.prime() {
        return Err(Error::Structural(format!(
            "profiles are at different primes {} and {}",
            f.prime(),
            g.prime()
        )));
    }
    if f.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: f.degree(),
            right: g.degree(),
        });
    }
    for w in [wf, wg] {
        if w.degree() != f.degree() {
            return Err(Error::DegreeMismatch {
                left: f.degree(),
                right: w.degree(),
            });
        }
    }
    Ok(())
}

fn sums_differ_message(wf: &Weight, wg: &Weight, what: &str) -> String {
    format!(
        "{what} agree, but the weight sums {} and {} differ; equal data forces equal \
         T_n(p^2) eigenvalues p^(sum - n(n+1)/2), so the input is inconsistent",
        wf.sum(),
        wg.sum()
    )
}

/// Compares the profiles `E_F(p)` and `E_G(p)` operator by operator.
///
/// `p` must not divide the level; that is the caller's responsibility.
pub fn compare_profiles(
    f: &EigenvalueProfile,
    g: &EigenvalueProfile,
    wf: &Weight,
    wg: &Weight,
) -> Result<Verdict> {
    check_pair(f, g, wf, wg)?;
    for op in EigenvalueProfile::listed_operators(f.degree()) {
        if f.require(op)? != g.require(op)? {
            return Ok(Verdict::Distinguished(Witness::Operator(op)));
        }
    }
    let implied_f = implied_tn_eigenvalue(f)?;
    let implied_g = implied_tn_eigenvalue(g)?;
    if implied_f != implied_g {
        return Err(Error::Internal(
            "equal profiles produced different T_n(p^2) eigenvalues".into(),
        ));
    }
    if wf.sum() != wg.sum() {
        let p = f.prime();
        return Ok(Verdict::Inconsistent(format!(
            "{}: relation gives a(T_n(p^2)) = {}, weights require {} and {}",
            sums_differ_message(wf, wg, "all listed eigenvalues"),
            format_rational(&implied_f),
            format_rational(&tn_scalar(wf, p)),
            format_rational(&tn_scalar(wg, p))
        )));
    }
    Ok(Verdict::ProfilesEqualConsistent)
}

fn constant(v: BigRational) -> HeckePolynomial {
    HeckePolynomial::constant(2, v)
}

/// Value of the identity's left-hand side on the profile's own eigenvalues,
/// or `None` when an entry it needs is absent.
fn identity_value(
    which: Identity,
    profile: &EigenvalueProfile,
    weight_sum: i64,
) -> Option<BigRational> {
    let needed: &[u32] = match which {
        Identity::Ap3 => &[1, 2, 3],
        Identity::Ap4 => &[2, 4],
        Identity::Ap6 => &[2, 4, 6],
    };
    if needed.iter().any(|&r| profile.a_pr(r).is_none()) {
        return None;
    }
    let lhs = which.lhs(profile.prime(), weight_sum, |r| {
        constant(profile.a_pr(r as u32).unwrap_or_else(BigRational::zero))
    });
    Some(lhs.as_constant().expect("constant inputs give a constant"))
}

/// `Some(description)` when the profile violates an identity for its weight.
fn self_check(label: &str, profile: &EigenvalueProfile, weight: &Weight) -> Option<String> {
    let s = weight.sum();
    let vanishing = profile.a_pr(1).is_some_and(|a| a.is_zero());
    for which in Identity::ALL {
        if which.requires_vanishing_tp() && !vanishing {
            continue;
        }
        if let Some(v) = identity_value(which, profile, s) {
            if !v.is_zero() {
                return Some(format!(
                    "{label} violates {} for weight {weight}: left-hand side is {}",
                    which.name(),
                    format_rational(&v)
                ));
            }
        }
    }
    if vanishing {
        for (op, v) in profile.values() {
            if let OperatorName::Tpr(r) = op {
                if r % 2 == 1 && !v.is_zero() {
                    return Some(format!(
                        "{label} has a(p) = 0 but a(p^{r}) = {} is nonzero",
                        format_rational(v)
                    ));
                }
            }
        }
    }
    None
}

/// Compares degree-2 eigenvalues of `T(p^r)`: `r = 1, 2, 3` when `a(p)` is
/// nonzero for one of the forms, otherwise `r = 2, 4, 6`. Each profile is
/// first checked against the identities for its own weight.
pub fn compare_tpr(
    f: &EigenvalueProfile,
    g: &EigenvalueProfile,
    wf: &Weight,
    wg: &Weight,
) -> Result<Verdict> {
    check_pair(f, g, wf, wg)?;
    if f.degree() != 2 {
        return Err(Error::InvalidArgument(format!(
            "T(p^r) comparison needs degree 2, got {}",
            f.degree()
        )));
    }
    let af = f.require_pr(1)?;
    let ag = g.require_pr(1)?;
    let powers: &[u32] = if af.is_zero() && ag.is_zero() {
        &[2, 4, 6]
    } else {
        &[1, 2, 3]
    };
    let mut tuples = Vec::with_capacity(powers.len());
    for &r in powers {
        tuples.push((r, f.require_pr(r)?, g.require_pr(r)?));
    }
    for (label, prof, w) in [("F", f, wf), ("G", g, wg)] {
        if let Some(why) = self_check(label, prof, w) {
            return Ok(Verdict::Inconsistent(why));
        }
    }
    for (r, a, b) in &tuples {
        if a != b {
            return Ok(Verdict::Distinguished(Witness::Operator(profile_name(*r))));
        }
    }
    if wf.sum() != wg.sum() {
        let listed: Vec<String> = powers.iter().map(|r| format!("a(p^{r})")).collect();
        return Ok(Verdict::Inconsistent(sums_differ_message(
            wf,
            wg,
            &listed.join(", "),
        )));
    }
    Ok(Verdict::ProfilesEqualConsistent)
}

fn profile_name(r: u32) -> OperatorName {
    match r {
        1 => OperatorName::Tp,
        2 => OperatorName::Tp2,
        r => OperatorName::Tpr(r),
    }
}

/// Solves the cubic identity for the weight sum:
/// `p^(s-4) (p+1) a(p) = a(p^3) - 2a(p)a(p^2) + a(p)^3`.
pub fn recover_weight_sum_case_i(profile: &EigenvalueProfile) -> Result<i64> {
    if profile.degree() != 2 {
        return Err(Error::InvalidArgument(format!(
            "weight recovery needs degree 2, got {}",
            profile.degree()
        )));
    }
    let a1 = profile.require_pr(1)?;
    if a1.is_zero() {
        return Err(Error::InvalidArgument(
            "a(p) = 0: the cubic identity does not involve the weight".into(),
        ));
    }
    let a2 = profile.require_pr(2)?;
    let a3 = profile.require_pr(3)?;
    let p = profile.prime();
    let num = &a3 - int(2.into()) * &a1 * &a2 + &a1 * &a1 * &a1;
    let quotient = num / (int(p.to_bigint() + 1) * &a1);
    Ok(crate::hecke::weight::exact_log(&quotient, p)? + 4)
}

/// Degree-2 profile with `a(p^r)` for `1 <= r <= r_max` read off the solved
/// generating identity, given `a(p)` and `a(p^2)`.
pub fn forward_tpr_profile(
    p: Prime,
    weight: &Weight,
    a1: BigRational,
    a2: BigRational,
    r_max: usize,
) -> Result<EigenvalueProfile> {
    let bindings = Substitution::new()
        .scalar(Generator::Tp, a1)
        .scalar(Generator::Tp2, a2);
    let table = euler::solve_tpr(p, r_max)?
        .substitute(&euler::weight_binding(weight, p)?)?
        .substitute(&bindings)?;
    let mut profile = EigenvalueProfile::new(2, p)?.with_weight(weight.clone())?;
    for (r, entry) in table.entries().iter().enumerate().skip(1) {
        let value = entry
            .as_constant()
            .ok_or_else(|| Error::Internal(format!("T(p^{r}) did not specialise: {entry}")))?;
        profile.insert(OperatorName::Tpr(r as u32), value)?;
    }
    Ok(profile)
}
