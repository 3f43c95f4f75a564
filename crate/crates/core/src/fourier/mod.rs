//! Half-integral Fourier indices, the arithmetic conditions under which the
//! coefficients at `p^r S` track Hecke eigenvalues, and the distinguisher
//! that compares coefficients at `p^r I` for `0 <= r <= 6`.
//!
//! The intertwining of coefficients and eigenvalues itself is taken as
//! given; only its hypotheses are checked here.

mod table;

pub use table::{distinguish_by_fourier, CoefficientTable, FOURIER_MAX_R};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::bounds::LogContext;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// `[[a, b/2], [b/2, c]]`, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfIntegralForm {
    a: i64,
    b: i64,
    c: i64,
}

impl HalfIntegralForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if a < 0 || c < 0 || 4 * a * c - b * b < 0 {
            return Err(Error::InvalidArgument(format!(
                "[[{a}, {b}/2], [{b}/2, {c}]] is not positive semidefinite"
            )));
        }
        Ok(HalfIntegralForm { a, b, c })
    }

    pub fn identity() -> Self {
        HalfIntegralForm { a: 1, b: 0, c: 1 }
    }

    pub fn coefficients(&self) -> (i64, i64, i64) {
        (self.a, self.b, self.c)
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `ac - b^2/4`.
    pub fn determinant(&self) -> BigRational {
        BigRational::new((-self.discriminant()).into(), 4.into())
    }

    pub fn scaled(&self, m: i64) -> Result<Self> {
        Self::new(m * self.a, m * self.b, m * self.c)
    }

    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }
}

impl fmt::Display for HalfIntegralForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

fn check_discriminant(d: i64) -> Result<()> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a negative discriminant (need d < 0, d = 0 or 1 mod 4)"
        )));
    }
    Ok(())
}

/// Number of reduced primitive forms `(a, b, c)` of discriminant `d < 0`:
/// `|b| <= a <= c`, `gcd(a, b, c) = 1`, `b >= 0` if `|b| = a` or `a = c`.
pub fn class_number(d: i64) -> Result<u64> {
    check_discriminant(d)?;
    let abs_d = -d;
    let mut count = 0;
    let mut a = 1i64;
    while 3 * a * a <= abs_d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    Ok(count)
}

fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `d = 1 (mod 4)` squarefree, or `d = 4m` with `m = 2, 3 (mod 4)`
/// squarefree. `d = 1` and `d = 0` are excluded.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// `(d / p)`: Euler's criterion for odd `p`; for `p = 2`, 0 if `d` is even
/// and `+1` or `-1` as `d = +-1` or `+-3 (mod 8)`.
pub fn kronecker_symbol(d: i64, p: Prime) -> i8 {
    let q = p.get();
    if q == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let q = BigInt::from(q);
    let r = BigInt::from(d).mod_floor(&q);
    if r == BigInt::from(0) {
        return 0;
    }
    let e = (&q - 1u32) / 2u32;
    if r.modpow(&e, &q) == BigInt::from(1) {
        1
    } else {
        -1
    }
}

/// Which hypotheses on `(S, p, m)` hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preconditions {
    pub failures: Vec<String>,
}

impl Preconditions {
    pub fn hold(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Preconditions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.hold() {
            f.write_str("all preconditions hold")
        } else {
            f.write_str(&self.failures.join("; "))
        }
    }
}

/// `S` primitive, its discriminant fundamental with class number 1, `p`
/// inert in the field, and `m` coprime to `p`. Every failure is listed.
pub fn arakawa_preconditions(s: &HalfIntegralForm, p: Prime, m: u64) -> Preconditions {
    let mut failures = Vec::new();
    let g = s.content();
    if g != 1 {
        failures.push(format!("not primitive: gcd(a, b, c) = {g}"));
    }
    let d = s.discriminant();
    if d == 0 {
        failures.push("degenerate: discriminant 0".into());
    } else {
        if !is_fundamental_discriminant(d) {
            failures.push(format!("discriminant {d} is not fundamental"));
        }
        match class_number(d) {
            Ok(1) => {}
            Ok(h) => failures.push(format!("class number h({d}) = {h}, not 1")),
            Err(e) => failures.push(e.to_string()),
        }
        let chi = kronecker_symbol(d, p);
        if chi != -1 {
            failures.push(format!("{p} is not inert: ({d}/{p}) = {chi}"));
        }
    }
    if m == 0 || m.is_multiple_of(p.get()) {
        failures.push(format!("m = {m} is not coprime to {p}"));
    }
    Preconditions { failures }
}

/// Certified upper value of `(3 ln N + 4)^12`.
pub fn det_bound(n: u64, ctx: &LogContext) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "N",
            value: 0,
        });
    }
    Ok(ctx.ln_u64(n)?.scale_int(3).add_int(4).pow_nonneg(12).hi())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(x: u64) -> Prime {
        Prime::new(x).unwrap()
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-20).unwrap(), 2);
        assert_eq!(class_number(-163).unwrap(), 1);
        assert!(class_number(-5).is_err());
        assert!(class_number(4).is_err());
    }

    #[test]
    fn fundamental_discriminants() {
        assert!(is_fundamental_discriminant(-4));
        assert!(!is_fundamental_discriminant(-12));
        assert!(is_fundamental_discriminant(-7));
        assert!(is_fundamental_discriminant(-8));
        assert!(!is_fundamental_discriminant(-16));
        assert!(!is_fundamental_discriminant(-2));
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_symbol(-4, p(3)), -1);
        assert_eq!(kronecker_symbol(-4, p(5)), 1);
        assert_eq!(kronecker_symbol(-15, p(5)), 0);
        assert_eq!(kronecker_symbol(-7, p(2)), 1);
        assert_eq!(kronecker_symbol(-3, p(2)), -1);
        assert_eq!(kronecker_symbol(-4, p(2)), 0);
    }

    #[test]
    fn preconditions_examples() {
        let id = HalfIntegralForm::identity();
        assert!(arakawa_preconditions(&id, p(3), 1).hold());
        let split = arakawa_preconditions(&id, p(5), 1);
        assert!(!split.hold());
        assert!(split.failures[0].contains("not inert"));
        let s2 = HalfIntegralForm::new(2, 0, 2).unwrap();
        let r = arakawa_preconditions(&s2, p(3), 1);
        assert!(
            r.failures.iter().any(|f| f.starts_with("not primitive")),
            "{r}"
        );
        assert!(!arakawa_preconditions(&id, p(3), 6).hold());
        // x^2 + 5y^2: d = -20, h = 2.
        let f5 = HalfIntegralForm::new(1, 0, 5).unwrap();
        let r = arakawa_preconditions(&f5, p(3), 1);
        assert!(r.failures.iter().any(|f| f.contains("class number")), "{r}");
    }

    #[test]
    fn forms() {
        assert!(HalfIntegralForm::new(1, 3, 1).is_err());
        let s = HalfIntegralForm::new(1, 1, 1).unwrap();
        assert_eq!(s.discriminant(), -3);
        assert_eq!(s.determinant(), BigRational::new(3.into(), 4.into()));
        assert_eq!(
            HalfIntegralForm::identity()
                .scaled(9)
                .unwrap()
                .determinant(),
            BigRational::from_integer(81.into())
        );
    }

    #[test]
    fn det_bound_examples() {
        let ctx = LogContext::default();
        assert_eq!(
            det_bound(1, &ctx).unwrap(),
            BigRational::from_integer(16_777_216.into())
        );
        let b6 = det_bound(6, &ctx).unwrap();
        assert!(b6.to_f64().unwrap() >= 9.3752_f64.powi(12));
        assert!(det_bound(6, &ctx).unwrap() <= det_bound(7, &ctx).unwrap());
    }
}
