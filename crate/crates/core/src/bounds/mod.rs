//! Explicit prime bounds with certified logarithms.
//!
//! Every inequality of the form `q <= c ln N + b` is decided with the lower
//! endpoint of an enclosure of `c ln N + b`, so a reported success is a
//! proof. A definite failure (`q` above the upper endpoint) is a
//! [`Error::BoundViolation`]; if neither endpoint decides, the precision is
//! doubled until it does or [`MAX_PRECISION_BITS`] is reached.

mod interval;
mod log;
mod sieve;

pub use interval::DyadicInterval;
pub use log::{LogContext, DEFAULT_PRECISION_BITS, MAX_PRECISION_BITS};
pub use sieve::PrimeSieve;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::parallel::{first_failure, Execution};

/// Which smallest-prime search, and the bound `c ln N + b` it satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// Smallest prime not dividing `N`; `p <= 2 ln N + 2`.
    AnyPrime,
    /// Smallest prime `= 3 (mod 4)` not dividing `N`; `p <= 3 ln N + 4`.
    Prime3Mod4,
}

impl BoundKind {
    pub fn coefficients(self) -> (i64, i64) {
        match self {
            BoundKind::AnyPrime => (2, 2),
            BoundKind::Prime3Mod4 => (3, 4),
        }
    }

    fn candidates(self) -> &'static [u64] {
        static ANY: OnceLock<Vec<u64>> = OnceLock::new();
        static THREE: OnceLock<Vec<u64>> = OnceLock::new();
        // The product of the first 20 candidates exceeds u64::MAX, so every
        // search terminates inside the list.
        match self {
            BoundKind::AnyPrime => ANY.get_or_init(|| crate::prime::primes().take(20).collect()),
            BoundKind::Prime3Mod4 => THREE.get_or_init(|| {
                crate::prime::primes()
                    .filter(|q| q % 4 == 3)
                    .take(20)
                    .collect()
            }),
        }
    }

    /// The smallest candidate prime not dividing `n`.
    pub fn search(self, n: u64) -> u64 {
        *self
            .candidates()
            .iter()
            .find(|&&q| !n.is_multiple_of(q))
            .expect("candidate list outgrows u64")
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, b) = self.coefficients();
        write!(f, "{c} ln N + {b}")
    }
}

/// A smallest-prime search together with the certified enclosure of its
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub kind: BoundKind,
    pub n: u64,
    pub prime: u64,
    pub bound: DyadicInterval,
}

impl fmt::Display for BoundCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={}: p={} <= {} in {}",
            self.n, self.prime, self.kind, self.bound
        )
    }
}

fn affine_ln(n: u64, c: i64, b: i64, ctx: &LogContext) -> Result<DyadicInterval> {
    Ok(ctx.ln_u64(n)?.scale_int(c).add_int(b))
}

/// Certifies `q <= c ln n + b`, refining the precision as needed. Returns
/// the enclosure that decided it.
pub fn certify_le(q: u64, n: u64, c: i64, b: i64, ctx: &LogContext) -> Result<DyadicInterval> {
    let target = BigRational::from_integer(q.into());
    let mut current = ctx.clone();
    loop {
        let bound = affine_ln(n, c, b, &current)?;
        if bound.certainly_at_least(&target) {
            return Ok(bound);
        }
        if bound.certainly_below(&target) {
            return Err(Error::BoundViolation(format!(
                "N={n}: {q} > {c} ln N + {b}, which lies in {bound}"
            )));
        }
        current = match current.refined() {
            Some(next) => next,
            None => {
                return Err(Error::Undecided(format!(
                    "N={n}: {q} vs {c} ln N + {b} at {} bits",
                    current.bits()
                )))
            }
        };
    }
}

fn check_bound(kind: BoundKind, n: u64, ctx: &LogContext) -> Result<BoundCheck> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "N",
            value: 0,
        });
    }
    let prime = kind.search(n);
    let (c, b) = kind.coefficients();
    let bound = certify_le(prime, n, c, b, ctx)?;
    Ok(BoundCheck {
        kind,
        n,
        prime,
        bound,
    })
}

/// Smallest prime not dividing `n`, certified to be at most `2 ln n + 2`.
pub fn smallest_prime_not_dividing(n: u64, ctx: &LogContext) -> Result<BoundCheck> {
    check_bound(BoundKind::AnyPrime, n, ctx)
}

/// Smallest prime `= 3 (mod 4)` not dividing `n`, certified to be at most
/// `3 ln n + 4`.
pub fn smallest_prime_3mod4_not_dividing(n: u64, ctx: &LogContext) -> Result<BoundCheck> {
    check_bound(BoundKind::Prime3Mod4, n, ctx)
}

/// Enclosure of `(2 ln n + 2)^6`.
pub fn m_bound(n: u64, ctx: &LogContext) -> Result<DyadicInterval> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "N",
            value: 0,
        });
    }
    Ok(affine_ln(n, 2, 2, ctx)?.pow_nonneg(6))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub kind: BoundKind,
    pub limit: u64,
    /// Values of `N` for which a logarithm had to be evaluated; the rest
    /// have `p <= b` and hold because `ln N >= 0`.
    pub certified_by_interval: u64,
}

/// Checks the bound for every `1 <= N <= limit`. The first failing `N` is
/// returned as the error.
pub fn sweep_prime_bound(
    kind: BoundKind,
    limit: u64,
    ctx: &LogContext,
    exec: Execution,
) -> Result<SweepReport> {
    if limit == 0 {
        return Err(Error::OutOfRange {
            what: "sweep limit",
            value: 0,
        });
    }
    let (c, b) = kind.coefficients();
    let needs_log = |n: u64| kind.search(n) as i64 > b;
    let failure = first_failure(1..limit + 1, exec, |n| {
        let q = kind.search(n);
        if q as i64 <= b {
            return None;
        }
        certify_le(q, n, c, b, ctx).err()
    });
    if let Some((_, e)) = failure {
        return Err(e);
    }
    Ok(SweepReport {
        kind,
        limit,
        certified_by_interval: (1..=limit).filter(|&n| needs_log(n)).count() as u64,
    })
}

/// Enclosure of `theta_3(x) = sum of ln q over primes q <= x, q = 3 (mod 4)`.
pub fn theta3(x: &BigRational, sieve: &PrimeSieve, ctx: &LogContext) -> Result<DyadicInterval> {
    let top = x.floor().to_integer();
    if top > BigInt::from(sieve.limit()) {
        return Err(Error::OutOfRange {
            what: "theta3 argument above sieve limit",
            value: top.to_i64().unwrap_or(i64::MAX),
        });
    }
    let top = top.to_u64().unwrap_or(0);
    let mut acc = DyadicInterval::zero(ctx.bits());
    for &q in sieve.primes_3mod4().iter().take_while(|&&q| q <= top) {
        acc = acc.add(&ctx.ln_u64(q)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theta3Failure {
    /// The jump point `q` whose plateau value `theta_3(q)` is too small.
    pub prime: u64,
    pub theta: DyadicInterval,
    /// `x` at the right end of the plateau.
    pub target: BigRational,
    /// A point of the plateau where `theta_3(3x) <= x` is certain.
    pub counterexample: BigRational,
}

impl fmt::Display for Theta3Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta_3({}) in {} but x reaches {}; x = {} (~{:.4}) is a counterexample",
            self.prime,
            self.theta,
            crate::exact::rational::format_rational(&self.target),
            crate::exact::rational::format_rational(&self.counterexample),
            self.counterexample.to_f64().unwrap_or(f64::NAN)
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Theta3Report {
    pub x_max: BigRational,
    /// Plateaus checked.
    pub checked: usize,
    /// Every failing plateau, in increasing order.
    pub failures: Vec<Theta3Failure>,
    /// Smallest certified `theta_3(q) - x` over the passing plateaus.
    pub min_margin: Option<f64>,
    pub note: Option<String>,
}

impl Theta3Report {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&Theta3Failure> {
        self.failures.first()
    }
}

/// Checks `theta_3(3x) > x` for `11/3 <= x <= x_max`.
///
/// `theta_3(3x)` is constant on `[q_i/3, q_{i+1}/3)` between consecutive
/// primes `q_i < q_{i+1}`, both `= 3 (mod 4)`, while `x` grows, so the
/// inequality on a plateau reduces to `theta_3(q_i) > min(q_{i+1}, 3 x_max) / 3`.
/// The range starts at the jump `q = 11`. All plateaus are examined; a
/// failing one is recorded with a certified counterexample.
pub fn check_theta3_lemma(x_max: &BigRational, ctx: &LogContext) -> Result<Theta3Report> {
    let three = BigRational::from_integer(3.into());
    let start = BigRational::new(11.into(), 3.into());
    let mut report = Theta3Report {
        x_max: x_max.clone(),
        checked: 0,
        failures: Vec::new(),
        min_margin: None,
        note: None,
    };
    if x_max < &start {
        report.note = Some("x_max < 11/3: the range is empty".into());
        return Ok(report);
    }
    let top_real = x_max * &three;
    let top = top_real
        .floor()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument("x_max too large".into()))?;
    let sieve = PrimeSieve::new(top);
    let qs = sieve.primes_3mod4();
    let first = qs
        .iter()
        .position(|&q| q >= 11)
        .expect("11 <= 3 x_max is in the sieve");

    let mut theta = theta3(&BigRational::from_integer(10.into()), &sieve, ctx)?;
    for i in first..qs.len() {
        let q = qs[i];
        theta = theta.add(&ctx.ln_u64(q)?);
        let right = match qs.get(i + 1) {
            Some(&next) => BigRational::from_integer(next.into()).min(top_real.clone()),
            None => top_real.clone(),
        };
        let target = &right / &three;
        report.checked += 1;
        match decide_plateau(q, &theta, &target, &sieve, ctx)? {
            Ok(enclosure) => {
                let m = (enclosure.lo() - &target).to_f64().unwrap_or(f64::NAN);
                report.min_margin = Some(report.min_margin.map_or(m, |old| old.min(m)));
            }
            Err(enclosure) => {
                // Any x in (max(hi, q/3), target) has theta_3(3x) <= hi < x;
                // at x = target itself (when it is x_max) the failure is <=.
                let left = enclosure
                    .hi()
                    .max(BigRational::from_integer(q.into()) / &three);
                let counterexample = if left < target {
                    (&left + &target) / BigRational::from_integer(2.into())
                } else {
                    target.clone()
                };
                report.failures.push(Theta3Failure {
                    prime: q,
                    theta: enclosure,
                    target,
                    counterexample,
                });
            }
        }
    }
    Ok(report)
}

/// `Ok(enclosure)` if `theta_3(q) > target` is certified, `Err(enclosure)`
/// if `theta_3(q) <= target` is.
fn decide_plateau(
    q: u64,
    theta: &DyadicInterval,
    target: &BigRational,
    sieve: &PrimeSieve,
    ctx: &LogContext,
) -> Result<std::result::Result<DyadicInterval, DyadicInterval>> {
    let mut enclosure = theta.clone();
    let mut current = ctx.clone();
    loop {
        if enclosure.certainly_above(target) {
            return Ok(Ok(enclosure));
        }
        if enclosure.hi() <= *target {
            return Ok(Err(enclosure));
        }
        current = current.refined().ok_or_else(|| {
            Error::Undecided(format!(
                "theta_3({q}) vs {target} at {} bits",
                current.bits()
            ))
        })?;
        enclosure = theta3(&BigRational::from_integer(q.into()), sieve, &current)?;
    }
}
