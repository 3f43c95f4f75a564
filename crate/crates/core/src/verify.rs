//! The acceptance suite: ten machine checks, each returning a report line.
//!
//! Correctness decides `passed`; the wall-clock budget is reported next to
//! the elapsed time but never turns a correct result into a failure.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::{check_theta3_lemma, sweep_prime_bound, BoundKind, LogContext};
use crate::distinguish::{
    compare_profiles, compare_tpr, forward_profile, forward_tpr_profile, recover_weight_sum_case_i,
    EigenvalueProfile, Verdict,
};
use crate::error::{Error, Result};
use crate::euler::{self, build_euler_factor, generating_rhs, solve_tpr, Identity};
use crate::exact::HeckePolynomial;
use crate::fourier::{
    class_number, distinguish_by_fourier, is_fundamental_discriminant, CoefficientTable,
};
use crate::hecke::{derive_main_relation, gauss_binomial_check, Weight};
use crate::parallel::{map_slice, Execution};
use crate::prime::Prime;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {} ({:.2}s, budget {}s{}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            if self.within_budget() {
                ""
            } else {
                ", over budget"
            },
            self.detail
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub exec: Execution,
    pub log: LogContext,
    /// Seed for the randomized profile pairs.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            exec: Execution::default(),
            log: LogContext::default(),
            seed: 0x5eed_2024,
        }
    }
}

fn timed<F>(id: u8, name: &'static str, budget_secs: u64, body: F) -> CriterionReport
where
    F: FnOnce() -> Result<(bool, String)>,
{
    let start = Instant::now();
    let (passed, detail) = match body() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionReport {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
        budget: Duration::from_secs(budget_secs),
    }
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("fixed small prime")
}

/// `prod_{i=1}^s (p^i + 1) - 1`, computed independently of the crate's own
/// coefficient routine.
fn product_form(s: u32, p: u64) -> BigInt {
    let p = BigInt::from(p);
    (1..=s).fold(BigInt::one(), |acc, i| {
        acc * (num_traits::pow(p.clone(), i as usize) + 1)
    }) - 1
}

pub fn criterion_1(opts: &VerifyOptions) -> CriterionReport {
    timed(1, "T(p^2) relation derived for n <= 6", 5, || {
        let grid: Vec<(usize, u64)> = (1..=6)
            .flat_map(|n| [2u64, 3, 5].into_iter().map(move |p| (n, p)))
            .collect();
        let outcomes = map_slice(&grid, opts.exec, |&(n, p)| -> Result<Option<String>> {
            let ks = [n as i64 + 1, n as i64 + 2, n as i64 + 5];
            let rels = ks
                .iter()
                .map(|&k| derive_main_relation(n, prime(p), k))
                .collect::<Result<Vec<_>>>()?;
            if rels.windows(2).any(|w| w[0] != w[1]) {
                return Ok(Some(format!("n={n}, p={p}: output depends on k")));
            }
            for (i, c) in rels[0].coefficients.iter().enumerate() {
                let s = i as u32 + 1;
                if *c != product_form(s, p) {
                    return Ok(Some(format!(
                        "n={n}, p={p}: c_{s} = {c}, expected {}",
                        product_form(s, p)
                    )));
                }
            }
            Ok(None)
        });
        let mut failures = Vec::new();
        for o in outcomes {
            if let Some(msg) = o? {
                failures.push(msg);
            }
        }
        Ok(if failures.is_empty() {
            (
                true,
                format!(
                    "{} (n, p) cases x 3 values of k, c_s exact, no k-dependence",
                    grid.len()
                ),
            )
        } else {
            (false, failures.join("; "))
        })
    })
}

pub fn criterion_2(_opts: &VerifyOptions) -> CriterionReport {
    timed(2, "Gauss binomial sum = product", 1, || {
        let mut bad = Vec::new();
        let mut count = 0;
        for p in [2u64, 3, 5, 7, 11] {
            for s in 1..=12 {
                count += 1;
                if !gauss_binomial_check(s, prime(p)) {
                    bad.push(format!("s={s}, p={p}"));
                }
            }
        }
        Ok((
            bad.is_empty(),
            if bad.is_empty() {
                format!("{count} cases exact")
            } else {
                bad.join(", ")
            },
        ))
    })
}

pub fn criterion_3(_opts: &VerifyOptions) -> CriterionReport {
    timed(3, "generating identity round trip to order 12", 5, || {
        let order = 12;
        for p in [2u64, 3, 5] {
            let p = prime(p);
            let table = solve_tpr(p, order)?;
            let lhs = build_euler_factor(p)
                .reversed_series(order)
                .checked_mul(&table.as_series())?;
            if lhs != generating_rhs(p, order) {
                return Ok((
                    false,
                    format!("p={p}: product differs from 1 - p^2 T_2(p^2) z^2"),
                ));
            }
        }
        Ok((
            true,
            "p in {2, 3, 5}: product equals 1 - p^2 T_2(p^2) z^2 through z^12".into(),
        ))
    })
}

fn identity_grid() -> Vec<(Weight, Prime)> {
    let mut grid = Vec::new();
    for l2 in 3..=10 {
        for l1 in l2..=l2 + 6 {
            for p in [2u64, 3] {
                grid.push((Weight::new(vec![l1, l2]).expect("l1 >= l2"), prime(p)));
            }
        }
    }
    grid
}

/// Checks the three identities and odd vanishing through `T(p^21)` for one
/// weight and prime. `None` means everything vanished.
pub fn identities_for(weight: &Weight, p: Prime) -> Result<Option<String>> {
    for which in Identity::ALL {
        let residual = euler::identity_residual(which, weight, p)?;
        if !residual.is_zero() {
            return Ok(Some(format!(
                "{} at {weight}, p={p}: {residual}",
                which.name()
            )));
        }
    }
    let table = solve_tpr(p, 21)?
        .substitute(&euler::weight_binding(weight, p)?)?
        .substitute(&euler::vanishing_tp())?;
    for i in 0..=10 {
        let e = table.get(2 * i + 1).expect("within table");
        if !e.is_zero() {
            return Ok(Some(format!(
                "T(p^{}) at {weight}, p={p} is {e} with T(p) = 0",
                2 * i + 1
            )));
        }
    }
    Ok(None)
}

pub fn criterion_4(opts: &VerifyOptions) -> CriterionReport {
    timed(4, "degree-2 identities on the weight grid", 30, || {
        let grid = identity_grid();
        let outcomes = map_slice(&grid, opts.exec, |(w, p)| identities_for(w, *p));
        let mut failures = Vec::new();
        for o in outcomes {
            if let Some(msg) = o? {
                failures.push(msg);
            }
        }
        Ok(if failures.is_empty() {
            (
                true,
                format!(
                    "{} (weight, p) cases: ap3, ap4, ap6 and odd vanishing to i = 10",
                    grid.len()
                ),
            )
        } else {
            (false, failures.join("; "))
        })
    })
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(-60i64..=60).into(),
        rng.gen_range(1i64..=9).into(),
    )
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    let mut parts: Vec<i64> = (0..n).map(|_| rng.gen_range(n as i64 + 1..=16)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Weight::new(parts).expect("sorted")
}

fn random_weight_pair(rng: &mut ChaCha8Rng, n: usize) -> (Weight, Weight) {
    let wf = random_weight(rng, n);
    loop {
        let wg = random_weight(rng, n);
        if wg.sum() != wf.sum() {
            return (wf, wg);
        }
    }
}

/// One profile pair per engine. Returns a failure message, if any.
fn random_trial(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let p = prime([2u64, 3, 5, 7][rng.gen_range(0..4)]);

    let n = rng.gen_range(1..=4);
    let (wf, wg) = random_weight_pair(rng, n);
    let free = |rng: &mut ChaCha8Rng| -> (BigRational, Vec<BigRational>) {
        (
            random_rational(rng),
            (1..n).map(|_| random_rational(rng)).collect(),
        )
    };
    let (tf, sf) = free(rng);
    // Half of the pairs share their free values, the hardest case.
    let (tg, sg) = if rng.gen_bool(0.5) {
        (tf.clone(), sf.clone())
    } else {
        free(rng)
    };
    let f = forward_profile(p, &wf, tf, &sf)?;
    let g = forward_profile(p, &wg, tg, &sg)?;
    let v = compare_profiles(&f, &g, &wf, &wg)?;
    if !v.is_distinguished() {
        return Ok(Some(format!(
            "profile engine returned {v} for {wf} vs {wg} at p={p}"
        )));
    }

    let (wf, wg) = random_weight_pair(rng, 2);
    let zero = rng.gen_bool(0.3);
    let a1 = if zero {
        BigRational::zero()
    } else {
        random_rational(rng)
    };
    let a2 = random_rational(rng);
    let (b1, b2) = if rng.gen_bool(0.5) {
        (a1.clone(), a2.clone())
    } else {
        let b1 = if zero {
            BigRational::zero()
        } else {
            random_rational(rng)
        };
        (b1, random_rational(rng))
    };
    let f = forward_tpr_profile(p, &wf, a1.clone(), a2, 6)?;
    let g = forward_tpr_profile(p, &wg, b1, b2, 6)?;
    let v = compare_tpr(&f, &g, &wf, &wg)?;
    if !v.is_distinguished() {
        return Ok(Some(format!(
            "T(p^r) engine returned {v} for {wf} vs {wg} at p={p}"
        )));
    }
    if !a1.is_zero() {
        let s = recover_weight_sum_case_i(&f)?;
        if s != wf.sum() {
            return Ok(Some(format!(
                "recovered weight sum {s}, expected {}",
                wf.sum()
            )));
        }
    }
    Ok(None)
}

pub const RANDOM_TRIALS: usize = 1000;

pub fn criterion_5(opts: &VerifyOptions) -> CriterionReport {
    timed(5, "contrapositive engines on random pairs", 30, || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for trial in 0..RANDOM_TRIALS {
            if let Some(msg) = random_trial(&mut rng)? {
                return Ok((false, format!("trial {trial}: {msg}")));
            }
        }
        Ok((
            true,
            format!(
                "{RANDOM_TRIALS} pairs per engine distinguished; weight sums recovered exactly"
            ),
        ))
    })
}

pub fn criterion_6(_opts: &VerifyOptions) -> CriterionReport {
    timed(6, "degree-3 expansion reproduced", 1, || {
        for p in [2u64, 3, 5, 7, 11] {
            let pr = prime(p);
            let derived = solve_tpr(pr, 3)?.get(3).expect("r=3");
            // T(p^3) = 2T(p)T(p^2) - T(p)^3 + p^2(p+1)T(p)T_2(p^2)
            let text = format!("2*T(p)*T(p^2) - T(p)^3 + {}*T(p)*T_2(p^2)", p * p * (p + 1));
            let expected = HeckePolynomial::parse(2, &text)?;
            if derived != expected || derived.to_string() != expected.to_string() {
                return Ok((
                    false,
                    format!("p={p}: derived {derived}, expected {expected}"),
                ));
            }
        }
        let report: Vec<String> = euler::transcribed_expansions(prime(2))?
            .into_iter()
            .skip(1)
            .filter(|e| !e.residual.is_zero())
            .map(|e| {
                format!(
                    "{} display differs from the recurrence by {} at p=2",
                    e.name, e.residual
                )
            })
            .collect();
        let mut detail = "T(p^3) matches term by term for p in {2, 3, 5, 7, 11}".to_string();
        if !report.is_empty() {
            detail.push_str(&format!(" [info: {}]", report.join("; ")));
        }
        Ok((true, detail))
    })
}

pub const SWEEP_LIMIT: u64 = 1_000_000;

pub fn criterion_7(opts: &VerifyOptions) -> CriterionReport {
    timed(
        7,
        "smallest prime 3 mod 4 bound for N <= 10^6",
        60,
        || match sweep_prime_bound(BoundKind::Prime3Mod4, SWEEP_LIMIT, &opts.log, opts.exec) {
            Ok(r) => Ok((
                true,
                format!(
                    "p <= {} for all N <= {}; {} values certified by interval lower bounds",
                    r.kind, r.limit, r.certified_by_interval
                ),
            )),
            Err(e @ (Error::BoundViolation(_) | Error::Undecided(_))) => Ok((false, e.to_string())),
            Err(e) => Err(e),
        },
    )
}

pub const THETA3_X_MAX: i64 = 10_000;

pub fn criterion_8(opts: &VerifyOptions) -> CriterionReport {
    timed(8, "theta_3(3x) > x on [11/3, 10^4]", 10, || {
        let r = check_theta3_lemma(&BigRational::from_integer(THETA3_X_MAX.into()), &opts.log)?;
        let margin = r
            .min_margin
            .map_or("n/a".to_string(), |m| format!("{m:.4}"));
        if r.holds() {
            Ok((
                true,
                format!("{} plateaus certified, smallest margin {margin}", r.checked),
            ))
        } else {
            let fails: Vec<String> = r.failures.iter().map(ToString::to_string).collect();
            Ok((
                false,
                format!(
                    "{} of {} plateaus fail: {}; all other plateaus certified (smallest margin {margin})",
                    r.failures.len(),
                    r.checked,
                    fails.join("; ")
                ),
            ))
        }
    })
}

pub const CLASS_NUMBER_ONE: [i64; 9] = [-3, -4, -7, -8, -11, -19, -43, -67, -163];

pub fn criterion_9(_opts: &VerifyOptions) -> CriterionReport {
    timed(9, "class number one discriminants", 5, || {
        let mut found = Vec::new();
        let mut fundamentals = 0;
        for d in (-200..=-3).rev() {
            if !is_fundamental_discriminant(d) {
                continue;
            }
            fundamentals += 1;
            if class_number(d)? == 1 {
                found.push(d);
            }
        }
        let ok = found == CLASS_NUMBER_ONE;
        Ok((
            ok,
            format!(
                "h(d) = 1 exactly for {found:?} among {fundamentals} fundamental d in [-200, -3]"
            ),
        ))
    })
}

pub const FIXTURE_FOURIER: [(&str, &str, &str, i32); 3] = [
    (
        "distinguished",
        include_str!("../fixtures/fourier_distinguished_f.txt"),
        include_str!("../fixtures/fourier_distinguished_g.txt"),
        0,
    ),
    (
        "inconsistent",
        include_str!("../fixtures/fourier_inconsistent_f.txt"),
        include_str!("../fixtures/fourier_inconsistent_g.txt"),
        2,
    ),
    (
        "hypothesis",
        include_str!("../fixtures/fourier_hypothesis_f.txt"),
        include_str!("../fixtures/fourier_hypothesis_g.txt"),
        0,
    ),
];

pub const FIXTURE_PROFILE_INCONSISTENT: (&str, &str) = (
    include_str!("../fixtures/profile_inconsistent_f.txt"),
    include_str!("../fixtures/profile_inconsistent_g.txt"),
);

pub fn criterion_10(_opts: &VerifyOptions) -> CriterionReport {
    timed(10, "Fourier fixtures", 1, || {
        let mut seen = Vec::new();
        for (name, f, g, code) in FIXTURE_FOURIER {
            let f: CoefficientTable = f.parse()?;
            let g: CoefficientTable = g.parse()?;
            let v = distinguish_by_fourier(&f, &g)?;
            let kind_ok = match name {
                "distinguished" => v.is_distinguished(),
                "inconsistent" => matches!(v, Verdict::Inconsistent(_)),
                _ => matches!(&v, Verdict::NotApplicable(m) if m.contains("both c(I) zero")),
            };
            if !kind_ok || v.exit_code() != code {
                return Ok((
                    false,
                    format!("{name} fixture gave {v} (exit {})", v.exit_code()),
                ));
            }
            seen.push(format!("{name}: {v} exit {code}"));
        }
        // The inconsistent profile pair belongs to the same exit-code contract.
        let (f, g) = FIXTURE_PROFILE_INCONSISTENT;
        let f: EigenvalueProfile = f.parse()?;
        let g: EigenvalueProfile = g.parse()?;
        let v = compare_profiles(
            &f,
            &g,
            f.weight().expect("fixture weight"),
            g.weight().expect("fixture weight"),
        )?;
        if v.exit_code() != 2 {
            return Ok((false, format!("inconsistent profile fixture gave {v}")));
        }
        Ok((true, seen.join("; ")))
    })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionReport> {
    let criteria: [fn(&VerifyOptions) -> CriterionReport; 10] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
    ];
    criteria.iter().map(|c| c(opts)).collect()
}
