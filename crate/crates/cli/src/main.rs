//! `siegel-hecke`: batch front end for the library.
//!
//! Exit codes: 0 success (including a declined comparison), 1 usage or
//! parse error, 2 the data or a checked statement is contradicted, 3 an
//! internal consistency check failed.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use siegel_hecke::bounds::{
    check_theta3_lemma, m_bound, smallest_prime_3mod4_not_dividing, smallest_prime_not_dividing,
    sweep_prime_bound, BoundKind, LogContext, DEFAULT_PRECISION_BITS,
};
use siegel_hecke::distinguish::{compare_profiles, compare_tpr, EigenvalueProfile, Verdict};
use siegel_hecke::euler::{check_odd_vanishing, identity_residual, solve_tpr, Identity};
use siegel_hecke::exact::rational::format_rational;
use siegel_hecke::exact::BigRational;
use siegel_hecke::fourier::{distinguish_by_fourier, CoefficientTable};
use siegel_hecke::hecke::{derive_main_relation, Weight};
use siegel_hecke::parallel::Execution;
use siegel_hecke::verify::{run_all, VerifyOptions};
use siegel_hecke::{Error, Prime};

#[derive(Parser)]
#[command(
    name = "siegel-hecke",
    version,
    about = "Exact Hecke algebra identities and eigenform distinguishers"
)]
struct Cli {
    /// Machine-readable output; big integers are decimal strings.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive T(p^2) = T(p)^2 - sum c_s T_s(p^2) in degree n.
    Relation {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// Weight parameter of the derivation; defaults to n + 1.
        #[arg(long)]
        k: Option<i64>,
    },
    /// Expand T(p^r) for r <= rmax in degree 2.
    Euler {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 12)]
        rmax: usize,
    },
    /// Check the degree-2 eigenvalue identities for weight (l1, l2).
    Identities {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        l1: i64,
        #[arg(long)]
        l2: i64,
    },
    /// Compare two eigenvalue profiles through T(p) and the T_j(p^2).
    Distinguish(PairArgs),
    /// Compare two degree-2 profiles through the T(p^r).
    DistinguishTpr(PairArgs),
    /// Compare two Fourier coefficient tables at p^r I.
    Fourier(PairArgs),
    /// Smallest-prime bounds and the theta_3 estimate.
    PrimeBounds(BoundArgs),
    /// Run the full acceptance suite.
    VerifyAll {
        /// Run the sweeps on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
        precision_bits: u32,
    },
}

#[derive(Args)]
struct PairArgs {
    file_f: PathBuf,
    file_g: PathBuf,
    /// Level N of both forms; the prime in the files must not divide it.
    #[arg(long)]
    level: Option<u64>,
}

#[derive(Args)]
struct BoundArgs {
    #[command(flatten)]
    mode: BoundMode,
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct BoundMode {
    /// Smallest primes not dividing N, with their certified bounds.
    #[arg(long = "N")]
    n: Option<u64>,
    /// Check both bounds for every 1 <= N <= M.
    #[arg(long, value_name = "M")]
    sweep: Option<u64>,
    /// Check theta_3(3x) > x for 11/3 <= x <= X (X a positive integer).
    #[arg(long, value_name = "X")]
    theta3: Option<i64>,
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<u8, CliError>;

fn prime(p: u64) -> Result<Prime, CliError> {
    Ok(Prime::new(p)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_file<T>(path: &Path) -> Result<T, CliError>
where
    T: std::str::FromStr<Err = Error>,
{
    read(path)?
        .parse()
        .map_err(|e: Error| CliError::Usage(format!("{}: {e}", path.display())))
}

fn check_level(level: Option<u64>, p: Prime) -> Result<(), CliError> {
    match level {
        Some(0) => Err(CliError::Usage("level must be positive".into())),
        Some(n) if n % p.get() == 0 => {
            Err(CliError::Usage(format!("p = {p} divides the level {n}")))
        }
        _ => Ok(()),
    }
}

fn emit(json: bool, value: Value, text: impl FnOnce() -> String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("serializable")
        );
    } else {
        println!("{}", text());
    }
}

fn relation(json: bool, n: usize, p: u64, k: Option<i64>) -> CliResult {
    let p = prime(p)?;
    let k = k.unwrap_or(n as i64 + 1);
    let rel = derive_main_relation(n, p, k)?;
    let cs: Vec<String> = rel.coefficients.iter().map(ToString::to_string).collect();
    emit(
        json,
        json!({ "n": n, "p": p.get(), "k": k, "relation": rel.to_string(), "c": cs }),
        || {
            let mut out = rel.to_string();
            for (s, c) in cs.iter().enumerate() {
                out.push_str(&format!("\nc_{} = {c}", s + 1));
            }
            out
        },
    );
    Ok(0)
}

fn euler(json: bool, p: u64, rmax: usize) -> CliResult {
    let table = solve_tpr(prime(p)?, rmax)?;
    let entries: Vec<String> = table.entries().iter().map(ToString::to_string).collect();
    emit(
        json,
        json!({ "p": p, "rmax": rmax, "entries": entries }),
        || table.to_string(),
    );
    Ok(0)
}

fn identities(json: bool, p: u64, l1: i64, l2: i64) -> CliResult {
    let p = prime(p)?;
    let weight = Weight::new(vec![l1, l2])?;
    let mut rows = Vec::new();
    for which in Identity::ALL {
        rows.push((
            which.name().to_string(),
            identity_residual(which, &weight, p)?.to_string(),
        ));
    }
    let odd = check_odd_vanishing(p, 10)?;
    rows.push((
        "odd T(p^(2i+1)), i <= 10, at T(p) = 0".into(),
        if odd { "0".into() } else { "nonzero".into() },
    ));
    let all_zero = rows.iter().all(|(_, r)| r == "0");
    emit(
        json,
        json!({
            "p": p.get(),
            "weight": [l1, l2],
            "residuals": rows.iter().map(|(n, r)| json!({ "identity": n, "residual": r })).collect::<Vec<_>>(),
            "all_zero": all_zero,
        }),
        || {
            rows.iter()
                .map(|(n, r)| format!("{n}: residual {r}"))
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    Ok(if all_zero { 0 } else { 3 })
}

fn verdict_output(json: bool, v: &Verdict) -> u8 {
    let witness = match v {
        Verdict::Distinguished(w) => Value::String(w.to_string()),
        _ => Value::Null,
    };
    emit(
        json,
        json!({ "verdict": v.kind(), "witness": witness, "explanation": v.explanation(), "exit_code": v.exit_code() }),
        || format!("{v}\n{}", v.explanation()),
    );
    v.exit_code() as u8
}

fn profile_weight(p: &EigenvalueProfile, path: &Path) -> Result<Weight, CliError> {
    p.weight()
        .cloned()
        .ok_or_else(|| CliError::Usage(format!("{}: profile has no `weight` line", path.display())))
}

fn distinguish(json: bool, args: &PairArgs, tpr: bool) -> CliResult {
    let f: EigenvalueProfile = parse_file(&args.file_f)?;
    let g: EigenvalueProfile = parse_file(&args.file_g)?;
    check_level(args.level, f.prime())?;
    check_level(args.level, g.prime())?;
    let (wf, wg) = (
        profile_weight(&f, &args.file_f)?,
        profile_weight(&g, &args.file_g)?,
    );
    let v = if tpr {
        compare_tpr(&f, &g, &wf, &wg)?
    } else {
        compare_profiles(&f, &g, &wf, &wg)?
    };
    Ok(verdict_output(json, &v))
}

fn fourier(json: bool, args: &PairArgs) -> CliResult {
    let f: CoefficientTable = parse_file(&args.file_f)?;
    let g: CoefficientTable = parse_file(&args.file_g)?;
    check_level(args.level, f.prime())?;
    check_level(args.level, g.prime())?;
    let v = distinguish_by_fourier(&f, &g)?;
    Ok(verdict_output(json, &v))
}

fn prime_bounds(json: bool, args: &BoundArgs) -> CliResult {
    let ctx = LogContext::new(args.precision_bits)?;
    if let Some(n) = args.mode.n {
        let any = smallest_prime_not_dividing(n, &ctx)?;
        let three = smallest_prime_3mod4_not_dividing(n, &ctx)?;
        let m = m_bound(n, &ctx)?;
        emit(
            json,
            json!({
                "N": n.to_string(),
                "smallest_prime": any.prime,
                "bound_2lnN_plus_2": [format_rational(&any.bound.lo()), format_rational(&any.bound.hi())],
                "smallest_prime_3mod4": three.prime,
                "bound_3lnN_plus_4": [format_rational(&three.bound.lo()), format_rational(&three.bound.hi())],
                "m_bound": [format_rational(&m.lo()), format_rational(&m.hi())],
            }),
            || format!("{any}\n{three}\nm <= (2 ln N + 2)^6 in {m}"),
        );
        return Ok(0);
    }
    if let Some(limit) = args.mode.sweep {
        let mut lines = Vec::new();
        let mut records = Vec::new();
        for kind in [BoundKind::AnyPrime, BoundKind::Prime3Mod4] {
            match sweep_prime_bound(kind, limit, &ctx, Execution::default()) {
                Ok(r) => {
                    lines.push(format!(
                        "p <= {kind} for all 1 <= N <= {limit} ({} values certified by intervals)",
                        r.certified_by_interval
                    ));
                    records.push(json!({ "bound": kind.to_string(), "holds": true, "certified_by_interval": r.certified_by_interval }));
                }
                Err(e @ Error::BoundViolation(_)) => {
                    lines.push(format!("p <= {kind}: {e}"));
                    records.push(json!({ "bound": kind.to_string(), "holds": false, "detail": e.to_string() }));
                }
                Err(e) => return Err(e.into()),
            }
        }
        let holds = records.iter().all(|r| r["holds"] == true);
        emit(
            json,
            json!({ "limit": limit.to_string(), "sweeps": records }),
            || lines.join("\n"),
        );
        return Ok(if holds { 0 } else { 2 });
    }
    let x = args.mode.theta3.expect("clap enforces one mode");
    if x < 1 {
        return Err(CliError::Usage("--theta3 needs a positive integer".into()));
    }
    let report = check_theta3_lemma(&BigRational::from_integer(x.into()), &ctx)?;
    let failures: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
    emit(
        json,
        json!({
            "x_max": x.to_string(),
            "plateaus_checked": report.checked,
            "holds": report.holds(),
            "failures": failures,
            "min_margin": report.min_margin,
            "note": report.note,
        }),
        || {
            let mut out = format!(
                "theta_3(3x) > x on [11/3, {x}]: {} ({} plateaus checked)",
                if report.holds() { "holds" } else { "FAILS" },
                report.checked
            );
            for f in &failures {
                out.push_str(&format!("\n  {f}"));
            }
            if let Some(note) = &report.note {
                out.push_str(&format!("\n  note: {note}"));
            }
            out
        },
    );
    Ok(if report.holds() { 0 } else { 2 })
}

fn verify_all(json: bool, sequential: bool, precision_bits: u32) -> CliResult {
    let opts = VerifyOptions {
        exec: if sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        log: LogContext::new(precision_bits)?,
        ..VerifyOptions::default()
    };
    let reports = run_all(&opts);
    let all = reports.iter().all(|r| r.passed);
    emit(
        json,
        json!({
            "all_passed": all,
            "criteria": reports.iter().map(|r| json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": r.elapsed.as_secs_f64(),
                "budget_seconds": r.budget.as_secs(),
            })).collect::<Vec<_>>(),
        }),
        || {
            reports
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n")
        },
    );
    Ok(if all { 0 } else { 2 })
}

fn run(cli: Cli) -> CliResult {
    let json = cli.json;
    match cli.command {
        Command::Relation { n, p, k } => relation(json, n, p, k),
        Command::Euler { p, rmax } => euler(json, p, rmax),
        Command::Identities { p, l1, l2 } => identities(json, p, l1, l2),
        Command::Distinguish(args) => distinguish(json, &args, false),
        Command::DistinguishTpr(args) => distinguish(json, &args, true),
        Command::Fourier(args) => fourier(json, &args),
        Command::PrimeBounds(args) => prime_bounds(json, &args),
        Command::VerifyAll {
            sequential,
            precision_bits,
        } => verify_all(json, sequential, precision_bits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 3 } else { 1 })
        }
    }
}
