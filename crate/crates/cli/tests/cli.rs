//! End-to-end runs of the binary: output contents and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_siegel-hecke"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_pair(cmd: &str, f: &str, g: &str, extra: &[&str]) -> Output {
    bin()
        .arg(cmd)
        .arg(fixture(f))
        .arg(fixture(g))
        .args(extra)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn relation_prints_coefficients() {
    let o = run(&["relation", "--n", "2", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("c_1 = 2") && s.contains("c_2 = 14"), "{s}");
    assert!(
        s.contains("T(p^2) = T(p)^2 - 2*T_1(p^2) - 14*T_2(p^2)"),
        "{s}"
    );
}

#[test]
fn relation_json_uses_decimal_strings() {
    let o = run(&["--json", "relation", "--n", "6", "--p", "5", "--k", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // c_6 at p = 5 is (6)(26)(126)(626)(3126)(15626) - 1.
    assert_eq!(v["c"][5], "601044005854655");
    assert_eq!(v["c"].as_array().unwrap().len(), 6);
}

#[test]
fn identities_vanish() {
    let o = run(&["identities", "--p", "2", "--l1", "10", "--l2", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("residual 0").count(), 4);
}

#[test]
fn euler_defaults_to_twelve_entries() {
    let o = run(&["euler", "--p", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 13);
    assert!(
        s.contains("T(p^3) = -1*T(p)^3 + 2*T(p)*T(p^2) + 36*T(p)*T_2(p^2)"),
        "{s}"
    );
}

#[test]
fn profile_fixtures_follow_the_exit_contract() {
    let o = run_pair(
        "distinguish",
        "profile_inconsistent_f.txt",
        "profile_inconsistent_g.txt",
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("verdict=inconsistent"));
    let o = run_pair(
        "distinguish",
        "profile_distinguished_f.txt",
        "profile_distinguished_g.txt",
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("verdict=distinguished witness=T(p^2)"),
        "{}",
        stdout(&o)
    );
    let o = run_pair(
        "distinguish-tpr",
        "tpr_distinguished_f.txt",
        "tpr_distinguished_g.txt",
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).starts_with("verdict=distinguished witness=T(p^3)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn fourier_fixtures_follow_the_exit_contract() {
    for (name, code, prefix) in [
        ("distinguished", 0, "verdict=distinguished witness=c(p^1I)"),
        ("inconsistent", 2, "verdict=inconsistent"),
        ("hypothesis", 0, "verdict=not-applicable"),
    ] {
        let o = run_pair(
            "fourier",
            &format!("fourier_{name}_f.txt"),
            &format!("fourier_{name}_g.txt"),
            &[],
        );
        assert_eq!(o.status.code(), Some(code), "{name}");
        assert!(stdout(&o).starts_with(prefix), "{name}: {}", stdout(&o));
    }
}

#[test]
fn level_divisible_by_p_is_rejected() {
    let o = run_pair(
        "fourier",
        "fourier_distinguished_f.txt",
        "fourier_distinguished_g.txt",
        &["--level", "9"],
    );
    assert_eq!(o.status.code(), Some(1));
    let o = run_pair(
        "fourier",
        "fourier_distinguished_f.txt",
        "fourier_distinguished_g.txt",
        &["--level", "10"],
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_and_parse_errors_exit_one() {
    assert_eq!(run(&["relation", "--n", "2"]).status.code(), Some(1));
    assert_eq!(
        run(&["relation", "--n", "2", "--p", "6"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["prime-bounds"]).status.code(), Some(1));
    let bad = std::env::temp_dir().join(format!("siegel-hecke-bad-{}.txt", std::process::id()));
    std::fs::write(&bad, "degree 2\nprime 3\nop Tp x\n").unwrap();
    let o = bin()
        .arg("distinguish")
        .arg(&bad)
        .arg(&bad)
        .output()
        .unwrap();
    std::fs::remove_file(&bad).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn prime_bounds_modes() {
    let o = run(&["prime-bounds", "--N", "30030"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("N=30030: p=17") && s.contains("N=30030: p=19"),
        "{s}"
    );
    assert_eq!(
        run(&["prime-bounds", "--sweep", "5000"]).status.code(),
        Some(0)
    );
    // The plateau 11 <= 3x < 19 contradicts theta_3(3x) > x.
    let o = run(&["prime-bounds", "--theta3", "50", "--precision-bits", "128"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("theta_3(11)"));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "euler", "--p", "5", "--rmax", "6"]);
    let b = run(&["--json", "euler", "--p", "5", "--rmax", "6"]);
    assert_eq!(a.stdout, b.stdout);
}
