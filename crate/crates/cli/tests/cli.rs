//! End-to-end behaviour of the command-line front end: exit codes,
//! deterministic outputs, file shapes, config precedence.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_giantscope"))
}

fn run_ok(args: &[&str]) {
    let out = bin().args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "args {args:?}\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn help_exits_zero() {
    let out = bin().arg("--help").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("simulate"));
}

#[test]
fn unknown_subcommand_exits_two() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_parameters_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec!["exact", "--n", "9", "--p", "0.5"],
        vec!["exact", "--n", "3", "--p", "1.5"],
        vec!["rates", "--fn", "i_alpha", "--c", "-1", "--grid", "0:1:0.1"],
        vec!["rates", "--fn", "nosuch", "--c", "2", "--grid", "0:1:0.1"],
        vec!["rates", "--fn", "i_alpha", "--c", "2", "--grid", "0:2:0.1"],
        vec!["simulate", "--n", "0", "--c", "1"],
        vec!["simulate", "--n", "10", "--c", "1", "--seedless"],
        vec!["traj", "--fn", "excursion", "--s", "0.7", "--t", "0.2", "--w", "0"],
    ] {
        let out = bin().args(&args).arg("--out").arg(dir.path()).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn rates_outputs_are_byte_identical() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for dir in [&d1, &d2] {
        run_ok(&[
            "rates",
            "--fn",
            "i_alpha",
            "--c",
            "2",
            "--grid",
            "0:1:0.01",
            "--seedless",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
    }
    let a = std::fs::read(d1.path().join("rates_i_alpha.csv")).unwrap();
    let b = std::fs::read(d2.path().join("rates_i_alpha.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn simulate_writes_consistent_spectra() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "simulate",
        "--n",
        "6",
        "--c",
        "3",
        "--reps",
        "50",
        "--seed",
        "42",
        "--trace",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let spectrum = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    let summary = std::fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(spectrum.lines().any(|l| l == "replication,rank,size,excess"));
    assert!(summary.lines().any(|l| l == "replication,count,largest,largest_excess"));
    // sizes per replication sum to n
    let mut sums = std::collections::BTreeMap::new();
    for line in spectrum.lines().skip_while(|l| l.starts_with('#')).skip(1) {
        let f: Vec<u64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        *sums.entry(f[0]).or_insert(0u64) += f[2];
    }
    assert!(sums.values().all(|&s| s == 6));
    // trace starts at the origin row
    let trace = std::fs::read_to_string(dir.path().join("trace.csv")).unwrap();
    let first = trace.lines().find(|l| !l.starts_with('#') && !l.starts_with('i')).unwrap();
    assert_eq!(first, "0,0,0,0,0,0");
    // metadata block carries the full parameter echo
    assert!(spectrum.contains("# n=6"));
    assert!(spectrum.contains("# seed=42"));
    assert!(spectrum.contains("# tool=giantscope"));
}

#[test]
fn exact_json_matches_known_law() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "exact",
        "--n",
        "3",
        "--p",
        "0.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("exact.json")).unwrap())
            .unwrap();
    assert_eq!(doc["n"], 3);
    assert!((doc["total_mass"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    // P(count=1) = 1/2 at p = 1/2
    let p1: f64 = doc["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["count"] == 1)
        .map(|e| e["prob"].as_f64().unwrap())
        .sum();
    assert!((p1 - 0.5).abs() < 1e-12);
}

#[test]
fn config_file_supplies_defaults_but_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("defaults.cfg");
    std::fs::write(&cfg, "c = 5\ngrid = 0:1:0.5\n").unwrap();
    run_ok(&[
        "rates",
        "--fn",
        "i_beta",
        "--c",
        "2",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(dir.path().join("rates_i_beta.csv")).unwrap();
    assert!(text.contains("# c=2"), "flag must beat config:\n{text}");
    assert!(text.contains("# grid=0:1:0.5"), "config grid used:\n{text}");
    // unknown config keys are rejected before any work
    std::fs::write(&cfg, "zap = 1\n").unwrap();
    let out = bin()
        .args(["rates", "--fn", "i_beta", "--c", "2", "--grid", "0:1:0.5"])
        .arg("--config")
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn phase_command_checks_geometry_and_emits_figures() {
    let dir = tempfile::tempdir().unwrap();
    run_ok(&[
        "phase",
        "--c",
        "1.5,3",
        "--grid",
        "0:1:0.05",
        "--svg",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    for f in [
        "phase.json",
        "i_alpha_curves.csv",
        "fig_count_rate.svg",
        "fig_convexity_regions.svg",
    ] {
        assert!(Path::new(&dir.path().join(f)).exists(), "{f} missing");
    }
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("phase.json")).unwrap())
            .unwrap();
    let pts = doc["points"].as_array().unwrap();
    assert!(pts[0]["a_tilde"].is_null()); // c = 1.5 has no concavity window
    let a_tilde = pts[1]["a_tilde"].as_f64().unwrap();
    assert!(a_tilde < 2.0 / 3.0);
}

#[test]
fn infinite_rates_print_as_inf_literal() {
    let dir = tempfile::tempdir().unwrap();
    // i_joint with a giant of 0.8 becomes infeasible once a > 0.2
    run_ok(&[
        "rates",
        "--fn",
        "i_joint",
        "--c",
        "2",
        "--u",
        "0.8",
        "--grid",
        "0:1:0.1",
        "--seedless",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(dir.path().join("rates_i_joint.csv")).unwrap();
    assert!(text.lines().any(|l| l.ends_with(",inf")), "{text}");
}

#[test]
fn threads_env_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("GIANTSCOPE_THREADS", "1")
        .args([
            "simulate",
            "--n",
            "50",
            "--c",
            "1.2",
            "--reps",
            "100",
            "--seed",
            "9",
            "--out",
            dir.path().to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
}
