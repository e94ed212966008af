use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rectified-lorentz"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn ideal_profile_reaches_both_limits() {
    let out = run(&[
        "force-profile", "--model", "ideal", "--zmin", "0.01", "--zmax", "50", "--points", "60", "--log", "--theta", "1.25",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["model", "theta", "zeta", "f_reduced", "f_norm", "err_estimate", "converged"]);
    assert_eq!(rows.len(), 61);
    let first: f64 = rows[1][4].parse().unwrap();
    let last: f64 = rows[60][4].parse().unwrap();
    assert!((first - 0.125).abs() < 0.00125);
    assert!((last - 0.25).abs() < 0.01);
    // Nine significant digits in scientific notation.
    assert_eq!(rows[1][2], "1.00000000e-2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["force-profile", "--points", "0"]).status.code(), Some(2));
    assert_eq!(run(&["force-profile", "--model", "copper"]).status.code(), Some(2));
    assert_eq!(run(&["estimates"]).status.code(), Some(2));
    assert_eq!(run(&["run"]).status.code(), Some(2));
    assert_eq!(run(&["force-profile", "--rel-tol", "-1"]).status.code(), Some(2));
}

#[test]
fn selftest_detects_flipped_branch() {
    assert_eq!(run(&["selftest"]).status.code(), Some(0));
    assert_eq!(run(&["selftest", "--flip-branch"]).status.code(), Some(1));
    assert_eq!(run(&["selftest", "--rel-tol", "1e-13"]).status.code(), Some(0));
}

#[test]
fn strict_fails_on_bad_points() {
    let args = ["force-profile", "--model", "drude", "--zmin", "0.01", "--zmax", "0.02", "--points", "2"];
    let lax = run(&args);
    assert_eq!(lax.status.code(), Some(0));
    assert!(csv_rows(&lax)[1][3] == "NaN");
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(run(&strict).status.code(), Some(1));
}

#[test]
fn json_carries_config_and_rows() {
    let out = run(&["force-profile", "--model", "ideal", "--points", "3", "--format", "json", "--theta", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["models"][0], "ideal");
    assert_eq!(v["config"]["theta"][0], 2.0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!(v["rows"][0]["f_norm"].is_number());
}

#[test]
fn config_file_with_flag_override_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        r#"{"command": "force-profile", "models": ["drude"], "theta": [0.6, 1.25],
            "zeta_grid": {"min": 0.5, "max": 2.0, "count": 3, "spacing": "log"}}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let rel = ["--rel-tol", "1e-6"];
    let mut one = vec!["run", "--config", cfg, "--jobs", "1", "--out", a.to_str().unwrap()];
    one.extend(rel);
    let mut four = vec!["run", "--config", cfg, "--jobs", "4", "--out", b.to_str().unwrap()];
    four.extend(rel);
    assert_eq!(run(&one).status.code(), Some(0));
    assert_eq!(run(&four).status.code(), Some(0));
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    assert_eq!(String::from_utf8(a).unwrap().lines().count(), 7);

    let over = run(&["run", "--config", cfg, "--model", "ideal", "--rel-tol", "1e-6"]);
    assert!(csv_rows(&over)[1][0] == "ideal");
}

#[test]
fn spectral_maps_and_overlays() {
    let out = run(&[
        "spectral-map", "--map", "thermal", "--part", "full,imag", "--zeta", "1.5", "--xmin", "0.1", "--xmax", "10",
        "--pmin", "1", "--pmax", "1000",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows[0][..7], ["map", "part", "zeta", "theta", "x", "p", "value"]);
    assert_eq!(rows.len(), 1 + 2 * 60 * 60);
    let flips = (1..=3600)
        .filter(|&i| {
            let a: f64 = rows[i][6].parse().unwrap();
            let b: f64 = rows[i + 3600][6].parse().unwrap();
            a * b < 0.0
        })
        .count();
    assert!(flips > 0);

    let q = run(&["spectral-map", "--map", "quantum", "--zeta", "0.3,3", "--xmin", "1", "--xmax", "10"]);
    assert_eq!(q.status.code(), Some(0));
    assert_eq!(csv_rows(&q).len(), 1 + 2 * 60 * 60);
}

#[test]
fn prefactor_and_estimates_tables() {
    let out = run(&["prefactor", "--theta", "0.5,2"]);
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["theta", "c_closed_norm", "c_numeric_norm", "f_norm_at_zeta0.2", "converged"]);
    assert_eq!(rows.len(), 3);
    let (c, n): (f64, f64) = (rows[1][1].parse().unwrap(), rows[1][2].parse().unwrap());
    assert!(((c - n) / n).abs() < 1e-6);

    let est = run(&["estimates", "--material", "gold", "--kelvin", "300"]);
    assert_eq!(est.status.code(), Some(0));
    let text = String::from_utf8_lossy(&est.stdout);
    assert!(text.contains("coupling_fraction,factored,9.17"));
    assert!(text.contains("e/um^2"));
}

#[test]
fn figure_configs_load() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for name in ["fig1.json", "fig2.json", "fig2c.json", "fig3.json", "fig4.json"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let cfg: rectified_lorentz::cli::RunConfig = serde_json::from_str(&text).unwrap();
        assert!(cfg.command.is_some(), "{name}");
    }
}
