use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn mudiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mudiv")).args(args).output().unwrap()
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("net.cfg");
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

const SMALL: &str = "N = 20\nM = 2\nK = 2\nsnr_db = 10\npp_over_ps = 1\neta = 1\ngamma = 1\nseed = 3\n\
n_values = 10, 20, 50, 100\ntrials = 200\nrho_db_values = 0, 10\nk_values = 1, 4\nsamples = 10000\n";

#[test]
fn simulate_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().join("out");
    let o = mudiv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("simulate.csv")).unwrap();
    let lines: Vec<_> = csv.lines().collect();
    assert_eq!(lines[0], "scheme,N,M,trials,mean_sum_rate,stderr,mean_info_bits,event_d_freq");
    assert!(lines[1].starts_with("centralized,20,2,200,"));
    assert!(lines[2].starts_with("distributed,20,2,200,"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("simulate.json")).unwrap()).unwrap();
    assert_eq!(json["network"]["num_secondary"], 20);
    assert_eq!(json["distributed"]["trials"], 200);
    let records = mudiv_core::harness::read_records(&out.join("simulate_distributed.bin")).unwrap();
    assert_eq!(records.len(), 200);
}

#[test]
fn scaling_has_one_row_per_scheme_and_population() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let out = dir.path().to_str().unwrap();
    let o = mudiv(&["scaling", "--config", &cfg, "--out", out, "--trials", "100"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("scaling.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 4);
    assert!(csv.lines().nth(4).unwrap().starts_with("centralized,100,2,100,"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("scaling.json")).unwrap()).unwrap();
    for key in ["n_values", "centralized", "distributed", "predicted", "fit"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for d in [&a, &b] {
        assert!(mudiv(&["simulate", "--config", &cfg, "--out", d.to_str().unwrap()]).status.success());
    }
    for f in ["simulate.csv", "simulate.json", "simulate_centralized.bin"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let c = dir.path().join("c");
    assert!(mudiv(&["simulate", "--config", &cfg, "--out", c.to_str().unwrap(), "--seed", "4"]).status.success());
    assert_ne!(fs::read(a.join("simulate.csv")).unwrap(), fs::read(c.join("simulate.csv")).unwrap());
}

#[test]
fn thresholds_table() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let o = mudiv(&["thresholds", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("thresholds.csv")).unwrap();
    assert!(csv.starts_with("N,rho_db,K,lambda\n"));
    assert_eq!(csv.lines().count(), 1 + 4 * 2 * 2);
}

#[test]
fn validate_passes_on_homogeneous_network() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let o = mudiv(&["validate", "--config", &cfg, "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let csv = fs::read_to_string(dir.path().join("validate.csv")).unwrap();
    assert!(csv.contains("cdf_bound_identity,true"));
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = mudiv(&["frobnicate"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let bad = write_config(dir.path(), "N = 4\nM = 5\nK = 1\nsnr_db = 10\npp_over_ps = 1\n");
    let o = mudiv(&["simulate", "--config", &bad, "--out", dir.path().to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("`M`"));

    let o = mudiv(&["simulate", "--config", "/nonexistent/net.cfg"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("/nonexistent/net.cfg"));

    // a file where the output directory should be
    let cfg = write_config(dir.path(), SMALL);
    let blocker = dir.path().join("blocker");
    fs::write(&blocker, "").unwrap();
    let o = mudiv(&["simulate", "--config", &cfg, "--out", blocker.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("blocker"));
}

#[test]
fn validation_below_minimum_samples_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL);
    let o = mudiv(&["validate", "--config", &cfg, "--out", dir.path().to_str().unwrap(), "--trials", "50"]);
    assert_eq!(o.status.code(), Some(2));
}
