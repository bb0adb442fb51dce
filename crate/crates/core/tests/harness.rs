mod common;

use mudiv_core::analytics::expected_log_max;
use mudiv_core::centralized::optimal_assignment_matching;
use mudiv_core::channel::{compute_sinr, draw_realization};
use mudiv_core::harness::{
    aggregates_csv, read_records, run_trials, run_trials_with, scaling_sweep, threshold_csv, threshold_sweep,
    validate, write_json, write_records, RunOptions, Scheme, TrialAggregate,
};
use mudiv_core::{Error, NetworkConfig};

#[test]
fn one_trial_is_one_realization() {
    let cfg = common::heterogeneous(12, 3, 2, 10.0, 4);
    let agg = run_trials(&cfg, Scheme::Centralized, 1).unwrap();
    let t = compute_sinr(&cfg, &draw_realization(&cfg, 0)).unwrap();
    assert_eq!(agg.mean_sum_rate, optimal_assignment_matching(&t).sum_rate);
    assert_eq!(agg.stderr_sum_rate, 0.0);
    assert_eq!(agg.trials, 1);
}

#[test]
fn centralized_mean_not_below_distributed() {
    for m in 1..=4 {
        let cfg = common::reference(40, m, 4, 7);
        let c = run_trials(&cfg, Scheme::Centralized, 500).unwrap();
        let d = run_trials(&cfg, Scheme::Distributed, 500).unwrap();
        assert!(c.mean_sum_rate >= d.mean_sum_rate, "M={m}");
    }
}

#[test]
fn single_band_noise_limited_rate_matches_closed_form() {
    let cfg = common::reference(100, 1, 0, 19);
    let agg = run_trials(&cfg, Scheme::Centralized, 10_000).unwrap();
    let expected = expected_log_max(10.0, 100).unwrap();
    assert!(
        (agg.mean_sum_rate - expected).abs() <= 3.0 * agg.stderr_sum_rate,
        "{} ± {} vs {expected}",
        agg.mean_sum_rate,
        agg.stderr_sum_rate
    );
}

#[test]
fn results_do_not_depend_on_worker_count() {
    let cfg = common::heterogeneous(30, 3, 2, 10.0, 5);
    for scheme in [Scheme::Centralized, Scheme::Distributed] {
        let run = |w| {
            run_trials_with(&cfg, scheme, 700, &RunOptions { workers: Some(w), ..Default::default() }).unwrap()
        };
        let (a, b) = (run(1), run(4));
        assert_eq!(a.mean_sum_rate.to_bits(), b.mean_sum_rate.to_bits());
        assert_eq!(a, b);
    }
}

#[test]
fn records_round_trip_through_disk() {
    let cfg = common::heterogeneous(20, 2, 3, 10.0, 8);
    let agg = run_trials(&cfg, Scheme::Distributed, 300).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trials.bin");
    write_records(&agg.records, &path).unwrap();
    let back = read_records(&path).unwrap();
    assert_eq!(back.len(), 300);
    let rebuilt = TrialAggregate::from_records(Scheme::Distributed, 20, 2, back);
    for (x, y) in [
        (agg.mean_sum_rate, rebuilt.mean_sum_rate),
        (agg.stderr_sum_rate, rebuilt.stderr_sum_rate),
        (agg.mean_info_bits, rebuilt.mean_info_bits),
        (agg.event_d_frequency, rebuilt.event_d_frequency),
        (agg.mean_lower_bound_rate, rebuilt.mean_lower_bound_rate),
        (agg.mean_upper_bound_rate, rebuilt.mean_upper_bound_rate),
    ] {
        assert!((x - y).abs() <= 1e-12);
    }
    assert!(read_records(&dir.path().join("missing.bin")).is_err());
}

#[test]
fn csv_and_json_layout() {
    let cfg = common::reference(10, 2, 1, 1);
    let agg = run_trials(&cfg, Scheme::Centralized, 50).unwrap();
    let csv = aggregates_csv([&agg]).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "scheme,N,M,trials,mean_sum_rate,stderr,mean_info_bits,event_d_freq");
    assert!(lines.next().unwrap().starts_with("centralized,10,2,50,"));
    assert_eq!(aggregates_csv([]).unwrap().lines().count(), 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("agg.json");
    write_json(&agg, &path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in ["scheme", "num_secondary", "num_bands", "trials", "mean_sum_rate", "per_user_candidacy"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["scheme"], "centralized");
    assert!(v.get("records").is_none());
}

#[test]
fn scaling_sweep_shapes_and_seeds() {
    let cfg = common::reference(10, 2, 2, 3);
    let opts = RunOptions::default();
    let rep = scaling_sweep(&cfg, &[10, 50, 100], 200, &opts).unwrap();
    assert_eq!(rep.centralized.len(), 3);
    assert_eq!(rep.predicted.len(), 3);
    assert!(rep.fit.is_some());
    // a point does not depend on its neighbours in the sweep
    let alone = scaling_sweep(&cfg, &[50], 200, &opts).unwrap();
    assert_eq!(alone.centralized[0], rep.centralized[1]);
    assert!(scaling_sweep(&cfg, &[50, 10], 10, &opts).is_err());
    assert!(scaling_sweep(&cfg, &[1, 10], 10, &opts).is_err());
}

#[test]
fn threshold_sweep_monotone_flags() {
    let cfg = common::reference(10, 1, 4, 0);
    let sweep = threshold_sweep(&cfg, &[10, 100, 1000], &[0.0, 10.0, 20.0], &[1, 2, 3, 4]).unwrap();
    assert_eq!(sweep.rows.len(), 36);
    assert!(sweep.increasing_in_n && sweep.increasing_in_rho && sweep.decreasing_in_k);
    let csv = threshold_csv(&sweep).unwrap();
    assert!(csv.starts_with("N,rho_db,K,lambda\n"));
    assert_eq!(csv.lines().count(), 37);
    assert!(sweep.lambda(100, 10.0, 2).is_some());
}

#[test]
fn validation_passes_on_sound_configs() {
    let report = validate(&common::reference(20, 3, 2, 4), 10_000).unwrap();
    assert!(report.passed, "{report:#?}");
    assert!(report.check("cdf_bound_identity").is_some());
    let report = validate(&common::heterogeneous(20, 3, 2, 10.0, 4), 10_000).unwrap();
    assert!(report.passed, "{report:#?}");
    assert!(report.check("cdf_dominance").is_some());
    assert!(validate(&common::reference(20, 3, 2, 4), 100).is_err());
}

#[test]
fn budget_and_domain_errors() {
    let cfg = NetworkConfig::homogeneous(1_000, 4, 4, 10.0, 1.0, 0).unwrap();
    let opts = RunOptions { workers: None, work_budget: 1_000_000 };
    assert!(matches!(
        run_trials_with(&cfg, Scheme::Centralized, 1_000, &opts),
        Err(Error::Budget { requested: 4_000_000, budget: 1_000_000 })
    ));
    assert!(matches!(run_trials(&cfg, Scheme::Centralized, 0), Err(Error::Domain(_))));
    let single = NetworkConfig::homogeneous(1, 1, 0, 10.0, 1.0, 0).unwrap();
    assert!(run_trials(&single, Scheme::Distributed, 5).is_err());
    assert!(run_trials(&single, Scheme::Centralized, 5).is_ok());
}
