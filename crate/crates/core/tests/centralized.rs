mod common;

use mudiv_core::centralized::{
    best_per_band_rate, event_d, favorites, optimal_assignment_exhaustive, optimal_assignment_matching,
};
use mudiv_core::channel::{compute_sinr, draw_realization};
use mudiv_core::harness::{run_trials, Scheme};
use mudiv_core::rng::{stream_rng, Stream};
use mudiv_core::Assignment;
use rand::seq::index::sample;

#[test]
fn matching_agrees_with_enumeration_on_random_networks() {
    let mut rng = stream_rng(2024, Stream::Auxiliary(0));
    for inst in 0..500u64 {
        use rand::Rng;
        let bands = rng.random_range(1..=3);
        let users = rng.random_range(bands..=8);
        let k = rng.random_range(0..=4);
        let cfg = common::heterogeneous(users, bands, k, rng.random_range(0.0..20.0), inst);
        let t = compute_sinr(&cfg, &draw_realization(&cfg, inst)).unwrap();
        let a = optimal_assignment_matching(&t);
        let b = optimal_assignment_exhaustive(&t).unwrap();
        assert!(
            (a.sum_rate - b.sum_rate).abs() <= 1e-9 * b.sum_rate,
            "instance {inst}: {} vs {}",
            a.sum_rate,
            b.sum_rate
        );
        assert!(Assignment::new(a.pairs.clone(), &t).is_ok());
        assert_eq!(a.pairs.len(), bands);
    }
}

#[test]
fn optimum_beats_random_feasible_assignments() {
    let cfg = common::heterogeneous(20, 4, 2, 10.0, 6);
    let mut rng = stream_rng(6, Stream::Auxiliary(2));
    for trial in 0..20 {
        let t = compute_sinr(&cfg, &draw_realization(&cfg, trial)).unwrap();
        let best = optimal_assignment_matching(&t).sum_rate;
        for _ in 0..100 {
            let users = sample(&mut rng, 20, 4).into_vec();
            let a = Assignment::new(users.into_iter().enumerate().collect(), &t).unwrap();
            assert!(a.sum_rate <= best + 1e-12);
        }
    }
}

#[test]
fn event_d_gives_favorites() {
    let cfg = common::reference(30, 4, 4, 10);
    let mut seen = 0;
    for trial in 0..300 {
        let t = compute_sinr(&cfg, &draw_realization(&cfg, trial)).unwrap();
        let fav = favorites(&t);
        if event_d(&fav) {
            seen += 1;
            let a = optimal_assignment_matching(&t);
            assert_eq!(a.pairs, fav.into_iter().enumerate().collect::<Vec<_>>());
            assert!((a.sum_rate - best_per_band_rate(&t.sinr)).abs() <= 1e-12);
        }
    }
    assert!(seen > 200);
}

#[test]
fn event_d_frequency_grows_with_population() {
    let small = run_trials(&common::reference(10, 4, 4, 1), Scheme::Centralized, 4_000).unwrap();
    let large = run_trials(&common::reference(200, 4, 4, 1), Scheme::Centralized, 4_000).unwrap();
    // homogeneous: favorites are iid uniform, P(D) = Π(1 - k/N)
    let exact = |n: f64| (1..4).map(|k| 1.0 - k as f64 / n).product::<f64>();
    for (agg, n) in [(&small, 10.0), (&large, 200.0)] {
        let p = exact(n);
        let sigma = (p * (1.0 - p) / 4_000.0).sqrt();
        assert!((agg.event_d_frequency - p).abs() <= 4.0 * sigma, "{} vs {p}", agg.event_d_frequency);
    }
    assert!(large.event_d_frequency > small.event_d_frequency);
}

#[test]
fn sum_rate_sits_between_bound_rates() {
    let cfg = common::heterogeneous(100, 4, 4, 10.0, 3);
    let agg = run_trials(&cfg, Scheme::Centralized, 3_000).unwrap();
    assert!(agg.mean_sum_rate >= agg.mean_lower_bound_rate - 3.0 * agg.stderr_lower_bound_rate);
    assert!(agg.mean_sum_rate <= agg.mean_upper_bound_rate + 3.0 * agg.stderr_upper_bound_rate);
}
