mod common;

use mudiv_core::channel::{compute_sinr, draw_realization, sample_link_sinr};
use mudiv_core::rng::{stream_rng, Stream};
use mudiv_core::stats::ks_distance;
use proptest::prelude::*;

#[test]
fn squared_gains_are_unit_exponential() {
    let cfg = common::reference(25_000, 4, 4, 3);
    let r = draw_realization(&cfg, 0);
    let mut g = r.g_sq.as_slice().to_vec();
    assert_eq!(g.len(), 100_000);
    assert!(g.iter().all(|&v| v >= 0.0));
    let mean = g.iter().sum::<f64>() / g.len() as f64;
    assert!((0.98..=1.02).contains(&mean), "mean {mean}");
    let d = ks_distance(&mut g, |x| 1.0 - (-x).exp());
    assert!(d < 0.01, "KS {d}");

    let h: Vec<f64> = r.h_sq.clone();
    let h_mean = h.iter().sum::<f64>() / h.len() as f64;
    assert!((0.98..=1.02).contains(&h_mean), "interference mean {h_mean}");
}

#[test]
fn distinct_trials_are_uncorrelated() {
    let cfg = common::reference(25_000, 4, 1, 8);
    let a = draw_realization(&cfg, 0);
    let b = draw_realization(&cfg, 1);
    let (x, y) = (a.g_sq.as_slice(), b.g_sq.as_slice());
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let cov: f64 = x.iter().zip(y).map(|(p, q)| (p - mx) * (q - my)).sum();
    let vx: f64 = x.iter().map(|p| (p - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|q| (q - my).powi(2)).sum();
    let corr = cov / (vx * vy).sqrt();
    assert!(corr.abs() <= 0.02, "correlation {corr}");
}

#[test]
fn reproducible_bytes() {
    let cfg = common::heterogeneous(40, 3, 2, 5.0, 77);
    let a = compute_sinr(&cfg, &draw_realization(&cfg, 12)).unwrap();
    let b = compute_sinr(&cfg, &draw_realization(&cfg, 12)).unwrap();
    let bits = |t: &mudiv_core::SinrTable| t.sinr.as_slice().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
}

#[test]
fn direct_form_agrees_with_normalized_form() {
    let cfg = common::heterogeneous(30, 3, 4, 7.0, 5);
    let real = draw_realization(&cfg, 3);
    let t = compute_sinr(&cfg, &real).unwrap();
    for m in 0..3 {
        for n in 0..30 {
            let interference: f64 = (0..cfg.primary_count(m))
                .map(|j| cfg.gamma(n, j) * real.h_sq(m, n, j))
                .sum();
            let direct = cfg.power_secondary() * cfg.eta(n) * real.g_sq[(m, n)]
                / (cfg.noise_power() + cfg.power_primary() * interference);
            assert!((t.sinr[(m, n)] - direct).abs() <= 1e-12 * direct.max(1e-300));
        }
    }
}

#[test]
fn interleaving_holds_on_heterogeneous_networks() {
    let cfg = common::heterogeneous(50, 4, 4, 10.0, 21);
    for trial in 0..2_000 {
        let t = compute_sinr(&cfg, &draw_realization(&cfg, trial)).unwrap();
        for m in 0..4 {
            let sorted = |row: &[f64]| {
                let mut v = row.to_vec();
                v.sort_by(|a, b| b.total_cmp(a));
                v
            };
            let (l, s, u) = (sorted(t.s_lower.row(m)), sorted(t.sinr.row(m)), sorted(t.s_upper.row(m)));
            for i in 0..50 {
                assert!(l[i] <= s[i] * (1.0 + 1e-9) && s[i] <= u[i] * (1.0 + 1e-9));
            }
        }
    }
}

#[test]
fn link_sampler_matches_table_distribution() {
    // same law whether drawn alone or as part of a full realization
    let cfg = common::heterogeneous(8, 2, 3, 10.0, 2);
    let mut rng = stream_rng(1, Stream::Auxiliary(0));
    let mut alone: Vec<f64> = (0..20_000).map(|_| sample_link_sinr(&cfg, 1, 5, &mut rng)).collect();
    let mut pooled: Vec<f64> = (0..20_000)
        .map(|t| compute_sinr(&cfg, &draw_realization(&cfg, t)).unwrap().sinr[(1, 5)])
        .collect();
    alone.sort_by(f64::total_cmp);
    let d = ks_distance(&mut pooled, |x| alone.partition_point(|&v| v <= x) as f64 / alone.len() as f64);
    // two-sample KS critical value at 0.1% for 2e4 vs 2e4
    assert!(d < 1.95 * (2.0 / 20_000f64).sqrt(), "two-sample KS {d}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bounds_sandwich_every_entry(seed in any::<u64>(), trial in 0u64..1000, k in 0usize..5) {
        let cfg = common::heterogeneous(12, 3, k, 10.0, seed);
        let t = compute_sinr(&cfg, &draw_realization(&cfg, trial)).unwrap();
        for (i, &s) in t.sinr.as_slice().iter().enumerate() {
            let (l, u) = (t.s_lower.as_slice()[i], t.s_upper.as_slice()[i]);
            prop_assert!(s > 0.0);
            prop_assert!(l <= s * (1.0 + 1e-9));
            prop_assert!(s <= u * (1.0 + 1e-9));
        }
    }
}
