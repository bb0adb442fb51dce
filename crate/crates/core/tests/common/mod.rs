#![allow(dead_code)]

use mudiv_core::{NetworkConfig, NetworkParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Network with per-user path loss in [0.5, 2] and interference factors in
/// [0.2, 3], drawn from `seed`.
pub fn heterogeneous(users: usize, bands: usize, primaries: usize, snr_db: f64, seed: u64) -> NetworkConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let ps = 10f64.powf(snr_db / 10.0);
    NetworkConfig::new(NetworkParams {
        num_secondary: users,
        num_bands: bands,
        primary_count: vec![primaries; bands],
        power_secondary: ps,
        power_primary: ps,
        noise_power: 1.0,
        eta: (0..users).map(|_| rng.random_range(0.5..2.0)).collect(),
        gamma: (0..users)
            .map(|_| (0..primaries).map(|_| rng.random_range(0.2..3.0)).collect())
            .collect(),
        seed,
    })
    .unwrap()
}

/// Homogeneous reference network: η = γ = 1, ρ = 10 dB, P_p = P_s.
pub fn reference(users: usize, bands: usize, primaries: usize, seed: u64) -> NetworkConfig {
    NetworkConfig::homogeneous(users, bands, primaries, 10.0, 1.0, seed).unwrap()
}
