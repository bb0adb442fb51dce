//! Distributed threshold-based allocation.
//!
//! Each user divides its SINR on every band by its own threshold, picks the
//! band with the largest normalized SINR, and becomes a candidate for that
//! band if the normalized value is at least one. Candidates of a band contend
//! with random backoff timers; the earliest timer takes the band. A band with
//! no candidates stays idle for the trial.

use crate::analytics::ThresholdTable;
use crate::centralized::Assignment;
use crate::channel::SinrTable;
use crate::error::{Error, Result};
use rand::Rng;
use serde::Serialize;

/// Candidate sets `H_m` and each user's claimed band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CandidateSets {
    /// Users contending for each band, ascending.
    pub sets: Vec<Vec<usize>>,
    /// Band claimed by each user, if it passed its threshold.
    pub claims: Vec<Option<usize>>,
}

impl CandidateSets {
    pub fn num_claims(&self) -> usize {
        self.claims.iter().filter(|c| c.is_some()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllocationOutcome {
    /// One pair per non-idle band.
    pub assignment: Assignment,
    pub candidate_sets: CandidateSets,
    /// Receiver-to-transmitter signaling bits spent this trial.
    pub info_bits: f64,
    pub idle_bands: Vec<usize>,
}

fn check_dims(table: &SinrTable, thresholds: &ThresholdTable) {
    assert_eq!(
        (table.num_bands(), table.num_users()),
        (thresholds.lambda.rows(), thresholds.lambda.cols()),
        "threshold table does not match the SINR table"
    );
}

/// Band user `n` would contend for, if any: the argmax of `sinr/λ` over
/// bands (lowest band on ties), provided that ratio is at least one.
pub fn claim_channel(n: usize, table: &SinrTable, thresholds: &ThresholdTable) -> Option<usize> {
    check_dims(table, thresholds);
    let mut best = 0;
    let mut best_ratio = f64::NEG_INFINITY;
    for m in 0..table.num_bands() {
        let ratio = table.sinr[(m, n)] / thresholds.get(m, n);
        if ratio > best_ratio {
            best = m;
            best_ratio = ratio;
        }
    }
    (table.sinr[(best, n)] >= thresholds.get(best, n)).then_some(best)
}

pub fn build_candidate_sets(table: &SinrTable, thresholds: &ThresholdTable) -> CandidateSets {
    let claims: Vec<_> = (0..table.num_users())
        .map(|n| claim_channel(n, table, thresholds))
        .collect();
    let mut sets = vec![Vec::new(); table.num_bands()];
    for (n, claim) in claims.iter().enumerate() {
        if let Some(m) = *claim {
            sets[m].push(n);
        }
    }
    CandidateSets { sets, claims }
}

/// Backoff contention: every candidate draws a Uniform(0,1) timer and the
/// smallest timer wins, which makes the winner uniform over `candidates`.
pub fn resolve_contention<R: Rng + ?Sized>(candidates: &[usize], rng: &mut R) -> Result<usize> {
    let mut winner = None;
    let mut earliest = f64::INFINITY;
    for &n in candidates {
        let timer: f64 = rng.random();
        if timer < earliest {
            earliest = timer;
            winner = Some(n);
        }
    }
    winner.ok_or_else(|| Error::Contract("contention over an empty candidate set".into()))
}

/// Runs the full distributed scheme on one realization.
///
/// # Panics
///
/// If the threshold table and SINR table dimensions differ.
pub fn allocate_distributed<R: Rng + ?Sized>(
    table: &SinrTable,
    thresholds: &ThresholdTable,
    rng: &mut R,
) -> AllocationOutcome {
    let candidate_sets = build_candidate_sets(table, thresholds);
    let mut pairs = Vec::with_capacity(table.num_bands());
    let mut idle_bands = Vec::new();
    for (m, set) in candidate_sets.sets.iter().enumerate() {
        match resolve_contention(set, rng) {
            Ok(n) => pairs.push((m, n)),
            Err(_) => idle_bands.push(m),
        }
    }
    let info_bits = candidate_sets.num_claims() as f64 * (table.num_bands() as f64).log2();
    AllocationOutcome {
        assignment: Assignment::from_sorted(pairs, table),
        candidate_sets,
        info_bits,
        idle_bands,
    }
}

/// Probability that a given user claims some band: `1 - (1 - 1/N)^M`.
pub fn candidacy_probability(population: u64, bands: u64) -> f64 {
    -(bands as f64 * (-1.0 / population as f64).ln_1p()).exp_m1()
}
