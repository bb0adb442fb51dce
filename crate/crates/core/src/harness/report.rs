//! Report serialization: CSV summaries, JSON documents and flat binary
//! per-trial columns.

use super::sweep::ThresholdSweep;
use super::trials::{TrialAggregate, TrialRecord};
use crate::error::{Error, Result};
use serde::Serialize;
use std::fs;
use std::path::Path;

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

#[derive(Serialize)]
struct AggregateRow<'a> {
    scheme: &'a str,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    trials: usize,
    mean_sum_rate: f64,
    stderr: f64,
    mean_info_bits: f64,
    event_d_freq: f64,
}

/// One row per aggregate:
/// `scheme,N,M,trials,mean_sum_rate,stderr,mean_info_bits,event_d_freq`.
pub fn aggregates_csv<'a>(aggregates: impl IntoIterator<Item = &'a TrialAggregate>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for a in aggregates {
        let scheme = a.scheme.to_string();
        w.serialize(AggregateRow {
            scheme: &scheme,
            n: a.num_secondary,
            m: a.num_bands,
            trials: a.trials,
            mean_sum_rate: a.mean_sum_rate,
            stderr: a.stderr_sum_rate,
            mean_info_bits: a.mean_info_bits,
            event_d_freq: a.event_d_frequency,
        })
        .map_err(|e| Error::Contract(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Contract(e.to_string()))?;
    let mut text = String::from_utf8(bytes).expect("csv output is utf-8");
    if text.is_empty() {
        text = "scheme,N,M,trials,mean_sum_rate,stderr,mean_info_bits,event_d_freq\n".into();
    }
    Ok(text)
}

pub fn write_aggregates_csv<'a>(
    aggregates: impl IntoIterator<Item = &'a TrialAggregate>,
    path: &Path,
) -> Result<()> {
    fs::write(path, aggregates_csv(aggregates)?).map_err(|e| io_err(path, e))
}

/// Threshold grid as `N,rho_db,K,lambda`.
pub fn threshold_csv(sweep: &ThresholdSweep) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        #[serde(rename = "N")]
        n: usize,
        rho_db: f64,
        #[serde(rename = "K")]
        k: usize,
        lambda: f64,
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &sweep.rows {
        w.serialize(Row { n: r.n, rho_db: r.rho_db, k: r.k, lambda: r.lambda })
            .map_err(|e| Error::Contract(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Contract(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_threshold_csv(sweep: &ThresholdSweep, path: &Path) -> Result<()> {
    fs::write(path, threshold_csv(sweep)?).map_err(|e| io_err(path, e))
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::Contract(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| io_err(path, e))
}

const RECORD_MAGIC: &[u8; 8] = b"MUDIVREC";
const RECORD_COLUMNS: u64 = 5;

/// Persists the scalar fields of each record as little-endian `f64` columns:
/// `sum_rate`, `info_bits`, `event_d` (0/1), `lower_bound_rate`,
/// `upper_bound_rate`, after an 8-byte magic and two `u64` (rows, columns).
pub fn write_records(records: &[TrialRecord], path: &Path) -> Result<()> {
    let rows = records.len();
    let mut buf = Vec::with_capacity(24 + rows * RECORD_COLUMNS as usize * 8);
    buf.extend_from_slice(RECORD_MAGIC);
    buf.extend_from_slice(&(rows as u64).to_le_bytes());
    buf.extend_from_slice(&RECORD_COLUMNS.to_le_bytes());
    let columns: [fn(&TrialRecord) -> f64; 5] = [
        |r| r.sum_rate,
        |r| r.info_bits,
        |r| if r.event_d { 1.0 } else { 0.0 },
        |r| r.lower_bound_rate,
        |r| r.upper_bound_rate,
    ];
    for col in columns {
        for r in records {
            buf.extend_from_slice(&col(r).to_le_bytes());
        }
    }
    fs::write(path, buf).map_err(|e| io_err(path, e))
}

/// Reads columns written by [`write_records`]. Per-user and per-band lists
/// are not persisted and come back empty.
pub fn read_records(path: &Path) -> Result<Vec<TrialRecord>> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    let bad = |why: &str| io_err(path, format!("not a record file: {why}"));
    if bytes.len() < 24 || &bytes[..8] != RECORD_MAGIC {
        return Err(bad("missing header"));
    }
    let word = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"));
    let (rows, cols) = (word(8) as usize, word(16));
    if cols != RECORD_COLUMNS || bytes.len() != 24 + rows * cols as usize * 8 {
        return Err(bad("size mismatch"));
    }
    let value = |col: usize, row: usize| f64::from_bits(word(24 + (col * rows + row) * 8));
    Ok((0..rows)
        .map(|i| TrialRecord {
            sum_rate: value(0, i),
            info_bits: value(1, i),
            event_d: value(2, i) != 0.0,
            lower_bound_rate: value(3, i),
            upper_bound_rate: value(4, i),
            selected_users: Vec::new(),
            idle_bands: Vec::new(),
        })
        .collect())
}
