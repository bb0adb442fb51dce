//! Centralized optimum: every band to a distinct user, maximizing the sum of
//! `log2(1 + SINR)`.

use crate::channel::SinrTable;
use crate::error::{Error, Result};
use crate::matrix::BandMatrix;
use serde::Serialize;

/// Largest population the exhaustive search will enumerate.
pub const EXHAUSTIVE_MAX_USERS: usize = 12;
/// Largest band count the exhaustive search will enumerate.
pub const EXHAUSTIVE_MAX_BANDS: usize = 4;

/// A set of `(band, user)` pairs using each band and each user at most once.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Assignment {
    /// Sorted by band.
    pub pairs: Vec<(usize, usize)>,
    /// Σ log2(1 + sinr) over the pairs, bits/s/Hz.
    pub sum_rate: f64,
}

impl Assignment {
    /// Validates disjointness and computes the sum rate from `table`.
    pub fn new(mut pairs: Vec<(usize, usize)>, table: &SinrTable) -> Result<Self> {
        pairs.sort_unstable();
        let mut band_used = vec![false; table.num_bands()];
        let mut user_used = vec![false; table.num_users()];
        for &(m, n) in &pairs {
            if m >= band_used.len() || n >= user_used.len() {
                return Err(Error::Contract(format!("pair ({m}, {n}) outside the table")));
            }
            if std::mem::replace(&mut band_used[m], true) {
                return Err(Error::Contract(format!("band {m} assigned twice")));
            }
            if std::mem::replace(&mut user_used[n], true) {
                return Err(Error::Contract(format!("user {n} assigned twice")));
            }
        }
        Ok(Self::from_sorted(pairs, table))
    }

    pub(crate) fn from_sorted(pairs: Vec<(usize, usize)>, table: &SinrTable) -> Self {
        let sum_rate = pairs.iter().map(|&(m, n)| table.rate(m, n)).sum();
        Self { pairs, sum_rate }
    }

    pub fn empty() -> Self {
        Self {
            pairs: Vec::new(),
            sum_rate: 0.0,
        }
    }

    pub fn user_of(&self, band: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == band).map(|p| p.1)
    }
}

fn argmax(row: &[f64]) -> usize {
    let mut best = 0;
    for (n, &v) in row.iter().enumerate().skip(1) {
        if v > row[best] {
            best = n;
        }
    }
    best
}

/// Most favorable user of each band (argmax of the SINR row, lowest index on ties).
pub fn favorites(table: &SinrTable) -> Vec<usize> {
    (0..table.num_bands()).map(|m| argmax(table.sinr.row(m))).collect()
}

/// True when no user is the favorite of two bands.
pub fn event_d(favorites: &[usize]) -> bool {
    let mut seen = favorites.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// `Σ_m log2(1 + max_n x[m][n])` for an arbitrary band × user matrix.
pub fn best_per_band_rate(values: &BandMatrix) -> f64 {
    (0..values.rows())
        .map(|m| {
            let best = values.row(m).iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (1.0 + best).log2()
        })
        .sum()
}

/// Reference optimum by enumerating every injective band → user map.
pub fn optimal_assignment_exhaustive(table: &SinrTable) -> Result<Assignment> {
    let (bands, users) = (table.num_bands(), table.num_users());
    if users > EXHAUSTIVE_MAX_USERS || bands > EXHAUSTIVE_MAX_BANDS {
        return Err(Error::Capacity {
            users,
            bands,
            max_users: EXHAUSTIVE_MAX_USERS,
            max_bands: EXHAUSTIVE_MAX_BANDS,
        });
    }

    struct Search<'a> {
        table: &'a SinrTable,
        used: Vec<bool>,
        current: Vec<usize>,
        best: Vec<usize>,
        best_rate: f64,
    }

    impl Search<'_> {
        fn visit(&mut self, band: usize, rate: f64) {
            if band == self.table.num_bands() {
                if rate > self.best_rate {
                    self.best_rate = rate;
                    self.best.clone_from(&self.current);
                }
                return;
            }
            for n in 0..self.table.num_users() {
                if self.used[n] {
                    continue;
                }
                self.used[n] = true;
                self.current.push(n);
                self.visit(band + 1, rate + self.table.rate(band, n));
                self.current.pop();
                self.used[n] = false;
            }
        }
    }

    let mut search = Search {
        table,
        used: vec![false; users],
        current: Vec::with_capacity(bands),
        best: Vec::new(),
        best_rate: f64::NEG_INFINITY,
    };
    search.visit(0, 0.0);
    let pairs = search.best.into_iter().enumerate().collect();
    Ok(Assignment::from_sorted(pairs, table))
}

/// Min-cost assignment of every row to a distinct column (rows ≤ cols),
/// shortest-augmenting-path Hungarian method with potentials, `O(rows² · cols)`.
/// Returns the column chosen for each row.
fn hungarian_min(rows: usize, cols: usize, cost: impl Fn(usize, usize) -> f64) -> Vec<usize> {
    debug_assert!(rows <= cols);
    // 1-based; row 0 / column 0 are sentinels
    let mut u = vec![0.0; rows + 1];
    let mut v = vec![0.0; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    let mut min_slack = vec![0.0; cols + 1];
    let mut used = vec![false; cols + 1];

    for i in 1..=rows {
        owner[0] = i;
        let mut j0 = 0;
        min_slack.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if reduced < min_slack[j] {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of = vec![0; rows];
    for j in 1..=cols {
        if owner[j] != 0 {
            col_of[owner[j] - 1] = j - 1;
        }
    }
    col_of
}

/// Exact optimum by max-weight bipartite matching on `log2(1 + SINR)`
/// (weights negated into a min-cost assignment).
pub fn optimal_assignment_matching(table: &SinrTable) -> Assignment {
    let cols = hungarian_min(table.num_bands(), table.num_users(), |m, n| -table.rate(m, n));
    Assignment::from_sorted(cols.into_iter().enumerate().collect(), table)
}
