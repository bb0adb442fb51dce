use serde::{Deserialize, Serialize};
use std::ops::{Index, IndexMut};

/// Dense row-major matrix indexed by `(band, user)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for m in 0..rows {
            for n in 0..cols {
                data.push(f(m, n));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Returns `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<f64>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.cols..(m + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

impl Index<(usize, usize)> for BandMatrix {
    type Output = f64;

    fn index(&self, (m, n): (usize, usize)) -> &f64 {
        debug_assert!(m < self.rows && n < self.cols);
        &self.data[m * self.cols + n]
    }
}

impl IndexMut<(usize, usize)> for BandMatrix {
    fn index_mut(&mut self, (m, n): (usize, usize)) -> &mut f64 {
        debug_assert!(m < self.rows && n < self.cols);
        &mut self.data[m * self.cols + n]
    }
}
