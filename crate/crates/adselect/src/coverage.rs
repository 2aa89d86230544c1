//! Goal evaluation and the per-keyword coverage cache.
//!
//! The goal of a selection `d` is `sum_i max_{a in d} K[i][a]`: every keyword
//! contributes the best score among the selected creatives, and an empty
//! selection scores zero. The cache keeps that per-keyword best so a marginal
//! gain costs O(W) instead of O(W * M).
//!
//! Both [`goal`] and [`CoverageCache::goal`] accumulate keyword contributions
//! in row order. That makes the two evaluations agree bit for bit, which the
//! solvers rely on when they compare candidate goals with `==` and `>`.

use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::selection::Selection;

/// Canonical goal evaluation: per-keyword best selected score, summed in row
/// order.
pub fn goal(matrix: &ScoreMatrix, selection: &Selection) -> Result<f64> {
    selection.validate_columns(matrix.cols())?;
    let mut total = 0.0;
    for row in 0..matrix.rows() {
        let mut best = 0.0_f64;
        for &col in selection.indices() {
            best = best.max(matrix.get(row, col));
        }
        total += best;
    }
    Ok(total)
}

/// Per-keyword best scores for one selection.
#[derive(Clone, Debug)]
pub struct CoverageCache {
    best: Vec<f64>,
    selection: Selection,
    cols: usize,
}

impl CoverageCache {
    /// Cache for an empty selection: every keyword is uncovered (best 0).
    pub fn empty(matrix: &ScoreMatrix, capacity: usize) -> Self {
        Self {
            best: vec![0.0; matrix.rows()],
            selection: Selection::empty(capacity),
            cols: matrix.cols(),
        }
    }

    pub fn build(matrix: &ScoreMatrix, selection: &Selection) -> Result<Self> {
        selection.validate_columns(matrix.cols())?;
        let mut best = vec![0.0_f64; matrix.rows()];
        for (row, slot) in best.iter_mut().enumerate() {
            for &col in selection.indices() {
                *slot = slot.max(matrix.get(row, col));
            }
        }
        Ok(Self { best, selection: selection.clone(), cols: matrix.cols() })
    }

    pub fn best(&self) -> &[f64] {
        &self.best
    }

    pub fn selection(&self) -> &Selection {
        &self.selection
    }

    pub fn into_selection(self) -> Selection {
        self.selection
    }

    /// Goal of the cached selection; bit-identical to [`goal`].
    pub fn goal(&self) -> f64 {
        let mut total = 0.0;
        for &b in &self.best {
            total += b;
        }
        total
    }

    /// Goal increase from adding `candidate` to the cached selection.
    ///
    /// Equals `goal(d + candidate) - goal(d)` in real arithmetic; always
    /// nonnegative. A candidate already in the selection gains zero.
    pub fn marginal_gain(&self, matrix: &ScoreMatrix, candidate: usize) -> Result<f64> {
        self.check_matrix(matrix)?;
        if candidate >= self.cols {
            return Err(Error::IndexOutOfRange { index: candidate, cols: self.cols });
        }
        let mut gain = 0.0;
        for (row, &covered) in self.best.iter().enumerate() {
            let lift = matrix.get(row, candidate) - covered;
            if lift > 0.0 {
                gain += lift;
            }
        }
        Ok(gain)
    }

    /// Adds `candidate` to the selection and raises the per-keyword bests.
    pub fn add(&mut self, matrix: &ScoreMatrix, candidate: usize) -> Result<()> {
        self.check_matrix(matrix)?;
        if candidate >= self.cols {
            return Err(Error::IndexOutOfRange { index: candidate, cols: self.cols });
        }
        self.selection.push(candidate)?;
        for (row, covered) in self.best.iter_mut().enumerate() {
            *covered = covered.max(matrix.get(row, candidate));
        }
        Ok(())
    }

    fn check_matrix(&self, matrix: &ScoreMatrix) -> Result<()> {
        if matrix.rows() != self.best.len() || matrix.cols() != self.cols {
            return Err(Error::DimensionMismatch {
                cache_rows: self.best.len(),
                matrix_rows: matrix.rows(),
            });
        }
        Ok(())
    }
}
