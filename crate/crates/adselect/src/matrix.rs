//! Keyword-by-creative score matrices.
//!
//! Scores are nonnegative reals stored row-major, one row per keyword and one
//! column per creative. Matrices either come out of the half-normal generator
//! in [`crate::sim`] or from a headerless CSV file supplied on the command
//! line.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Dense matrix of nonnegative creative scores, one row per keyword.
#[derive(Clone, Debug, PartialEq)]
pub struct ScoreMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl ScoreMatrix {
    /// Builds a matrix from row-major values, validating shape and sign.
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let expected = rows
            .checked_mul(cols)
            .ok_or(Error::ShapeMismatch { rows, cols, expected: usize::MAX, actual: values.len() })?;
        if values.len() != expected {
            return Err(Error::ShapeMismatch { rows, cols, expected, actual: values.len() });
        }
        for (pos, &value) in values.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidScore { row: pos / cols, col: pos % cols, value });
            }
        }
        Ok(Self { rows, cols, values })
    }

    /// Convenience constructor for literal rows, used heavily in tests.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, |r| r.len());
        let mut values = Vec::with_capacity(row_count * col_count);
        for row in rows {
            if row.len() != col_count {
                return Err(Error::ShapeMismatch {
                    rows: row_count,
                    cols: col_count,
                    expected: row_count * col_count,
                    actual: rows.iter().map(|r| r.len()).sum(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(row_count, col_count, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Score of creative `col` on keyword `row`. Panics if out of bounds.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        self.values[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        let start = row * self.cols;
        &self.values[start..start + self.cols]
    }

    /// Sum of one creative's scores over all keywords.
    pub fn column_sum(&self, col: usize) -> f64 {
        (0..self.rows).map(|row| self.get(row, col)).sum()
    }

    /// Parses a headerless CSV of decimal scores. Every line must carry the
    /// same number of comma-separated fields; diagnostics are one-based.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut cols = 0usize;
        let mut values = Vec::new();
        let mut rows = 0usize;
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let fields: Vec<&str> = line.split(',').collect();
            if rows == 0 {
                cols = fields.len();
            } else if fields.len() != cols {
                return Err(Error::CsvShape { line: line_no, expected: cols, found: fields.len() });
            }
            for (f_idx, field) in fields.iter().enumerate() {
                let value: f64 = field.trim().parse().map_err(|_| Error::CsvNumber {
                    line: line_no,
                    field: f_idx + 1,
                    text: field.trim().to_string(),
                })?;
                if !value.is_finite() || value < 0.0 {
                    return Err(Error::CsvScore { line: line_no, field: f_idx + 1, value });
                }
                values.push(value);
            }
            rows += 1;
        }
        if rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        Self::new(rows, cols, values)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        Self::from_csv_str(&fs::read_to_string(path)?)
    }
}
