//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix needs at least one row and one column")]
    EmptyMatrix,

    #[error("expected {rows} x {cols} = {expected} values, got {actual}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },

    /// Raised by the constructor; row and column are zero-based.
    #[error("score at row {row}, column {col} is {value}; scores must be finite and nonnegative")]
    InvalidScore { row: usize, col: usize, value: f64 },

    /// CSV diagnostics are one-based to match how people count lines in a file.
    #[error("line {line}: expected {expected} fields, found {found}")]
    CsvShape {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}, field {field}: cannot parse {text:?} as a score")]
    CsvNumber {
        line: usize,
        field: usize,
        text: String,
    },

    #[error("line {line}, field {field}: score {value} must be finite and nonnegative")]
    CsvScore { line: usize, field: usize, value: f64 },

    #[error("creative index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },

    #[error("creative {index} is already selected")]
    DuplicateIndex { index: usize },

    #[error("selection already holds {capacity} creatives")]
    CapacityExceeded { capacity: usize },

    #[error("cannot select {select} creatives from {cols} columns")]
    Infeasible { select: usize, cols: usize },

    #[error("selection holds {len} of {capacity} creatives; a complete selection is required")]
    IncompleteSelection { len: usize, capacity: usize },

    #[error("cache covers {cache_rows} keywords but the matrix has {matrix_rows}")]
    DimensionMismatch {
        cache_rows: usize,
        matrix_rows: usize,
    },

    #[error("{0}")]
    InvalidParams(String),

    /// `subsets` saturates at `u128::MAX` for counts beyond 128 bits.
    #[error("exhaustive search over {subsets} subsets exceeds the budget of {budget}")]
    BudgetExceeded { subsets: u128, budget: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
