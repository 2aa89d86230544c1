//! Creative selection for sponsored-search ad groups.
//!
//! An ad group serves `N` candidate creatives against `W` keywords, scored by
//! a nonnegative matrix, and may only run `M` of them. The objective (the
//! "goal") is the sum over keywords of the best selected score. This crate
//! implements:
//!
//! * the greedy baseline ([`greedy::greedy_select`]), one best-gain pick at a
//!   time over a per-keyword coverage cache;
//! * greedy-power refinement ([`power::greedy_power`]), which repeatedly
//!   removes `r` of the `M` chosen creatives, refills greedily, and keeps
//!   strict improvements;
//! * an exhaustive oracle ([`oracle::exact_select`]) for small instances;
//! * a Monte Carlo benchmark harness ([`sim`]) with named presets and
//!   bit-reproducible, worker-count-independent reports.
//!
//! ```
//! use adselect::matrix::ScoreMatrix;
//! use adselect::power::{greedy_power, PowerParams};
//!
//! let scores = ScoreMatrix::from_rows(&[
//!     &[6.0, 4.0, 0.0],
//!     &[0.0, 4.0, 4.0],
//!     &[0.0, 0.0, 4.0],
//! ]).unwrap();
//! let params = PowerParams { removals: 1, branches: 2, max_rounds: Some(2) };
//! let result = greedy_power(&scores, 2, &params, 42).unwrap();
//! // greedy alone stops at 12; one refinement round finds the optimum
//! assert_eq!(result.baseline_goal, 12.0);
//! assert_eq!(result.final_goal, 14.0);
//! assert_eq!(result.final_selection.sorted(), vec![0, 2]);
//! ```

pub mod coverage;
pub mod error;
pub mod greedy;
pub mod matrix;
pub mod oracle;
pub mod power;
pub mod seeding;
pub mod selection;
pub mod sim;

mod combos;

pub use error::{Error, Result};
