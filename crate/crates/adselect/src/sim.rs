//! Monte Carlo benchmark harness.
//!
//! A trajectory draws a fresh half-normal score matrix, runs the baseline
//! plus refinement, and records how the final goal compares to the baseline.
//! An experiment runs `trajectories` of those per repeat and `repeats`
//! repeats per report row, each trajectory on its own derived seed (see
//! [`crate::seeding`]), so reports are bit-identical across worker counts
//! and reruns.
//!
//! Reported per repeat:
//! * `matched_pct`: share of trajectories whose refinement found nothing.
//! * `improvement_pct`: mean percent gain over the baseline among improved
//!   trajectories only; zero when every trajectory matched.
//! * `improvement_pct_unconditional`: same mean taken over all trajectories.

use std::fmt::Write as _;
use std::time::Instant;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::power::{greedy_power, PowerParams, RefinementResult};
use crate::seeding;

pub const DEFAULT_TRAJECTORIES: usize = 500;
pub const DEFAULT_REPEATS: usize = 3;

/// Score distribution for generated instances. A tag rather than a value so
/// configs stay serializable; half-normal is the only member today.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    #[default]
    HalfNormal,
}

/// Full description of one experiment; everything a rerun needs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Keywords per generated matrix (W).
    pub rows: usize,
    /// Creatives per generated matrix (N).
    pub cols: usize,
    /// Creatives to select (M).
    pub select: usize,
    #[serde(flatten)]
    pub params: PowerParams,
    pub trajectories: usize,
    pub repeats: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub distribution: Distribution,
}

impl ExperimentConfig {
    /// Named parameter sets for the standard benchmark grid. Every preset
    /// runs two greedy rounds over 500 trajectories, three repeats; they
    /// differ in matrix shape, removal size, and branch count.
    pub fn preset(name: &str, base_seed: u64) -> Option<Self> {
        let (rows, cols, select, removals, branches) = match name {
            "base-r1" => (30, 300, 6, 1, 6),
            "base-r2" => (30, 300, 6, 2, 6),
            "base-r3" => (30, 300, 6, 3, 6),
            "f2-r3" => (30, 300, 6, 3, 12),
            "f3-r3" => (30, 300, 6, 3, 18),
            "m10-r1" => (30, 300, 10, 1, 10),
            "m10-r3" => (30, 300, 10, 3, 10),
            "k100-r1" => (100, 300, 6, 1, 6),
            "n1000-r1" => (30, 1000, 6, 1, 6),
            _ => return None,
        };
        Some(Self {
            rows,
            cols,
            select,
            params: PowerParams { removals, branches, max_rounds: Some(2) },
            trajectories: DEFAULT_TRAJECTORIES,
            repeats: DEFAULT_REPEATS,
            base_seed,
            distribution: Distribution::HalfNormal,
        })
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[
            "base-r1", "base-r2", "base-r3", "f2-r3", "f3-r3", "m10-r1", "m10-r3", "k100-r1",
            "n1000-r1",
        ]
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidParams("matrix dimensions must be positive".into()));
        }
        if self.select == 0 || self.select > self.cols {
            return Err(Error::Infeasible { select: self.select, cols: self.cols });
        }
        if self.trajectories == 0 || self.repeats == 0 {
            return Err(Error::InvalidParams(
                "trajectories and repeats must be positive".into(),
            ));
        }
        self.params.validate(self.select)
    }
}

/// W x N matrix of |z| draws, z standard normal, filled row-major.
pub fn generate_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ScoreMatrix {
    let values = (0..rows * cols)
        .map(|_| {
            let z: f64 = rng.sample(StandardNormal);
            z.abs()
        })
        .collect();
    ScoreMatrix::new(rows, cols, values).expect("absolute normal draws are valid scores")
}

/// Runs one trajectory of an experiment: fresh matrix, baseline, refinement.
///
/// The trajectory seed depends only on `(base_seed, repeat, trajectory)`, so
/// any trajectory can be reproduced in isolation.
pub fn run_trajectory(
    config: &ExperimentConfig,
    repeat: usize,
    trajectory: usize,
) -> Result<RefinementResult> {
    let t_seed = seeding::trajectory_seed(config.base_seed, repeat as u64, trajectory as u64);
    let matrix = generate_matrix(
        config.rows,
        config.cols,
        &mut seeding::stream(seeding::child_seed(t_seed, 0)),
    );
    greedy_power(&matrix, config.select, &config.params, seeding::child_seed(t_seed, 1))
}

/// All trajectory results for one repeat, in trajectory order. Runs on the
/// ambient rayon pool; order and content do not depend on thread count.
pub fn repeat_results(config: &ExperimentConfig, repeat: usize) -> Result<Vec<RefinementResult>> {
    config.validate()?;
    (0..config.trajectories)
        .into_par_iter()
        .map(|trajectory| run_trajectory(config, repeat, trajectory))
        .collect()
}

/// One report row: aggregates over a repeat's trajectories.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepeatSummary {
    /// 1-based repeat number.
    pub repeat: usize,
    pub matched_pct: f64,
    pub improvement_pct: f64,
    pub improvement_pct_unconditional: f64,
    pub mean_baseline_goal: f64,
    pub mean_final_goal: f64,
}

/// Aggregates trajectory results into a report row.
pub fn summarize(repeat: usize, results: &[RefinementResult]) -> RepeatSummary {
    let count = results.len() as f64;
    let matched = results.iter().filter(|r| r.matched).count();
    let mut improved_sum = 0.0;
    let mut improved_count = 0usize;
    let mut all_sum = 0.0;
    let mut baseline_sum = 0.0;
    let mut final_sum = 0.0;
    for r in results {
        let pct = 100.0 * r.improvement_ratio;
        all_sum += pct;
        if !r.matched {
            improved_sum += pct;
            improved_count += 1;
        }
        baseline_sum += r.baseline_goal;
        final_sum += r.final_goal;
    }
    RepeatSummary {
        repeat,
        matched_pct: 100.0 * matched as f64 / count,
        improvement_pct: if improved_count == 0 { 0.0 } else { improved_sum / improved_count as f64 },
        improvement_pct_unconditional: all_sum / count,
        mean_baseline_goal: baseline_sum / count,
        mean_final_goal: final_sum / count,
    }
}

/// Experiment output: the resolved config, one row per repeat, and the wall
/// time. `runtime_seconds` is the only field that varies between identical
/// runs; everything else is bit-stable.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<RepeatSummary>,
    pub runtime_seconds: f64,
}

pub const CSV_HEADER: &str =
    "repeat,matched_pct,improvement_pct,improvement_pct_unconditional,mean_baseline_goal,mean_final_goal";

impl ExperimentReport {
    /// Report rows as CSV. Floats print in shortest round-trip form, so the
    /// text is bit-stable wherever the rows are.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                row.repeat,
                row.matched_pct,
                row.improvement_pct,
                row.improvement_pct_unconditional,
                row.mean_baseline_goal,
                row.mean_final_goal
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the full experiment on `workers` threads (0 = one per core).
pub fn run_experiment(config: &ExperimentConfig, workers: usize) -> Result<ExperimentReport> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot build a {workers}-worker pool: {e}")))?;
    let start = Instant::now();
    let mut rows = Vec::with_capacity(config.repeats);
    for repeat in 0..config.repeats {
        let results = pool.install(|| repeat_results(config, repeat))?;
        rows.push(summarize(repeat + 1, &results));
    }
    Ok(ExperimentReport {
        config: config.clone(),
        rows,
        runtime_seconds: start.elapsed().as_secs_f64(),
    })
}
