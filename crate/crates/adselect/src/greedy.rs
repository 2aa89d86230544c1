//! Greedy selection with warm starts.
//!
//! Each step adds the unselected creative with the largest marginal gain,
//! breaking ties toward the lowest index. From an empty start that makes the
//! first pick the creative with the largest column sum. Steps with zero gain
//! still happen: the selection is always filled to exactly `capacity`.

use crate::coverage::CoverageCache;
use crate::error::{Error, Result};
use crate::matrix::ScoreMatrix;
use crate::selection::Selection;

/// One greedy step: which creative was added, what it gained, and the goal
/// after the step.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyStep {
    pub chosen: usize,
    pub gain: f64,
    pub goal: f64,
}

/// The steps greedy took beyond the warm start, in pick order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GreedyTrace {
    pub steps: Vec<GreedyStep>,
}

/// Fills `start` up to `capacity` creatives by repeated best-gain picks.
///
/// `start` may hold any number of already-chosen creatives up to `capacity`;
/// pass an empty selection for the plain algorithm. The returned selection
/// lists the warm start first, then picks in greedy order.
pub fn greedy_select(
    matrix: &ScoreMatrix,
    capacity: usize,
    start: &Selection,
) -> Result<(Selection, GreedyTrace)> {
    if capacity == 0 || capacity > matrix.cols() {
        return Err(Error::Infeasible { select: capacity, cols: matrix.cols() });
    }
    if start.len() > capacity {
        return Err(Error::CapacityExceeded { capacity });
    }
    start.validate_columns(matrix.cols())?;

    let mut cache = CoverageCache::build(matrix, &start.with_capacity(capacity)?)?;
    let mut taken = vec![false; matrix.cols()];
    for &j in start.indices() {
        taken[j] = true;
    }

    let mut trace = GreedyTrace::default();
    while cache.selection().len() < capacity {
        let mut chosen = usize::MAX;
        let mut best_gain = f64::NEG_INFINITY;
        for (j, &is_taken) in taken.iter().enumerate() {
            if is_taken {
                continue;
            }
            let gain = cache.marginal_gain(matrix, j)?;
            if gain > best_gain {
                best_gain = gain;
                chosen = j;
            }
        }
        debug_assert_ne!(chosen, usize::MAX, "capacity <= cols leaves a free column");
        cache.add(matrix, chosen)?;
        taken[chosen] = true;
        trace.steps.push(GreedyStep { chosen, gain: best_gain, goal: cache.goal() });
    }
    Ok((cache.into_selection(), trace))
}
