//! Greedy-power refinement: re-seat a few creatives at a time.
//!
//! Plain greedy commits to early picks it can never revisit. The refinement
//! loop attacks exactly that: from the incumbent solution it removes `r` of
//! the `M` members, greedily refills the gap (removed creatives compete
//! again), and keeps the best refilled candidate if it strictly beats the
//! incumbent. Each round tries up to `f` different removal subsets; the loop
//! stops at the round limit or, before that, on the first round that fails to
//! improve, which also makes the unbounded setting terminate.
//!
//! Acceptance is strict (`>`), so a result can never be worse than the
//! baseline, and equal goals mean the refinement found nothing: `matched`
//! and a zero improvement ratio coincide exactly.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combos::{binomial, enumerate_combinations};
use crate::coverage::goal;
use crate::error::{Error, Result};
use crate::greedy::greedy_select;
use crate::matrix::ScoreMatrix;
use crate::seeding;
use crate::selection::Selection;

/// Largest number of removal subsets one round will materialize.
const MAX_SUBSETS_PER_ROUND: u128 = 1 << 20;

/// Knobs for the refinement loop.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerParams {
    /// Creatives removed from the incumbent each round (`r`), between 1 and
    /// the selection size.
    pub removals: usize,
    /// Removal subsets tried per round (`f`); capped at C(M, r), where it
    /// degenerates to full enumeration.
    pub branches: usize,
    /// Total greedy rounds including the baseline. `None` keeps refining
    /// until a round fails to improve.
    pub max_rounds: Option<u32>,
}

impl PowerParams {
    pub fn validate(&self, select: usize) -> Result<()> {
        if self.removals == 0 || self.removals > select {
            return Err(Error::InvalidParams(format!(
                "removals must be between 1 and the selection size {select}, got {}",
                self.removals
            )));
        }
        if self.branches == 0 {
            return Err(Error::InvalidParams("branches must be at least 1".into()));
        }
        if self.max_rounds == Some(0) {
            return Err(Error::InvalidParams(
                "round limit must be at least 1 (the baseline round)".into(),
            ));
        }
        Ok(())
    }
}

/// Outcome of one refinement round.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundRecord {
    /// Goal of the round's best candidate (not necessarily an improvement).
    pub best_candidate_goal: f64,
    /// Whether that candidate strictly beat the incumbent and replaced it.
    pub accepted: bool,
}

/// Baseline-plus-refinement result.
#[derive(Clone, Debug)]
pub struct RefinementResult {
    pub final_selection: Selection,
    pub final_goal: f64,
    pub baseline_goal: f64,
    /// Greedy rounds executed, counting the baseline and the final
    /// non-improving round.
    pub iterations_run: u64,
    /// True when refinement never improved on the baseline.
    pub matched: bool,
    /// `final_goal / baseline_goal - 1`; exactly zero when matched.
    pub improvement_ratio: f64,
    pub history: Vec<RoundRecord>,
}

/// How many distinct removal subsets a round of size `r` on `m` positions
/// could try: C(m, r), saturating at `u128::MAX`.
pub fn removal_subset_count(m: usize, r: usize) -> u128 {
    binomial(m as u64, r as u64)
}

/// Draws `min(f, C(m, r))` distinct removal subsets of size `r` from the
/// positions `0..m`.
///
/// When `f` covers all C(m, r) subsets the full enumeration is returned in
/// lexicographic order and `rng` is untouched. Otherwise subsets come out
/// uniformly without replacement, in draw order; raising `f` extends the
/// sequence without changing earlier draws.
pub fn sample_removal_subsets<R: Rng + ?Sized>(
    m: usize,
    r: usize,
    f: usize,
    rng: &mut R,
) -> Result<Vec<Vec<usize>>> {
    if r == 0 || r > m {
        return Err(Error::InvalidParams(format!(
            "removal size must be between 1 and {m}, got {r}"
        )));
    }
    if f == 0 {
        return Err(Error::InvalidParams("must sample at least one removal subset".into()));
    }
    let total = binomial(m as u64, r as u64);
    let want = (f as u128).min(total);
    if want > MAX_SUBSETS_PER_ROUND {
        return Err(Error::InvalidParams(format!(
            "a round of {want} removal subsets is over the {MAX_SUBSETS_PER_ROUND} limit"
        )));
    }

    if total <= MAX_SUBSETS_PER_ROUND {
        let mut all = enumerate_combinations(m, r);
        if want == total {
            return Ok(all);
        }
        // Partial Fisher-Yates: slot i receives a uniform pick of the
        // remainder, so the prefix is a uniform sample in draw order.
        let want = want as usize;
        for i in 0..want {
            let j = rng.random_range(i..all.len());
            all.swap(i, j);
        }
        all.truncate(want);
        return Ok(all);
    }

    // Too many subsets to enumerate: draw directly and reject repeats.
    // want <= 2^20 < total here, so retries are rare.
    let want = want as usize;
    let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(want);
    let mut out = Vec::with_capacity(want);
    while out.len() < want {
        let mut subset: Vec<usize> = rand::seq::index::sample(rng, m, r).into_vec();
        subset.sort_unstable();
        if seen.insert(subset.clone()) {
            out.push(subset);
        }
    }
    Ok(out)
}

/// One refinement round: try the sampled removal subsets against `incumbent`
/// and return the best refilled candidate with its goal.
///
/// The best candidate is returned even when it does not beat the incumbent;
/// ties between candidates go to the earliest sampled (lexicographically
/// first under full enumeration).
pub fn refine_once<R: Rng + ?Sized>(
    matrix: &ScoreMatrix,
    incumbent: &Selection,
    params: &PowerParams,
    rng: &mut R,
) -> Result<(Selection, f64)> {
    if !incumbent.is_complete() {
        return Err(Error::IncompleteSelection {
            len: incumbent.len(),
            capacity: incumbent.capacity(),
        });
    }
    incumbent.validate_columns(matrix.cols())?;
    let m = incumbent.len();
    params.validate(m)?;

    let subsets = sample_removal_subsets(m, params.removals, params.branches, rng)?;
    let mut best: Option<(Selection, f64)> = None;
    for positions in &subsets {
        let kept = incumbent.without_positions(positions)?;
        let (candidate, _) = greedy_select(matrix, m, &kept)?;
        let candidate_goal = goal(matrix, &candidate)?;
        if best.as_ref().is_none_or(|(_, g)| candidate_goal > *g) {
            best = Some((candidate, candidate_goal));
        }
    }
    Ok(best.expect("at least one removal subset was sampled"))
}

/// Greedy baseline plus up to `max_rounds - 1` refinement rounds.
///
/// Round `k` samples from its own stream `child_seed(seed, k)`, so a longer
/// run or a larger branch count never rewrites the draws of earlier rounds.
/// With `max_rounds: Some(1)` this is exactly the greedy baseline.
pub fn greedy_power(
    matrix: &ScoreMatrix,
    select: usize,
    params: &PowerParams,
    seed: u64,
) -> Result<RefinementResult> {
    params.validate(select)?;
    let (baseline, _) = greedy_select(matrix, select, &Selection::empty(select))?;
    let baseline_goal = goal(matrix, &baseline)?;

    let mut incumbent = baseline;
    let mut incumbent_goal = baseline_goal;
    let mut history = Vec::new();
    let mut round: u64 = 1;
    while params.max_rounds.is_none_or(|n| round < n as u64) {
        round += 1;
        let mut rng = seeding::stream(seeding::child_seed(seed, round));
        let (candidate, candidate_goal) = refine_once(matrix, &incumbent, params, &mut rng)?;
        let accepted = candidate_goal > incumbent_goal;
        history.push(RoundRecord { best_candidate_goal: candidate_goal, accepted });
        if !accepted {
            break;
        }
        incumbent = candidate;
        incumbent_goal = candidate_goal;
    }

    let matched = incumbent_goal == baseline_goal;
    let improvement_ratio = if matched { 0.0 } else { incumbent_goal / baseline_goal - 1.0 };
    Ok(RefinementResult {
        final_selection: incumbent,
        final_goal: incumbent_goal,
        baseline_goal,
        iterations_run: round,
        matched,
        improvement_ratio,
        history,
    })
}

/// Probability that a uniform removal of `r` out of `m` creatives separates a
/// fixed pair, given one of them goes: `(m - r) / (m - 1)`.
///
/// For the even cut `r = m / 2` this is also the unconditional probability
/// that the pair ends up on different sides, which is what makes removing
/// half the solution a good default for shaking two entrenched creatives
/// apart.
pub fn split_probability(m: usize, r: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least two selected creatives, got {m}"
        )));
    }
    if r == 0 || r > m - 1 {
        return Err(Error::InvalidParams(format!(
            "removal size must be between 1 and {}, got {r}",
            m - 1
        )));
    }
    Ok((m - r) as f64 / (m - 1) as f64)
}
