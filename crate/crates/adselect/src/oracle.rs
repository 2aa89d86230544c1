//! Exhaustive search over all C(N, M) selections, for benchmarking the
//! heuristics on instances small enough to enumerate.

use crate::combos::{binomial, for_each_combination};
use crate::error::{Error, Result};
use crate::greedy::greedy_select;
use crate::matrix::ScoreMatrix;
use crate::power::{greedy_power, PowerParams};
use crate::seeding;
use crate::selection::Selection;
use crate::sim::generate_matrix;

/// Cap on how many subsets [`exact_select`] will enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_subsets: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_subsets: 5_000_000 }
    }
}

/// The optimal selection of `select` creatives by brute force.
///
/// Enumerates subsets in lexicographic order and keeps the first maximizer,
/// so ties resolve to the lexicographically smallest index set. Refuses
/// instances whose subset count exceeds the budget.
pub fn exact_select(
    matrix: &ScoreMatrix,
    select: usize,
    budget: OracleBudget,
) -> Result<(Selection, f64)> {
    if select == 0 || select > matrix.cols() {
        return Err(Error::Infeasible { select, cols: matrix.cols() });
    }
    let subsets = binomial(matrix.cols() as u64, select as u64);
    if subsets > budget.max_subsets as u128 {
        return Err(Error::BudgetExceeded { subsets, budget: budget.max_subsets });
    }

    let mut best_goal = f64::NEG_INFINITY;
    let mut best: Vec<usize> = Vec::new();
    for_each_combination(matrix.cols(), select, |comb| {
        // same evaluation order as coverage::goal, so goals compare bit-exact
        let mut total = 0.0;
        for row in 0..matrix.rows() {
            let mut covered = 0.0_f64;
            for &col in comb {
                covered = covered.max(matrix.get(row, col));
            }
            total += covered;
        }
        if total > best_goal {
            best_goal = total;
            best.clear();
            best.extend_from_slice(comb);
        }
    });
    Ok((Selection::from_indices(best, select)?, best_goal))
}

/// How often greedy already finds the exact optimum on random half-normal
/// instances: the fraction of `instances` with equal goals.
pub fn greedy_optimality_rate(
    rows: usize,
    cols: usize,
    select: usize,
    instances: usize,
    seed: u64,
    budget: OracleBudget,
) -> Result<f64> {
    if instances == 0 {
        return Err(Error::InvalidParams("need at least one instance".into()));
    }
    let mut matches = 0usize;
    for instance in 0..instances {
        let matrix = instance_matrix(rows, cols, seed, instance);
        let (_, exact_goal) = exact_select(&matrix, select, budget)?;
        let (greedy_sel, _) = greedy_select(&matrix, select, &Selection::empty(select))?;
        let greedy_goal = crate::coverage::goal(&matrix, &greedy_sel)?;
        debug_assert!(greedy_goal <= exact_goal);
        if greedy_goal == exact_goal {
            matches += 1;
        }
    }
    Ok(matches as f64 / instances as f64)
}

/// Greedy, refined, and exact goals side by side over random instances.
#[derive(Clone, Debug, Default)]
pub struct ExactComparison {
    pub instances: usize,
    /// Instances where the greedy goal equals the exact optimum.
    pub greedy_matches: usize,
    /// Instances where the refined goal equals the exact optimum.
    pub power_matches: usize,
    /// Instances where refinement strictly beat greedy.
    pub power_above_greedy: usize,
    /// Instances violating `greedy <= power <= exact`; always zero, counted
    /// rather than assumed.
    pub ordering_violations: usize,
    pub mean_exact_goal: f64,
    pub mean_greedy_goal: f64,
    pub mean_power_goal: f64,
}

/// Runs greedy, the refinement loop, and exhaustive search on `instances`
/// random half-normal matrices.
///
/// Instance `i` is generated from `child_seed(child_seed(seed, i), 0)` and
/// refined with solver seed `child_seed(child_seed(seed, i), 1)`, the same
/// derivation [`greedy_optimality_rate`] uses, so the two see identical
/// matrices for a given `seed`.
pub fn compare_with_exact(
    rows: usize,
    cols: usize,
    select: usize,
    instances: usize,
    seed: u64,
    params: &PowerParams,
    budget: OracleBudget,
) -> Result<ExactComparison> {
    if instances == 0 {
        return Err(Error::InvalidParams("need at least one instance".into()));
    }
    let mut report = ExactComparison { instances, ..Default::default() };
    let mut exact_sum = 0.0;
    let mut greedy_sum = 0.0;
    let mut power_sum = 0.0;
    for instance in 0..instances {
        let matrix = instance_matrix(rows, cols, seed, instance);
        let (_, exact_goal) = exact_select(&matrix, select, budget)?;
        let solver_seed = seeding::child_seed(seeding::child_seed(seed, instance as u64), 1);
        let result = greedy_power(&matrix, select, params, solver_seed)?;

        exact_sum += exact_goal;
        greedy_sum += result.baseline_goal;
        power_sum += result.final_goal;
        if result.baseline_goal == exact_goal {
            report.greedy_matches += 1;
        }
        if result.final_goal == exact_goal {
            report.power_matches += 1;
        }
        if result.final_goal > result.baseline_goal {
            report.power_above_greedy += 1;
        }
        if result.baseline_goal > result.final_goal || result.final_goal > exact_goal {
            report.ordering_violations += 1;
        }
    }
    report.mean_exact_goal = exact_sum / instances as f64;
    report.mean_greedy_goal = greedy_sum / instances as f64;
    report.mean_power_goal = power_sum / instances as f64;
    Ok(report)
}

fn instance_matrix(rows: usize, cols: usize, seed: u64, instance: usize) -> ScoreMatrix {
    let instance_seed = seeding::child_seed(seed, instance as u64);
    generate_matrix(rows, cols, &mut seeding::stream(seeding::child_seed(instance_seed, 0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> ScoreMatrix {
        ScoreMatrix::from_rows(&[&[6.0, 4.0, 0.0], &[0.0, 4.0, 4.0], &[0.0, 0.0, 4.0]]).unwrap()
    }

    #[test]
    fn finds_the_optimum_greedy_misses() {
        // {0, 1} scores 10, {1, 2} scores 12, {0, 2} scores 14.
        let (sel, best) = exact_select(&example(), 2, OracleBudget::default()).unwrap();
        assert_eq!(sel.sorted(), vec![0, 2]);
        assert_eq!(best, 14.0);
    }

    #[test]
    fn ties_go_to_the_lexicographically_smallest_subset() {
        let m = ScoreMatrix::from_rows(&[&[1.0, 3.0, 3.0, 1.0]]).unwrap();
        let (sel, best) = exact_select(&m, 1, OracleBudget::default()).unwrap();
        assert_eq!(sel.indices(), &[1]);
        assert_eq!(best, 3.0);

        let (sel, _) = exact_select(&m, 2, OracleBudget::default()).unwrap();
        assert_eq!(sel.sorted(), vec![0, 1]);
    }

    #[test]
    fn selecting_all_columns_is_the_single_subset() {
        let m = example();
        let (sel, best) = exact_select(&m, 3, OracleBudget::default()).unwrap();
        assert_eq!(sel.sorted(), vec![0, 1, 2]);
        assert_eq!(best, 14.0);
    }

    #[test]
    fn infeasible_sizes_error() {
        let m = example();
        assert!(matches!(
            exact_select(&m, 4, OracleBudget::default()),
            Err(Error::Infeasible { select: 4, cols: 3 })
        ));
        assert!(exact_select(&m, 0, OracleBudget::default()).is_err());
    }

    #[test]
    fn budget_refusal_names_the_counts() {
        let m = generate_matrix(2, 6, &mut seeding::stream(0));
        let err = exact_select(&m, 3, OracleBudget { max_subsets: 19 }).unwrap_err();
        match err {
            Error::BudgetExceeded { subsets, budget } => {
                assert_eq!(subsets, 20);
                assert_eq!(budget, 19);
            }
            other => panic!("unexpected error: {other:?}"),
        }
        assert!(exact_select(&m, 3, OracleBudget { max_subsets: 20 }).is_ok());
    }

    #[test]
    fn greedy_is_always_optimal_when_it_takes_everything() {
        let rate =
            greedy_optimality_rate(4, 3, 3, 10, 99, OracleBudget::default()).unwrap();
        assert_eq!(rate, 1.0);
    }

    #[test]
    fn greedy_is_always_optimal_on_a_single_keyword() {
        // With one keyword the goal is the single best selected score, and
        // greedy's first pick is the global maximum.
        let rate =
            greedy_optimality_rate(1, 6, 2, 25, 3, OracleBudget::default()).unwrap();
        assert_eq!(rate, 1.0);
    }

    #[test]
    fn comparison_chains_greedy_power_exact() {
        let params = PowerParams { removals: 2, branches: 3, max_rounds: None };
        let report =
            compare_with_exact(6, 9, 3, 60, 12345, &params, OracleBudget::default()).unwrap();
        assert_eq!(report.instances, 60);
        assert_eq!(report.ordering_violations, 0);
        assert!(report.power_matches >= report.greedy_matches);
        assert!(report.mean_greedy_goal <= report.mean_power_goal);
        assert!(report.mean_power_goal <= report.mean_exact_goal);
        assert!(report.mean_exact_goal > 0.0);
    }

    #[test]
    fn comparison_and_rate_see_the_same_instances() {
        let budget = OracleBudget::default();
        let params = PowerParams { removals: 1, branches: 2, max_rounds: Some(2) };
        let rate = greedy_optimality_rate(5, 8, 3, 40, 777, budget).unwrap();
        let report = compare_with_exact(5, 8, 3, 40, 777, &params, budget).unwrap();
        assert_eq!(rate, report.greedy_matches as f64 / 40.0);
    }
}
