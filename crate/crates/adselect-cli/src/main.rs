//! Command-line front end for the adselect library.
//!
//! Four subcommands: `solve` refines a selection for a concrete CSV matrix,
//! `simulate` runs the Monte Carlo benchmark, `oracle-check` compares the
//! heuristics against exhaustive search, and `split-prob` prints the pair
//! separation probability for a removal round.
//!
//! Every run resolves and prints its seed (random unless `--seed` is given),
//! and rerunning with that seed reproduces the output byte for byte; the
//! JSON report's `runtime_seconds` is the one excluded field.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use adselect::matrix::ScoreMatrix;
use adselect::oracle::{self, OracleBudget};
use adselect::power::{self, PowerParams};
use adselect::sim::{self, ExperimentConfig};

#[derive(Parser)]
#[command(name = "adselect", version, about = "Greedy and refined ad creative selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pick creatives for a CSV score matrix and refine the pick
    Solve(SolveArgs),
    /// Run a Monte Carlo benchmark over generated score matrices
    Simulate(SimulateArgs),
    /// Compare greedy and refined goals against exhaustive search
    OracleCheck(OracleCheckArgs),
    /// Print the chance that one removal round separates a fixed pair
    SplitProb(SplitProbArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct SolveArgs {
    /// Headerless CSV score matrix, one row per keyword
    #[arg(long, value_name = "PATH")]
    matrix: PathBuf,
    /// Number of creatives to select
    #[arg(long, value_name = "M")]
    select: usize,
    /// Creatives removed per refinement round
    #[arg(long, value_name = "R", default_value_t = 1)]
    remove: usize,
    /// Removal subsets tried per round [default: the selection size]
    #[arg(long, value_name = "F")]
    branches: Option<usize>,
    /// Greedy rounds including the baseline; 0 refines until no improvement
    #[arg(long, value_name = "N", default_value_t = 2)]
    power: u32,
    /// Base seed [default: random]
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Named preset; see `adselect simulate --help` for the list
    #[arg(
        long,
        value_name = "NAME",
        conflicts_with_all = ["config", "rows", "cols", "select"],
        long_help = preset_help()
    )]
    preset: Option<String>,
    /// JSON experiment config, or a previous JSON report to rerun
    #[arg(long, value_name = "PATH", conflicts_with_all = ["rows", "cols", "select"])]
    config: Option<PathBuf>,
    /// Keywords per generated matrix
    #[arg(long, value_name = "W")]
    rows: Option<usize>,
    /// Creatives per generated matrix
    #[arg(long, value_name = "N")]
    cols: Option<usize>,
    /// Number of creatives to select
    #[arg(long, value_name = "M")]
    select: Option<usize>,
    /// Creatives removed per refinement round
    #[arg(long, value_name = "R")]
    remove: Option<usize>,
    /// Removal subsets tried per round
    #[arg(long, value_name = "F")]
    branches: Option<usize>,
    /// Greedy rounds including the baseline; 0 refines until no improvement
    #[arg(long, value_name = "N")]
    power: Option<u32>,
    /// Trajectories per repeat
    #[arg(long, value_name = "T")]
    trajectories: Option<usize>,
    /// Report rows to produce
    #[arg(long, value_name = "K")]
    repeats: Option<usize>,
    /// Base seed [default: random, or the config file's seed]
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Worker threads for trajectories; 0 uses one per core
    #[arg(long, value_name = "P", default_value_t = 0)]
    workers: usize,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Keywords per generated matrix
    #[arg(long, value_name = "W")]
    rows: usize,
    /// Creatives per generated matrix
    #[arg(long, value_name = "N")]
    cols: usize,
    /// Number of creatives to select
    #[arg(long, value_name = "M")]
    select: usize,
    /// Random instances to solve
    #[arg(long, value_name = "T", default_value_t = 200)]
    trajectories: usize,
    /// Creatives removed per refinement round [default: M - 1]
    #[arg(long, value_name = "R")]
    remove: Option<usize>,
    /// Removal subsets tried per round [default: all of them]
    #[arg(long, value_name = "F")]
    branches: Option<usize>,
    /// Base seed [default: random]
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Largest subset count exhaustive search may enumerate
    #[arg(long, value_name = "B", default_value_t = 5_000_000)]
    budget: u64,
}

#[derive(Args)]
struct SplitProbArgs {
    /// Selection size
    #[arg(long, value_name = "M")]
    select: usize,
    /// Creatives removed per refinement round
    #[arg(long, value_name = "R")]
    remove: usize,
}

fn preset_help() -> String {
    format!(
        "Named preset; one of: {}.\n\nEvery preset runs 500 trajectories and 3 repeats with two \
         greedy rounds. Dimension flags cannot be combined with a preset, but --remove, \
         --branches, --power, --trajectories, --repeats, and --seed still override it.",
        ExperimentConfig::preset_names().join(", ")
    )
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Solve(args) => cmd_solve(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
        Command::SplitProb(args) => cmd_split_prob(args),
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

/// `--power 0` means unbounded.
fn rounds(power: u32) -> Option<u32> {
    (power > 0).then_some(power)
}

/// The CLI is stricter than the library here: a refinement that removes the
/// whole selection is a plain restart, so it is rejected as an argument
/// mistake.
fn check_remove(remove: usize, select: usize) -> Result<()> {
    if remove >= select {
        bail!("--remove {remove} must be smaller than --select {select}");
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let matrix = ScoreMatrix::from_csv_path(&args.matrix)
        .with_context(|| format!("reading score matrix {}", args.matrix.display()))?;
    if args.select == 0 || args.select > matrix.cols() {
        bail!(
            "--select {} must be between 1 and the matrix's {} creative columns",
            args.select,
            matrix.cols()
        );
    }
    check_remove(args.remove, args.select)?;
    let params = PowerParams {
        removals: args.remove,
        branches: args.branches.unwrap_or(args.select),
        max_rounds: rounds(args.power),
    };
    let seed = resolve_seed(args.seed);
    let result = power::greedy_power(&matrix, args.select, &params, seed)?;

    println!("seed: {seed}");
    println!(
        "selected: {}",
        result
            .final_selection
            .sorted()
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    println!("baseline_goal: {}", result.baseline_goal);
    println!("final_goal: {}", result.final_goal);
    println!("matched: {}", result.matched);
    println!("improvement_ratio: {}", result.improvement_ratio);
    println!("iterations_run: {}", result.iterations_run);
    Ok(())
}

fn cmd_simulate(args: SimulateArgs) -> Result<()> {
    let mut config = if let Some(name) = &args.preset {
        ExperimentConfig::preset(name, 0).with_context(|| {
            format!(
                "unknown preset {name:?}; known presets: {}",
                ExperimentConfig::preset_names().join(", ")
            )
        })?
    } else if let Some(path) = &args.config {
        load_config(path)?
    } else if let (Some(rows), Some(cols), Some(select)) = (args.rows, args.cols, args.select) {
        ExperimentConfig {
            rows,
            cols,
            select,
            params: PowerParams { removals: 1, branches: select, max_rounds: Some(2) },
            trajectories: sim::DEFAULT_TRAJECTORIES,
            repeats: sim::DEFAULT_REPEATS,
            base_seed: 0,
            distribution: Default::default(),
        }
    } else {
        bail!("simulate needs --preset, --config, or all of --rows, --cols, and --select");
    };

    if let Some(remove) = args.remove {
        config.params.removals = remove;
    }
    if let Some(branches) = args.branches {
        config.params.branches = branches;
    }
    if let Some(power) = args.power {
        config.params.max_rounds = rounds(power);
    }
    if let Some(trajectories) = args.trajectories {
        config.trajectories = trajectories;
    }
    if let Some(repeats) = args.repeats {
        config.repeats = repeats;
    }
    if let Some(seed) = args.seed {
        config.base_seed = seed;
    } else if args.config.is_none() {
        config.base_seed = rand::random();
    }

    if config.select == 0 || config.select > config.cols {
        bail!("--select {} must be between 1 and --cols {}", config.select, config.cols);
    }
    check_remove(config.params.removals, config.select)?;
    config.validate()?;

    // resolved config on stderr so stdout stays machine-readable
    eprintln!("config: {}", serde_json::to_string(&config)?);
    eprintln!("seed: {}", config.base_seed);

    let report = sim::run_experiment(&config, args.workers)?;
    let body = match args.format {
        Format::Csv => report.to_csv(),
        Format::Json => {
            let mut json = report.to_json();
            json.push('\n');
            json
        }
    };
    match &args.output {
        Some(path) => {
            fs::write(path, &body)
                .with_context(|| format!("writing report to {}", path.display()))?;
            eprintln!("report written to {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    // a report wraps the config; accept both shapes
    let config_value = value.get("config").cloned().unwrap_or(value);
    serde_json::from_value(config_value)
        .with_context(|| format!("{} is not an experiment config", path.display()))
}

fn cmd_oracle_check(args: OracleCheckArgs) -> Result<()> {
    if args.select == 0 || args.select > args.cols {
        bail!("--select {} must be between 1 and --cols {}", args.select, args.cols);
    }
    let remove = args.remove.unwrap_or(args.select.saturating_sub(1).max(1));
    let branches = args.branches.unwrap_or_else(|| {
        power::removal_subset_count(args.select, remove).min(1 << 20) as usize
    });
    let params = PowerParams { removals: remove, branches, max_rounds: None };
    let seed = resolve_seed(args.seed);
    let report = oracle::compare_with_exact(
        args.rows,
        args.cols,
        args.select,
        args.trajectories,
        seed,
        &params,
        OracleBudget { max_subsets: args.budget },
    )?;

    let pct = |count: usize| 100.0 * count as f64 / report.instances as f64;
    println!("seed: {seed}");
    println!("instances: {}", report.instances);
    println!("greedy_matches_exact: {} ({:.1}%)", report.greedy_matches, pct(report.greedy_matches));
    println!("power_matches_exact: {} ({:.1}%)", report.power_matches, pct(report.power_matches));
    println!("power_above_greedy: {} ({:.1}%)", report.power_above_greedy, pct(report.power_above_greedy));
    println!("ordering_violations: {}", report.ordering_violations);
    println!("mean_exact_goal: {}", report.mean_exact_goal);
    println!("mean_greedy_goal: {}", report.mean_greedy_goal);
    println!("mean_power_goal: {}", report.mean_power_goal);
    Ok(())
}

fn cmd_split_prob(args: SplitProbArgs) -> Result<()> {
    println!("{}", power::split_probability(args.select, args.remove)?);
    Ok(())
}
