//! Command-line front end wiring the pipeline together: synthesize or
//! ingest shots, clean and rank them, sweep launch grids, and trace the
//! descent of a single shot onto the bullseye. Everything lands in
//! plot-ready CSV or JSON files; given the same flags and seed, every
//! subcommand writes byte-identical output regardless of thread count.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use freethrow::{
    builtin_archetypes, eligible_players, error_grid, filter_outliers, landing_x,
    league_metrics, optimize_launch, outcome_grid, parse_archetypes, parse_shots,
    randomized_league, simulate_trajectory, split_half_validity, synthesize_shots,
    write_shots, AxisSpec, CourtGeometry, DescentSettings, Outcome, LaunchConditions,
    ParseMode, PlayerArchetype, ShotRecord,
};
use freethrow::metrics::write_metrics_csv;
use freethrow::physics::write_trajectory_csv;

/// Step used when sampling trajectories for plotting, seconds.
const TRAJ_DT_S: f64 = 1e-3;

#[derive(Parser)]
#[command(name = "freethrow", version, about = "Free-throw launch physics, shot grids, and shooter quality metrics")]
struct Cli {
    /// Worker threads for grid sweeps and generation (0 or unset: automatic)
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// JSON file of court geometry overrides
    #[arg(long, global = true, value_name = "FILE")]
    geom: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic season of shots from player archetypes
    Synth(SynthArgs),
    /// Clean a shot CSV and rank every eligible player
    Metrics(MetricsArgs),
    /// Sweep a velocity-angle grid of launches
    #[command(subcommand)]
    Grid(GridCommand),
    /// Gradient-descend one launch onto the bullseye
    Optimize(OptimizeArgs),
    /// Split-half validity of FT% and command
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Archetype source: `builtin`, `random:<N>`, or a JSON file
    #[arg(long, default_value = "builtin")]
    players: String,

    /// Shots generated per player
    #[arg(long, default_value_t = 300)]
    shots: usize,

    /// RNG seed; fixes every draw in the run
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// First day of the simulated season
    #[arg(long, default_value = "2024-10-22")]
    start_date: NaiveDate,

    /// Last day of the simulated season
    #[arg(long, default_value = "2025-04-13")]
    end_date: NaiveDate,

    /// Output shot CSV
    #[arg(long = "out", value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct MetricsArgs {
    /// Input shot CSV
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,

    /// Output report CSV
    #[arg(long = "out", value_name = "FILE")]
    out: PathBuf,

    /// Attempts a player needs to be ranked
    #[arg(long, default_value_t = 200)]
    min_attempts: usize,

    /// Skip malformed rows instead of aborting
    #[arg(long)]
    lenient: bool,
}

#[derive(Subcommand)]
enum GridCommand {
    /// Classify the outcome of every launch in the grid
    Outcome(GridArgs),
    /// Worst-case landing shift under launch perturbations
    Error(ErrorGridArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Release distance from the basket center, feet
    #[arg(long, default_value_t = 18.4)]
    x0: f64,

    /// Release height, feet
    #[arg(long, default_value_t = 9.6)]
    z0: f64,

    /// Velocity axis, MPH, as MIN:MAX:STEP
    #[arg(long = "v-range", default_value = "13:16:0.01", value_name = "SPEC")]
    v_range: AxisSpec,

    /// Angle axis, degrees, as MIN:MAX:STEP
    #[arg(long = "theta-range", default_value = "35:60:0.1", value_name = "SPEC")]
    theta_range: AxisSpec,

    /// Output grid CSV; axis metadata lands next to it as .meta.json
    #[arg(long = "out", value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct ErrorGridArgs {
    #[command(flatten)]
    base: GridArgs,

    /// Velocity perturbation, MPH
    #[arg(long)]
    dv: f64,

    /// Angle perturbation, degrees
    #[arg(long)]
    dtheta: f64,
}

#[derive(Args)]
struct OptimizeArgs {
    /// Initial launch speed, MPH
    #[arg(long)]
    v0: f64,

    /// Initial launch angle, degrees
    #[arg(long)]
    theta0: f64,

    /// Release distance from the basket center, feet
    #[arg(long, default_value_t = 18.4)]
    x0: f64,

    /// Release height, feet
    #[arg(long, default_value_t = 9.6)]
    z0: f64,

    /// Convergence tolerance on the landing point, feet
    #[arg(long, default_value_t = 0.01)]
    tolerance: f64,

    /// Descent iteration cap
    #[arg(long, default_value_t = 10_000)]
    max_iters: usize,

    /// Output trace CSV; initial/final trajectories land next to it
    #[arg(long = "out", value_name = "FILE")]
    out: PathBuf,
}

#[derive(Args)]
struct ValidateArgs {
    /// Input shot CSV
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,

    /// Output JSON report (stdout when omitted)
    #[arg(long = "out", value_name = "FILE")]
    out: Option<PathBuf>,

    /// Season split date; earlier shots form the first half
    #[arg(long, default_value = "2024-11-15")]
    split_date: NaiveDate,

    /// Attempts a player needs on each side of the split
    #[arg(long, default_value_t = 50)]
    min_attempts: usize,

    /// Skip malformed rows instead of aborting
    #[arg(long)]
    lenient: bool,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("building the thread pool")?;
    }
    let geom = load_geometry(cli.geom.as_deref())?;
    match cli.command {
        Command::Synth(args) => cmd_synth(args, &geom),
        Command::Metrics(args) => cmd_metrics(args, &geom),
        Command::Grid(GridCommand::Outcome(args)) => cmd_grid_outcome(args, &geom),
        Command::Grid(GridCommand::Error(args)) => cmd_grid_error(args, &geom),
        Command::Optimize(args) => cmd_optimize(args, &geom),
        Command::Validate(args) => cmd_validate(args),
    }
}

fn load_geometry(path: Option<&Path>) -> Result<CourtGeometry> {
    match path {
        None => Ok(CourtGeometry::default()),
        Some(p) => {
            let json = std::fs::read_to_string(p)
                .with_context(|| format!("reading {}", p.display()))?;
            CourtGeometry::from_json_str(&json)
                .with_context(|| format!("geometry overrides in {}", p.display()))
        }
    }
}

fn create_out(path: &Path) -> Result<BufWriter<File>> {
    let file =
        File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

/// `report.csv` -> `report.meta.json`, next to the grid itself.
fn meta_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}

/// `trace.csv` -> `trace_traj_initial.csv` and friends.
fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().unwrap_or_default().to_string_lossy();
    out.with_file_name(format!("{stem}{suffix}.csv"))
}

fn write_json(value: &serde_json::Value, path: &Path) -> Result<()> {
    let mut w = create_out(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn resolve_archetypes(spec: &str, seed: u64) -> Result<Vec<PlayerArchetype>> {
    if spec == "builtin" {
        return Ok(builtin_archetypes());
    }
    if let Some(n) = spec.strip_prefix("random:") {
        let n: usize = n.parse().with_context(|| format!("bad league size `{n}`"))?;
        ensure!(n >= 1, "random league needs at least 1 player");
        return Ok(randomized_league(n, seed));
    }
    let file = File::open(spec).with_context(|| format!("opening {spec}"))?;
    let archetypes = parse_archetypes(BufReader::new(file))
        .with_context(|| format!("archetypes in {spec}"))?;
    ensure!(!archetypes.is_empty(), "{spec} holds no archetypes");
    Ok(archetypes)
}

fn cmd_synth(args: SynthArgs, geom: &CourtGeometry) -> Result<()> {
    ensure!(args.shots >= 1, "--shots must be at least 1");
    let archetypes = resolve_archetypes(&args.players, args.seed)?;
    let records = synthesize_shots(
        &archetypes,
        args.shots,
        args.seed,
        geom,
        args.start_date,
        args.end_date,
    )?;
    write_shots(&records, create_out(&args.out)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    let made = records.iter().filter(|r| r.made).count();
    println!(
        "wrote {} shots for {} players to {} (make rate {:.1}%)",
        records.len(),
        archetypes.len(),
        args.out.display(),
        100.0 * made as f64 / records.len() as f64
    );
    Ok(())
}

fn read_shots(path: &Path, lenient: bool) -> Result<Vec<ShotRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mode = if lenient { ParseMode::Lenient } else { ParseMode::Strict };
    let parsed = parse_shots(BufReader::new(file), mode)
        .with_context(|| format!("parsing {}", path.display()))?;
    if !parsed.skipped.is_empty() {
        eprintln!("warning: skipped {} malformed rows", parsed.skipped.len());
    }
    Ok(parsed.records)
}

fn cmd_metrics(args: MetricsArgs, geom: &CourtGeometry) -> Result<()> {
    let records = read_shots(&args.input, args.lenient)?;
    let (kept, report) = filter_outliers(&records)?;
    if report.n_removed > 0 {
        eprintln!("warning: removed {} outlier shots", report.n_removed);
    }
    let eligible = eligible_players(&kept, args.min_attempts);
    let ranked: Vec<ShotRecord> =
        kept.into_iter().filter(|r| eligible.contains(&r.player)).collect();
    if ranked.is_empty() {
        eprintln!(
            "warning: no player reached {} attempts; writing an empty report",
            args.min_attempts
        );
    }
    let rows = league_metrics(&ranked, geom)?;
    write_metrics_csv(&rows, create_out(&args.out)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "ranked {} players over {} shots to {}",
        rows.len(),
        ranked.len(),
        args.out.display()
    );
    Ok(())
}

fn axis_json(axis: &AxisSpec) -> serde_json::Value {
    serde_json::json!({ "min": axis.min, "max": axis.max, "step": axis.step })
}

fn cmd_grid_outcome(args: GridArgs, geom: &CourtGeometry) -> Result<()> {
    let grid = outcome_grid(args.v_range, args.theta_range, args.x0, args.z0, geom)?;
    grid.write_csv(create_out(&args.out)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    let meta = serde_json::json!({
        "kind": "outcome",
        "release": { "x0_ft": args.x0, "z0_ft": args.z0 },
        "v_axis_mph": axis_json(&args.v_range),
        "theta_axis_deg": axis_json(&args.theta_range),
        "outcome_codes": { "MISS": 0, "RIM": 1, "SWISH": 2 },
    });
    write_json(&meta, &meta_path(&args.out))?;
    let swishes = grid.cells.iter().filter(|&&c| c == Outcome::Swish).count();
    println!(
        "wrote {}x{} outcome grid to {} ({} swish cells)",
        grid.theta_axis.len(),
        grid.v_axis.len(),
        args.out.display(),
        swishes
    );
    Ok(())
}

fn cmd_grid_error(args: ErrorGridArgs, geom: &CourtGeometry) -> Result<()> {
    let base = args.base;
    let grid = error_grid(
        base.v_range,
        base.theta_range,
        base.x0,
        base.z0,
        args.dv,
        args.dtheta,
        geom,
    )?;
    grid.write_csv(create_out(&base.out)?)
        .with_context(|| format!("writing {}", base.out.display()))?;
    let meta = serde_json::json!({
        "kind": "error",
        "release": { "x0_ft": base.x0, "z0_ft": base.z0 },
        "v_axis_mph": axis_json(&base.v_range),
        "theta_axis_deg": axis_json(&base.theta_range),
        "dv_mph": args.dv,
        "dtheta_deg": args.dtheta,
        "amplifying_cells": grid.amplifying,
        "contours": {
            "bullseye": grid.bullseye_contour,
            "front_rim": grid.front_rim_contour,
            "back_rim": grid.back_rim_contour,
        },
    });
    write_json(&meta, &meta_path(&base.out))?;
    let max = grid.cells.iter().cloned().fold(0.0_f64, f64::max);
    println!(
        "wrote {}x{} error grid to {} (max shift {:.3} ft)",
        grid.theta_axis.len(),
        grid.v_axis.len(),
        base.out.display(),
        max
    );
    Ok(())
}

fn cmd_optimize(args: OptimizeArgs, geom: &CourtGeometry) -> Result<()> {
    let initial = LaunchConditions::from_mph_deg(args.x0, args.z0, args.v0, args.theta0);
    initial.validate(geom)?;
    let settings = DescentSettings {
        tolerance_ft: args.tolerance,
        max_iters: args.max_iters,
        ..DescentSettings::default()
    };
    let trace = optimize_launch(&initial, geom.bullseye_x_ft, geom, &settings)
        .context("descending toward the bullseye")?;
    trace.write_csv(create_out(&args.out)?)
        .with_context(|| format!("writing {}", args.out.display()))?;

    let initial_path = sibling(&args.out, "_traj_initial");
    let final_path = sibling(&args.out, "_traj_final");
    write_trajectory_csv(
        &simulate_trajectory(&initial, geom, TRAJ_DT_S)?,
        create_out(&initial_path)?,
    )
    .with_context(|| format!("writing {}", initial_path.display()))?;
    write_trajectory_csv(
        &simulate_trajectory(&trace.final_launch, geom, TRAJ_DT_S)?,
        create_out(&final_path)?,
    )
    .with_context(|| format!("writing {}", final_path.display()))?;

    let last = trace.final_step();
    let outcome = freethrow::classify_outcome(&trace.final_launch, geom);
    let crossing = landing_x(&trace.final_launch, geom)?;
    println!(
        "{} after {} steps: {:.2} MPH at {:.2} deg lands {:+.3} ft from the bullseye ({})",
        if trace.converged { "converged" } else { "did not converge" },
        last.iter,
        trace.final_launch.v0_mph(),
        trace.final_launch.theta0_deg(),
        crossing.x_f_ft - geom.bullseye_x_ft,
        outcome
    );
    println!(
        "trace: {}; trajectories: {}, {}",
        args.out.display(),
        initial_path.display(),
        final_path.display()
    );
    Ok(())
}

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let records = read_shots(&args.input, args.lenient)?;
    let report = split_half_validity(&records, args.split_date, args.min_attempts)
        .context("split-half validity")?;
    let json = serde_json::json!({
        "r_ftpct": report.r_ftpct,
        "r_command": report.r_command,
        "n_players": report.n_players,
    });
    match &args.out {
        Some(path) => {
            write_json(&json, path)?;
            println!(
                "split-half over {} players: r_ftpct {:.3}, r_command {:.3} -> {}",
                report.n_players,
                report.r_ftpct,
                report.r_command,
                path.display()
            );
        }
        None => println!("{}", serde_json::to_string_pretty(&json)?),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_args_parse() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("out/trace.csv"), "_traj_final"),
            Path::new("out/trace_traj_final.csv")
        );
        assert_eq!(meta_path(Path::new("out/grid.csv")), Path::new("out/grid.meta.json"));
    }
}
