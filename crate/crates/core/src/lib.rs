//! Free-throw analytics: a closed-form ballistic model of the shot, landing
//! outcome classification, perturbation/error maps over launch space, a
//! gradient-descent launch optimizer, and the shooter quality metrics built
//! on top (command, consistency, touch, percentiles, split-half validity).
//!
//! Everything internal works in feet, seconds, and radians. Miles per hour
//! and degrees appear only at I/O boundaries (CSV files, CLI flags, archetype
//! definitions) and are converted on the way in and out.

pub mod data;
pub mod metrics;
pub mod optimizer;
pub mod physics;
pub mod units;

pub use data::{
    builtin_archetypes, eligible_players, filter_outliers, parse_archetypes, parse_shots,
    randomized_league, synthesize_shots, write_shots, DataError, GaussianSpec, OutlierReport,
    ParseMode, ParsedShots, PlayerArchetype, ShotRecord,
};
pub use metrics::{
    accuracy_stats, command, consistency, inconsistency_zscores, landing_deviation,
    league_metrics, pearson_r, percentile_rank, split_half_validity, touch, LandingPoint,
    MetricsError, PlayerAccuracy, PlayerMetrics, ValidityReport,
};
pub use optimizer::{
    loss, loss_gradient, optimize_launch, DescentSettings, DescentTrace, OptimizerError,
    TraceStep,
};
pub use physics::{
    classify_outcome, error_grid, error_propagation, flight_time, interpolate_rim_crossing,
    landing_x, outcome_grid, simulate_trajectory, AxisSpec, CourtGeometry, ErrorGrid,
    LaunchConditions, Outcome, OutcomeGrid, PhysicsError, RimCrossing, TrajectoryPoint,
};
