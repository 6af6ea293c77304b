//! Closed-form 2D ballistic model of a free throw.
//!
//! The ball leaves the hand at (x0, z0) with speed v0 and angle theta0, flies
//! under gravity alone (no drag or spin), and is evaluated where it crosses
//! the rim plane z = rim_height on the way down. Everything downstream
//! (outcome classification, sensitivity maps, the launch optimizer) is built
//! on that single crossing.
//!
//! x is measured in feet from the baseline, so the ball travels toward
//! smaller x. All angles are radians and speeds feet/second internally.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::units;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PhysicsError {
    #[error("ball never reaches the rim plane")]
    NeverReachesRim,
    #[error("invalid axis spec: {0}")]
    InvalidAxisSpec(String),
    #[error("invalid trajectory step: {0}")]
    InvalidStep(f64),
    #[error("invalid launch conditions: {0}")]
    InvalidLaunch(String),
    #[error("invalid court geometry: {0}")]
    InvalidGeometry(String),
    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),
}

// --- court geometry ---

/// Rim, ball, and gravity constants shared by every physics operation.
///
/// Defaults are NBA regulation: 10 ft rim, 18 in rim diameter, 29.5 in ball
/// circumference. The bullseye is the ideal entry point, 2 inches behind the
/// rim center toward the backboard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CourtGeometry {
    pub rim_height_ft: f64,
    pub rim_center_x_ft: f64,
    pub rim_radius_ft: f64,
    pub ball_radius_ft: f64,
    pub bullseye_x_ft: f64,
    pub gravity_fps2: f64,
}

impl Default for CourtGeometry {
    fn default() -> Self {
        let rim_center_x_ft = 5.25;
        CourtGeometry {
            rim_height_ft: 10.0,
            rim_center_x_ft,
            rim_radius_ft: 0.75,
            ball_radius_ft: 29.5 / (24.0 * std::f64::consts::PI),
            bullseye_x_ft: rim_center_x_ft - 2.0 / 12.0,
            gravity_fps2: 32.174,
        }
    }
}

/// Partial geometry override, deserialized from a JSON file. Any field left
/// out keeps its default; an omitted bullseye is re-derived from the rim
/// center so the two cannot drift apart silently.
#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryOverrides {
    pub rim_height_ft: Option<f64>,
    pub rim_center_x_ft: Option<f64>,
    pub rim_radius_ft: Option<f64>,
    pub ball_radius_ft: Option<f64>,
    pub bullseye_x_ft: Option<f64>,
    pub gravity_fps2: Option<f64>,
}

impl CourtGeometry {
    /// x of the rim edge nearest the shooter.
    pub fn front_rim_x(&self) -> f64 {
        self.rim_center_x_ft + self.rim_radius_ft
    }

    /// x of the rim edge nearest the backboard.
    pub fn back_rim_x(&self) -> f64 {
        self.rim_center_x_ft - self.rim_radius_ft
    }

    pub fn with_overrides(ov: &GeometryOverrides) -> Result<Self, PhysicsError> {
        let base = CourtGeometry::default();
        let rim_center_x_ft = ov.rim_center_x_ft.unwrap_or(base.rim_center_x_ft);
        let geom = CourtGeometry {
            rim_height_ft: ov.rim_height_ft.unwrap_or(base.rim_height_ft),
            rim_center_x_ft,
            rim_radius_ft: ov.rim_radius_ft.unwrap_or(base.rim_radius_ft),
            ball_radius_ft: ov.ball_radius_ft.unwrap_or(base.ball_radius_ft),
            bullseye_x_ft: ov.bullseye_x_ft.unwrap_or(rim_center_x_ft - 2.0 / 12.0),
            gravity_fps2: ov.gravity_fps2.unwrap_or(base.gravity_fps2),
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn from_json_str(json: &str) -> Result<Self, PhysicsError> {
        let ov: GeometryOverrides = serde_json::from_str(json)
            .map_err(|e| PhysicsError::InvalidGeometry(e.to_string()))?;
        Self::with_overrides(&ov)
    }

    pub fn validate(&self) -> Result<(), PhysicsError> {
        let fields = [
            ("rim_height_ft", self.rim_height_ft),
            ("rim_center_x_ft", self.rim_center_x_ft),
            ("rim_radius_ft", self.rim_radius_ft),
            ("ball_radius_ft", self.ball_radius_ft),
            ("bullseye_x_ft", self.bullseye_x_ft),
            ("gravity_fps2", self.gravity_fps2),
        ];
        for (name, v) in fields {
            if !v.is_finite() || v <= 0.0 {
                return Err(PhysicsError::InvalidGeometry(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        if self.ball_radius_ft >= self.rim_radius_ft {
            return Err(PhysicsError::InvalidGeometry(format!(
                "ball radius {} must be smaller than rim radius {}",
                self.ball_radius_ft, self.rim_radius_ft
            )));
        }
        let expected_bullseye = self.rim_center_x_ft - 2.0 / 12.0;
        if (self.bullseye_x_ft - expected_bullseye).abs() > 1e-9 {
            return Err(PhysicsError::InvalidGeometry(format!(
                "bullseye_x_ft {} must sit 2 inches behind the rim center (expected {})",
                self.bullseye_x_ft, expected_bullseye
            )));
        }
        Ok(())
    }
}

// --- launch conditions ---

/// Release state of a single attempt. Stored in internal units; use the
/// `*_mph` / `*_deg` accessors and `from_mph_deg` at I/O boundaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaunchConditions {
    /// Horizontal release distance from the baseline, feet.
    pub x0_ft: f64,
    /// Release height above the floor, feet.
    pub z0_ft: f64,
    /// Launch speed, feet/second.
    pub v0_fps: f64,
    /// Launch angle above horizontal, radians.
    pub theta0_rad: f64,
}

impl LaunchConditions {
    pub fn new(x0_ft: f64, z0_ft: f64, v0_fps: f64, theta0_rad: f64) -> Self {
        LaunchConditions { x0_ft, z0_ft, v0_fps, theta0_rad }
    }

    pub fn from_mph_deg(x0_ft: f64, z0_ft: f64, v0_mph: f64, theta0_deg: f64) -> Self {
        LaunchConditions {
            x0_ft,
            z0_ft,
            v0_fps: units::mph_to_fps(v0_mph),
            theta0_rad: theta0_deg.to_radians(),
        }
    }

    pub fn v0_mph(&self) -> f64 {
        units::fps_to_mph(self.v0_fps)
    }

    pub fn theta0_deg(&self) -> f64 {
        self.theta0_rad.to_degrees()
    }

    /// Checks the launch is physically sensible: positive speed, angle in
    /// (0, 90] degrees, release above the floor and behind the rim center.
    /// 90 degrees (straight up) is admitted as a degenerate but well-defined
    /// edge so vertical-launch paths stay exercisable.
    pub fn validate(&self, geom: &CourtGeometry) -> Result<(), PhysicsError> {
        let all = [self.x0_ft, self.z0_ft, self.v0_fps, self.theta0_rad];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(PhysicsError::InvalidLaunch("non-finite field".into()));
        }
        if self.v0_fps <= 0.0 {
            return Err(PhysicsError::InvalidLaunch(format!(
                "v0 must be positive, got {} ft/s",
                self.v0_fps
            )));
        }
        if self.theta0_rad <= 0.0 || self.theta0_rad > std::f64::consts::FRAC_PI_2 {
            return Err(PhysicsError::InvalidLaunch(format!(
                "theta0 must lie in (0, 90] degrees, got {}",
                self.theta0_deg()
            )));
        }
        if self.z0_ft <= 0.0 {
            return Err(PhysicsError::InvalidLaunch(format!(
                "z0 must be positive, got {} ft",
                self.z0_ft
            )));
        }
        if self.x0_ft <= geom.rim_center_x_ft {
            return Err(PhysicsError::InvalidLaunch(format!(
                "x0 {} must be behind the rim center at {}",
                self.x0_ft, geom.rim_center_x_ft
            )));
        }
        Ok(())
    }
}

// --- rim-plane crossing ---

/// State of the ball as it crosses the rim plane on the way down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RimCrossing {
    /// Horizontal position at rim height, feet from the baseline.
    pub x_f_ft: f64,
    /// Flight time to the crossing, seconds.
    pub dt_s: f64,
    /// Descent angle below horizontal, radians.
    pub gamma_rad: f64,
    /// Velocity components at the crossing, feet/second.
    pub vx_fps: f64,
    pub vz_fps: f64,
}

/// Time for the ball to descend through the rim plane.
///
/// Vertical motion gives z(t) = z0 + v0 sin(theta) t - g t^2 / 2; setting
/// z = rim height and taking the later quadratic root selects the descending
/// crossing. The discriminant going negative means the apex stays below the
/// rim plane.
pub fn flight_time(launch: &LaunchConditions, geom: &CourtGeometry) -> Result<f64, PhysicsError> {
    let g = geom.gravity_fps2;
    let vz0 = launch.v0_fps * launch.theta0_rad.sin();
    let dz = geom.rim_height_ft - launch.z0_ft;
    let disc = vz0 * vz0 - 2.0 * g * dz;
    if disc < 0.0 {
        return Err(PhysicsError::NeverReachesRim);
    }
    Ok((vz0 + disc.sqrt()) / g)
}

/// Landing state at the rim plane: x_f = x0 - v0 cos(theta) dt, with the
/// descent angle gamma taken from the velocity at the crossing.
pub fn landing_x(launch: &LaunchConditions, geom: &CourtGeometry) -> Result<RimCrossing, PhysicsError> {
    let dt = flight_time(launch, geom)?;
    let vx = launch.v0_fps * launch.theta0_rad.cos();
    let vz0 = launch.v0_fps * launch.theta0_rad.sin();
    let vz_f = vz0 - geom.gravity_fps2 * dt;
    Ok(RimCrossing {
        x_f_ft: launch.x0_ft - vx * dt,
        dt_s: dt,
        gamma_rad: (-vz_f).atan2(vx),
        vx_fps: vx,
        vz_fps: vz_f,
    })
}

// --- outcome classification ---

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Miss,
    RimContact,
    Swish,
}

impl Outcome {
    /// Numeric cell code used in grid CSV exports: 0 miss, 1 rim, 2 swish.
    pub fn code(&self) -> u8 {
        match self {
            Outcome::Miss => 0,
            Outcome::RimContact => 1,
            Outcome::Swish => 2,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Miss => "MISS",
            Outcome::RimContact => "RIM",
            Outcome::Swish => "SWISH",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "SWISH" => Ok(Outcome::Swish),
            "RIM" => Ok(Outcome::RimContact),
            "MISS" => Ok(Outcome::Miss),
            other => Err(format!("unknown outcome {other:?}")),
        }
    }
}

/// Classifies a launch as swish, rim contact, or miss.
///
/// Near the rim plane the path is treated as a straight line at the descent
/// angle gamma. The perpendicular distance from each rim edge point to that
/// line decides contact: the front edge must clear by a full ball radius for
/// a swish, and the center must land at or beyond the back edge. A path
/// passing within one ball radius of either edge is rim contact. Everything
/// else, including a ball that never reaches the rim plane, is a miss.
pub fn classify_outcome(launch: &LaunchConditions, geom: &CourtGeometry) -> Outcome {
    let crossing = match landing_x(launch, geom) {
        Ok(c) => c,
        Err(_) => return Outcome::Miss,
    };
    let x_f = crossing.x_f_ft;
    let sin_gamma = crossing.gamma_rad.sin();
    let d_front = (geom.front_rim_x() - x_f) * sin_gamma;
    let d_back = (x_f - geom.back_rim_x()) * sin_gamma;
    if d_front >= geom.ball_radius_ft && x_f >= geom.back_rim_x() {
        Outcome::Swish
    } else if d_front.abs() < geom.ball_radius_ft || d_back.abs() < geom.ball_radius_ft {
        Outcome::RimContact
    } else {
        Outcome::Miss
    }
}

// --- axis specs and grids ---

/// Inclusive sampling axis `min..=max` in uniform steps, parsed from the
/// CLI form `MIN:MAX:STEP`. Units are whatever the consumer says they are
/// (MPH for velocity axes, degrees for angle axes).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, step: f64) -> Result<Self, PhysicsError> {
        let spec = AxisSpec { min, max, step };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), PhysicsError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.step.is_finite()) {
            return Err(PhysicsError::InvalidAxisSpec("non-finite bound or step".into()));
        }
        if self.step <= 0.0 {
            return Err(PhysicsError::InvalidAxisSpec(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if self.min > self.max {
            return Err(PhysicsError::InvalidAxisSpec(format!(
                "min {} exceeds max {}",
                self.min, self.max
            )));
        }
        Ok(())
    }

    /// Number of samples, endpoints inclusive. A small slack absorbs float
    /// noise in (max - min) / step so [13, 16] at step 0.01 has 301 samples.
    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: usize) -> f64 {
        self.min + self.step * i as f64
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.value(i))
    }
}

impl FromStr for AxisSpec {
    type Err = PhysicsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(PhysicsError::InvalidAxisSpec(format!(
                "expected MIN:MAX:STEP, got {s:?}"
            )));
        }
        let mut nums = [0.0f64; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| PhysicsError::InvalidAxisSpec(format!("bad number {part:?}")))?;
        }
        AxisSpec::new(nums[0], nums[1], nums[2])
    }
}

/// Dense raster of classified outcomes over launch space at a fixed release
/// point. Cells are row-major with theta as the outer axis.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeGrid {
    pub v_axis: AxisSpec,
    pub theta_axis: AxisSpec,
    pub x0_ft: f64,
    pub z0_ft: f64,
    pub cells: Vec<Outcome>,
}

impl OutcomeGrid {
    pub fn cell(&self, theta_idx: usize, v_idx: usize) -> Outcome {
        self.cells[theta_idx * self.v_axis.len() + v_idx]
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "v_mph,theta_deg,value")?;
        let nv = self.v_axis.len();
        for (i, cell) in self.cells.iter().enumerate() {
            let v = self.v_axis.value(i % nv);
            let theta = self.theta_axis.value(i / nv);
            writeln!(w, "{v:.6},{theta:.6},{}", cell.code())?;
        }
        Ok(())
    }
}

/// One classify_outcome call per cell, evaluated in parallel. Cell order and
/// content are independent of the number of worker threads.
pub fn outcome_grid(
    v_spec: AxisSpec,
    theta_spec: AxisSpec,
    x0_ft: f64,
    z0_ft: f64,
    geom: &CourtGeometry,
) -> Result<OutcomeGrid, PhysicsError> {
    v_spec.validate()?;
    theta_spec.validate()?;
    let nv = v_spec.len();
    let n = nv * theta_spec.len();
    let cells = (0..n)
        .into_par_iter()
        .map(|idx| {
            let launch = LaunchConditions::from_mph_deg(
                x0_ft,
                z0_ft,
                v_spec.value(idx % nv),
                theta_spec.value(idx / nv),
            );
            classify_outcome(&launch, geom)
        })
        .collect();
    Ok(OutcomeGrid { v_axis: v_spec, theta_axis: theta_spec, x0_ft, z0_ft, cells })
}

// --- error propagation ---

/// Worst-case landing shift under fixed launch perturbations.
///
/// Evaluates the four sign corners (v0 +/- dv, theta0 +/- dtheta) and
/// returns the largest |x_f(perturbed) - x_f(unperturbed)|. A corner whose
/// perturbed shot cannot reach the rim plane (or leaves the valid launch
/// domain) makes the result infinite; grid assembly later replaces such
/// cells with a finite sentinel and flags them.
pub fn error_propagation(
    launch: &LaunchConditions,
    dv_mph: f64,
    dtheta_deg: f64,
    geom: &CourtGeometry,
) -> Result<f64, PhysicsError> {
    if !(dv_mph >= 0.0 && dtheta_deg >= 0.0) || !dv_mph.is_finite() || !dtheta_deg.is_finite() {
        return Err(PhysicsError::InvalidPerturbation(format!(
            "perturbations must be nonnegative and finite, got dv {dv_mph} mph, dtheta {dtheta_deg} deg"
        )));
    }
    let base = landing_uninlined(launch, geom)?.x_f_ft;
    if dv_mph == 0.0 && dtheta_deg == 0.0 {
        return Ok(0.0);
    }
    let dv = units::mph_to_fps(dv_mph);
    let dtheta = dtheta_deg.to_radians();
    let mut worst: f64 = 0.0;
    for sv in [1.0, -1.0] {
        for st in [1.0, -1.0] {
            let corner = LaunchConditions {
                v0_fps: launch.v0_fps + sv * dv,
                theta0_rad: launch.theta0_rad + st * dtheta,
                ..*launch
            };
            let shift = if corner.validate(geom).is_err() {
                f64::INFINITY
            } else {
                match landing_uninlined(&corner, geom) {
                    Ok(crossing) => (crossing.x_f_ft - base).abs(),
                    Err(_) => f64::INFINITY,
                }
            };
            worst = worst.max(shift);
        }
    }
    Ok(worst)
}

/// landing_x behind an inlining barrier, so the base and corner evaluations
/// above run through one machine-code instance. Inlined separately, the
/// optimizer may fuse the sin/cos pair into a sincos call at one site and
/// not the other, and the two can disagree in the last ulp, which shows up
/// as a phantom nonzero shift for identical launches.
#[inline(never)]
fn landing_uninlined(
    launch: &LaunchConditions,
    geom: &CourtGeometry,
) -> Result<RimCrossing, PhysicsError> {
    landing_x(launch, geom)
}

/// Raster of propagated landing deviations, plus the contour cell lists the
/// plots overlay: launches landing on the bullseye and on the front and back
/// rim edges. `amplifying` lists cells whose true value was unreachable or
/// infinite and was substituted with the grid's maximum finite value.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorGrid {
    pub v_axis: AxisSpec,
    pub theta_axis: AxisSpec,
    pub x0_ft: f64,
    pub z0_ft: f64,
    pub dv_mph: f64,
    pub dtheta_deg: f64,
    pub cells: Vec<f64>,
    pub amplifying: Vec<usize>,
    pub bullseye_contour: Vec<usize>,
    pub front_rim_contour: Vec<usize>,
    pub back_rim_contour: Vec<usize>,
}

impl ErrorGrid {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "v_mph,theta_deg,value")?;
        let nv = self.v_axis.len();
        for (i, cell) in self.cells.iter().enumerate() {
            let v = self.v_axis.value(i % nv);
            let theta = self.theta_axis.value(i / nv);
            writeln!(w, "{v:.6},{theta:.6},{cell:.6}")?;
        }
        Ok(())
    }
}

/// Per-cell scratch used while assembling an ErrorGrid.
struct ErrorCell {
    value: Option<f64>,
    center_x_f: Option<f64>,
    landing_span: f64,
}

/// error_propagation per cell over the grid, with contour extraction.
///
/// A cell sits on a contour when its center landing position is within half
/// the cell's own landing span (the spread of x_f across the cell's corner
/// launches) of the target line, so contour thickness tracks cell size.
pub fn error_grid(
    v_spec: AxisSpec,
    theta_spec: AxisSpec,
    x0_ft: f64,
    z0_ft: f64,
    dv_mph: f64,
    dtheta_deg: f64,
    geom: &CourtGeometry,
) -> Result<ErrorGrid, PhysicsError> {
    v_spec.validate()?;
    theta_spec.validate()?;
    if !(dv_mph >= 0.0 && dtheta_deg >= 0.0) || !dv_mph.is_finite() || !dtheta_deg.is_finite() {
        return Err(PhysicsError::InvalidPerturbation(format!(
            "perturbations must be nonnegative and finite, got dv {dv_mph} mph, dtheta {dtheta_deg} deg"
        )));
    }
    let nv = v_spec.len();
    let n = nv * theta_spec.len();
    let geom = *geom;
    let scratch: Vec<ErrorCell> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let v_mph = v_spec.value(idx % nv);
            let theta_deg = theta_spec.value(idx / nv);
            let launch = LaunchConditions::from_mph_deg(x0_ft, z0_ft, v_mph, theta_deg);
            let value = error_propagation(&launch, dv_mph, dtheta_deg, &geom).ok();
            let center_x_f = landing_x(&launch, &geom).ok().map(|c| c.x_f_ft);
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            if let Some(x_f) = center_x_f {
                lo = x_f;
                hi = x_f;
                for (sv, st) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                    let corner = LaunchConditions::from_mph_deg(
                        x0_ft,
                        z0_ft,
                        v_mph + sv * v_spec.step / 2.0,
                        theta_deg + st * theta_spec.step / 2.0,
                    );
                    if corner.validate(&geom).is_ok() {
                        if let Ok(crossing) = landing_x(&corner, &geom) {
                            lo = lo.min(crossing.x_f_ft);
                            hi = hi.max(crossing.x_f_ft);
                        }
                    }
                }
            }
            ErrorCell { value, center_x_f, landing_span: (hi - lo).max(0.0) }
        })
        .collect();

    let max_finite = scratch
        .iter()
        .filter_map(|c| c.value)
        .filter(|v| v.is_finite())
        .fold(0.0f64, f64::max);
    let mut cells = Vec::with_capacity(n);
    let mut amplifying = Vec::new();
    let mut bullseye_contour = Vec::new();
    let mut front_rim_contour = Vec::new();
    let mut back_rim_contour = Vec::new();
    for (idx, cell) in scratch.iter().enumerate() {
        match cell.value {
            Some(v) if v.is_finite() => cells.push(v),
            _ => {
                cells.push(max_finite);
                amplifying.push(idx);
            }
        }
        if let Some(x_f) = cell.center_x_f {
            let half_span = cell.landing_span / 2.0;
            for (target, list) in [
                (geom.bullseye_x_ft, &mut bullseye_contour),
                (geom.front_rim_x(), &mut front_rim_contour),
                (geom.back_rim_x(), &mut back_rim_contour),
            ] {
                if (x_f - target).abs() < half_span {
                    list.push(idx);
                }
            }
        }
    }
    Ok(ErrorGrid {
        v_axis: v_spec,
        theta_axis: theta_spec,
        x0_ft,
        z0_ft,
        dv_mph,
        dtheta_deg,
        cells,
        amplifying,
        bullseye_contour,
        front_rim_contour,
        back_rim_contour,
    })
}

// --- trajectory sampling ---

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t_s: f64,
    pub x_ft: f64,
    pub z_ft: f64,
}

/// Samples the flight path at fixed time steps until the ball drops below
/// the floor or passes the baseline. The last sample is the first one out of
/// bounds. Positions are the exact kinematic expressions evaluated per
/// sample, which makes this an oracle for landing_x through a code path that
/// never touches the closed-form flight-time solution.
pub fn simulate_trajectory(
    launch: &LaunchConditions,
    geom: &CourtGeometry,
    dt_step: f64,
) -> Result<Vec<TrajectoryPoint>, PhysicsError> {
    if dt_step <= 0.0 || !dt_step.is_finite() {
        return Err(PhysicsError::InvalidStep(dt_step));
    }
    let g = geom.gravity_fps2;
    let vx = launch.v0_fps * launch.theta0_rad.cos();
    let vz0 = launch.v0_fps * launch.theta0_rad.sin();
    let mut samples = Vec::new();
    let mut i: u64 = 0;
    loop {
        let t = i as f64 * dt_step;
        let x = launch.x0_ft - vx * t;
        let z = launch.z0_ft + vz0 * t - 0.5 * g * t * t;
        samples.push(TrajectoryPoint { t_s: t, x_ft: x, z_ft: z });
        if z < 0.0 || x < 0.0 {
            break;
        }
        i += 1;
    }
    Ok(samples)
}

/// Finds the descending crossing of the horizontal plane `z_plane` in a
/// sampled trajectory and linearly interpolates (t, x) at the crossing.
/// Returns None when the trajectory never descends through the plane.
pub fn interpolate_rim_crossing(samples: &[TrajectoryPoint], z_plane: f64) -> Option<(f64, f64)> {
    for pair in samples.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.z_ft >= z_plane && b.z_ft < z_plane {
            let f = (a.z_ft - z_plane) / (a.z_ft - b.z_ft);
            return Some((a.t_s + f * (b.t_s - a.t_s), a.x_ft + f * (b.x_ft - a.x_ft)));
        }
    }
    None
}

pub fn write_trajectory_csv<W: Write>(samples: &[TrajectoryPoint], mut w: W) -> io::Result<()> {
    writeln!(w, "t_s,x_ft,z_ft")?;
    for p in samples {
        writeln!(w, "{:.6},{:.6},{:.6}", p.t_s, p.x_ft, p.z_ft)?;
    }
    Ok(())
}
