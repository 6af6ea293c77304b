//! Gradient descent over (v0, theta0) that drives the landing position onto
//! the bullseye, with a squared-error loss on x_f and analytic partials of
//! the closed-form flight solution.

use std::io::{self, Write};

use thiserror::Error;

use crate::physics::{landing_x, CourtGeometry, LaunchConditions, PhysicsError};

/// Discriminant floor below which the square-root derivative terms are
/// numerically untrustworthy (the gradient diverges at the reachability
/// boundary).
pub const EPS_DISC: f64 = 1e-9;

const MAX_HALVINGS: u32 = 30;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizerError {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error("launch sits too close to the reachability boundary for a stable gradient")]
    NearSingularDiscriminant,
    #[error("invalid descent settings: {0}")]
    InvalidSettings(String),
}

/// Hyperparameters for optimize_launch. The two learning rates differ by an
/// order of magnitude because v0 (ft/s) and theta0 (rad) live on different
/// scales; backtracking keeps the loss monotone regardless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescentSettings {
    pub learning_rate_v: f64,
    pub learning_rate_theta: f64,
    pub max_iters: usize,
    pub tolerance_ft: f64,
}

impl Default for DescentSettings {
    fn default() -> Self {
        DescentSettings {
            learning_rate_v: 1e-2,
            learning_rate_theta: 1e-3,
            max_iters: 10_000,
            tolerance_ft: 0.01,
        }
    }
}

impl DescentSettings {
    pub fn validate(&self) -> Result<(), OptimizerError> {
        if !(self.learning_rate_v > 0.0 && self.learning_rate_v.is_finite()) {
            return Err(OptimizerError::InvalidSettings(format!(
                "learning_rate_v must be positive, got {}",
                self.learning_rate_v
            )));
        }
        if !(self.learning_rate_theta > 0.0 && self.learning_rate_theta.is_finite()) {
            return Err(OptimizerError::InvalidSettings(format!(
                "learning_rate_theta must be positive, got {}",
                self.learning_rate_theta
            )));
        }
        if self.max_iters < 1 {
            return Err(OptimizerError::InvalidSettings("max_iters must be at least 1".into()));
        }
        if !(self.tolerance_ft > 0.0 && self.tolerance_ft.is_finite()) {
            return Err(OptimizerError::InvalidSettings(format!(
                "tolerance_ft must be positive, got {}",
                self.tolerance_ft
            )));
        }
        Ok(())
    }
}

/// One accepted point along the descent, including the starting point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub iter: usize,
    pub launch: LaunchConditions,
    pub x_f_ft: f64,
    pub loss: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentTrace {
    pub steps: Vec<TraceStep>,
    pub converged: bool,
    pub final_launch: LaunchConditions,
}

impl DescentTrace {
    pub fn final_step(&self) -> &TraceStep {
        self.steps.last().expect("trace always holds the starting point")
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "iter,v_mph,theta_deg,xf_ft,loss")?;
        for s in &self.steps {
            writeln!(
                w,
                "{},{:.6},{:.6},{:.6},{:.6}",
                s.iter,
                s.launch.v0_mph(),
                s.launch.theta0_deg(),
                s.x_f_ft,
                s.loss
            )?;
        }
        Ok(())
    }
}

/// L = (x_f - x_g)^2 / 2, in square feet.
pub fn loss(x_f_ft: f64, x_g_ft: f64) -> f64 {
    let d = x_f_ft - x_g_ft;
    0.5 * d * d
}

/// Analytic gradient (dL/dv0, dL/dtheta0) in internal units (per ft/s, per
/// radian).
///
/// With q = v sin(theta), c = cos(theta), r = sqrt(q^2 - 2 g dz) and
/// dt = (q + r)/g, the chain rule through x_f = x0 - v c dt collapses to
///
///   dx_f/dv     = -c (q + r)^2 / (r g)
///   dx_f/dtheta = v (q + r) (s r - v c^2) / (r g)
///
/// and dL/dp = (x_f - x_g) dx_f/dp.
pub fn loss_gradient(
    launch: &LaunchConditions,
    x_g_ft: f64,
    geom: &CourtGeometry,
) -> Result<(f64, f64), OptimizerError> {
    let g = geom.gravity_fps2;
    let v = launch.v0_fps;
    let s = launch.theta0_rad.sin();
    let c = launch.theta0_rad.cos();
    let q = v * s;
    let disc = q * q - 2.0 * g * (geom.rim_height_ft - launch.z0_ft);
    if disc < 0.0 {
        return Err(PhysicsError::NeverReachesRim.into());
    }
    if disc < EPS_DISC {
        return Err(OptimizerError::NearSingularDiscriminant);
    }
    let r = disc.sqrt();
    let dt = (q + r) / g;
    let x_f = launch.x0_ft - v * c * dt;
    let dxf_dv = -c * (q + r) * (q + r) / (r * g);
    let dxf_dtheta = v * (q + r) * (s * r - v * c * c) / (r * g);
    let residual = x_f - x_g_ft;
    Ok((residual * dxf_dv, residual * dxf_dtheta))
}

/// Gradient descent from `initial` toward landing at x_g.
///
/// Each iteration takes the analytic gradient step scaled by the per-axis
/// learning rates, halving the step (up to 30 times) until the loss does not
/// increase and the candidate stays inside the reachable launch domain.
/// Stops when |x_f - x_g| drops below tolerance, when no acceptable step
/// exists, or at max_iters; non-convergence is reported in the trace, not as
/// an error.
pub fn optimize_launch(
    initial: &LaunchConditions,
    x_g_ft: f64,
    geom: &CourtGeometry,
    settings: &DescentSettings,
) -> Result<DescentTrace, OptimizerError> {
    settings.validate()?;
    let crossing = landing_x(initial, geom)?;
    let mut cur = *initial;
    let mut cur_loss = loss(crossing.x_f_ft, x_g_ft);
    let mut steps =
        vec![TraceStep { iter: 0, launch: cur, x_f_ft: crossing.x_f_ft, loss: cur_loss }];
    let mut converged = (crossing.x_f_ft - x_g_ft).abs() < settings.tolerance_ft;

    for iter in 1..=settings.max_iters {
        if converged {
            break;
        }
        let (grad_v, grad_theta) = match loss_gradient(&cur, x_g_ft, geom) {
            Ok(g) => g,
            Err(_) => break,
        };
        let mut accepted = None;
        let mut scale = 1.0;
        for _ in 0..=MAX_HALVINGS {
            let cand = LaunchConditions {
                v0_fps: cur.v0_fps - scale * settings.learning_rate_v * grad_v,
                theta0_rad: cur.theta0_rad - scale * settings.learning_rate_theta * grad_theta,
                ..cur
            };
            if cand.validate(geom).is_ok() {
                if let Ok(c) = landing_x(&cand, geom) {
                    let l = loss(c.x_f_ft, x_g_ft);
                    if l <= cur_loss {
                        accepted = Some((cand, c.x_f_ft, l));
                        break;
                    }
                }
            }
            scale *= 0.5;
        }
        let Some((cand, x_f, l)) = accepted else {
            break;
        };
        cur = cand;
        cur_loss = l;
        steps.push(TraceStep { iter, launch: cur, x_f_ft: x_f, loss: l });
        converged = (x_f - x_g_ft).abs() < settings.tolerance_ft;
    }

    Ok(DescentTrace { steps, converged, final_launch: cur })
}
