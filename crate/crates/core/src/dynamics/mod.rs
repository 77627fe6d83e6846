//! Drag-damped rigid-body motion under radiation force and torque.

mod step;

pub use step::{step, RigidBody, RigidBodyState};

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::geometry::mass_properties;
use crate::radforce::{radiation_force_torque, Particle};
use crate::transform::{rotation_to_euler, Orientation};
use crate::wavefield::{Medium, Source};

/// Time-stepping controls.
#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsParams {
    /// Particle density, kg/m³.
    pub rho_p: f64,
    /// Gravitational acceleration along `-z`, m/s².
    pub gravity: f64,
    pub dt: f64,
    pub t_end: f64,
    /// Relative change below which a coordinate counts as settled.
    pub rel_tol: f64,
    /// Smallest allowed height above the transducer plane, m.
    pub min_interdistance: f64,
    pub position_floor: f64,
    pub angle_floor: f64,
    /// Weigh the particle as a sphere of the averaged radius.
    pub sphere_weight_surrogate: bool,
}

impl DynamicsParams {
    pub fn new(rho_p: f64, dt: f64, t_end: f64) -> Self {
        DynamicsParams {
            rho_p,
            gravity: 9.81,
            dt,
            t_end,
            rel_tol: 0.05,
            min_interdistance: 0.010,
            position_floor: 1e-6,
            angle_floor: 1e-4,
            sphere_weight_surrogate: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.dt) || !(self.t_end >= self.dt) || !self.t_end.is_finite() {
            return Err(Error::Domain(format!("need 0 < dt <= t_end, got dt = {}, t_end = {}", self.dt, self.t_end)));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(Error::Domain(format!("relative tolerance must lie in (0, 1), got {}", self.rel_tol)));
        }
        if !positive(self.rho_p) || !self.gravity.is_finite() {
            return Err(Error::Domain("density must be positive and gravity finite".into()));
        }
        if !positive(self.position_floor) || !positive(self.angle_floor) || !(self.min_interdistance >= 0.0) {
            return Err(Error::Domain("termination floors must be positive".into()));
        }
        Ok(())
    }
}

/// Everything `simulate` needs besides the stepping controls.
#[derive(Debug, Clone)]
pub struct Scene {
    pub particle: Particle,
    pub medium: Medium,
    pub frequency: f64,
    pub source: Source,
    pub initial_position: Vector3<f64>,
    pub initial_orientation: Orientation,
    /// Stress-quadrature radius; defaults to twice the maximum radius.
    pub force_radius: Option<f64>,
    /// Replaces the averaged radius `c_1` in drag and surrogate weight.
    pub drag_radius: Option<f64>,
}

impl Scene {
    pub fn rigid_body(&self, params: &DynamicsParams) -> Result<RigidBody> {
        let a = self.drag_radius.unwrap_or_else(|| self.particle.shape.averaged_radius());
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Domain(format!("drag radius must be positive, got {a}")));
        }
        let mut mass = mass_properties(&self.particle.shape, params.rho_p, params.sphere_weight_surrogate)?;
        if params.sphere_weight_surrogate {
            mass.weight_mass = params.rho_p * 4.0 / 3.0 * PI * a.powi(3);
        }
        Ok(RigidBody { mass, drag_radius: a })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// Every coordinate changed by less than the relative tolerance on two consecutive steps.
    Converged,
    ReachedEnd,
    BelowMinInterdistance,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Converged => "converged_5pct",
            Termination::ReachedEnd => "reached_t_end",
            Termination::BelowMinInterdistance => "below_min_interdistance",
        })
    }
}

/// One reported pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub time: f64,
    pub position: Vector3<f64>,
    /// `(θx, θy, θz)`, continuous along the trajectory.
    pub angles: [f64; 3],
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub records: Vec<TrajectoryRecord>,
    pub termination: Termination,
    pub final_state: RigidBodyState,
}

/// Angles of `r` on the branch closest to `previous`.
///
/// Both Euler branches `(x, y, z)` and `(x + π, π - y, z + π)` are unwrapped
/// towards `previous`; at gimbal lock the previous `θz` is kept.
pub fn continuous_euler(r: &Matrix3<f64>, previous: [f64; 3]) -> [f64; 3] {
    let near = |a: f64, target: f64| a + (2.0 * PI) * ((target - a) / (2.0 * PI)).round();
    let [x, y, z] = rotation_to_euler(r);
    if r[(2, 1)].hypot(r[(2, 2)]) < 1e-12 {
        // Only θx - θz (θy = π/2) or θx + θz (θy = -π/2) is defined.
        let zp = previous[2];
        let xp = if y > 0.0 { x + zp } else { x - zp };
        return [near(xp, previous[0]), y, zp];
    }
    let branches = [[x, y, z], [x + PI, PI - y, z + PI]];
    let mut best = [0.0; 3];
    let mut best_distance = f64::INFINITY;
    for b in branches {
        let c = [near(b[0], previous[0]), near(b[1], previous[1]), near(b[2], previous[2])];
        let d: f64 = (0..3).map(|i| (c[i] - previous[i]).powi(2)).sum();
        if d < best_distance {
            best_distance = d;
            best = c;
        }
    }
    best
}

fn settled(previous: &TrajectoryRecord, current: &TrajectoryRecord, params: &DynamicsParams) -> bool {
    let small = |old: f64, new: f64, floor: f64| (new - old).abs() / new.abs().max(floor) < params.rel_tol;
    (0..3).all(|i| small(previous.position[i], current.position[i], params.position_floor))
        && (0..3).all(|i| small(previous.angles[i], current.angles[i], params.angle_floor))
}

/// Integrates the scene until the pose settles, `t_end` is reached, or the
/// particle comes within `min_interdistance` of the transducer plane.
///
/// Each step re-expands the incident field about the current center, scatters
/// it at the current orientation and integrates the momentum flux.
pub fn simulate(scene: &Scene, params: &DynamicsParams) -> Result<Trajectory> {
    params.validate()?;
    let body = scene.rigid_body(params)?;
    let field = scene.source.field(&scene.medium, scene.frequency)?;
    let height = |x: &Vector3<f64>| match &scene.source {
        Source::Array(a) => Some(a.height_above(x)),
        Source::Plane(_) => None,
    };
    if let Some(h) = height(&scene.initial_position) {
        if h <= params.min_interdistance {
            return Err(Error::Geometry(format!(
                "particle starts {:.4} mm above the array, within the {:.1} mm far-field guard",
                h * 1e3,
                params.min_interdistance * 1e3
            )));
        }
    }

    let mut state = RigidBodyState::at_rest(scene.initial_position, scene.initial_orientation);
    let mut records = vec![TrajectoryRecord { time: 0.0, position: state.position, angles: scene.initial_orientation.angles }];
    let mut was_settled = false;
    let mut index = 0usize;
    loop {
        index += 1;
        let forcing = radiation_force_torque(
            &scene.particle,
            field.as_ref(),
            &scene.medium,
            scene.frequency,
            state.position,
            &state.orientation,
            scene.force_radius,
        )
        .map_err(|e| e.context(format_args!("step {index} (t = {:.6e} s)", state.time)))?;
        let mut next = step(&state, &forcing, &body, &scene.medium, params)?;
        next.time = index as f64 * params.dt;
        let previous = *records.last().expect("records start non-empty");
        let angles = continuous_euler(&next.orientation.rotation, previous.angles);
        next.orientation.angles = angles;
        let record = TrajectoryRecord { time: next.time, position: next.position, angles };
        records.push(record);
        state = next;

        let now_settled = settled(&previous, &record, params);
        let unchanged = previous.position == record.position && previous.angles == record.angles;
        let termination = if height(&state.position).is_some_and(|h| h < params.min_interdistance) {
            Some(Termination::BelowMinInterdistance)
        } else if unchanged || (now_settled && was_settled) {
            Some(Termination::Converged)
        } else if state.time >= params.t_end * (1.0 - 1e-12) {
            Some(Termination::ReachedEnd)
        } else {
            None
        };
        if let Some(termination) = termination {
            return Ok(Trajectory { records, termination, final_state: state });
        }
        was_settled = now_settled;
    }
}
