use std::f64::consts::PI;

use nalgebra::{Matrix3, Rotation3, Vector3};

use super::DynamicsParams;
use crate::error::{Error, Result};
use crate::geometry::MassProperties;
use crate::radforce::ForceTorque;
use crate::transform::Orientation;
use crate::wavefield::Medium;

/// Orthogonality defect above which the orientation matrix is re-orthonormalized.
const ORTHONORMAL_DRIFT: f64 = 1e-10;

/// Pose and velocities of the particle. Velocities are in the lab frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidBodyState {
    pub time: f64,
    pub position: Vector3<f64>,
    pub orientation: Orientation,
    pub velocity: Vector3<f64>,
    pub angular_velocity: Vector3<f64>,
}

impl RigidBodyState {
    pub fn at_rest(position: Vector3<f64>, orientation: Orientation) -> Self {
        RigidBodyState { time: 0.0, position, orientation, velocity: Vector3::zeros(), angular_velocity: Vector3::zeros() }
    }
}

/// Inertia and sphere-equivalent drag of a particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidBody {
    pub mass: MassProperties,
    /// Radius entering the Stokes `6πμa` and Kirchhoff `8πμa³` drag.
    pub drag_radius: f64,
}

impl RigidBody {
    pub fn translational_drag(&self, medium: &Medium) -> f64 {
        6.0 * PI * medium.mu * self.drag_radius
    }

    pub fn rotational_drag(&self, medium: &Medium) -> f64 {
        8.0 * PI * medium.mu * self.drag_radius.powi(3)
    }
}

/// Exact solution of `m ẋ = f - c x` over `dt`: returns the end value and the
/// integral of `x` over the step.
fn relax(x0: f64, f: f64, m: f64, c: f64, dt: f64) -> (f64, f64) {
    if c == 0.0 {
        let a = f / m;
        return (x0 + a * dt, x0 * dt + 0.5 * a * dt * dt);
    }
    let x_inf = f / c;
    let tau = m / c;
    let decay = (-dt / tau).exp_m1(); // e^{-dt/τ} - 1
    (x_inf + (x0 - x_inf) * (1.0 + decay), x_inf * dt - (x0 - x_inf) * tau * decay)
}

/// Advances `state` by one step under constant radiation forcing.
///
/// Translation `m v̇ = F + F_g - 6πμa v` and each body-frame rotation
/// component `I ω̇ = T - ω×(Iω) - 8πμa³ ω` are integrated exactly for linear
/// drag, with the gyroscopic term frozen at the start of the step. The
/// orientation turns by the integrated body-frame angle.
pub fn step(state: &RigidBodyState, forcing: &ForceTorque, body: &RigidBody, medium: &Medium, params: &DynamicsParams) -> Result<RigidBodyState> {
    let finite = |v: &Vector3<f64>| v.iter().all(|x| x.is_finite());
    if !finite(&forcing.force) || !finite(&forcing.torque) {
        return Err(Error::Integration(format!("non-finite forcing at t = {:.6e} s", state.time)));
    }
    let dt = params.dt;
    let mass = body.mass.mass;
    let total = forcing.force - Vector3::z() * body.mass.weight(params.gravity);
    let drag = body.translational_drag(medium);
    let mut velocity = Vector3::zeros();
    let mut displacement = Vector3::zeros();
    for i in 0..3 {
        (velocity[i], displacement[i]) = relax(state.velocity[i], total[i], mass, drag, dt);
    }

    let r = state.orientation.rotation;
    let inertia = Vector3::new(body.mass.inertia_transverse, body.mass.inertia_transverse, body.mass.inertia_axial);
    let omega = r.transpose() * state.angular_velocity;
    let gyro = omega.cross(&inertia.component_mul(&omega));
    let torque = r.transpose() * forcing.torque - gyro;
    let rot_drag = body.rotational_drag(medium);
    let mut omega_new = Vector3::zeros();
    let mut turn = Vector3::zeros();
    for i in 0..3 {
        (omega_new[i], turn[i]) = relax(omega[i], torque[i], inertia[i], rot_drag, dt);
    }
    let mut rotation = r * Rotation3::new(turn).into_inner();
    if orthogonality_defect(&rotation) > ORTHONORMAL_DRIFT {
        rotation = Rotation3::from_matrix_eps(&rotation, 1e-15, 100, Rotation3::identity()).into_inner();
    }

    let next = RigidBodyState {
        time: state.time + dt,
        position: state.position + displacement,
        orientation: Orientation { angles: state.orientation.angles, rotation },
        velocity,
        angular_velocity: rotation * omega_new,
    };
    if !finite(&next.position) || !finite(&next.velocity) || !finite(&next.angular_velocity) {
        return Err(Error::Integration(format!("state became non-finite at t = {:.6e} s", next.time)));
    }
    Ok(next)
}

pub(crate) fn orthogonality_defect(r: &Matrix3<f64>) -> f64 {
    (r.transpose() * r - Matrix3::identity()).amax()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{mass_properties, MappingCoefficients};

    fn sphere_body(rho_p: f64) -> RigidBody {
        let c = MappingCoefficients::sphere(0.002).unwrap();
        RigidBody { mass: mass_properties(&c, rho_p, false).unwrap(), drag_radius: 0.002 }
    }

    fn params(dt: f64) -> DynamicsParams {
        DynamicsParams { gravity: 0.0, ..DynamicsParams::new(15.0, dt, 1.0) }
    }

    fn forcing(f: Vector3<f64>) -> ForceTorque {
        ForceTorque { force: f, torque: Vector3::zeros() }
    }

    #[test]
    fn equilibrium_only_advances_time() {
        let body = sphere_body(15.0);
        let s = RigidBodyState::at_rest(Vector3::new(1e-3, 0.0, 0.0), Orientation::identity());
        let next = step(&s, &ForceTorque::zero(), &body, &Medium::air(), &params(1e-4)).unwrap();
        assert_eq!(next.position, s.position);
        assert_eq!(next.velocity, s.velocity);
        assert_eq!(next.orientation.rotation, s.orientation.rotation);
        assert_eq!(next.time, 1e-4);
    }

    #[test]
    fn drag_only_decay_is_exact() {
        let body = sphere_body(15.0);
        let air = Medium::air();
        let v0 = Vector3::new(0.3, -0.2, 0.1);
        let mut s = RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity());
        s.velocity = v0;
        let dt = 1e-3;
        let next = step(&s, &ForceTorque::zero(), &body, &air, &params(dt)).unwrap();
        let want = v0 * (-6.0 * PI * air.mu * 0.002 * dt / body.mass.mass).exp();
        assert!((next.velocity - want).norm() < 1e-12 * v0.norm());
    }

    #[test]
    fn terminal_velocity() {
        let body = sphere_body(15.0);
        let air = Medium::air();
        let f = 1e-6;
        let vt = f / (6.0 * PI * air.mu * 0.002);
        assert!((vt - 1.466).abs() < 1e-3);
        let mut s = RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity());
        let p = params(0.5);
        for _ in 0..40 {
            s = step(&s, &forcing(Vector3::new(0.0, 0.0, f)), &body, &air, &p).unwrap();
        }
        assert!((s.velocity.z / vt - 1.0).abs() < 1e-3);
    }

    #[test]
    fn overdamped_limit_is_quasi_static() {
        let air = Medium::air();
        let f = Vector3::new(1e-6, 0.0, 0.0);
        let dt = 1e-3;
        let mut previous = f64::INFINITY;
        for scale in [1.0, 1e2, 1e4, 1e6] {
            let body = sphere_body(15.0);
            let thick = Medium { mu: air.mu * scale, ..air.clone() };
            let mut s = RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity());
            s.velocity = f / (6.0 * PI * thick.mu * 0.002) * 3.0;
            let next = step(&s, &forcing(f), &body, &thick, &params(dt)).unwrap();
            let quasi = f.x / (6.0 * PI * thick.mu * 0.002) * dt;
            let err = (next.position.x / quasi - 1.0).abs();
            assert!(err < previous, "{scale}: {err}");
            previous = err;
        }
        assert!(previous < 1e-2);
    }

    #[test]
    fn gravity_pulls_down() {
        let body = sphere_body(15.0);
        let p = DynamicsParams::new(15.0, 1e-3, 1.0);
        let s = step(&RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity()), &ForceTorque::zero(), &body, &Medium::air(), &p).unwrap();
        assert!(s.velocity.z < 0.0 && s.velocity.x == 0.0);
        assert!((s.velocity.z + 9.81e-3).abs() < 1e-5);
    }

    #[test]
    fn torque_spins_about_its_axis() {
        let body = sphere_body(15.0);
        let o = crate::transform::euler_to_rotation([0.4, 0.0, 0.0]).unwrap();
        let s = RigidBodyState::at_rest(Vector3::zeros(), o);
        let t = ForceTorque { force: Vector3::zeros(), torque: Vector3::new(1e-12, 0.0, 0.0) };
        let mut next = step(&s, &t, &body, &Medium::air(), &params(1e-3)).unwrap();
        for _ in 0..9 {
            next = step(&next, &t, &body, &Medium::air(), &params(1e-3)).unwrap();
        }
        let angles = crate::transform::rotation_to_euler(&next.orientation.rotation);
        assert!(angles[0] > 0.4 && angles[1].abs() < 1e-14 && angles[2].abs() < 1e-14);
        assert!(next.angular_velocity.x > 0.0);
    }

    #[test]
    fn free_spin_keeps_orthonormal_rotation() {
        let c = MappingCoefficients::new(vec![0.002, 0.0, 0.0004]).unwrap();
        let body = RigidBody { mass: mass_properties(&c, 15.0, false).unwrap(), drag_radius: 0.002 };
        let mut s = RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity());
        s.angular_velocity = Vector3::new(3.0, -1.0, 5.0);
        let p = params(1e-4);
        let vacuum = Medium { mu: 0.0, ..Medium::air() };
        for _ in 0..10_000 {
            s = step(&s, &ForceTorque::zero(), &body, &vacuum, &p).unwrap();
        }
        assert!(orthogonality_defect(&s.orientation.rotation) < 1e-10);
        assert!(s.angular_velocity.norm() > 1.0);
    }

    #[test]
    fn non_finite_forcing_is_an_integration_error() {
        let body = sphere_body(15.0);
        let s = RigidBodyState::at_rest(Vector3::zeros(), Orientation::identity());
        let err = step(&s, &forcing(Vector3::new(f64::NAN, 0.0, 0.0)), &body, &Medium::air(), &params(1e-4)).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
