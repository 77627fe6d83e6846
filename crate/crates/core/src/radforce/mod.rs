//! Acoustic radiation force and torque.

mod gorkov;
mod pipeline;
mod stress;

pub use gorkov::{gorkov_force, gorkov_potential, GorkovCoefficients};
pub use pipeline::{radiation_force_torque, Particle, CHECK_RADIUS_FACTOR, FORCE_RADIUS_FACTOR};
pub use stress::{force_torque, ForceTorque};
