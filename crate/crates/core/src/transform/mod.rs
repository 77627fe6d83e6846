//! Rotation and translation of spherical-wave expansions, and particle orientation.

mod orientation;
mod rotation;
mod translation;

pub use orientation::{euler_to_rotation, rotation_to_euler, Orientation};
pub use rotation::{rotate_by_matrix, rotate_expansion};
pub use translation::{translate_regular, translate_z_regular};
