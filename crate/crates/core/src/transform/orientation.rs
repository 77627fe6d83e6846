use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::error::{Error, Result};

/// Particle orientation: per-axis angles `(θx, θy, θz)` and the matrix
/// `R = Rz(θz)·Ry(θy)·Rx(θx)` mapping body-frame vectors to the lab frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    pub angles: [f64; 3],
    pub rotation: Matrix3<f64>,
}

impl Orientation {
    pub fn identity() -> Self {
        Orientation { angles: [0.0; 3], rotation: Matrix3::identity() }
    }

    /// Wraps a rotation matrix, extracting its angles with [`rotation_to_euler`].
    pub fn from_rotation(rotation: Matrix3<f64>) -> Result<Self> {
        let err = (rotation.transpose() * rotation - Matrix3::identity()).amax();
        if !(err < 1e-9) || !(rotation.determinant() > 0.0) {
            return Err(Error::Domain(format!("matrix is not a proper rotation (orthogonality defect {err:e})")));
        }
        Ok(Orientation { angles: rotation_to_euler(&rotation), rotation })
    }

    pub fn inverse(&self) -> Self {
        let rotation = self.rotation.transpose();
        Orientation { angles: rotation_to_euler(&rotation), rotation }
    }

    /// `self` applied after `first`.
    pub fn after(&self, first: &Orientation) -> Self {
        let rotation = self.rotation * first.rotation;
        Orientation { angles: rotation_to_euler(&rotation), rotation }
    }
}

/// Extrinsic x, then y, then z rotation.
pub fn euler_to_rotation(angles: [f64; 3]) -> Result<Orientation> {
    if angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::Domain(format!("orientation angles must be finite, got {angles:?}")));
    }
    let [x, y, z] = angles;
    let rotation = Rotation3::from_axis_angle(&Vector3::z_axis(), z)
        * Rotation3::from_axis_angle(&Vector3::y_axis(), y)
        * Rotation3::from_axis_angle(&Vector3::x_axis(), x);
    Ok(Orientation { angles, rotation: rotation.into_inner() })
}

/// Angles `(θx, θy, θz)` with `θy ∈ [-π/2, π/2]`; at gimbal lock `θz = 0`.
pub fn rotation_to_euler(r: &Matrix3<f64>) -> [f64; 3] {
    let sy = (-r[(2, 0)]).clamp(-1.0, 1.0);
    let theta_y = sy.asin();
    if r[(2, 1)].hypot(r[(2, 2)]) < 1e-12 {
        // cos θy = 0: only θx ∓ θz is determined.
        let theta_x = if sy > 0.0 { r[(0, 1)].atan2(r[(1, 1)]) } else { (-r[(0, 1)]).atan2(r[(1, 1)]) };
        return [theta_x, theta_y, 0.0];
    }
    [r[(2, 1)].atan2(r[(2, 2)]), theta_y, r[(1, 0)].atan2(r[(0, 0)])]
}

/// z-y-z angles `(α, β, γ)` with `R = Rz(α)·Ry(β)·Rz(γ)`.
pub(crate) fn zyz_angles(r: &Matrix3<f64>) -> (f64, f64, f64) {
    let beta = r[(2, 2)].clamp(-1.0, 1.0).acos();
    if r[(0, 2)].hypot(r[(1, 2)]) < 1e-12 {
        if r[(2, 2)] > 0.0 {
            return (r[(1, 0)].atan2(r[(0, 0)]), 0.0, 0.0);
        }
        return ((-r[(0, 1)]).atan2(-r[(0, 0)]), std::f64::consts::PI, 0.0);
    }
    (r[(1, 2)].atan2(r[(0, 2)]), beta, r[(2, 1)].atan2(-r[(2, 0)]))
}
