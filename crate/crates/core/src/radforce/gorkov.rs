use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::wavefield::{IncidentField, Medium};

/// Monopole and dipole contrast factors of a small sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GorkovCoefficients {
    pub f1: f64,
    pub f2: f64,
}

impl GorkovCoefficients {
    /// Rigid, immovable sphere.
    pub fn rigid() -> Self {
        GorkovCoefficients { f1: 1.0, f2: 1.0 }
    }
}

/// `U = 2πa³ [f1 |p|²/(6ρ₀c₀²) - f2 ρ₀|v|²/4]` at `x`.
pub fn gorkov_potential(field: &dyn IncidentField, radius: f64, gc: GorkovCoefficients, medium: &Medium, frequency: f64, x: &Vector3<f64>) -> Result<f64> {
    let p = field.pressure(x)?;
    let grad = field.pressure_gradient(x)?;
    let omega = 2.0 * PI * frequency;
    let v2 = grad.iter().map(|g| g.norm_sqr()).sum::<f64>() / (omega * medium.rho0).powi(2);
    Ok(2.0 * PI * radius.powi(3) * (gc.f1 * p.norm_sqr() / (6.0 * medium.rho0 * medium.c0 * medium.c0) - gc.f2 * medium.rho0 * v2 / 4.0))
}

/// Small-particle force `-∇U` by central differences with step `1e-3/k`.
///
/// Only gradient forces are captured: a single traveling plane wave gives zero.
pub fn gorkov_force(field: &dyn IncidentField, radius: f64, gc: GorkovCoefficients, medium: &Medium, frequency: f64, x: &Vector3<f64>) -> Result<Vector3<f64>> {
    if !(radius > 0.0) {
        return Err(Error::Domain(format!("particle radius must be positive, got {radius}")));
    }
    let h = 1e-3 / field.wavenumber();
    let mut f = Vector3::zeros();
    for axis in 0..3 {
        let mut e = Vector3::zeros();
        e[axis] = h;
        let up = gorkov_potential(field, radius, gc, medium, frequency, &(x + e))?;
        let down = gorkov_potential(field, radius, gc, medium, frequency, &(x - e))?;
        f[axis] = -(up - down) / (2.0 * h);
    }
    Ok(f)
}
