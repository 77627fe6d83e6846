use std::f64::consts::PI;

use super::MappingCoefficients;
use crate::error::{Error, Result};
use crate::specfun::gauss_legendre;

const MASS_QUADRATURE_POINTS: usize = 256;

/// Mass properties of the homogeneous solid of revolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassProperties {
    pub volume: f64,
    pub mass: f64,
    /// Mass entering the weight `m_g g`; equals `mass` unless the averaged-radius
    /// sphere surrogate `(4/3)πa³ρ_p` is selected.
    pub weight_mass: f64,
    pub center_z: f64,
    pub inertia_axial: f64,
    pub inertia_transverse: f64,
}

impl MassProperties {
    pub fn weight(&self, g: f64) -> f64 {
        self.weight_mass * g
    }
}

/// Volume, centroid and inertia from meridian line integrals
/// (disc slices of the oriented meridian).
pub fn mass_properties(c: &MappingCoefficients, rho_p: f64, sphere_weight_surrogate: bool) -> Result<MassProperties> {
    if !(rho_p > 0.0) || !rho_p.is_finite() {
        return Err(Error::Domain(format!("particle density must be positive, got {rho_p}")));
    }
    let rule = gauss_legendre(MASS_QUADRATURE_POINTS)?;
    let (mut vol, mut zm, mut ax, mut tr) = (0.0, 0.0, 0.0, 0.0);
    let half = 0.5 * PI;
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let gamma = half * (x + 1.0);
        let (wv, dw) = c.map(gamma);
        let (rho, z, dz) = (wv.im, wv.re, dw.re);
        let weight = w * half * (-dz);
        let r2 = rho * rho;
        vol += PI * r2 * weight;
        zm += PI * r2 * z * weight;
        ax += 0.5 * PI * r2 * r2 * weight;
        tr += PI * (0.25 * r2 * r2 + z * z * r2) * weight;
    }
    if vol <= 0.0 {
        return Err(Error::Geometry("non-positive enclosed volume".into()));
    }
    let mass = rho_p * vol;
    let center_z = zm / vol;
    let a = c.averaged_radius();
    let weight_mass = if sphere_weight_surrogate { rho_p * 4.0 / 3.0 * PI * a.powi(3) } else { mass };
    Ok(MassProperties {
        volume: vol,
        mass,
        weight_mass,
        center_z,
        inertia_axial: rho_p * ax,
        inertia_transverse: rho_p * tr - mass * center_z * center_z,
    })
}
