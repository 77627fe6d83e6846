use nalgebra::Vector3;

use super::{force_torque, ForceTorque};
use crate::error::{Error, Result};
use crate::geometry::MappingCoefficients;
use crate::scatter::{default_tmatrix_truncation, scatter_lab_frame, tmatrix_nullfield, BoundaryKind, TMatrix};
use crate::transform::Orientation;
use crate::wavefield::{default_projection_radii, incident_expansion, IncidentField, Medium};

/// Default stress-quadrature radius and the check radius, as multiples of the particle's maximum radius.
pub const FORCE_RADIUS_FACTOR: f64 = 2.0;
pub const CHECK_RADIUS_FACTOR: f64 = 3.4;

/// A particle with its body-frame T-matrix at one frequency.
#[derive(Debug, Clone)]
pub struct Particle {
    pub shape: MappingCoefficients,
    pub boundary: BoundaryKind,
    pub tmatrix: TMatrix,
    max_radius: f64,
}

impl Particle {
    /// Solves for the T-matrix; `n_max` defaults to [`default_tmatrix_truncation`].
    pub fn new(shape: MappingCoefficients, boundary: BoundaryKind, medium: &Medium, frequency: f64, n_max: Option<usize>) -> Result<Self> {
        let k = medium.wavenumber(frequency);
        let max_radius = shape.max_radius();
        let n_max = n_max.unwrap_or_else(|| default_tmatrix_truncation(k, max_radius));
        let tmatrix = tmatrix_nullfield(&shape, boundary, k, n_max)?;
        Ok(Particle { shape, boundary, tmatrix, max_radius })
    }

    pub fn n_max(&self) -> usize {
        self.tmatrix.n_max
    }

    pub fn max_radius(&self) -> f64 {
        self.max_radius
    }
}

/// Force and torque on `particle` centered at `center` with orientation `o`.
///
/// `radius` is the stress-quadrature radius, default `2 r_max`; it must
/// enclose the particle and stay clear of every source of `field`.
pub fn radiation_force_torque(
    particle: &Particle,
    field: &dyn IncidentField,
    medium: &Medium,
    frequency: f64,
    center: Vector3<f64>,
    o: &Orientation,
    radius: Option<f64>,
) -> Result<ForceTorque> {
    let k = medium.wavenumber(frequency);
    if (field.wavenumber() - k).abs() > 1e-9 * k {
        return Err(Error::Dimension(format!("field wavenumber {} does not match the medium ({k})", field.wavenumber())));
    }
    let r_max = particle.max_radius();
    let radius = radius.unwrap_or(FORCE_RADIUS_FACTOR * r_max);
    if radius <= r_max {
        return Err(Error::Geometry(format!("quadrature radius {radius:.4e} m lies inside the particle (max radius {r_max:.4e} m)")));
    }
    if let Some(d) = field.source_distance(&center) {
        if radius >= d {
            return Err(Error::Geometry(format!("quadrature radius {radius:.4e} m reaches a source at {d:.4e} m")));
        }
    }
    let incident = incident_expansion(field, particle.n_max(), center, default_projection_radii(r_max))?;
    let scattered = scatter_lab_frame(&particle.tmatrix, &incident, o)?;
    force_torque(&incident, &scattered, medium, frequency, radius)
}
