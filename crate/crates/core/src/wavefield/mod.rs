//! Incident fields and their spherical-wave representation.

mod expansion;
mod medium;
mod piston;
mod plane;
mod projection;

pub use expansion::{evaluate_expansion, WaveExpansion};
pub use medium::Medium;
pub use piston::{piston_directivity, piston_pressure, PistonArrayField, TransducerArray};
pub use plane::{plane_wave_coefficients, PlaneWave, PlaneWaveField};
pub use projection::{default_projection_radii, default_truncation, project_incident};

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::Result;

/// Scene source: a single plane wave or a piston array.
#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Plane(PlaneWave),
    Array(TransducerArray),
}

impl Source {
    /// The source bound to a medium and drive frequency.
    pub fn field(&self, medium: &Medium, frequency: f64) -> Result<Box<dyn IncidentField>> {
        Ok(match self {
            Source::Plane(pw) => Box::new(pw.with_wavenumber(medium.wavenumber(frequency))),
            Source::Array(array) => {
                array.validate()?;
                Box::new(PistonArrayField { array: array.clone(), medium: medium.clone(), frequency })
            }
        })
    }
}

/// Regular expansion of `field` about `center`: closed form when available,
/// otherwise projection on the given radius pair.
pub fn incident_expansion(field: &dyn IncidentField, n_max: usize, center: Vector3<f64>, radii: (f64, f64)) -> Result<WaveExpansion> {
    match field.analytic_expansion(n_max, center) {
        Some(exp) => exp,
        None => project_incident(field, n_max, center, radii),
    }
}

/// A time-harmonic pressure field that can be sampled pointwise.
pub trait IncidentField: Sync {
    fn wavenumber(&self) -> f64;

    fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64>;

    /// Relative cross-radius disagreement tolerated when projecting this field.
    fn consistency_tolerance(&self) -> f64 {
        1e-3
    }

    /// Exact regular expansion about `center`, when the model has one in closed form.
    fn analytic_expansion(&self, _n_max: usize, _center: Vector3<f64>) -> Option<Result<WaveExpansion>> {
        None
    }

    /// Distance from `x` to the nearest known source point, if the model has any.
    fn source_distance(&self, _x: &Vector3<f64>) -> Option<f64> {
        None
    }

    /// `∇p`; the default uses a fourth-order central difference with step `1e-3/k`.
    fn pressure_gradient(&self, x: &Vector3<f64>) -> Result<Vector3<Complex64>> {
        let h = 1e-3 / self.wavenumber();
        let mut g = Vector3::zeros();
        for axis in 0..3 {
            let mut e = Vector3::zeros();
            e[axis] = h;
            let p1 = self.pressure(&(x + e))?;
            let m1 = self.pressure(&(x - e))?;
            let p2 = self.pressure(&(x + 2.0 * e))?;
            let m2 = self.pressure(&(x - 2.0 * e))?;
            g[axis] = (8.0 * (p1 - m1) - (p2 - m2)) / (12.0 * h);
        }
        Ok(g)
    }
}

/// Sum of fields sharing one wavenumber (e.g. counter-propagating plane waves).
pub struct Superposition<'a> {
    pub parts: Vec<&'a dyn IncidentField>,
}

impl IncidentField for Superposition<'_> {
    fn wavenumber(&self) -> f64 {
        self.parts[0].wavenumber()
    }

    fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64> {
        self.parts.iter().map(|f| f.pressure(x)).sum()
    }

    fn pressure_gradient(&self, x: &Vector3<f64>) -> Result<Vector3<Complex64>> {
        self.parts.iter().map(|f| f.pressure_gradient(x)).sum()
    }

    fn consistency_tolerance(&self) -> f64 {
        self.parts.iter().map(|f| f.consistency_tolerance()).fold(0.0, f64::max)
    }

    fn source_distance(&self, x: &Vector3<f64>) -> Option<f64> {
        self.parts.iter().filter_map(|f| f.source_distance(x)).reduce(f64::min)
    }

    fn analytic_expansion(&self, n_max: usize, center: Vector3<f64>) -> Option<Result<WaveExpansion>> {
        let mut total = WaveExpansion::zeros(crate::specfun::RadialKind::Regular, n_max, self.wavenumber(), center);
        for part in &self.parts {
            match part.analytic_expansion(n_max, center)? {
                Ok(e) => total = match total.add(&e) {
                    Ok(t) => t,
                    Err(err) => return Some(Err(err)),
                },
                Err(err) => return Some(Err(err)),
            }
        }
        Some(Ok(total))
    }
}
