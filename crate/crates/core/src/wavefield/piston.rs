use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{IncidentField, Medium};
use crate::error::{Error, Result};
use crate::specfun::cyl_j1;

/// Set of baffled circular pistons radiating along `+z`.
///
/// `positions` are element centers relative to the probe element at the
/// origin; the whole array is then shifted by `interdistance` along `-z`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransducerArray {
    /// Piston radius, m.
    pub radius: f64,
    pub positions: Vec<[f64; 3]>,
    /// Surface normal velocity amplitude, m/s.
    pub v0: f64,
    /// Per-element phase delay, rad.
    pub phase_delay: Vec<f64>,
    /// Per-element relative amplitude.
    pub amplitude_ratio: Vec<f64>,
    /// Downward shift of the whole array, m.
    pub interdistance: f64,
}

impl TransducerArray {
    pub fn validate(&self) -> Result<()> {
        let n = self.positions.len();
        if n == 0 {
            return Err(Error::Geometry("transducer array has no elements".into()));
        }
        if self.positions[0] != [0.0, 0.0, 0.0] {
            return Err(Error::Geometry("first transducer (probe) must sit at (0, 0, 0)".into()));
        }
        if self.phase_delay.len() != n || self.amplitude_ratio.len() != n {
            return Err(Error::Dimension(format!(
                "{n} transducers but {} phase delays and {} amplitude ratios",
                self.phase_delay.len(),
                self.amplitude_ratio.len()
            )));
        }
        if self.amplitude_ratio.iter().any(|a| !(*a >= 0.0)) {
            return Err(Error::Domain("relative amplitudes must be non-negative".into()));
        }
        if !(self.radius > 0.0) || !(self.interdistance > 0.0) || !self.v0.is_finite() {
            return Err(Error::Domain("transducer radius and interdistance must be positive".into()));
        }
        Ok(())
    }

    /// Element centers in the lab frame.
    pub fn centers(&self) -> Vec<Vector3<f64>> {
        self.positions.iter().map(|p| Vector3::new(p[0], p[1], p[2] - self.interdistance)).collect()
    }

    /// Distance from `x` to the nearest element center.
    pub fn nearest_center_distance(&self, x: &Vector3<f64>) -> f64 {
        self.centers().iter().map(|c| (x - c).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Height of `x` above the element plane (`z = -interdistance`).
    pub fn height_above(&self, x: &Vector3<f64>) -> f64 {
        x.z + self.interdistance
    }
}

/// Far-field directivity `2 J₁(x)/x` of a baffled piston, `x = k a sin θ`.
pub fn piston_directivity(ka_sin_theta: f64) -> f64 {
    let x = ka_sin_theta;
    if x.abs() < 1e-6 {
        1.0 - x * x / 8.0
    } else {
        2.0 * cyl_j1(x) / x
    }
}

/// Far-field pressure of the whole array at `point`:
/// `Σ_j -(i/2) ρ₀c₀ k a² A_j v₀ e^{iφ_j} D(θ_j) e^{ikr_j}/r_j`.
pub fn piston_pressure(array: &TransducerArray, medium: &Medium, frequency: f64, point: &Vector3<f64>) -> Result<Complex64> {
    let k = medium.wavenumber(frequency);
    let prefactor = Complex64::new(0.0, -0.5 * medium.rho0 * medium.c0 * k * array.radius * array.radius * array.v0);
    let mut p = Complex64::new(0.0, 0.0);
    for ((center, &phase), &amp) in array.centers().iter().zip(&array.phase_delay).zip(&array.amplitude_ratio) {
        let d = point - center;
        let r = d.norm();
        if r == 0.0 {
            return Err(Error::Domain(format!("field point coincides with transducer center {center:?}")));
        }
        let sin_theta = d.x.hypot(d.y) / r;
        let dir = piston_directivity(k * array.radius * sin_theta);
        p += prefactor * amp * dir * Complex64::from_polar(1.0 / r, k * r + phase);
    }
    Ok(p)
}

/// An array bound to a medium and drive frequency so it can be sampled.
#[derive(Debug, Clone)]
pub struct PistonArrayField {
    pub array: TransducerArray,
    pub medium: Medium,
    pub frequency: f64,
}

impl IncidentField for PistonArrayField {
    fn wavenumber(&self) -> f64 {
        self.medium.wavenumber(self.frequency)
    }

    fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64> {
        piston_pressure(&self.array, &self.medium, self.frequency, x)
    }

    /// The far-field formula is not an exact Helmholtz solution near the
    /// array (about 2% cross-radius disagreement at 20 mm, 40 kHz), so only
    /// gross inconsistencies are rejected; sources are caught geometrically.
    fn consistency_tolerance(&self) -> f64 {
        5e-2
    }

    fn source_distance(&self, x: &Vector3<f64>) -> Option<f64> {
        Some(self.array.nearest_center_distance(x))
    }
}
