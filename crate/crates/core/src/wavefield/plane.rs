use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use super::{IncidentField, WaveExpansion};
use crate::error::{Error, Result};
use crate::specfun::{harmonic_table, mode_index, RadialKind};

/// Plane wave `p₀ e^{ik k̂·x}` with phase referenced to the lab origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWave {
    pub amplitude: Complex64,
    pub direction: Vector3<f64>,
}

impl PlaneWave {
    pub fn new(amplitude: Complex64, direction: Vector3<f64>) -> Result<Self> {
        let norm = direction.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Domain("plane-wave direction must be a non-zero vector".into()));
        }
        Ok(PlaneWave { amplitude, direction: direction / norm })
    }

    pub fn along_z(amplitude: f64) -> Self {
        PlaneWave { amplitude: Complex64::new(amplitude, 0.0), direction: Vector3::z() }
    }

    pub fn with_wavenumber(&self, k: f64) -> PlaneWaveField {
        PlaneWaveField { wave: self.clone(), k }
    }
}

/// A plane wave bound to a wavenumber so it can be sampled.
#[derive(Debug, Clone)]
pub struct PlaneWaveField {
    pub wave: PlaneWave,
    pub k: f64,
}

impl IncidentField for PlaneWaveField {
    fn wavenumber(&self) -> f64 {
        self.k
    }

    fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64> {
        Ok(self.wave.amplitude * Complex64::from_polar(1.0, self.k * self.wave.direction.dot(x)))
    }

    fn pressure_gradient(&self, x: &Vector3<f64>) -> Result<Vector3<Complex64>> {
        let p = self.pressure(x)?;
        let ikp = Complex64::new(0.0, self.k) * p;
        Ok(self.wave.direction.map(|d| ikp * d))
    }

    fn analytic_expansion(&self, n_max: usize, center: Vector3<f64>) -> Option<Result<WaveExpansion>> {
        Some(plane_wave_coefficients(&self.wave, self.k, n_max, center))
    }
}

/// Regular-wave coefficients `a_n^m = 4π iⁿ conj(Y_n^m(k̂)) p₀ e^{ik k̂·o}` about `origin`.
pub fn plane_wave_coefficients(pw: &PlaneWave, k: f64, n_max: usize, origin: Vector3<f64>) -> Result<WaveExpansion> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let d = pw.direction;
    let theta = d.z.clamp(-1.0, 1.0).acos();
    let phi = d.y.atan2(d.x);
    let y = harmonic_table(n_max, theta, phi)?;
    let base = pw.amplitude * Complex64::from_polar(4.0 * PI, k * d.dot(&origin));
    let mut exp = WaveExpansion::zeros(RadialKind::Regular, n_max, k, origin);
    let mut i_pow = Complex64::new(1.0, 0.0);
    for n in 0..=n_max {
        for m in -(n as i64)..=(n as i64) {
            let idx = mode_index(n, m);
            exp.coeffs[idx] = base * i_pow * y.values[idx].conj();
        }
        i_pow *= Complex64::i();
    }
    Ok(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axial_closed_form() {
        let e = plane_wave_coefficients(&PlaneWave::along_z(1.0), 700.0, 6, Vector3::zeros()).unwrap();
        assert!((e.coeff(0, 0) - Complex64::new((4.0 * PI).sqrt(), 0.0)).norm() < 1e-13);
        assert!((e.coeff(0, 0).re - 3.5449).abs() < 1e-4);
        assert!((e.coeff(1, 0) - Complex64::new(0.0, (12.0 * PI).sqrt())).norm() < 1e-13);
        assert!((e.coeff(1, 0).im - 6.1400).abs() < 1e-4);
        for n in 0..=6usize {
            let expected = Complex64::i().powu(n as u32) * (4.0 * PI * (2 * n + 1) as f64).sqrt();
            assert!((e.coeff(n, 0) - expected).norm() < 1e-12);
            for m in 1..=(n as i64) {
                assert!(e.coeff(n, m).norm() < 1e-14 && e.coeff(n, -m).norm() < 1e-14);
            }
        }
    }
}
