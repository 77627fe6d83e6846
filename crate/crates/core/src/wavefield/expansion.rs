use nalgebra::Vector3;
use num_complex::Complex64;

use super::{IncidentField, Medium};
use crate::error::{Error, Result};
use crate::specfun::{harmonic_table, mode_count, mode_index, radial_table, RadialKind};

/// Truncated spherical-wave expansion `p(x) = Σ a_n^m R_n(k|x-o|) Y_n^m`,
/// with `R_n = j_n` (regular) or `h_n^(1)` (outgoing). Coefficients in Pa.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveExpansion {
    pub kind: RadialKind,
    pub n_max: usize,
    pub k: f64,
    pub origin: Vector3<f64>,
    pub coeffs: Vec<Complex64>,
}

impl WaveExpansion {
    pub fn zeros(kind: RadialKind, n_max: usize, k: f64, origin: Vector3<f64>) -> Self {
        WaveExpansion { kind, n_max, k, origin, coeffs: vec![Complex64::new(0.0, 0.0); mode_count(n_max)] }
    }

    pub fn new(kind: RadialKind, n_max: usize, k: f64, origin: Vector3<f64>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != mode_count(n_max) {
            return Err(Error::Dimension(format!(
                "expansion of degree {n_max} needs {} coefficients, got {}",
                mode_count(n_max),
                coeffs.len()
            )));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
        }
        Ok(WaveExpansion { kind, n_max, k, origin, coeffs })
    }

    pub fn coeff(&self, n: usize, m: i64) -> Complex64 {
        self.coeffs[mode_index(n, m)]
    }

    /// Same field, truncated or zero-padded to degree `n_max`.
    pub fn resized(&self, n_max: usize) -> Self {
        let mut out = WaveExpansion::zeros(self.kind, n_max, self.k, self.origin);
        let keep = mode_count(n_max.min(self.n_max));
        out.coeffs[..keep].copy_from_slice(&self.coeffs[..keep]);
        out
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|c| *c *= s);
        out
    }

    /// Coefficient-wise sum; both operands must share kind, wavenumber and origin.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind || self.k != other.k || self.origin != other.origin {
            return Err(Error::Dimension("cannot add expansions of different kind, wavenumber or origin".into()));
        }
        let n_max = self.n_max.max(other.n_max);
        let mut out = self.resized(n_max);
        for (o, c) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *o += c;
        }
        Ok(out)
    }

    /// `Σ_m |a_n^m|²` for each degree.
    pub fn degree_norms(&self) -> Vec<f64> {
        (0..=self.n_max)
            .map(|n| (-(n as i64)..=(n as i64)).map(|m| self.coeff(n, m).norm_sqr()).sum())
            .collect()
    }

    /// Pressure and its gradient at `x`.
    pub fn pressure_and_gradient(&self, x: &Vector3<f64>) -> Result<(Complex64, Vector3<Complex64>)> {
        let rel = x - self.origin;
        let r = rel.norm();
        if self.kind == RadialKind::Outgoing && r == 0.0 {
            return Err(Error::Domain("outgoing expansion evaluated at its origin".into()));
        }
        let rho = rel.x.hypot(rel.y);
        let theta = rho.atan2(rel.z);
        let phi = if rho > 0.0 { rel.y.atan2(rel.x) } else { 0.0 };
        let radial = radial_table(self.kind, self.n_max, self.k * r)?;
        let ang = harmonic_table(self.n_max, theta, phi)?;

        let (mut p, mut dr, mut dth, mut dph) = (Complex64::default(), Complex64::default(), Complex64::default(), Complex64::default());
        for n in 0..=self.n_max {
            let rv = radial.values[n];
            let rd = radial.derivatives[n] * self.k;
            let r_over = radial.value_over_argument(n) * self.k;
            for m in -(n as i64)..=(n as i64) {
                let i = mode_index(n, m);
                let a = self.coeffs[i];
                if a == Complex64::default() {
                    continue;
                }
                p += a * rv * ang.values[i];
                dr += a * rd * ang.values[i];
                dth += a * r_over * ang.theta_derivatives[i];
                dph += a * r_over * ang.azimuthal[i];
            }
        }
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let e_r = Vector3::new(st * cp, st * sp, ct);
        let e_t = Vector3::new(ct * cp, ct * sp, -st);
        let e_p = Vector3::new(-sp, cp, 0.0);
        let grad = Vector3::new(
            dr * e_r.x + dth * e_t.x + dph * e_p.x,
            dr * e_r.y + dth * e_t.y + dph * e_p.y,
            dr * e_r.z + dth * e_t.z + dph * e_p.z,
        );
        Ok((p, grad))
    }

    pub fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64> {
        Ok(self.pressure_and_gradient(x)?.0)
    }
}

impl IncidentField for WaveExpansion {
    fn wavenumber(&self) -> f64 {
        self.k
    }

    fn pressure(&self, x: &Vector3<f64>) -> Result<Complex64> {
        WaveExpansion::pressure(self, x)
    }

    fn pressure_gradient(&self, x: &Vector3<f64>) -> Result<Vector3<Complex64>> {
        Ok(self.pressure_and_gradient(x)?.1)
    }

    fn source_distance(&self, x: &Vector3<f64>) -> Option<f64> {
        match self.kind {
            RadialKind::Outgoing => Some((x - self.origin).norm()),
            RadialKind::Regular => None,
        }
    }
}

/// Pressure and particle velocity `v = ∇p / (iωρ₀)` of an expansion at `point`.
pub fn evaluate_expansion(
    exp: &WaveExpansion,
    medium: &Medium,
    frequency: f64,
    point: &Vector3<f64>,
) -> Result<(Complex64, Vector3<Complex64>)> {
    let (p, g) = exp.pressure_and_gradient(point)?;
    let omega = 2.0 * std::f64::consts::PI * frequency;
    let factor = Complex64::new(0.0, omega * medium.rho0).inv();
    Ok((p, g.map(|c| c * factor)))
}
