use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const VALIDATION_GRID: usize = 4096;
const SIMPLE_CURVE_SEGMENTS: usize = 512;

/// Conformal-map coefficients `c_1 … c_J` in meters. `c_1` is the averaged radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MappingCoefficients {
    c: Vec<f64>,
}

impl TryFrom<Vec<f64>> for MappingCoefficients {
    type Error = Error;

    fn try_from(c: Vec<f64>) -> Result<Self> {
        MappingCoefficients::new(c)
    }
}

impl From<MappingCoefficients> for Vec<f64> {
    fn from(m: MappingCoefficients) -> Self {
        m.c
    }
}

/// One point of the meridian curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeridianSample {
    pub gamma: f64,
    pub rho: f64,
    pub z: f64,
    /// Outward unit normal as `(n_ρ, n_z)`.
    pub unit_normal: [f64; 2],
    /// `|dw/dγ|`, meters per radian.
    pub arc_jacobian: f64,
}

impl MeridianSample {
    pub fn radius(&self) -> f64 {
        self.rho.hypot(self.z)
    }
}

impl MappingCoefficients {
    /// Validate and wrap a coefficient list.
    pub fn new(c: Vec<f64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Geometry("mapping coefficients are empty".into()));
        }
        if c.iter().any(|v| !v.is_finite()) {
            return Err(Error::Geometry("mapping coefficients must be finite".into()));
        }
        if c[0] <= 0.0 {
            return Err(Error::Geometry(format!("first mapping coefficient (averaged radius) must be positive, got {}", c[0])));
        }
        let shape = MappingCoefficients { c };
        shape.check_positive_radius()?;
        shape.check_simple()?;
        Ok(shape)
    }

    /// Sphere of radius `a`.
    pub fn sphere(a: f64) -> Result<Self> {
        Self::new(vec![a])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    pub fn averaged_radius(&self) -> f64 {
        self.c[0]
    }

    pub fn is_sphere(&self) -> bool {
        self.c[1..].iter().all(|&v| v == 0.0)
    }

    /// Stretch the shape so that its averaged radius becomes `a`.
    pub fn with_averaged_radius(&self, a: f64) -> Result<Self> {
        let s = a / self.c[0];
        Self::new(self.c.iter().map(|v| v * s).collect())
    }

    /// `(w(γ), dw/dγ)` as complex numbers `z + iρ`.
    pub fn map(&self, gamma: f64) -> (Complex64, Complex64) {
        let mut w = Complex64::new(0.0, 0.0);
        let mut dw = Complex64::new(0.0, 0.0);
        for (j, &cj) in self.c.iter().enumerate() {
            let power = 1.0 - j as f64;
            let e = Complex64::from_polar(cj, power * gamma);
            w += e;
            dw += e * Complex64::new(0.0, power);
        }
        (w, dw)
    }

    /// `d²w/dγ²`.
    pub fn map_second_derivative(&self, gamma: f64) -> Complex64 {
        self.c
            .iter()
            .enumerate()
            .map(|(j, &cj)| {
                let power = 1.0 - j as f64;
                Complex64::from_polar(-cj * power * power, power * gamma)
            })
            .sum()
    }

    pub fn sample(&self, gamma: f64) -> MeridianSample {
        let (w, dw) = self.map(gamma);
        let jac = dw.norm();
        MeridianSample {
            gamma,
            rho: w.im,
            z: w.re,
            unit_normal: [-dw.re / jac, dw.im / jac],
            arc_jacobian: jac,
        }
    }

    /// Largest distance of a surface point from the origin.
    pub fn max_radius(&self) -> f64 {
        (0..=VALIDATION_GRID)
            .map(|i| self.sample(PI * i as f64 / VALIDATION_GRID as f64).radius())
            .fold(0.0, f64::max)
    }

    /// Smallest distance of a surface point from the origin.
    pub fn min_radius(&self) -> f64 {
        (0..=VALIDATION_GRID)
            .map(|i| self.sample(PI * i as f64 / VALIDATION_GRID as f64).radius())
            .fold(f64::INFINITY, f64::min)
    }

    /// `(axial length, equatorial diameter)` of the body.
    pub fn extents(&self) -> (f64, f64) {
        let mut z_min = f64::INFINITY;
        let mut z_max = f64::NEG_INFINITY;
        let mut rho_max: f64 = 0.0;
        for i in 0..=VALIDATION_GRID {
            let s = self.sample(PI * i as f64 / VALIDATION_GRID as f64);
            z_min = z_min.min(s.z);
            z_max = z_max.max(s.z);
            rho_max = rho_max.max(s.rho);
        }
        (z_max - z_min, 2.0 * rho_max)
    }

    fn check_positive_radius(&self) -> Result<()> {
        let mut bad: Option<(f64, f64)> = None;
        for i in 1..VALIDATION_GRID {
            let g = PI * i as f64 / VALIDATION_GRID as f64;
            if self.sample(g).rho <= 0.0 {
                bad = Some(match bad {
                    None => (g, g),
                    Some((lo, _)) => (lo, g),
                });
            }
        }
        match bad {
            None => Ok(()),
            Some((lo, hi)) => Err(Error::Geometry(format!(
                "meridian radius is not positive for gamma in [{lo:.4}, {hi:.4}] rad; coefficients {:?} do not describe a valid body",
                self.c
            ))),
        }
    }

    fn check_simple(&self) -> Result<()> {
        let pts: Vec<(f64, f64)> = (0..=SIMPLE_CURVE_SEGMENTS)
            .map(|i| {
                let s = self.sample(PI * i as f64 / SIMPLE_CURVE_SEGMENTS as f64);
                (s.z, s.rho)
            })
            .collect();
        let n = pts.len() - 1;
        for a in 0..n {
            for b in (a + 2)..n {
                if segments_cross(pts[a], pts[a + 1], pts[b], pts[b + 1]) {
                    return Err(Error::Geometry(format!(
                        "meridian self-intersects near gamma = {:.4} rad",
                        PI * a as f64 / SIMPLE_CURVE_SEGMENTS as f64
                    )));
                }
            }
        }
        Ok(())
    }
}

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segments_cross(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Meridian point of `c` at angle `gamma ∈ [0, π]`.
pub fn meridian(c: &MappingCoefficients, gamma: f64) -> Result<MeridianSample> {
    if !(0.0..=PI).contains(&gamma) {
        return Err(Error::Domain(format!("meridian angle must lie in [0, π], got {gamma}")));
    }
    Ok(c.sample(gamma))
}
