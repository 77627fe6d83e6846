use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::{gauss_legendre, radial_table, LegendreTable, RadialKind};
use crate::wavefield::{Medium, WaveExpansion};

/// Time-averaged radiation force (N) and torque about the expansion origin (N·m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceTorque {
    pub force: Vector3<f64>,
    pub torque: Vector3<f64>,
}

impl ForceTorque {
    pub fn zero() -> Self {
        ForceTorque { force: Vector3::zeros(), torque: Vector3::zeros() }
    }

    /// Largest relative difference of force and torque, each normalized by its own magnitude in `other`.
    pub fn relative_difference(&self, other: &ForceTorque) -> (f64, f64) {
        let rel = |a: &Vector3<f64>, b: &Vector3<f64>| {
            let scale = b.norm();
            if scale == 0.0 {
                a.norm()
            } else {
                (a - b).norm() / scale
            }
        };
        (rel(&self.force, &other.force), rel(&self.torque, &other.torque))
    }
}

/// Momentum-flux force and torque from the total field on a sphere of `radius`
/// about the common origin of `incident` (regular) and `scattered` (outgoing).
///
/// `F = -∮ [⟨p₂⟩ n + ρ₀⟨(v·n) v⟩] dS`, `⟨p₂⟩ = |p|²/(4ρ₀c₀²) - ρ₀|v|²/4`,
/// `T = -ρ₀ ∮ ⟨(v·n)(r × v)⟩ dS`, with `v = ∇p/(iωρ₀)`.
pub fn force_torque(incident: &WaveExpansion, scattered: &WaveExpansion, medium: &Medium, frequency: f64, radius: f64) -> Result<ForceTorque> {
    if incident.kind != RadialKind::Regular || scattered.kind != RadialKind::Outgoing {
        return Err(Error::Dimension("force needs a regular incident and an outgoing scattered expansion".into()));
    }
    if incident.origin != scattered.origin {
        return Err(Error::Dimension("incident and scattered expansions have different origins".into()));
    }
    let k = medium.wavenumber(frequency);
    for e in [incident, scattered] {
        if (e.k - k).abs() > 1e-9 * k {
            return Err(Error::Dimension(format!("expansion wavenumber {} does not match the medium ({k})", e.k)));
        }
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("quadrature radius must be positive, got {radius}")));
    }

    let n_max = incident.n_max.max(scattered.n_max);
    let kr = k * radius;
    let jt = radial_table(RadialKind::Regular, n_max, kr)?;
    let ht = radial_table(RadialKind::Outgoing, n_max, kr)?;
    // Radial factors of the total field per mode: value, d/dr, value / r.
    let mut coeffs = Vec::with_capacity((n_max + 1) * (n_max + 1));
    for n in 0..=n_max {
        for m in -(n as i64)..=(n as i64) {
            let a = if n <= incident.n_max { incident.coeff(n, m) } else { Complex64::default() };
            let s = if n <= scattered.n_max { scattered.coeff(n, m) } else { Complex64::default() };
            let v = a * jt.values[n] + s * ht.values[n];
            let d = (a * jt.derivatives[n] + s * ht.derivatives[n]) * k;
            coeffs.push((v, d, v / radius));
        }
    }

    let rule = gauss_legendre(2 * n_max + 2)?;
    let n_phi = 4 * n_max + 4;
    let omega = 2.0 * PI * frequency;
    let to_velocity = Complex64::new(0.0, -1.0 / (omega * medium.rho0));
    let rho0 = medium.rho0;
    let c2 = medium.c0 * medium.c0;

    let rings: Vec<(Vector3<f64>, Vector3<f64>)> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&x, &w)| {
            let theta = x.acos();
            let (st, ct) = theta.sin_cos();
            let leg = LegendreTable::new(n_max, theta);
            // Per-m sums: pressure, ∂_r p, (1/r)∂_θ p, (1/(r sinθ))∂_φ p / (im).
            let mut sums = vec![[Complex64::default(); 4]; 2 * n_max + 1];
            let mut idx = 0;
            for n in 0..=n_max {
                for m in -(n as i64)..=(n as i64) {
                    let (v, d, over_r) = coeffs[idx];
                    idx += 1;
                    let p = leg.value(n, m);
                    let slot = &mut sums[(m + n_max as i64) as usize];
                    slot[0] += v * p;
                    slot[1] += d * p;
                    slot[2] += over_r * leg.derivative(n, m);
                    slot[3] += over_r * leg.over_sin(n, m) * Complex64::new(0.0, m as f64);
                }
            }

            let mut force = Vector3::zeros();
            let mut torque = Vector3::zeros();
            let weight = w * 2.0 * PI / n_phi as f64 * radius * radius;
            for j in 0..n_phi {
                let phi = 2.0 * PI * j as f64 / n_phi as f64;
                let (sp, cp) = phi.sin_cos();
                let mut f = [Complex64::default(); 4];
                for (mi, slot) in sums.iter().enumerate() {
                    let e = Complex64::from_polar(1.0, (mi as f64 - n_max as f64) * phi);
                    for c in 0..4 {
                        f[c] += slot[c] * e;
                    }
                }
                let p = f[0];
                let (vr, vt, vp) = (f[1] * to_velocity, f[2] * to_velocity, f[3] * to_velocity);
                let e_r = Vector3::new(st * cp, st * sp, ct);
                let e_t = Vector3::new(ct * cp, ct * sp, -st);
                let e_p = Vector3::new(-sp, cp, 0.0);
                let v2 = vr.norm_sqr() + vt.norm_sqr() + vp.norm_sqr();
                let p2 = p.norm_sqr() / (4.0 * rho0 * c2) - rho0 * v2 / 4.0;
                // ⟨(v·n) v⟩ = ½ Re(conj(v_r) v)
                let flux_r = 0.5 * vr.norm_sqr();
                let flux_t = 0.5 * (vr.conj() * vt).re;
                let flux_p = 0.5 * (vr.conj() * vp).re;
                force -= weight * ((p2 + rho0 * flux_r) * e_r + rho0 * (flux_t * e_t + flux_p * e_p));
                // r × v = R (v_θ φ̂ - v_φ θ̂)
                torque -= weight * rho0 * radius * (flux_t * e_p - flux_p * e_t);
            }
            (force, torque)
        })
        .collect();

    let (force, torque) = rings.into_iter().fold((Vector3::zeros(), Vector3::zeros()), |(f, t), (df, dt)| (f + df, t + dt));
    if !(force.iter().chain(torque.iter()).all(|v| v.is_finite())) {
        return Err(Error::Conditioning("radiation force quadrature produced non-finite values".into()));
    }
    Ok(ForceTorque { force, torque })
}
