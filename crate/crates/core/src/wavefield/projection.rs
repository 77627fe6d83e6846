use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use rayon::prelude::*;

use super::{IncidentField, WaveExpansion};
use crate::error::{Error, Result};
use crate::specfun::{gauss_legendre, mode_index, spherical_jn, LegendreTable, RadialKind};

/// Truncation degree `ceil(x + 4 x^{1/3} + 4)` with `x = k r_max`.
pub fn default_truncation(k: f64, r_max: f64) -> usize {
    let x = k * r_max;
    (x + 4.0 * x.cbrt() + 4.0).ceil() as usize
}

/// Projection sphere radii `1.5 r_max` and `1.9 r_max`.
pub fn default_projection_radii(r_max: f64) -> (f64, f64) {
    (1.5 * r_max, 1.9 * r_max)
}

/// Extra quadrature degrees beyond the truncation, enough that aliased
/// contributions from higher degrees fall below double precision.
fn oversampling(k_r: f64) -> usize {
    12 + k_r.ceil() as usize
}

fn near_zero_of_jn(n: usize, x: f64) -> bool {
    let lo = spherical_jn(n, (x - 1e-3).max(0.0));
    let hi = spherical_jn(n, x + 1e-3);
    lo * hi <= 0.0
}

/// Raw surface projections `∮ p conj(Y_n^m) dΩ` on the sphere of radius `r`.
fn surface_projections(field: &dyn IncidentField, n_max: usize, center: &Vector3<f64>, r: f64) -> Result<Vec<Complex64>> {
    let k = field.wavenumber();
    let extra = oversampling(k * r);
    let n_theta = n_max + 2 + extra;
    let n_phi = 2 * (n_max + 1 + extra);
    let rule = gauss_legendre(n_theta)?;

    let rows: Vec<Result<Vec<Complex64>>> = rule
        .nodes
        .par_iter()
        .zip(rule.weights.par_iter())
        .map(|(&x, &w)| {
            let theta = x.acos();
            let (st, ct) = theta.sin_cos();
            let mut samples = Vec::with_capacity(n_phi);
            for j in 0..n_phi {
                let phi = 2.0 * PI * j as f64 / n_phi as f64;
                let point = center + r * Vector3::new(st * phi.cos(), st * phi.sin(), ct);
                samples.push(field.pressure(&point)?);
            }
            let leg = LegendreTable::new(n_max, theta);
            let weight = w * 2.0 * PI / n_phi as f64;
            let mut row = vec![Complex64::new(0.0, 0.0); (n_max + 1) * (n_max + 1)];
            for m in -(n_max as i64)..=(n_max as i64) {
                let fm: Complex64 = samples
                    .iter()
                    .enumerate()
                    .map(|(j, s)| s * Complex64::from_polar(1.0, -(m as f64) * 2.0 * PI * j as f64 / n_phi as f64))
                    .sum();
                for n in m.unsigned_abs() as usize..=n_max {
                    row[mode_index(n, m)] = fm * (weight * leg.value(n, m));
                }
            }
            Ok(row)
        })
        .collect();

    let mut total = vec![Complex64::new(0.0, 0.0); (n_max + 1) * (n_max + 1)];
    for row in rows {
        for (t, v) in total.iter_mut().zip(row?) {
            *t += v;
        }
    }
    Ok(total)
}

/// Regular-wave coefficients of `field` about `center` by surface projection:
/// `a_n^m = (1/j_n(kR)) ∮ p(R, θ, φ) conj(Y_n^m) dΩ`, taking for each degree
/// the radius of `radii` with the larger `|j_n(kR)|`.
///
/// The coefficients from both radii are compared; a relative disagreement
/// above [`IncidentField::consistency_tolerance`] is a geometry error.
pub fn project_incident(
    field: &dyn IncidentField,
    n_max: usize,
    center: Vector3<f64>,
    radii: (f64, f64),
) -> Result<WaveExpansion> {
    let k = field.wavenumber();
    let (r1, r2) = radii;
    if !(r1 > 0.0 && r2 > 0.0) || r1 == r2 {
        return Err(Error::Domain(format!("projection radii must be positive and distinct, got {r1}, {r2}")));
    }
    if let Some(d) = field.source_distance(&center) {
        if r1.max(r2) >= 0.5 * d {
            return Err(Error::Geometry(format!(
                "projection radius {:.4e} m is not below half the distance {d:.4e} m to the nearest source",
                r1.max(r2)
            )));
        }
    }
    let j1: Vec<f64> = (0..=n_max).map(|n| spherical_jn(n, k * r1)).collect();
    let j2: Vec<f64> = (0..=n_max).map(|n| spherical_jn(n, k * r2)).collect();
    for n in 0..=n_max {
        if near_zero_of_jn(n, k * r1) && near_zero_of_jn(n, k * r2) {
            return Err(Error::Conditioning(format!(
                "both projection radii sit on a zero of j_{n}; choose a different radius pair"
            )));
        }
    }

    let c1 = surface_projections(field, n_max, &center, r1)?;
    let c2 = surface_projections(field, n_max, &center, r2)?;
    let scale = c1.iter().chain(&c2).map(|c| c.norm()).fold(0.0, f64::max);

    let mut exp = WaveExpansion::zeros(RadialKind::Regular, n_max, k, center);
    if scale == 0.0 {
        return Ok(exp);
    }
    let mut mismatch: f64 = 0.0;
    for n in 0..=n_max {
        for m in -(n as i64)..=(n as i64) {
            let i = mode_index(n, m);
            let a1 = c1[i] / j1[n];
            let a2 = c2[i] / j2[n];
            exp.coeffs[i] = if j1[n].abs() >= j2[n].abs() { a1 } else { a2 };
            mismatch = mismatch.max((a1 - a2).norm() * j1[n].abs().min(j2[n].abs()));
        }
    }
    if mismatch > field.consistency_tolerance() * scale {
        return Err(Error::Geometry(format!(
            "projections on radii {r1:.4e} m and {r2:.4e} m disagree by {:.2e} (relative); a source lies inside the sampling ball or the field is not a free-space wave",
            mismatch / scale
        )));
    }
    Ok(exp)
}
