use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;

use super::rotation::rotate_coefficients;
use crate::error::{Error, Result};
use crate::linalg::expm;
use crate::specfun::{mode_index, spherical_jn, RadialKind};
use crate::wavefield::WaveExpansion;

/// Relative field norm allowed in the degrees discarded after translation.
const TAIL_TOLERANCE: f64 = 1e-6;

/// Skew-symmetric generator of axial translation for azimuthal order `m` on
/// degrees `|m|..=n_top`: `∂_z(j_n Y_n^m) = k(c_n j_{n-1}Y_{n-1}^m - c_{n+1} j_{n+1}Y_{n+1}^m)`.
fn axial_generator(m: i64, n_top: usize) -> DMatrix<f64> {
    let lo = m.unsigned_abs() as usize;
    let dim = n_top + 1 - lo;
    let mf = m as f64;
    let c = |n: usize| {
        let nf = n as f64;
        ((nf * nf - mf * mf) / ((2.0 * nf + 1.0) * (2.0 * nf - 1.0))).sqrt()
    };
    let mut g = DMatrix::zeros(dim, dim);
    for i in 0..dim - 1 {
        let cn = c(lo + i + 1);
        g[(i, i + 1)] = cn;
        g[(i + 1, i)] = -cn;
    }
    g
}

/// Argument `x` at which degree `n_max` is the default truncation
/// (`x + 4x^{1/3} + 4 = n_max`); zero for `n_max ≤ 4`.
fn reference_argument(n_max: usize) -> f64 {
    let target = n_max as f64;
    if target <= 4.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, target);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if mid + 4.0 * f64::cbrt(mid) + 4.0 < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Coefficients of the field shifted by `d` along the axis, degrees up to
/// `n_out`, with a tail check against `n_out`.
fn translate_coefficients(a: &[Complex64], n_in: usize, k: f64, d: f64, n_out: usize) -> Result<Vec<Complex64>> {
    let kd = k * d;
    let pad = n_in.max(n_out) + (kd.abs().ceil() as usize).max(8);
    let mut full = vec![Complex64::new(0.0, 0.0); (pad + 1) * (pad + 1)];
    for m in -(n_in as i64)..=(n_in as i64) {
        let lo = m.unsigned_abs() as usize;
        let t = expm(&(axial_generator(m, pad) * kd));
        let input = DVector::from_iterator(pad + 1 - lo, (lo..=pad).map(|n| if n <= n_in { a[mode_index(n, m)] } else { Complex64::new(0.0, 0.0) }));
        let out = t.map(|v| Complex64::new(v, 0.0)) * input;
        for (i, n) in (lo..=pad).enumerate() {
            full[mode_index(n, m)] = out[i];
        }
    }

    let x_ref = reference_argument(n_out);
    let (mut kept, mut tail) = (0.0, 0.0);
    for n in 0..=pad {
        let w = spherical_jn(n, x_ref).powi(2);
        let e: f64 = (-(n as i64)..=(n as i64)).map(|m| full[mode_index(n, m)].norm_sqr()).sum::<f64>() * w;
        if n <= n_out {
            kept += e;
        } else {
            tail += e;
        }
    }
    if tail > TAIL_TOLERANCE * TAIL_TOLERANCE * (kept + tail) {
        return Err(Error::Truncation(format!(
            "translation by {d:e} m leaves {:.2e} of the field beyond degree {n_out}",
            (tail / (kept + tail)).sqrt()
        )));
    }
    full.truncate((n_out + 1) * (n_out + 1));
    Ok(full)
}

/// Re-expands a regular expansion about `origin + d·ẑ`, degrees up to `n_max_out`.
///
/// Field values are preserved: the result at absolute point `X` equals `exp` at `X`.
pub fn translate_z_regular(exp: &WaveExpansion, d: f64, n_max_out: usize) -> Result<WaveExpansion> {
    check_regular(exp, n_max_out)?;
    if !d.is_finite() {
        return Err(Error::Domain(format!("translation distance must be finite, got {d}")));
    }
    let coeffs = if d == 0.0 { exp.resized(n_max_out).coeffs } else { translate_coefficients(&exp.coeffs, exp.n_max, exp.k, d, n_max_out)? };
    WaveExpansion::new(RadialKind::Regular, n_max_out, exp.k, exp.origin + Vector3::new(0.0, 0.0, d), coeffs)
}

/// Re-expands a regular expansion about `origin + shift` by rotating the
/// shift onto the axis, translating axially and rotating back.
pub fn translate_regular(exp: &WaveExpansion, shift: &Vector3<f64>, n_max_out: usize) -> Result<WaveExpansion> {
    check_regular(exp, n_max_out)?;
    let d = shift.norm();
    if !d.is_finite() {
        return Err(Error::Domain(format!("translation vector must be finite, got {shift:?}")));
    }
    if d == 0.0 {
        return Ok(exp.resized(n_max_out));
    }
    let theta = (shift.z / d).clamp(-1.0, 1.0).acos();
    let phi = shift.y.atan2(shift.x);
    // Q = Ry(-θ)·Rz(-φ) maps the shift onto +z.
    let to_axis = rotate_coefficients(&exp.coeffs, exp.n_max, 0.0, -theta, -phi);
    let moved = translate_coefficients(&to_axis, exp.n_max, exp.k, d, n_max_out)?;
    let coeffs = rotate_coefficients(&moved, n_max_out, phi, theta, 0.0);
    WaveExpansion::new(RadialKind::Regular, n_max_out, exp.k, exp.origin + shift, coeffs)
}

fn check_regular(exp: &WaveExpansion, n_max_out: usize) -> Result<()> {
    if exp.kind != RadialKind::Regular {
        return Err(Error::Dimension("only regular expansions can be translated".into()));
    }
    if n_max_out < exp.n_max {
        return Err(Error::Domain(format!("target degree {n_max_out} is below the source degree {}", exp.n_max)));
    }
    Ok(())
}
