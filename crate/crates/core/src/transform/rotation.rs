use nalgebra::Matrix3;
use num_complex::Complex64;

use super::orientation::{zyz_angles, Orientation};
use crate::specfun::{mode_index, wigner_d};
use crate::wavefield::WaveExpansion;

/// Rotates the field about the expansion origin: the result evaluated at `x`
/// equals `exp` evaluated at `R⁻¹x` (relative to the origin).
pub fn rotate_expansion(exp: &WaveExpansion, o: &Orientation) -> WaveExpansion {
    rotate_by_matrix(exp, &o.rotation)
}

pub fn rotate_by_matrix(exp: &WaveExpansion, r: &Matrix3<f64>) -> WaveExpansion {
    let (alpha, beta, gamma) = zyz_angles(r);
    let mut out = exp.clone();
    out.coeffs = rotate_coefficients(&exp.coeffs, exp.n_max, alpha, beta, gamma);
    out
}

/// `b_n^{m'} = Σ_m e^{-im'α} d^n_{m'm}(β) e^{-imγ} a_n^m`.
pub(crate) fn rotate_coefficients(a: &[Complex64], n_max: usize, alpha: f64, beta: f64, gamma: f64) -> Vec<Complex64> {
    if alpha == 0.0 && beta == 0.0 && gamma == 0.0 {
        return a.to_vec();
    }
    let d = wigner_d(n_max, beta).expect("finite angle");
    let mut out = vec![Complex64::new(0.0, 0.0); a.len()];
    let mut inner = Vec::with_capacity(2 * n_max + 1);
    for (n, block) in d.iter().enumerate() {
        let ni = n as i64;
        inner.clear();
        inner.extend((-ni..=ni).map(|m| a[mode_index(n, m)] * Complex64::from_polar(1.0, -(m as f64) * gamma)));
        for mp in -ni..=ni {
            let s: Complex64 = (-ni..=ni).zip(&inner).map(|(m, v)| v * block.get(mp, m)).sum();
            out[mode_index(n, mp)] = s * Complex64::from_polar(1.0, -(mp as f64) * alpha);
        }
    }
    out
}
