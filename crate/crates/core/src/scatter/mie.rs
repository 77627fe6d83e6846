use num_complex::Complex64;

use super::{BoundaryKind, TMatrix};
use crate::error::{Error, Result};
use crate::specfun::{radial_table, RadialKind};

/// Sphere scattering coefficients `s_n`, `n = 0..=n_max`:
/// `-j_n/h_n` (sound-soft) or `-j_n'/h_n'` (sound-hard) at `ka`.
pub fn mie_series(bc: BoundaryKind, ka: f64, n_max: usize) -> Result<Vec<Complex64>> {
    if !(ka > 0.0 && ka.is_finite()) {
        return Err(Error::Domain(format!("ka must be positive, got {ka}")));
    }
    let j = radial_table(RadialKind::Regular, n_max, ka)?;
    let h = radial_table(RadialKind::Outgoing, n_max, ka)?;
    Ok((0..=n_max)
        .map(|n| match bc {
            BoundaryKind::SoundSoft => -j.values[n] / h.values[n],
            BoundaryKind::SoundHard => -j.derivatives[n] / h.derivatives[n],
        })
        .collect())
}

/// Diagonal T-matrix of a sphere of radius `a` at wavenumber `k`.
pub fn mie_coefficients(bc: BoundaryKind, k: f64, a: f64, n_max: usize) -> Result<TMatrix> {
    Ok(TMatrix::diagonal(k, &mie_series(bc, k * a, n_max)?))
}
