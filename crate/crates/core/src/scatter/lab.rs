use super::TMatrix;
use crate::error::{Error, Result};
use crate::specfun::RadialKind;
use crate::transform::{rotate_by_matrix, Orientation};
use crate::wavefield::WaveExpansion;

/// Scattered (outgoing) expansion in the lab frame for a particle whose body
/// frame is rotated by `o`: `s = D(o)·T·D(o)⁻¹·a`.
pub fn scatter_lab_frame(t: &TMatrix, incident: &WaveExpansion, o: &Orientation) -> Result<WaveExpansion> {
    if incident.kind != RadialKind::Regular {
        return Err(Error::Dimension("incident expansion must be regular".into()));
    }
    if incident.n_max != t.n_max {
        return Err(Error::Dimension(format!(
            "incident degree {} does not match T-matrix degree {}",
            incident.n_max, t.n_max
        )));
    }
    if (incident.k - t.k).abs() > 1e-12 * t.k {
        return Err(Error::Dimension(format!("incident wavenumber {} differs from T-matrix wavenumber {}", incident.k, t.k)));
    }
    let body = rotate_by_matrix(incident, &o.rotation.transpose());
    let mut scattered = WaveExpansion::new(RadialKind::Outgoing, t.n_max, incident.k, incident.origin, t.apply(&body.coeffs)?)?;
    scattered = rotate_by_matrix(&scattered, &o.rotation);
    Ok(scattered)
}
