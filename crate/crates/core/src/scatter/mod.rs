//! Scattering by rigid or pressure-release axisymmetric particles.

mod lab;
mod mie;
mod nullfield;
mod tmatrix;

pub use lab::scatter_lab_frame;
pub use mie::{mie_coefficients, mie_series};
pub use nullfield::{default_tmatrix_truncation, tmatrix_nullfield, MAX_CONDITION, TMATRIX_MARGIN};
pub use tmatrix::{BoundaryKind, TMatrix};
