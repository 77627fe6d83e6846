//! Special functions and quadrature rules shared by every wave expansion.
//!
//! Conventions used throughout the crate:
//!
//! * time dependence `e^{-iωt}`, so outgoing waves carry `e^{ikr}` and the
//!   outgoing radial function is the spherical Hankel function `h_n^(1)`;
//! * spherical harmonics `Y_n^m` are orthonormal on the unit sphere and carry
//!   the Condon–Shortley phase, `Y_n^{-m} = (-1)^m conj(Y_n^m)`;
//! * expansion coefficients are stored flat at index `ν = n(n+1) + m`.

mod bessel;
mod harmonics;
mod quadrature;
mod wigner;

pub use bessel::{cyl_j1, radial_table, spherical_jn, RadialKind, RadialTable};
pub use harmonics::{harmonic_table, mode_index, mode_count, HarmonicTable, LegendreTable};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use wigner::{wigner_d, WignerBlock};
