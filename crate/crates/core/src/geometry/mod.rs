//! Axisymmetric particle geometry from mapping coefficients.
//!
//! The meridian is the image of the upper unit half-circle under
//! `w(γ) = Σ_j c_j e^{i(2-j)γ}`, `γ ∈ [0, π]`, with the symmetry axis along
//! `z = Re w` and cylindrical radius `ρ = Im w`. A single coefficient `[a]`
//! gives the sphere of radius `a`.

mod mapping;
mod mass;
mod mesh;
mod stl;

pub use mapping::{meridian, MappingCoefficients, MeridianSample};
pub use mass::{mass_properties, MassProperties};
pub use mesh::{build_mesh, SurfaceMesh, DEFAULT_MESH_RESOLUTION};
pub use stl::{export_stl, parse_stl, write_stl, DEFAULT_STL_NAME};
