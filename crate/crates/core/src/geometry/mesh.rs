use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::Vector3;

use super::MappingCoefficients;
use crate::error::{Error, Result};

/// Meridian × azimuthal resolution used when none is given.
pub const DEFAULT_MESH_RESOLUTION: (usize, usize) = (64, 64);

/// Closed triangle mesh, coordinates in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub vertices: Vec<Vector3<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub facet_normals: Vec<Vector3<f64>>,
}

impl SurfaceMesh {
    /// Build from vertices and triangles, computing unit facet normals.
    pub fn from_triangles(vertices: Vec<Vector3<f64>>, triangles: Vec<[usize; 3]>) -> Self {
        let facet_normals = triangles
            .iter()
            .map(|t| {
                let n = (vertices[t[1]] - vertices[t[0]]).cross(&(vertices[t[2]] - vertices[t[0]]));
                let len = n.norm();
                if len > 0.0 {
                    n / len
                } else {
                    n
                }
            })
            .collect();
        SurfaceMesh { vertices, triangles, facet_normals }
    }

    /// Signed enclosed volume; positive for an outward-oriented closed mesh.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| self.vertices[t[0]].dot(&self.vertices[t[1]].cross(&self.vertices[t[2]])))
            .sum::<f64>()
            / 6.0
    }

    /// Every edge is used by exactly two triangles, once in each direction.
    pub fn is_closed(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        directed.iter().all(|(&(a, b), &count)| count == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounds(&self) -> (Vector3<f64>, Vector3<f64>) {
        let mut lo = Vector3::repeat(f64::INFINITY);
        let mut hi = Vector3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }
}

/// Revolve the meridian into a structured mesh: `n_theta - 1` rings of
/// `n_phi` vertices plus one vertex per pole, with triangle fans at the poles.
///
/// Ring radii are scaled by `sqrt(Δφ / sin Δφ)` so each ring polygon encloses
/// the same area as the true circle; the mesh volume then tracks the solid
/// instead of its inscribed polyhedron.
pub fn build_mesh(c: &MappingCoefficients, n_theta: usize, n_phi: usize) -> Result<SurfaceMesh> {
    if n_theta < 8 || n_phi < 8 {
        return Err(Error::Domain(format!("mesh resolution must be at least 8 x 8, got {n_theta} x {n_phi}")));
    }
    let top = c.sample(0.0);
    let bottom = c.sample(PI);
    let dphi = 2.0 * PI / n_phi as f64;
    let ring_scale = (dphi / dphi.sin()).sqrt();
    let mut vertices = Vec::with_capacity(2 + (n_theta - 1) * n_phi);
    vertices.push(Vector3::new(0.0, 0.0, top.z));
    for i in 1..n_theta {
        let s = c.sample(PI * i as f64 / n_theta as f64);
        let rho = s.rho * ring_scale;
        for j in 0..n_phi {
            let phi = 2.0 * PI * j as f64 / n_phi as f64;
            vertices.push(Vector3::new(rho * phi.cos(), rho * phi.sin(), s.z));
        }
    }
    let bottom_index = vertices.len();
    vertices.push(Vector3::new(0.0, 0.0, bottom.z));

    let ring = |i: usize, j: usize| 1 + (i - 1) * n_phi + (j % n_phi);
    let mut triangles = Vec::with_capacity(2 * n_theta * n_phi);
    for j in 0..n_phi {
        triangles.push([0, ring(1, j), ring(1, j + 1)]);
    }
    for i in 1..(n_theta - 1) {
        for j in 0..n_phi {
            triangles.push([ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)]);
            triangles.push([ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)]);
        }
    }
    for j in 0..n_phi {
        triangles.push([bottom_index, ring(n_theta - 1, j + 1), ring(n_theta - 1, j)]);
    }
    Ok(SurfaceMesh::from_triangles(vertices, triangles))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_shapes() -> Vec<MappingCoefficients> {
        [
            vec![0.002, 0.0, 0.0, 0.00025],
            vec![0.002, 0.0, -0.0005, 0.0, -0.00025],
            vec![0.002, 0.0, 0.0, 0.0, 0.0002],
            vec![0.002, 0.0, 0.0004],
        ]
        .into_iter()
        .map(|c| MappingCoefficients::new(c).unwrap())
        .collect()
    }

    #[test]
    fn sphere_volume() {
        let m = build_mesh(&MappingCoefficients::sphere(0.002).unwrap(), 64, 64).unwrap();
        let exact = 4.0 / 3.0 * PI * 0.002f64.powi(3);
        assert!((m.signed_volume() / exact - 1.0).abs() < 1e-3);
        assert!((exact - 3.3510e-8).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_volume() {
        let c = MappingCoefficients::new(vec![0.002, 0.0, 0.0004]).unwrap();
        let m = build_mesh(&c, 64, 64).unwrap();
        let exact = 4.0 / 3.0 * PI * 0.0016 * 0.0016 * 0.0024;
        assert!((m.signed_volume() / exact - 1.0).abs() < 1e-3);
    }

    #[test]
    fn closed_and_outward_for_reference_shapes() {
        for c in reference_shapes() {
            let m = build_mesh(&c, 64, 64).unwrap();
            assert!(m.is_closed());
            assert!(m.signed_volume() > 0.0);
            let coarse = build_mesh(&c, 8, 8).unwrap();
            assert!(coarse.is_closed());
        }
    }

    #[test]
    fn rejects_coarse_resolution() {
        let c = MappingCoefficients::sphere(1.0).unwrap();
        assert!(build_mesh(&c, 7, 64).is_err());
        assert!(build_mesh(&c, 64, 4).is_err());
    }
}
