//! Oracles shared by the integration tests.
#![allow(dead_code)]

use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::scatter::BoundaryKind;
use acoustophoresis::specfun::{gauss_legendre, harmonic_table, mode_count, radial_table, RadialKind};
use acoustophoresis::transform::Orientation;
use acoustophoresis::wavefield::IncidentField;
use nalgebra::{DMatrix, DVector, Vector3};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Scattered outgoing coefficients about the lab origin by least-squares
/// collocation of the boundary condition on the rotated particle surface.
///
/// Unrelated to the null-field solver: full 3-D, lab frame, no symmetry
/// reduction, no surface integral identities.
pub fn collocation_scatter(
    c: &MappingCoefficients,
    bc: BoundaryKind,
    orientation: &Orientation,
    incident: &dyn IncidentField,
    n_max: usize,
) -> Vec<Complex64> {
    let k = incident.wavenumber();
    let n_gamma = 2 * n_max + 6;
    let n_phi = 4 * n_max + 6;
    let rule = gauss_legendre(n_gamma).unwrap();
    let unknowns = mode_count(n_max);
    let rows = n_gamma * n_phi;
    let mut a = DMatrix::<Complex64>::zeros(rows, unknowns);
    let mut b = DVector::<Complex64>::zeros(rows);
    let r = orientation.rotation;

    let mut row = 0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let gamma = 0.5 * PI * (x + 1.0);
        let s = c.sample(gamma);
        for j in 0..n_phi {
            let phi = 2.0 * PI * (j as f64 + 0.5) / n_phi as f64;
            let (sp, cp) = phi.sin_cos();
            let point = r * Vector3::new(s.rho * cp, s.rho * sp, s.z);
            let normal = r * Vector3::new(s.unit_normal[0] * cp, s.unit_normal[0] * sp, s.unit_normal[1]);
            let weight = (w * s.rho.max(1e-12) * s.arc_jacobian).sqrt();

            let rad = point.norm();
            let theta = (point.z / rad).clamp(-1.0, 1.0).acos();
            let az = point.y.atan2(point.x);
            let h = radial_table(RadialKind::Outgoing, n_max, k * rad).unwrap();
            let y = harmonic_table(n_max, theta, az).unwrap();
            let (st, ct) = theta.sin_cos();
            let (sa, ca) = az.sin_cos();
            let e_r = Vector3::new(st * ca, st * sa, ct);
            let e_t = Vector3::new(ct * ca, ct * sa, -st);
            let e_p = Vector3::new(-sa, ca, 0.0);
            let (nr, nt, np) = (normal.dot(&e_r), normal.dot(&e_t), normal.dot(&e_p));

            for n in 0..=n_max {
                for m in -(n as i64)..=(n as i64) {
                    let i = acoustophoresis::specfun::mode_index(n, m);
                    a[(row, i)] = weight
                        * match bc {
                            BoundaryKind::SoundSoft => h.values[n] * y.values[i],
                            BoundaryKind::SoundHard => {
                                k * h.derivatives[n] * y.values[i] * nr
                                    + h.values[n] / rad * (y.theta_derivatives[i] * nt + y.azimuthal[i] * np)
                            }
                        };
                }
            }
            b[row] = -weight
                * match bc {
                    BoundaryKind::SoundSoft => incident.pressure(&point).unwrap(),
                    BoundaryKind::SoundHard => {
                        let g = incident.pressure_gradient(&point).unwrap();
                        g.x * normal.x + g.y * normal.y + g.z * normal.z
                    }
                };
            row += 1;
        }
    }

    let scale: Vec<f64> = (0..unknowns).map(|j| 1.0 / a.column(j).iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()).collect();
    for j in 0..unknowns {
        a.column_mut(j).scale_mut(scale[j]);
    }
    let qr = a.qr();
    let rhs = qr.q().adjoint() * b;
    let mut x = qr.r().solve_upper_triangular(&rhs).expect("collocation system is singular");
    for j in 0..unknowns {
        x[j] *= scale[j];
    }
    x.iter().copied().collect()
}

/// Relative L2 distance of two outgoing coefficient vectors, i.e. of their far fields.
pub fn far_field_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let len = a.len().max(b.len());
    let get = |v: &[Complex64], i: usize| v.get(i).copied().unwrap_or_default();
    let num: f64 = (0..len).map(|i| (get(a, i) - get(b, i)).norm_sqr()).sum();
    let den: f64 = b.iter().map(|v| v.norm_sqr()).sum();
    (num / den).sqrt()
}
