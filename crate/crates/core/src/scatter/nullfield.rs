use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::tmatrix::max_modulus;
use super::{BoundaryKind, TMatrix};
use crate::error::{Error, Result};
use crate::geometry::MappingCoefficients;
use crate::wavefield::default_truncation;
use crate::specfun::{gauss_legendre, radial_table, LegendreTable, RadialKind, RadialTable};

/// Largest tolerated condition number of the equilibrated `Q` block.
pub const MAX_CONDITION: f64 = 1e12;

/// Successive meridian rules must agree to this (relative to the largest entry).
const QUADRATURE_AGREEMENT: f64 = 1e-10;
const MAX_DOUBLINGS: usize = 4;

/// Surface data at one meridian node, shared by all blocks.
struct Node {
    weight: f64,
    inv_r: f64,
    n_r: f64,
    n_theta: f64,
    legendre: LegendreTable,
    regular: RadialTable,
    outgoing: RadialTable,
}

fn nodes(c: &MappingCoefficients, k: f64, n_max: usize, points: usize) -> Result<Vec<Node>> {
    let rule = gauss_legendre(points)?;
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let gamma = 0.5 * PI * (x + 1.0);
            let s = c.sample(gamma);
            let r = s.radius();
            let theta = s.rho.atan2(s.z);
            let (st, ct) = theta.sin_cos();
            let [nrho, nz] = s.unit_normal;
            Ok(Node {
                weight: 0.5 * PI * w * 2.0 * PI * s.rho * s.arc_jacobian,
                inv_r: 1.0 / r,
                n_r: nrho * st + nz * ct,
                n_theta: nrho * ct - nz * st,
                legendre: LegendreTable::new(n_max, theta),
                regular: radial_table(RadialKind::Regular, n_max, k * r)?,
                outgoing: radial_table(RadialKind::Outgoing, n_max, k * r)?,
            })
        })
        .collect()
}

/// `Q` and `RgQ` for azimuthal order `m` (rows: test degree `n`, columns: expansion degree `n'`).
fn assemble(nodes: &[Node], bc: BoundaryKind, k: f64, n_max: usize, m: i64) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let lo = m.unsigned_abs() as usize;
    let dim = n_max + 1 - lo;
    let mut q = DMatrix::<Complex64>::zeros(dim, dim);
    let mut rg = DMatrix::<Complex64>::zeros(dim, dim);
    let mut val = vec![0.0; dim];
    let mut der = vec![0.0; dim];
    for node in nodes {
        for i in 0..dim {
            val[i] = node.legendre.value(lo + i, m);
            der[i] = node.legendre.derivative(lo + i, m);
        }
        // ∂_n [f_n(kr) P̄_n] = n_r k f_n' P̄_n + n_θ (f_n / r) dP̄_n/dθ
        let normal_derivative = |table: &RadialTable, i: usize| {
            let n = lo + i;
            table.derivatives[n] * (node.n_r * k * val[i]) + table.values[n] * (node.n_theta * node.inv_r * der[i])
        };
        for i in 0..dim {
            let n = lo + i;
            for j in 0..dim {
                let np = lo + j;
                let (qv, rv) = match bc {
                    BoundaryKind::SoundSoft => {
                        let d = normal_derivative(&node.regular, j);
                        (node.outgoing.values[n] * val[i] * d, node.regular.values[n] * val[i] * d)
                    }
                    BoundaryKind::SoundHard => {
                        let v = node.regular.values[np] * val[j];
                        (v * normal_derivative(&node.outgoing, i), v * normal_derivative(&node.regular, i))
                    }
                };
                q[(i, j)] += qv * node.weight;
                rg[(i, j)] += rv * node.weight;
            }
        }
    }
    (q, rg)
}

/// `T = -RgQ·Q⁻¹`, solved on the row/column-equilibrated `Q`; returns the
/// block and the equilibrated condition number.
fn solve_block(q: &DMatrix<Complex64>, rg: &DMatrix<Complex64>) -> (DMatrix<Complex64>, f64) {
    let dim = q.nrows();
    let row_scale: Vec<f64> = (0..dim).map(|i| 1.0 / q.row(i).iter().map(|v| v.norm()).fold(0.0, f64::max)).collect();
    let mut scaled = q.clone();
    for i in 0..dim {
        scaled.row_mut(i).scale_mut(row_scale[i]);
    }
    let col_scale: Vec<f64> = (0..dim).map(|j| 1.0 / scaled.column(j).iter().map(|v| v.norm()).fold(0.0, f64::max)).collect();
    for j in 0..dim {
        scaled.column_mut(j).scale_mut(col_scale[j]);
    }
    let sv = scaled.clone().svd(false, false).singular_values;
    let cond = sv.max() / sv.min();

    // T = -(RgQ·D_c)·Q̃⁻¹·D_r with Q̃ = D_r·Q·D_c; solve the transposed system.
    let mut m = rg.clone();
    for j in 0..dim {
        m.column_mut(j).scale_mut(col_scale[j]);
    }
    let x = scaled.transpose().lu().solve(&m.transpose()).unwrap_or_else(|| DMatrix::from_element(dim, dim, Complex64::new(f64::NAN, 0.0)));
    let mut t = -x.transpose();
    for j in 0..dim {
        t.column_mut(j).scale_mut(row_scale[j]);
    }
    (t, cond)
}

fn tmatrix_with_rule(c: &MappingCoefficients, bc: BoundaryKind, k: f64, n_max: usize, points: usize) -> Result<(TMatrix, f64)> {
    let nodes = nodes(c, k, n_max, points)?;
    let solved: Vec<(DMatrix<Complex64>, f64)> = (-(n_max as i64)..=(n_max as i64))
        .into_par_iter()
        .map(|m| {
            let (q, rg) = assemble(&nodes, bc, k, n_max, m);
            solve_block(&q, &rg)
        })
        .collect();
    let cond = solved.iter().map(|(_, c)| *c).fold(0.0, f64::max);
    let blocks = solved.into_iter().map(|(t, _)| t).collect();
    Ok((TMatrix { n_max, k, blocks }, cond))
}

/// Degrees added to [`default_truncation`] for non-spherical bodies, whose
/// null-field blocks converge more slowly than the incident expansion.
pub const TMATRIX_MARGIN: usize = 4;

/// Default T-matrix degree for a body of maximum radius `r_max`.
pub fn default_tmatrix_truncation(k: f64, r_max: f64) -> usize {
    default_truncation(k, r_max) + TMATRIX_MARGIN
}

/// Null-field T-matrix of the body of revolution described by `c`.
///
/// The meridian is integrated with `4 n_max + 16` Gauss–Legendre nodes,
/// doubled until two successive rules agree.
pub fn tmatrix_nullfield(c: &MappingCoefficients, bc: BoundaryKind, k: f64, n_max: usize) -> Result<TMatrix> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::Domain(format!("wavenumber must be positive, got {k}")));
    }
    let mut points = 4 * n_max + 16;
    let (mut t, mut cond) = tmatrix_with_rule(c, bc, k, n_max, points)?;
    for _ in 0..MAX_DOUBLINGS {
        check_condition(cond, n_max)?;
        points *= 2;
        let (finer, finer_cond) = tmatrix_with_rule(c, bc, k, n_max, points)?;
        let scale = finer.blocks.iter().map(max_modulus).fold(0.0, f64::max);
        let change = finer.max_difference(&t)?;
        t = finer;
        cond = finer_cond;
        if change <= QUADRATURE_AGREEMENT * scale.max(f64::MIN_POSITIVE) {
            break;
        }
    }
    check_condition(cond, n_max)?;
    if t.blocks.iter().any(|b| b.iter().any(|v| !v.is_finite())) {
        return Err(Error::Conditioning("null-field solve produced non-finite entries".into()));
    }
    Ok(t)
}

fn check_condition(cond: f64, n_max: usize) -> Result<()> {
    if cond.is_finite() && cond <= MAX_CONDITION {
        return Ok(());
    }
    Err(Error::Conditioning(format!(
        "null-field matrix condition number {cond:.2e} exceeds {MAX_CONDITION:.0e} at n_max = {n_max}; use a smaller n_max or a milder aspect ratio"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scatter::mie_coefficients;
    use crate::wavefield::Medium;

    fn k40() -> f64 {
        Medium::air().wavenumber(40e3)
    }

    fn shape(c: &[f64]) -> MappingCoefficients {
        MappingCoefficients::new(c.to_vec()).unwrap()
    }

    #[test]
    fn sphere_matches_mie() {
        let a = 0.002;
        for ka in [0.5, k40() * a, 3.0] {
            let k = ka / a;
            for bc in [BoundaryKind::SoundHard, BoundaryKind::SoundSoft] {
                let n_max = 12;
                let t = tmatrix_nullfield(&MappingCoefficients::sphere(a).unwrap(), bc, k, n_max).unwrap();
                let mie = mie_coefficients(bc, k, a, n_max).unwrap();
                let err = t.max_difference(&mie).unwrap();
                assert!(err < 1e-8, "{bc:?} ka {ka}: {err:e}");
            }
        }
    }

    #[test]
    fn reference_shapes_are_lossless_and_symmetric() {
        let k = k40();
        for c in [
            vec![0.002, 0.0, 0.0004],
            vec![0.002, 0.0, 0.0, 0.00025],
            vec![0.002, 0.0, -0.0005, 0.0, -0.00025],
            vec![0.002, 0.0, 0.0, 0.0, 0.0002],
        ] {
            let n_max = default_tmatrix_truncation(k, shape(&c).max_radius());
            let t = tmatrix_nullfield(&shape(&c), BoundaryKind::SoundHard, k, n_max).unwrap();
            assert!(t.unitarity_residual() < 1e-6, "{c:?}: {:e}", t.unitarity_residual());
            assert!(t.m_symmetry_residual() < 1e-10, "{c:?}");
            assert!(t.reciprocity_residual() < 1e-6, "{c:?}: {:e}", t.reciprocity_residual());
        }
    }

    #[test]
    fn residuals_shrink_with_truncation() {
        let c = shape(&[0.002, 0.0, -0.0005, 0.0, -0.00025]);
        let coarse = tmatrix_nullfield(&c, BoundaryKind::SoundHard, k40(), 8).unwrap();
        let fine = tmatrix_nullfield(&c, BoundaryKind::SoundHard, k40(), 16).unwrap();
        assert!(fine.unitarity_residual() < 1e-2 * coarse.unitarity_residual());
    }

    #[test]
    fn soft_ellipsoid_is_lossless() {
        let t = tmatrix_nullfield(&shape(&[0.002, 0.0, 0.0004]), BoundaryKind::SoundSoft, k40(), 10).unwrap();
        assert!(t.unitarity_residual() < 1e-6, "{:e}", t.unitarity_residual());
    }

    #[test]
    fn off_diagonal_coupling_only_between_same_parity_for_symmetric_bodies() {
        // The ellipsoid is mirror-symmetric about z = 0, so even and odd degrees decouple.
        let t = tmatrix_nullfield(&shape(&[0.002, 0.0, 0.0004]), BoundaryKind::SoundHard, k40(), 8).unwrap();
        let b = t.block(0);
        assert!(b[(0, 1)].norm() < 1e-12 && b[(1, 2)].norm() < 1e-12);
        assert!(b[(0, 2)].norm() > 1e-6);
    }

    #[test]
    fn extreme_aspect_ratio_is_a_conditioning_error() {
        // Strongly prolate needle: EBCM is known to break down.
        let c = shape(&[0.002, 0.0, 0.0016]);
        match tmatrix_nullfield(&c, BoundaryKind::SoundHard, 4000.0, 30) {
            Err(Error::Conditioning(_)) => {}
            other => panic!("expected conditioning error, got {:?}", other.map(|t| t.n_max)),
        }
    }
}
