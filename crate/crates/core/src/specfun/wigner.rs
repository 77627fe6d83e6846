use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::expm;

/// Wigner small-d matrix `d^n_{m'm}(β)` of one degree; entry `(m'+n, m+n)`.
#[derive(Debug, Clone)]
pub struct WignerBlock {
    pub degree: usize,
    pub beta: f64,
    pub entries: DMatrix<f64>,
}

impl WignerBlock {
    pub fn get(&self, m_prime: i64, m: i64) -> f64 {
        let n = self.degree as i64;
        self.entries[((m_prime + n) as usize, (m + n) as usize)]
    }
}

/// `d^n(β) = exp(-iβ J_y)` for `n = 0..=n_max`, built from the real
/// generator `(J_- - J_+)/2` in the `|n m⟩` basis.
pub fn wigner_d(n_max: usize, beta: f64) -> Result<Vec<WignerBlock>> {
    if !beta.is_finite() {
        return Err(Error::Domain("rotation angle must be finite".into()));
    }
    Ok((0..=n_max).map(|n| wigner_block(n, beta)).collect())
}

fn wigner_block(n: usize, beta: f64) -> WignerBlock {
    let dim = 2 * n + 1;
    if beta == 0.0 {
        return WignerBlock { degree: n, beta, entries: DMatrix::identity(dim, dim) };
    }
    let nf = n as f64;
    let mut gen = DMatrix::<f64>::zeros(dim, dim);
    for col in 0..dim {
        let m = col as f64 - nf;
        if col + 1 < dim {
            gen[(col + 1, col)] = -0.5 * ((nf - m) * (nf + m + 1.0)).sqrt();
        }
        if col > 0 {
            gen[(col - 1, col)] = 0.5 * ((nf + m) * (nf - m + 1.0)).sqrt();
        }
    }
    WignerBlock { degree: n, beta, entries: expm(&(gen * beta)) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn degree_one_closed_forms() {
        let b = &wigner_d(1, PI / 2.0).unwrap()[1];
        assert!(b.get(0, 0).abs() < 1e-15);
        assert!((b.get(1, 0) + 1.0 / 2f64.sqrt()).abs() < 1e-14);
        assert!((b.get(1, 0) + 0.707107).abs() < 1e-6);
        let beta = 0.83;
        let b = &wigner_d(1, beta).unwrap()[1];
        assert!((b.get(1, 1) - 0.5 * (1.0 + beta.cos())).abs() < 1e-14);
        assert!((b.get(-1, 1) - 0.5 * (1.0 - beta.cos())).abs() < 1e-14);
        assert!((b.get(0, 1) - beta.sin() / 2f64.sqrt()).abs() < 1e-14);
        assert!((b.get(0, 0) - beta.cos()).abs() < 1e-14);
    }

    #[test]
    fn null_rotation_is_identity() {
        for b in wigner_d(20, 0.0).unwrap() {
            let dim = 2 * b.degree + 1;
            assert!((b.entries - DMatrix::<f64>::identity(dim, dim)).amax() < 1e-14);
        }
    }

    #[test]
    fn orthogonality_and_composition() {
        let (b1, b2) = (0.37, 1.91);
        let d1 = wigner_d(25, b1).unwrap();
        let d2 = wigner_d(25, b2).unwrap();
        let d12 = wigner_d(25, b1 + b2).unwrap();
        for n in 0..=25 {
            let dim = 2 * n + 1;
            let id = DMatrix::<f64>::identity(dim, dim);
            assert!((&d1[n].entries * d1[n].entries.transpose() - &id).amax() < 1e-10);
            assert!((&d1[n].entries * &d2[n].entries - &d12[n].entries).amax() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn non_finite_angle_rejected() {
        assert!(wigner_d(3, f64::INFINITY).is_err());
    }
}
