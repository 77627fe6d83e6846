use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::mode_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    /// Rigid particle: zero normal velocity on the surface.
    SoundHard,
    /// Pressure-release particle: zero total pressure on the surface.
    SoundSoft,
}

/// Body-frame transition matrix of an axisymmetric scatterer, one dense block
/// per azimuthal order: `s_n^m = Σ_{n'} T^m_{n n'} a_{n'}^m`.
#[derive(Debug, Clone)]
pub struct TMatrix {
    pub n_max: usize,
    pub k: f64,
    /// Block for order `m` at index `m + n_max`; rows and columns run over degrees `|m|..=n_max`.
    pub blocks: Vec<DMatrix<Complex64>>,
}

impl TMatrix {
    pub fn block(&self, m: i64) -> &DMatrix<Complex64> {
        &self.blocks[(m + self.n_max as i64) as usize]
    }

    /// Diagonal T-matrix with entries `s_n` independent of `m`.
    pub fn diagonal(k: f64, s: &[Complex64]) -> Self {
        let n_max = s.len() - 1;
        let blocks = (-(n_max as i64)..=(n_max as i64))
            .map(|m| {
                let lo = m.unsigned_abs() as usize;
                DMatrix::from_fn(n_max + 1 - lo, n_max + 1 - lo, |i, j| if i == j { s[lo + i] } else { Complex64::new(0.0, 0.0) })
            })
            .collect();
        TMatrix { n_max, k, blocks }
    }

    /// Scattered coefficients for flat-indexed incident coefficients `a`.
    pub fn apply(&self, a: &[Complex64]) -> Result<Vec<Complex64>> {
        if a.len() != mode_count(self.n_max) {
            return Err(Error::Dimension(format!(
                "T-matrix of degree {} applied to {} coefficients",
                self.n_max,
                a.len()
            )));
        }
        let mut s = vec![Complex64::new(0.0, 0.0); a.len()];
        for m in -(self.n_max as i64)..=(self.n_max as i64) {
            let lo = m.unsigned_abs() as usize;
            let block = self.block(m);
            for (i, n) in (lo..=self.n_max).enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, np) in (lo..=self.n_max).enumerate() {
                    acc += block[(i, j)] * a[index(np, m)];
                }
                s[index(n, m)] = acc;
            }
        }
        Ok(s)
    }

    /// `max |T + T† + 2T†T|` over all blocks; zero for a lossless scatterer.
    pub fn unitarity_residual(&self) -> f64 {
        self.blocks
            .iter()
            .map(|t| {
                let th = t.adjoint();
                (t + &th + (&th * t) * Complex64::new(2.0, 0.0)).iter().map(|v| v.norm()).fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    /// `max |T^m - T^{-m}|`.
    pub fn m_symmetry_residual(&self) -> f64 {
        (1..=self.n_max as i64).map(|m| max_modulus(&(self.block(m) - self.block(-m)))).fold(0.0, f64::max)
    }

    /// `max |T^m - (T^m)ᵀ|`: reciprocity in the orthonormal complex basis,
    /// `T_{nm,n'm'} = (-1)^{m+m'} T_{n'-m',n-m}`, reduces to symmetric blocks.
    pub fn reciprocity_residual(&self) -> f64 {
        self.blocks.iter().map(|t| max_modulus(&(t - t.transpose()))).fold(0.0, f64::max)
    }

    /// Largest entry of `self - other`; both must share the truncation.
    pub fn max_difference(&self, other: &TMatrix) -> Result<f64> {
        if self.n_max != other.n_max {
            return Err(Error::Dimension(format!("degrees {} and {} differ", self.n_max, other.n_max)));
        }
        Ok(self.blocks.iter().zip(&other.blocks).map(|(a, b)| max_modulus(&(a - b))).fold(0.0, f64::max))
    }
}

/// Largest entry modulus of a complex matrix.
pub(crate) fn max_modulus(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn index(n: usize, m: i64) -> usize {
    crate::specfun::mode_index(n, m)
}
