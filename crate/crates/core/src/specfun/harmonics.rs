use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Flat index `ν = n(n+1) + m` of mode `(n, m)`.
#[inline]
pub fn mode_index(n: usize, m: i64) -> usize {
    (n as i64 * (n as i64 + 1) + m) as usize
}

/// Number of modes with degree `≤ n_max`, i.e. `(n_max + 1)²`.
#[inline]
pub fn mode_count(n_max: usize) -> usize {
    (n_max + 1) * (n_max + 1)
}

/// Fully normalised associated Legendre functions for `m ≥ 0`, such that
/// `Y_n^m(θ, φ) = value(n, m) e^{imφ}` (Condon–Shortley phase included).
///
/// Alongside the values the table keeps `d/dθ` and `P̄_n^m / sin θ` (for
/// `m ≥ 1`), both generated without dividing by `sin θ`, so the poles are safe.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    pub order_max: usize,
    pub theta: f64,
    values: Vec<f64>,
    derivatives: Vec<f64>,
    over_sin: Vec<f64>,
}

#[inline]
fn tri(n: usize, m: usize) -> usize {
    n * (n + 1) / 2 + m
}

impl LegendreTable {
    pub fn new(n_max: usize, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        let size = tri(n_max + 1, 0);
        let mut values = vec![0.0; size];
        let mut over_sin = vec![0.0; size];

        let mut sectoral = 1.0 / (4.0 * PI).sqrt();
        for m in 0..=n_max {
            if m > 0 {
                let f = -((2 * m + 1) as f64 / (2 * m) as f64).sqrt();
                over_sin[tri(m, m)] = f * sectoral;
                sectoral *= f * s;
            }
            values[tri(m, m)] = sectoral;
            for table in [&mut values, &mut over_sin] {
                if m + 1 <= n_max {
                    table[tri(m + 1, m)] = ((2 * m + 3) as f64).sqrt() * c * table[tri(m, m)];
                }
                for n in m + 2..=n_max {
                    let nf = n as f64;
                    let mf = m as f64;
                    let a = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
                    let b = (((nf - 1.0).powi(2) - mf * mf) / (4.0 * (nf - 1.0).powi(2) - 1.0)).sqrt();
                    table[tri(n, m)] = a * (c * table[tri(n - 1, m)] - b * table[tri(n - 2, m)]);
                }
            }
        }

        let mut derivatives = vec![0.0; size];
        for n in 0..=n_max {
            for m in 0..=n {
                let nf = n as f64;
                let mf = m as f64;
                let up = if m < n { values[tri(n, m + 1)] } else { 0.0 };
                derivatives[tri(n, m)] = if m == 0 {
                    (nf * (nf + 1.0)).sqrt() * up
                } else {
                    0.5 * (((nf - mf) * (nf + mf + 1.0)).sqrt() * up
                        - ((nf + mf) * (nf - mf + 1.0)).sqrt() * values[tri(n, m - 1)])
                };
            }
        }
        LegendreTable { order_max: n_max, theta, values, derivatives, over_sin }
    }

    /// `P̄_n^m(θ)` for any integer `m`, using `P̄_n^{-m} = (-1)^m P̄_n^m`.
    pub fn value(&self, n: usize, m: i64) -> f64 {
        self.signed(&self.values, n, m)
    }

    pub fn derivative(&self, n: usize, m: i64) -> f64 {
        self.signed(&self.derivatives, n, m)
    }

    /// `P̄_n^m / sin θ` for `m ≠ 0`; zero for `m = 0` (never needed there).
    pub fn over_sin(&self, n: usize, m: i64) -> f64 {
        if m == 0 {
            0.0
        } else {
            self.signed(&self.over_sin, n, m)
        }
    }

    fn signed(&self, table: &[f64], n: usize, m: i64) -> f64 {
        let am = m.unsigned_abs() as usize;
        if am > n {
            return 0.0;
        }
        let v = table[tri(n, am)];
        if m < 0 && am % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

/// `Y_n^m`, `∂Y_n^m/∂θ` and `(1/sin θ) ∂Y_n^m/∂φ` at one direction, flat-indexed.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    pub order_max: usize,
    pub theta: f64,
    pub phi: f64,
    pub values: Vec<Complex64>,
    pub theta_derivatives: Vec<Complex64>,
    pub azimuthal: Vec<Complex64>,
}

impl HarmonicTable {
    pub fn value(&self, n: usize, m: i64) -> Complex64 {
        self.values[mode_index(n, m)]
    }
}

pub fn harmonic_table(n_max: usize, theta: f64, phi: f64) -> Result<HarmonicTable> {
    if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
        return Err(Error::Domain(format!("polar angle must lie in [0, π], got {theta}")));
    }
    let leg = LegendreTable::new(n_max, theta);
    let count = mode_count(n_max);
    let mut values = vec![Complex64::new(0.0, 0.0); count];
    let mut theta_derivatives = values.clone();
    let mut azimuthal = values.clone();
    for n in 0..=n_max {
        for m in -(n as i64)..=(n as i64) {
            let phase = Complex64::from_polar(1.0, m as f64 * phi);
            let idx = mode_index(n, m);
            values[idx] = phase * leg.value(n, m);
            theta_derivatives[idx] = phase * leg.derivative(n, m);
            azimuthal[idx] = phase * Complex64::new(0.0, m as f64 * leg.over_sin(n, m));
        }
    }
    Ok(HarmonicTable { order_max: n_max, theta, phi, values, theta_derivatives, azimuthal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_legendre;

    fn factorial(n: u64) -> f64 {
        (1..=n).map(|v| v as f64).product()
    }

    /// Rodrigues route: `P_n^m(x) = (-1)^m (1-x²)^{m/2} d^{n+m}/dx^{n+m} (x²-1)^n / (2^n n!)`,
    /// differentiating the expanded polynomial coefficients exactly.
    fn rodrigues_y(n: usize, m: i64, theta: f64, phi: f64) -> Complex64 {
        let am = m.unsigned_abs() as usize;
        // (x² - 1)^n = Σ_k C(n,k) (-1)^{n-k} x^{2k}
        let mut coeffs = vec![0.0; 2 * n + 1];
        for k in 0..=n {
            let binom = factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64));
            coeffs[2 * k] = binom * if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
        }
        for _ in 0..(n + am) {
            coeffs = coeffs.iter().enumerate().skip(1).map(|(p, c)| c * p as f64).collect();
        }
        let x = theta.cos();
        let poly: f64 = coeffs.iter().enumerate().map(|(p, c)| c * x.powi(p as i32)).sum();
        let mut p = poly / (2f64.powi(n as i32) * factorial(n as u64)) * theta.sin().powi(am as i32);
        if am % 2 == 1 {
            p = -p;
        }
        let norm = ((2 * n + 1) as f64 / (4.0 * PI) * factorial((n - am) as u64)
            / factorial((n + am) as u64))
        .sqrt();
        let y = Complex64::from_polar(norm * p, am as f64 * phi);
        if m < 0 {
            let sign = if am % 2 == 0 { 1.0 } else { -1.0 };
            y.conj() * sign
        } else {
            y
        }
    }

    #[test]
    fn constant_and_equatorial_values() {
        let t = harmonic_table(0, 0.4, 2.0).unwrap();
        assert!((t.value(0, 0).re - 0.282_094_791_773_878_1).abs() < 1e-15);
        let t = harmonic_table(1, PI / 2.0, 0.0).unwrap();
        assert!(t.value(1, 0).norm() < 1e-16);
    }

    #[test]
    fn matches_rodrigues_oracle() {
        let t = harmonic_table(8, 0.7, 1.3).unwrap();
        for n in 0..=8usize {
            for m in -(n as i64)..=(n as i64) {
                let oracle = rodrigues_y(n, m, 0.7, 1.3);
                assert!((t.value(n, m) - oracle).norm() < 1e-12, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn theta_derivative_matches_finite_difference() {
        let h = 1e-6;
        let t = harmonic_table(10, 1.1, 0.3).unwrap();
        let tp = harmonic_table(10, 1.1 + h, 0.3).unwrap();
        let tm = harmonic_table(10, 1.1 - h, 0.3).unwrap();
        for i in 0..t.values.len() {
            let fd = (tp.values[i] - tm.values[i]) / (2.0 * h);
            assert!((fd - t.theta_derivatives[i]).norm() < 1e-8, "i={i}");
            let az = t.values[i] * Complex64::i() * {
                let n = (i as f64).sqrt().floor() as i64;
                (i as i64 - n * (n + 1)) as f64
            } / (1.1f64).sin();
            assert!((az - t.azimuthal[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn pole_limits_are_finite_and_continuous() {
        let at_pole = harmonic_table(6, 0.0, 0.0).unwrap();
        let near = harmonic_table(6, 1e-7, 0.0).unwrap();
        for i in 0..at_pole.values.len() {
            assert!((at_pole.theta_derivatives[i] - near.theta_derivatives[i]).norm() < 1e-5);
            assert!((at_pole.azimuthal[i] - near.azimuthal[i]).norm() < 1e-5);
        }
        assert!(harmonic_table(6, PI, 0.0).is_ok());
        assert!(harmonic_table(6, -0.1, 0.0).is_err());
        assert!(harmonic_table(6, 3.2, 0.0).is_err());
    }

    #[test]
    fn orthonormal_under_sphere_quadrature() {
        let n_max = 10;
        let rule = gauss_legendre(n_max + 2).unwrap();
        let n_phi = 2 * n_max + 2;
        let count = mode_count(n_max);
        let mut gram = vec![Complex64::new(0.0, 0.0); count * count];
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            for k in 0..n_phi {
                let phi = 2.0 * PI * k as f64 / n_phi as f64;
                let t = harmonic_table(n_max, x.acos(), phi).unwrap();
                let wt = w * 2.0 * PI / n_phi as f64;
                for a in 0..count {
                    for b in 0..count {
                        gram[a * count + b] += t.values[a] * t.values[b].conj() * wt;
                    }
                }
            }
        }
        for a in 0..count {
            for b in 0..count {
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((gram[a * count + b] - expected).norm() < 1e-10, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        let t = harmonic_table(7, 2.1, -0.8).unwrap();
        for n in 0..=7usize {
            for m in 1..=(n as i64) {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((t.value(n, -m) - t.value(n, m).conj() * sign).norm() < 1e-15);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn addition_theorem(theta in 0.0..PI, phi in -PI..PI) {
            let t = harmonic_table(12, theta, phi).unwrap();
            for n in 0..=12usize {
                let s: f64 = (-(n as i64)..=(n as i64)).map(|m| t.value(n, m).norm_sqr()).sum();
                let expected = (2 * n + 1) as f64 / (4.0 * PI);
                proptest::prop_assert!((s - expected).abs() < 1e-10);
            }
        }
    }
}
