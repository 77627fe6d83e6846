use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialKind {
    /// Spherical Bessel function of the first kind, `j_n`.
    Regular,
    /// Spherical Hankel function of the first kind, `h_n^(1) = j_n + i y_n`.
    Outgoing,
}

/// Radial functions of orders `0..=order_max` at a single argument, with
/// their derivatives with respect to the argument.
#[derive(Debug, Clone)]
pub struct RadialTable {
    pub kind: RadialKind,
    pub order_max: usize,
    pub argument: f64,
    pub values: Vec<Complex64>,
    pub derivatives: Vec<Complex64>,
}

impl RadialTable {
    /// `f_n(x) / x`, finite at `x = 0` for the regular kind (`1/3` for `n = 1`,
    /// zero otherwise; the `n = 0` entry is only ever multiplied by zero).
    pub fn value_over_argument(&self, n: usize) -> Complex64 {
        if self.argument == 0.0 {
            if n == 1 {
                Complex64::new(1.0 / 3.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            self.values[n] / self.argument
        }
    }
}

/// Tabulate `j_n` or `h_n^(1)` and derivatives for `n = 0..=n_max`.
pub fn radial_table(kind: RadialKind, n_max: usize, x: f64) -> Result<RadialTable> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("radial argument must be finite and non-negative, got {x}")));
    }
    if kind == RadialKind::Outgoing && x == 0.0 {
        return Err(Error::Domain("outgoing radial function is singular at x = 0".into()));
    }
    // one extra order feeds the derivative of the highest requested order
    let j = spherical_j_values(n_max + 1, x);
    let (values, derivatives) = match kind {
        RadialKind::Regular => {
            let vals: Vec<Complex64> = j.iter().take(n_max + 1).map(|&v| Complex64::new(v, 0.0)).collect();
            let ders = (0..=n_max).map(|n| Complex64::new(regular_derivative(&j, n, x), 0.0)).collect();
            (vals, ders)
        }
        RadialKind::Outgoing => {
            let y = spherical_y_values(n_max + 1, x);
            let h: Vec<Complex64> = j.iter().zip(&y).map(|(&a, &b)| Complex64::new(a, b)).collect();
            let ders = (0..=n_max)
                .map(|n| {
                    if n == 0 {
                        -h[1]
                    } else {
                        h[n - 1] - h[n] * ((n as f64 + 1.0) / x)
                    }
                })
                .collect();
            (h[..=n_max].to_vec(), ders)
        }
    };
    Ok(RadialTable { kind, order_max: n_max, argument: x, values, derivatives })
}

fn regular_derivative(j: &[f64], n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 1 { 1.0 / 3.0 } else { 0.0 };
    }
    if n == 0 {
        -j[1]
    } else {
        j[n - 1] - (n as f64 + 1.0) / x * j[n]
    }
}

/// Single spherical Bessel value `j_n(x)`.
pub fn spherical_jn(n: usize, x: f64) -> f64 {
    spherical_j_values(n, x)[n]
}

/// `j_0..=j_n_max` by Miller's downward recurrence, normalised against the
/// closed forms of `j_0` or `j_1`. Stable for every `x ≥ 0`.
fn spherical_j_values(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let (s, c) = x.sin_cos();
    let j0 = if x < 1e-4 { 1.0 - x * x / 6.0 } else { s / x };
    let j1 = if x < 1e-4 { x / 3.0 * (1.0 - x * x / 10.0) } else { (s / x - c) / x };

    let top = (n_max as f64).max(x);
    let start = (top + 20.0 + 10.0 * top.cbrt()).ceil() as usize;
    let mut f = vec![0.0; start + 2];
    f[start] = 1e-300;
    let mut n = start;
    while n > 0 {
        let next = (2.0 * n as f64 + 1.0) / x * f[n] - f[n + 1];
        f[n - 1] = next;
        n -= 1;
        if next.abs() > 1e250 {
            for v in f[n..].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let scale = if j0.abs() >= j1.abs() { j0 / f[0] } else { j1 / f[1] };
    for (o, v) in out.iter_mut().zip(&f) {
        *o = v * scale;
    }
    out
}

/// `y_0..=y_n_max` by upward recurrence (stable for the irregular solution).
fn spherical_y_values(n_max: usize, x: f64) -> Vec<f64> {
    let (s, c) = x.sin_cos();
    let mut y = vec![0.0; n_max + 1];
    y[0] = -c / x;
    if n_max >= 1 {
        y[1] = -c / (x * x) - s / x;
    }
    for n in 1..n_max {
        y[n + 1] = (2.0 * n as f64 + 1.0) / x * y[n] - y[n - 1];
    }
    y
}

/// Cylindrical Bessel function `J_1(x)`.
///
/// Power series below `|x| = 12`, Hankel asymptotic expansion above.
pub fn cyl_j1(x: f64) -> f64 {
    let ax = x.abs();
    let sign = x.signum();
    if ax < 12.0 {
        let q = -0.25 * ax * ax;
        let mut term = 0.5 * ax;
        let mut sum = term;
        let mut k = 1.0;
        loop {
            term *= q / (k * (k + 1.0));
            sum += term;
            if term.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
            k += 1.0;
        }
        return sign * sum;
    }
    // P and Q series of the asymptotic form for order nu = 1
    let mu = 4.0;
    let z8 = 8.0 * ax;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * z8);
        if k % 2 == 1 {
            q += if (k / 2) % 2 == 0 { term } else { -term };
        } else {
            p += if (k / 2) % 2 == 0 { term } else { -term };
        }
        if term.abs() < 1e-17 || k > 30 {
            break;
        }
        k += 1;
    }
    let phase = ax - 0.75 * std::f64::consts::PI;
    sign * (2.0 / (std::f64::consts::PI * ax)).sqrt() * (p * phase.cos() - q * phase.sin())
}
