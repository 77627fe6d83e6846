use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Host fluid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    pub name: String,
    /// Density, kg/m³.
    pub rho0: f64,
    /// Sound speed, m/s.
    pub c0: f64,
    /// Dynamic viscosity, Pa·s.
    pub mu: f64,
}

impl Medium {
    pub fn new(name: impl Into<String>, rho0: f64, c0: f64, mu: f64) -> Result<Self> {
        if [rho0, c0, mu].iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::Domain(format!("medium properties must be positive: rho0={rho0}, c0={c0}, mu={mu}")));
        }
        Ok(Medium { name: name.into(), rho0, c0, mu })
    }

    pub fn air() -> Self {
        Medium { name: "air".into(), rho0: 1.2, c0: 343.0, mu: 1.81e-5 }
    }

    pub fn water() -> Self {
        Medium { name: "water".into(), rho0: 998.0, c0: 1481.0, mu: 1.0e-3 }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "air" => Some(Self::air()),
            "water" => Some(Self::water()),
            _ => None,
        }
    }

    /// `k = 2πf / c₀`.
    pub fn wavenumber(&self, frequency: f64) -> f64 {
        2.0 * std::f64::consts::PI * frequency / self.c0
    }

    pub fn impedance(&self) -> f64 {
        self.rho0 * self.c0
    }
}
