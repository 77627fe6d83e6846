use std::fs;
use std::path::{Path, PathBuf};

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::DynamicsParams;
use crate::error::{Error, Result};
use crate::geometry::{MappingCoefficients, DEFAULT_STL_NAME};
use crate::scatter::BoundaryKind;
use crate::transform::{euler_to_rotation, Orientation};
use crate::wavefield::{Medium, PlaneWave, Source, TransducerArray};

/// Scene description read from a TOML file. Every field has a default, so an
/// empty file describes a 2 mm rigid sphere in a 1 Pa, 40 kHz plane wave in air.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SceneConfig {
    /// Drive frequency, Hz.
    pub frequency: f64,
    pub boundary: BoundaryKind,
    pub particle: ParticleConfig,
    pub medium: MediumConfig,
    pub source: SourceConfig,
    pub pose: PoseConfig,
    pub dynamics: DynamicsConfig,
    pub numerics: NumericsConfig,
    pub field: FieldConfig,
    pub outputs: OutputConfig,
}

impl Default for SceneConfig {
    fn default() -> Self {
        SceneConfig {
            frequency: 40e3,
            boundary: BoundaryKind::SoundHard,
            particle: ParticleConfig::default(),
            medium: MediumConfig::default(),
            source: SourceConfig::default(),
            pose: PoseConfig::default(),
            dynamics: DynamicsConfig::default(),
            numerics: NumericsConfig::default(),
            field: FieldConfig::default(),
            outputs: OutputConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ParticleConfig {
    /// Conformal-map coefficients `c_1, c_2, …`, m.
    pub mapping_coefficients: Vec<f64>,
    /// Rescales the whole shape so that `c_1` takes this value, m.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub averaged_radius_override: Option<f64>,
    /// kg/m³.
    pub density: f64,
}

impl Default for ParticleConfig {
    fn default() -> Self {
        ParticleConfig { mapping_coefficients: vec![0.002], averaged_radius_override: None, density: 15.0 }
    }
}

/// A preset name, optionally with individual properties overridden.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    pub preset: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

impl Default for MediumConfig {
    fn default() -> Self {
        MediumConfig { preset: "air".into(), rho0: None, c0: None, mu: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceConfig {
    Plane(PlaneConfig),
    Array(ArrayConfig),
}

impl Default for SourceConfig {
    fn default() -> Self {
        SourceConfig::Plane(PlaneConfig::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlaneConfig {
    /// Pressure amplitude, Pa.
    pub amplitude: f64,
    /// Phase at the origin, rad.
    pub phase: f64,
    pub direction: [f64; 3],
}

impl Default for PlaneConfig {
    fn default() -> Self {
        PlaneConfig { amplitude: 1.0, phase: 0.0, direction: [0.0, 0.0, 1.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayConfig {
    /// Piston radius, m.
    pub radius: f64,
    /// Element centers relative to the probe element, m.
    pub positions: Vec<[f64; 3]>,
    /// Normal velocity amplitude, m/s.
    pub v0: f64,
    /// Per-element phase, rad; all zero when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_delay: Option<Vec<f64>>,
    /// Per-element relative amplitude; all one when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub amplitude_ratio: Option<Vec<f64>>,
    /// Downward shift of the array, m.
    pub interdistance: f64,
}

impl Default for ArrayConfig {
    fn default() -> Self {
        ArrayConfig { radius: 0.005, positions: vec![[0.0; 3]], v0: 1.5, phase_delay: None, amplitude_ratio: None, interdistance: 0.02 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoseConfig {
    /// m.
    pub initial_position: [f64; 3],
    /// Rotation angles about x, y, z, rad.
    pub initial_orientation: [f64; 3],
}

impl Default for PoseConfig {
    fn default() -> Self {
        PoseConfig { initial_position: [0.0; 3], initial_orientation: [0.0; 3] }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsConfig {
    pub dt: f64,
    pub t_end: f64,
    pub gravity: f64,
    pub rel_tol: f64,
    pub min_interdistance: f64,
    pub position_floor: f64,
    pub angle_floor: f64,
    pub sphere_weight_surrogate: bool,
}

impl Default for DynamicsConfig {
    fn default() -> Self {
        let p = DynamicsParams::new(1.0, 1e-4, 0.1);
        DynamicsConfig {
            dt: p.dt,
            t_end: p.t_end,
            gravity: p.gravity,
            rel_tol: p.rel_tol,
            min_interdistance: p.min_interdistance,
            position_floor: p.position_floor,
            angle_floor: p.angle_floor,
            sphere_weight_surrogate: p.sphere_weight_surrogate,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    /// T-matrix and expansion degree; chosen from `k r_max` when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Stress-quadrature radius, m; twice the maximum radius when omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub force_radius: Option<f64>,
}

/// Sampling grid of the `xOz` field map.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FieldConfig {
    pub x_range: [f64; 2],
    pub z_range: [f64; 2],
    pub nx: usize,
    pub nz: usize,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig { x_range: [-0.02, 0.02], z_range: [-0.02, 0.02], nx: 81, nz: 81 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub directory: PathBuf,
    pub stl_filename: String,
    pub field_filename: String,
    pub force_filename: String,
    pub trajectory_filename: String,
    /// Adds the program version as a `#` comment to text outputs.
    pub provenance: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig {
            directory: PathBuf::from("."),
            stl_filename: DEFAULT_STL_NAME.into(),
            field_filename: "field_xoz.csv".into(),
            force_filename: "force.csv".into(),
            trajectory_filename: "Myfilename.txt".into(),
            provenance: false,
        }
    }
}

impl SceneConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| e.context(path.display()))
    }

    pub fn shape(&self) -> Result<MappingCoefficients> {
        let c = MappingCoefficients::new(self.particle.mapping_coefficients.clone())?;
        match self.particle.averaged_radius_override {
            Some(a) if !(a > 0.0 && a.is_finite()) => Err(Error::Domain(format!("averaged radius must be positive, got {a}"))),
            Some(a) => c.with_averaged_radius(a),
            None => Ok(c),
        }
    }

    pub fn medium(&self) -> Result<Medium> {
        let m = &self.medium;
        let base = Medium::preset(&m.preset).ok_or_else(|| Error::Config(format!("unknown medium preset {:?} (known: air, water)", m.preset)))?;
        if m.rho0.is_none() && m.c0.is_none() && m.mu.is_none() {
            return Ok(base);
        }
        Medium::new(
            format!("{} (modified)", base.name),
            m.rho0.unwrap_or(base.rho0),
            m.c0.unwrap_or(base.c0),
            m.mu.unwrap_or(base.mu),
        )
    }

    pub fn source(&self) -> Result<Source> {
        Ok(match &self.source {
            SourceConfig::Plane(p) => {
                let [x, y, z] = p.direction;
                Source::Plane(PlaneWave::new(Complex64::from_polar(p.amplitude, p.phase), Vector3::new(x, y, z))?)
            }
            SourceConfig::Array(a) => {
                let n = a.positions.len();
                let array = TransducerArray {
                    radius: a.radius,
                    positions: a.positions.clone(),
                    v0: a.v0,
                    phase_delay: a.phase_delay.clone().unwrap_or_else(|| vec![0.0; n]),
                    amplitude_ratio: a.amplitude_ratio.clone().unwrap_or_else(|| vec![1.0; n]),
                    interdistance: a.interdistance,
                };
                array.validate()?;
                Source::Array(array)
            }
        })
    }

    pub fn orientation(&self) -> Result<Orientation> {
        euler_to_rotation(self.pose.initial_orientation)
    }

    pub fn dynamics_params(&self) -> DynamicsParams {
        let d = &self.dynamics;
        DynamicsParams {
            rho_p: self.particle.density,
            gravity: d.gravity,
            dt: d.dt,
            t_end: d.t_end,
            rel_tol: d.rel_tol,
            min_interdistance: d.min_interdistance,
            position_floor: d.position_floor,
            angle_floor: d.angle_floor,
            sphere_weight_surrogate: d.sphere_weight_surrogate,
        }
    }

    /// Checks the frequency and that every section converts.
    pub fn validate(&self) -> Result<()> {
        if !(self.frequency > 0.0 && self.frequency.is_finite()) {
            return Err(Error::Domain(format!("frequency must be positive, got {}", self.frequency)));
        }
        self.shape()?;
        self.medium()?;
        self.source()?;
        self.orientation()?;
        if let Some(r) = self.numerics.force_radius {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Domain(format!("force radius must be positive, got {r}")));
            }
        }
        Ok(())
    }

    pub fn output_path(&self, name: &str) -> PathBuf {
        self.outputs.directory.join(name)
    }
}
