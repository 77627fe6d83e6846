use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nalgebra::Vector3;
use rayon::prelude::*;

use super::SceneConfig;
use crate::dynamics::{simulate, Scene, Trajectory};
use crate::error::{Error, Result};
use crate::geometry::{build_mesh, export_stl, mass_properties, DEFAULT_MESH_RESOLUTION};
use crate::radforce::{radiation_force_torque, ForceTorque, Particle};
use crate::transform::euler_to_rotation;
use crate::wavefield::Source;

fn write_output(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

fn provenance_line(config: &SceneConfig) -> Option<String> {
    config.outputs.provenance.then(|| format!("# generated by {} {}\n", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION")))
}

fn build_particle(config: &SceneConfig) -> Result<Particle> {
    config.validate()?;
    Particle::new(config.shape()?, config.boundary, &config.medium()?, config.frequency, config.numerics.n_max)
}

#[derive(Debug, Clone)]
pub struct ParticleReport {
    pub path: PathBuf,
    pub triangles: usize,
    pub volume: f64,
    pub axial_length: f64,
    pub equatorial_diameter: f64,
    pub averaged_radius: f64,
}

impl fmt::Display for ParticleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "wrote {} ({} triangles)", self.path.display(), self.triangles)?;
        writeln!(f, "volume            {:.6e} m^3", self.volume)?;
        writeln!(f, "extents           {:.4} mm (axis) x {:.4} mm (equator)", self.axial_length * 1e3, self.equatorial_diameter * 1e3)?;
        write!(f, "averaged radius   {:.4} mm", self.averaged_radius * 1e3)
    }
}

/// Writes the particle surface as ASCII STL and reports its size.
pub fn run_particle(config: &SceneConfig) -> Result<ParticleReport> {
    let shape = config.shape()?;
    let (n_theta, n_phi) = DEFAULT_MESH_RESOLUTION;
    let mesh = build_mesh(&shape, n_theta, n_phi)?;
    let path = config.output_path(&config.outputs.stl_filename);
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    export_stl(&mesh, &path)?;
    let (axial_length, equatorial_diameter) = shape.extents();
    Ok(ParticleReport {
        path,
        triangles: mesh.triangles.len(),
        volume: mass_properties(&shape, config.particle.density, false)?.volume,
        axial_length,
        equatorial_diameter,
        averaged_radius: shape.averaged_radius(),
    })
}

#[derive(Debug, Clone)]
pub struct FieldReport {
    pub path: PathBuf,
    pub points: usize,
    pub skipped: usize,
    pub max_abs: f64,
}

impl fmt::Display for FieldReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wrote {} ({} points, max |p| = {:.6e} Pa", self.path.display(), self.points, self.max_abs)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped at transducer centers", self.skipped)?;
        }
        write!(f, ")")
    }
}

fn grid(range: [f64; 2], n: usize, i: usize) -> f64 {
    if n <= 1 {
        range[0]
    } else {
        range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64
    }
}

/// Samples the incident pressure on the `y = 0` plane into a CSV table.
pub fn run_field(config: &SceneConfig) -> Result<FieldReport> {
    config.validate()?;
    let g = &config.field;
    if g.nx == 0 || g.nz == 0 || g.x_range.iter().chain(&g.z_range).any(|v| !v.is_finite()) {
        return Err(Error::Domain("field grid needs finite ranges and at least one point per axis".into()));
    }
    let source = config.source()?;
    let field = source.field(&config.medium()?, config.frequency)?;
    let centers = match &source {
        Source::Array(a) => a.centers(),
        Source::Plane(_) => Vec::new(),
    };
    let rows: Vec<Result<String>> = (0..g.nz)
        .into_par_iter()
        .map(|j| {
            let z = grid(g.z_range, g.nz, j);
            let mut out = String::new();
            for i in 0..g.nx {
                let x = grid(g.x_range, g.nx, i);
                let point = Vector3::new(x, 0.0, z);
                if centers.contains(&point) {
                    let _ = writeln!(out, "#skip {x:e},{z:e}");
                    continue;
                }
                let p = field.pressure(&point)?;
                let _ = writeln!(out, "{x:e},{z:e},{:e},{:e},{:e}", p.re, p.im, p.norm());
            }
            Ok(out)
        })
        .collect();

    let mut body = String::new();
    let mut skipped = Vec::new();
    let (mut points, mut max_abs) = (0usize, 0.0f64);
    for row in rows {
        for line in row?.lines() {
            if let Some(at) = line.strip_prefix("#skip ") {
                skipped.push(at.to_string());
            } else {
                points += 1;
                max_abs = max_abs.max(line.rsplit(',').next().and_then(|v| v.parse().ok()).unwrap_or(0.0));
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let mut text = provenance_line(config).unwrap_or_default();
    text.push_str("x,z,re_p,im_p,abs_p\n");
    text.push_str(&body);
    for at in &skipped {
        let _ = writeln!(text, "# skipped (coincides with a transducer center): {at}");
    }
    let path = config.output_path(&config.outputs.field_filename);
    write_output(&path, &text)?;
    Ok(FieldReport { path, points, skipped: skipped.len(), max_abs })
}

/// Orientation scan `axis=min:max:count`, angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    /// 0, 1, 2 for rotations about x, y, z.
    pub axis: usize,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| grid([self.min, self.max], self.count, i)).collect()
    }

    pub fn axis_name(&self) -> &'static str {
        ["theta_x", "theta_y", "theta_z"][self.axis]
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let usage = || format!("expected axis=min:max:count with axis x, y or z, got {s:?}");
        let (axis, range) = s.split_once('=').ok_or_else(usage)?;
        let axis = match axis.trim().trim_start_matches("theta_") {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(usage()),
        };
        let parts: Vec<&str> = range.split(':').collect();
        let [min, max, count] = parts[..] else { return Err(usage()) };
        let min: f64 = min.trim().parse().map_err(|_| usage())?;
        let max: f64 = max.trim().parse().map_err(|_| usage())?;
        let count: usize = count.trim().parse().map_err(|_| usage())?;
        if count == 0 || !min.is_finite() || !max.is_finite() {
            return Err(usage());
        }
        Ok(Sweep { axis, min, max, count })
    }
}

#[derive(Debug, Clone)]
pub struct ForceReport {
    pub path: PathBuf,
    pub sweep: Option<Sweep>,
    /// Swept angle (when sweeping) and the result at that angle.
    pub rows: Vec<(f64, ForceTorque)>,
}

impl fmt::Display for ForceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vec = |v: &Vector3<f64>| format!("[{:.6e} {:.6e} {:.6e}]", v.x, v.y, v.z);
        match self.sweep {
            None => {
                let ft = &self.rows[0].1;
                writeln!(f, "F = {} N", vec(&ft.force))?;
                writeln!(f, "T = {} N m", vec(&ft.torque))?;
            }
            Some(s) => writeln!(f, "{} orientations over {} in [{}, {}] rad", s.count, s.axis_name(), s.min, s.max)?,
        }
        write!(f, "wrote {}", self.path.display())
    }
}

/// Radiation force and torque at the configured pose, or over an orientation sweep.
pub fn run_force(config: &SceneConfig, sweep: Option<Sweep>) -> Result<ForceReport> {
    let particle = build_particle(config)?;
    let medium = config.medium()?;
    let field = config.source()?.field(&medium, config.frequency)?;
    let [x, y, z] = config.pose.initial_position;
    let center = Vector3::new(x, y, z);
    let angles: Vec<[f64; 3]> = match sweep {
        None => vec![config.pose.initial_orientation],
        Some(s) => s
            .values()
            .into_iter()
            .map(|v| {
                let mut a = config.pose.initial_orientation;
                a[s.axis] = v;
                a
            })
            .collect(),
    };
    let results: Vec<ForceTorque> = angles
        .par_iter()
        .map(|a| radiation_force_torque(&particle, field.as_ref(), &medium, config.frequency, center, &euler_to_rotation(*a)?, config.numerics.force_radius))
        .collect::<Result<_>>()?;

    let mut text = provenance_line(config).unwrap_or_default();
    let columns = "fx,fy,fz,tx,ty,tz";
    match sweep {
        None => {
            let _ = writeln!(text, "{columns}");
        }
        Some(s) => {
            let _ = writeln!(text, "{},{columns}", s.axis_name());
        }
    }
    let mut rows = Vec::with_capacity(results.len());
    for (a, ft) in angles.iter().zip(results) {
        let theta = sweep.map_or(0.0, |s| a[s.axis]);
        if sweep.is_some() {
            let _ = write!(text, "{theta:e},");
        }
        let [fx, fy, fz] = [ft.force.x, ft.force.y, ft.force.z];
        let [tx, ty, tz] = [ft.torque.x, ft.torque.y, ft.torque.z];
        let _ = writeln!(text, "{fx:e},{fy:e},{fz:e},{tx:e},{ty:e},{tz:e}");
        rows.push((theta, ft));
    }
    let path = config.output_path(&config.outputs.force_filename);
    write_output(&path, &text)?;
    Ok(ForceReport { path, sweep, rows })
}

#[derive(Debug, Clone)]
pub struct SimulateReport {
    pub path: PathBuf,
    pub trajectory: Trajectory,
}

impl fmt::Display for SimulateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.trajectory.final_state;
        let last = self.trajectory.records.last().expect("trajectory is never empty");
        writeln!(f, "termination: {} at t = {:.4e} s ({} steps)", self.trajectory.termination, s.time, self.trajectory.records.len() - 1)?;
        writeln!(f, "final position [{:.6e} {:.6e} {:.6e}] m", s.position.x, s.position.y, s.position.z)?;
        writeln!(f, "final angles   [{:.6} {:.6} {:.6}] rad", last.angles[0], last.angles[1], last.angles[2])?;
        write!(f, "wrote {}", self.path.display())
    }
}

/// Trajectory file: the configuration echoed as `#` comments, then one row per step.
pub fn trajectory_text(config: &SceneConfig, trajectory: &Trajectory) -> Result<String> {
    let mut text = provenance_line(config).unwrap_or_default();
    text.push_str("# scene\n");
    for line in config.to_toml()?.lines() {
        let _ = writeln!(text, "# {line}");
    }
    let _ = writeln!(text, "# termination = {}", trajectory.termination);
    text.push_str("# t x y z theta_x theta_y theta_z\n");
    for r in &trajectory.records {
        let [a, b, c] = r.angles;
        let _ = writeln!(text, "{:e} {:e} {:e} {:e} {a:e} {b:e} {c:e}", r.time, r.position.x, r.position.y, r.position.z);
    }
    Ok(text)
}

/// Integrates the particle's motion above the configured array.
pub fn run_simulate(config: &SceneConfig) -> Result<SimulateReport> {
    let source = config.source()?;
    if !matches!(source, Source::Array(_)) {
        return Err(Error::Config("simulate needs a [source.array] section".into()));
    }
    let particle = build_particle(config)?;
    let [x, y, z] = config.pose.initial_position;
    let scene = Scene {
        particle,
        medium: config.medium()?,
        frequency: config.frequency,
        source,
        initial_position: Vector3::new(x, y, z),
        initial_orientation: config.orientation()?,
        force_radius: config.numerics.force_radius,
        drag_radius: None,
    };
    let trajectory = simulate(&scene, &config.dynamics_params())?;
    let path = config.output_path(&config.outputs.trajectory_filename);
    write_output(&path, &trajectory_text(config, &trajectory)?)?;
    Ok(SimulateReport { path, trajectory })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_parsing() {
        let s: Sweep = "x=0:1.5707963267948966:19".parse().unwrap();
        assert_eq!((s.axis, s.count), (0, 19));
        assert_eq!(s.values()[18], 1.5707963267948966);
        assert_eq!("theta_y=0.5:1:1".parse::<Sweep>().unwrap().values(), vec![0.5]);
        for bad in ["w=0:1:2", "x=0:1", "x=0:1:0", "x0:1:2", "x=a:1:2"] {
            assert!(bad.parse::<Sweep>().is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(grid([-1.0, 1.0], 3, 0), -1.0);
        assert_eq!(grid([-1.0, 1.0], 3, 2), 1.0);
        assert_eq!(grid([0.25, 1.0], 1, 0), 0.25);
    }
}
