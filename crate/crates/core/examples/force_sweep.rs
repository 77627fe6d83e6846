//! Force and torque on the cone in a plane wave as it tilts about x.
//!
//! Run with `cargo run --release --example force_sweep`.

use std::f64::consts::PI;

use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::radforce::{radiation_force_torque, Particle};
use acoustophoresis::scatter::BoundaryKind;
use acoustophoresis::transform::euler_to_rotation;
use acoustophoresis::wavefield::{Medium, PlaneWave};
use nalgebra::Vector3;

fn main() -> acoustophoresis::Result<()> {
    let medium = Medium::air();
    let frequency = 40e3;
    let shape = MappingCoefficients::new(vec![0.002, 0.0, 0.0, 0.00025])?;
    let particle = Particle::new(shape, BoundaryKind::SoundHard, &medium, frequency, None)?;
    let wave = PlaneWave::along_z(1.0).with_wavenumber(medium.wavenumber(frequency));

    println!("{:>8} {:>13} {:>13} {:>13}", "θx deg", "Fy (N)", "Fz (N)", "Tx (N m)");
    for i in 0..=12 {
        let theta = i as f64 * PI / 12.0;
        let o = euler_to_rotation([theta, 0.0, 0.0])?;
        let ft = radiation_force_torque(&particle, &wave, &medium, frequency, Vector3::zeros(), &o, None)?;
        println!("{:>8.1} {:>13.4e} {:>13.4e} {:>13.4e}", theta.to_degrees(), ft.force.y, ft.force.z, ft.torque.x);
    }
    Ok(())
}
