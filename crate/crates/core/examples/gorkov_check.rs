//! Axial force on a small rigid sphere in a standing wave, compared with the
//! gradient of the Gor'kov potential.
//!
//! Run with `cargo run --release --example gorkov_check`.

use std::f64::consts::PI;

use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::radforce::{gorkov_force, radiation_force_torque, GorkovCoefficients, Particle};
use acoustophoresis::scatter::BoundaryKind;
use acoustophoresis::transform::Orientation;
use acoustophoresis::wavefield::{Medium, PlaneWave, Superposition};
use nalgebra::Vector3;
use num_complex::Complex64;

fn main() -> acoustophoresis::Result<()> {
    let medium = Medium::air();
    let frequency = 40e3;
    let k = medium.wavenumber(frequency);
    let radius = 0.05 / k;
    let up = PlaneWave::along_z(1.0).with_wavenumber(k);
    let down = PlaneWave::new(Complex64::new(1.0, 0.0), -Vector3::z())?.with_wavenumber(k);
    let field = Superposition { parts: vec![&up, &down] };
    let particle = Particle::new(MappingCoefficients::sphere(radius)?, BoundaryKind::SoundHard, &medium, frequency, None)?;

    println!("ka = {:.3}", k * radius);
    println!("{:>10} {:>14} {:>14} {:>10}", "kz", "Fz (N)", "-dU/dz (N)", "rel diff");
    for i in 1..8 {
        let kz = i as f64 * PI / 8.0;
        let center = Vector3::new(0.0, 0.0, kz / k);
        let fz = radiation_force_torque(&particle, &field, &medium, frequency, center, &Orientation::identity(), None)?.force.z;
        let gz = gorkov_force(&field, radius, GorkovCoefficients::rigid(), &medium, frequency, &center)?.z;
        let rel = if gz.abs() > 1e-30 { format!("{:.2e}", (fz - gz).abs() / gz.abs()) } else { "node".into() };
        println!("{kz:>10.4} {fz:>14.5e} {gz:>14.5e} {rel:>10}");
    }
    Ok(())
}
