//! Ellipsoid released above a five-element array, integrated until it settles.
//!
//! Run with `cargo run --release --example simulate_ellipsoid`.

use std::f64::consts::PI;
use std::time::Instant;

use acoustophoresis::dynamics::{simulate, DynamicsParams, Scene};
use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::radforce::Particle;
use acoustophoresis::scatter::BoundaryKind;
use acoustophoresis::transform::euler_to_rotation;
use acoustophoresis::wavefield::{Medium, Source, TransducerArray};
use nalgebra::Vector3;

fn main() -> acoustophoresis::Result<()> {
    let medium = Medium::air();
    let frequency = 40e3;
    let shape = MappingCoefficients::new(vec![0.002, 0.0, 0.0004])?;
    let particle = Particle::new(shape, BoundaryKind::SoundHard, &medium, frequency, None)?;
    let positions = vec![[0.0, 0.0, 0.0], [0.01, 0.0, 0.0], [-0.01, 0.0, 0.0], [0.0, 0.01, 0.0], [0.0, -0.01, 0.0]];
    let array = TransducerArray {
        radius: 0.005,
        v0: 1.5,
        phase_delay: vec![0.0; positions.len()],
        amplitude_ratio: vec![1.0; positions.len()],
        positions,
        interdistance: 0.02,
    };
    let scene = Scene {
        particle,
        medium,
        frequency,
        source: Source::Array(array),
        initial_position: Vector3::new(0.002, 0.0, 0.0),
        initial_orientation: euler_to_rotation([PI / 6.0, 0.0, 0.0])?,
        force_radius: None,
        drag_radius: None,
    };
    let params = DynamicsParams::new(15.0, 1e-4, 0.1);

    let start = Instant::now();
    let trajectory = simulate(&scene, &params)?;
    println!("{:>10} {:>12} {:>12} {:>12} {:>9} {:>9} {:>9}", "t (s)", "x (m)", "y (m)", "z (m)", "θx", "θy", "θz");
    for r in &trajectory.records {
        println!(
            "{:>10.4} {:>12.4e} {:>12.4e} {:>12.4e} {:>9.5} {:>9.5} {:>9.5}",
            r.time, r.position.x, r.position.y, r.position.z, r.angles[0], r.angles[1], r.angles[2]
        );
    }
    println!("terminated: {} after {} steps in {:.2?}", trajectory.termination, trajectory.records.len() - 1, start.elapsed());
    Ok(())
}
