//! Pressure magnitude of a four-element array in the xOz plane, drawn as text.
//!
//! Run with `cargo run --example field_map`.

use std::f64::consts::PI;

use acoustophoresis::wavefield::{piston_pressure, Medium, TransducerArray};
use nalgebra::Vector3;

fn main() -> acoustophoresis::Result<()> {
    let medium = Medium::air();
    let array = TransducerArray {
        radius: 0.005,
        positions: vec![[0.0, 0.0, 0.0], [0.01, 0.0, 0.0], [-0.01, 0.0, 0.0], [0.0, 0.01, 0.0]],
        v0: 1.5,
        phase_delay: vec![0.0, 0.0, PI / 2.0, 0.0],
        amplitude_ratio: vec![1.0; 4],
        interdistance: 0.02,
    };
    let (nx, nz) = (61, 25);
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#', '%', '@'];
    let mut grid = vec![vec![0.0; nx]; nz];
    let mut peak: f64 = 0.0;
    for (j, row) in grid.iter_mut().enumerate() {
        let z = 0.012 - 0.024 * j as f64 / (nz - 1) as f64;
        for (i, v) in row.iter_mut().enumerate() {
            let x = -0.03 + 0.06 * i as f64 / (nx - 1) as f64;
            *v = piston_pressure(&array, &medium, 40e3, &Vector3::new(x, 0.0, z))?.norm();
            peak = peak.max(*v);
        }
    }
    for row in &grid {
        let line: String = row.iter().map(|v| shades[((v / peak) * 9.0).round() as usize]).collect();
        println!("|{line}|");
    }
    println!("x from -30 to 30 mm, z from 12 to -12 mm, peak |p| = {peak:.1} Pa");
    Ok(())
}
