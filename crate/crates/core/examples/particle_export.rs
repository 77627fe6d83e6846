//! Builds the four reference shapes, prints their geometry and writes one STL each.
//!
//! Run with `cargo run --example particle_export -- [output-dir]`.

use std::path::PathBuf;

use acoustophoresis::geometry::{build_mesh, export_stl, mass_properties, MappingCoefficients, DEFAULT_MESH_RESOLUTION};

fn main() -> acoustophoresis::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let shapes: [(&str, &[f64]); 4] = [
        ("ellipsoid", &[0.002, 0.0, 0.0004]),
        ("cone", &[0.002, 0.0, 0.0, 0.00025]),
        ("cylinder", &[0.002, 0.0, -0.0005, 0.0, -0.00025]),
        ("diamond", &[0.002, 0.0, 0.0, 0.0, 0.0002]),
    ];
    println!("{:<10} {:>10} {:>10} {:>10} {:>12} {:>8}", "shape", "axis mm", "equator mm", "r_max mm", "volume mm³", "facets");
    for (name, c) in shapes {
        let shape = MappingCoefficients::new(c.to_vec())?;
        let (axial, equatorial) = shape.extents();
        let volume = mass_properties(&shape, 1.0, false)?.volume;
        let (nt, np) = DEFAULT_MESH_RESOLUTION;
        let mesh = build_mesh(&shape, nt, np)?;
        export_stl(&mesh, dir.join(format!("{name}.stl")))?;
        println!(
            "{name:<10} {:>10.4} {:>10.4} {:>10.4} {:>12.4} {:>8}",
            axial * 1e3,
            equatorial * 1e3,
            shape.max_radius() * 1e3,
            volume * 1e9,
            mesh.triangles.len()
        );
    }
    println!("STL files written to {}", dir.display());
    Ok(())
}
