//! Null-field T-matrix of a sphere against the closed-form Mie series.
//!
//! Run with `cargo run --release --example mie_calibration`.

use acoustophoresis::geometry::MappingCoefficients;
use acoustophoresis::scatter::{mie_coefficients, tmatrix_nullfield, BoundaryKind};

fn main() -> acoustophoresis::Result<()> {
    let a = 0.002;
    let n_max = 12;
    println!("{:>8} {:>12} {:>12} {:>12}", "ka", "boundary", "max |ΔT|", "unitarity");
    for ka in [0.1, 0.5, 1.465, 3.0, 6.0] {
        for bc in [BoundaryKind::SoundHard, BoundaryKind::SoundSoft] {
            let k = ka / a;
            let t = tmatrix_nullfield(&MappingCoefficients::sphere(a)?, bc, k, n_max)?;
            let mie = mie_coefficients(bc, k, a, n_max)?;
            println!("{ka:>8.3} {:>12} {:>12.2e} {:>12.2e}", format!("{bc:?}"), t.max_difference(&mie)?, t.unitarity_residual());
        }
    }
    Ok(())
}
