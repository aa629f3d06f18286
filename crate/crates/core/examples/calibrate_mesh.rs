//! Measure the constant-metric graph systole across levels and try to fit the
//! mesh constant kappa in L/π − 1 ≈ κh.
//!
//! cargo run --release --example calibrate_mesh

use systolab::cli::{fit, measure, CALIBRATION_LEVELS};
use systolab::systole::ArcOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for reach in [1, 3] {
        let points = measure(CALIBRATION_LEVELS, ArcOptions { samples: 5, reach })?;
        println!("reach {reach}:");
        for p in &points {
            println!(
                "  level {}  h {:.6}  L/pi - 1 = {:+.3e}",
                p.level,
                p.mesh_size,
                p.ratio - 1.0
            );
        }
        match fit(points) {
            Ok(c) => println!("  kappa = {:.6}", c.kappa),
            Err(e) => println!("  no fit: {e}"),
        }
    }
    Ok(())
}
