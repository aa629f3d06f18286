//! The great-circle transform and its minimum over great circles.
//!
//! cargo run --example funk_transform -- p4:0.5

use std::f64::consts::TAU;

use systolab::conformal::harmonics::{legendre, real_harmonic};
use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::geometry::{CircleRule, UnitVec3};
use systolab::transforms::{
    funk, great_circle_integral, min_funk_projective, min_funk_sphere, SearchConfig,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let preset: Preset = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("p2:0.3")
        .parse()?;
    let circle = CircleRule::default();

    println!("multipliers 2pi P_l(0) on Y_l1 at pole (0.6, 0, 0.8):");
    let pole = UnitVec3::new(0.6, 0.0, 0.8)?;
    for l in 1..=6 {
        let t = great_circle_integral(|v| real_harmonic(l, 1, v), pole, circle);
        println!(
            "  l = {l}: transform {t:+.12}, predicted {:+.12}",
            TAU * legendre(l, 0.0) * real_harmonic(l, 1, pole)
        );
    }

    let f = preset.build()?;
    println!("\n{preset}:");
    for (name, p) in [("z", UnitVec3::Z), ("x", UnitVec3::X)] {
        println!(
            "  transform at pole {name}: {:.12}",
            funk(&f, p, circle).value
        );
    }
    let m = min_funk_sphere(&f, &SearchConfig::default());
    println!(
        "  m = {:.12} at {:?} (grid {:.6}, certified {}, {} refinement steps)",
        m.value,
        m.pole.vec(),
        m.grid_value,
        m.certified,
        m.iterations
    );
    let fp = ProjectiveFactor::new(f)?;
    println!(
        "  m_bar = {:.12}",
        min_funk_projective(&fp, &SearchConfig::default()).value
    );
    Ok(())
}
