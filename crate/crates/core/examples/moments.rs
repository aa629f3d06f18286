//! Integral moments and variance of a factor on S² and RP².
//!
//! cargo run --example moments -- p2:0.3

use std::f64::consts::PI;

use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::geometry::sphere_rule;
use systolab::transforms::{moments_projective, moments_sphere};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let preset: Preset = std::env::args()
        .nth(1)
        .as_deref()
        .unwrap_or("p2:0.3")
        .parse()?;
    let f = ProjectiveFactor::new(preset.build()?)?;
    let rule = sphere_rule(32)?;
    let s = moments_sphere(f.lift(), &rule)?;
    let p = moments_projective(&f, &rule)?;
    println!("{preset}");
    println!(
        "  S^2:  I1 = {:.9}  I2 = {:.9}  V = {:.9}  E = {:.9}  Var = {:.9}",
        s.i1, s.i2, s.v, s.mean, s.var
    );
    println!(
        "  RP^2: J1 = {:.9}  area = {:.9}  V_bar = {:.9}  E = {:.9}  Var = {:.9}",
        p.j1,
        p.area(),
        p.v_bar,
        p.mean,
        p.var
    );
    println!("  2 pi Var = {:.9}", 2.0 * PI * p.var);
    Ok(())
}
