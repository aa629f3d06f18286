//! Quadrature on S¹, S² and M, including the averaging identity
//! ∫_M h∘p = ∫_M h∘q = 2π ∫_{S²} h.
//!
//! cargo run --example quadrature

use std::f64::consts::PI;

use systolab::geometry::{integrate_frames, integrate_sphere, sphere_rule, CircleRule, FrameRule};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for level in [4, 8, 16] {
        let rule = sphere_rule(level)?;
        let z4 = integrate_sphere(&rule, |v| v.z().powi(4))?;
        println!(
            "level {level:>2}: {:>4} nodes, exact to degree {:>2}, int z^4 = {:.15} (4pi/5 = {:.15})",
            rule.len(),
            rule.degree(),
            z4,
            4.0 * PI / 5.0
        );
    }

    let h = |v: systolab::geometry::UnitVec3| 1.0 + v.x() * v.y() + 0.5 * v.z().powi(3);
    let rule = FrameRule::new(sphere_rule(12)?, CircleRule::new(24)?);
    let sphere = integrate_sphere(&rule.base, h)?;
    let via_p = integrate_frames(&rule, |fr| h(fr.p()))?;
    let via_q = integrate_frames(&rule, |fr| h(fr.q()))?;
    println!("\n2pi int_S2 h = {:.15}", 2.0 * PI * sphere);
    println!("int_M h o p  = {via_p:.15}");
    println!("int_M h o q  = {via_q:.15}");
    println!(
        "vol(M) = {:.15} (8pi^2 = {:.15})",
        integrate_frames(&rule, |_| 1.0)?,
        8.0 * PI * PI
    );
    Ok(())
}
