//! Pointwise and integrated checks that p and q are Riemannian submersions.
//!
//! cargo run --release --example submersion_check

use systolab::conformal::{random_even_factor, Preset};
use systolab::geometry::{sphere_rule, CircleRule, FrameRule};
use systolab::verify::check_submersion;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut factors = vec![Preset::P2(0.3).build()?, Preset::P4(0.4).build()?];
    for seed in 0..4 {
        factors.push(random_even_factor(seed, 8, 0.5)?);
    }
    let rule = FrameRule::new(sphere_rule(16)?, CircleRule::new(32)?);
    let r = check_submersion(&rule, &factors, 1000, 11)?;
    println!("frames sampled           {}", r.frames_sampled);
    println!("orthonormality residual  {:.2e}", r.orthonormality_residual);
    println!("fiber image residual     {:.2e}", r.fiber_image_residual);
    println!(
        "Fubini residual          {:.2e} over {} factors",
        r.fubini_residual, r.factors_checked
    );
    println!(
        "vol(M)                   {:.12} (relative error {:.1e})",
        r.volume, r.volume_residual
    );
    println!("{}", if r.pass { "PASS" } else { "FAIL" });
    Ok(())
}
