//! The chains m²/π ≤ I1²/4π ≤ I2 on S² and 2m̄²/π ≤ J1²/2π ≤ J2 on RP².
//!
//! cargo run --example inequality_chains

use systolab::conformal::{random_even_factor, Preset, ProjectiveFactor};
use systolab::verify::{verify_projective_chain, verify_sphere_chain, ChainReport, VerifyContext};

fn show(label: &str, r: &ChainReport) {
    println!(
        "{label:<24} chain [{:.6}, {:.6}, {:.6}]  remainder {:.6}  remainder slack {:.6}  {:?} {}",
        r.chain[0],
        r.chain[1],
        r.chain[2],
        r.remainder,
        r.remainder_slack,
        r.classification,
        if r.pass { "PASS" } else { "FAIL" }
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = VerifyContext::default();
    let mut factors = vec![
        ("constant:1".to_string(), Preset::Constant(1.0).build()?),
        ("p2:0.3".to_string(), Preset::P2(0.3).build()?),
        ("p4:0.5".to_string(), Preset::P4(0.5).build()?),
    ];
    for seed in 0..3 {
        factors.push((
            format!("random even #{seed}"),
            random_even_factor(seed, 6, 0.6)?,
        ));
    }
    for (name, f) in factors {
        show(&format!("{name} S^2"), &verify_sphere_chain(&f, &ctx)?);
        show(
            &format!("{name} RP^2"),
            &verify_projective_chain(&ProjectiveFactor::new(f)?, &ctx)?,
        );
    }
    Ok(())
}
