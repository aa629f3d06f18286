//! Seeded populations of positive factors.
//!
//! cargo run --example random_factors -- 10

use systolab::conformal::{random_factor, Parity};
use systolab::geometry::sphere_rule;
use systolab::transforms::moments_sphere;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let count: u64 = std::env::args().nth(1).as_deref().unwrap_or("8").parse()?;
    let rule = sphere_rule(24)?;
    println!("seed parity  min f      E(f)      Var(f)    fingerprint");
    for seed in 0..count {
        let parity = if seed % 2 == 0 {
            Parity::Even
        } else {
            Parity::Any
        };
        let f = random_factor(seed, 6, 0.5, parity)?;
        let m = moments_sphere(&f, &rule)?;
        println!(
            "{seed:>4} {:<6} {:.6}  {:.6}  {:.6}  {}",
            if f.is_even() { "even" } else { "any" },
            f.validated_min(),
            m.mean,
            m.var,
            &f.fingerprint()[..12]
        );
    }
    Ok(())
}
