//! Programmatic `verify` run: build a RunConfig, evaluate, print the JSON and
//! CSV renderings of the report bundle.
//!
//! cargo run --release --example report_bundle

use systolab::cli::{evaluate, Check, FactorSource, RunConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = RunConfig::new(FactorSource::Random {
        seed: 42,
        degree: 6,
        amplitude: 0.4,
    });
    config.checks = vec![Check::Sphere, Check::Projective, Check::Pu];
    config.mesh_level = 4;
    let (bundle, timings) = evaluate(&config)?;
    print!("{}", bundle.to_json()?);
    println!();
    print!("{}", bundle.to_csv()?);
    for (stage, secs) in timings {
        eprintln!("{stage}: {secs:.3}s");
    }
    Ok(())
}
