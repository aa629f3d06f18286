//! area − 2L²/π ≥ 2π Var(f) on RP², in its mesh form and its rigorous surrogate.
//!
//! cargo run --release --example pu_theorem -- mixed:3 5

use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::verify::{verify_pu, VerifyContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("p2:0.3").parse()?;
    let level: usize = args.next().as_deref().unwrap_or("4").parse()?;
    let f = ProjectiveFactor::new(preset.build()?)?;
    let r = verify_pu(&f, level, &VerifyContext::default())?;
    println!("{preset} at mesh level {level} (h = {:.4})", r.mesh_size);
    println!("  area          {:.9}", r.area);
    println!(
        "  L             {:.9}   m_bar {:.9}   envelope {:.6}",
        r.length, r.m_bar, r.length_envelope
    );
    println!("  2 pi Var      {:.9}", r.rhs);
    println!(
        "  mesh form     {:.9} >= {:.9} - eps_mesh {:.6}: {}",
        r.lhs, r.rhs, r.eps_mesh, r.mesh_pass
    );
    println!(
        "  surrogate     {:.9} >= {:.9}: {}",
        r.surrogate_lhs, r.rhs, r.surrogate_pass
    );
    println!("  L <= m_bar + envelope: {}", r.systole_bound_pass);
    println!("  classification {:?}", r.classification);

    let doubled = verify_pu(&f.scaled(2.0)?, level, &VerifyContext::default())?;
    println!(
        "\n2f: area x{:.6}, L x{:.6}, rhs x{:.6}",
        doubled.area / r.area,
        doubled.length / r.length,
        doubled.rhs / r.rhs
    );
    Ok(())
}
