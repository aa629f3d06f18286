//! Graph systole of a preset factor across mesh levels.
//!
//! cargo run --example systole_scan -- p2:0.3 5

use std::time::Instant;

use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::systole::{build_mesh, compute_systole, weight_edges, DEFAULT_SAMPLES_PER_EDGE};
use systolab::transforms::{min_funk_projective, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("p2:0.3").parse()?;
    let max_level: usize = args.next().as_deref().unwrap_or("5").parse()?;
    let f = ProjectiveFactor::new(preset.build()?)?;
    let m_bar = min_funk_projective(&f, &SearchConfig::default()).value;
    println!("{preset}: m_bar = {m_bar:.9}");
    println!("level  vertices        h              L       L/m_bar    seconds");
    for level in 1..=max_level {
        let start = Instant::now();
        let wm = weight_edges(build_mesh(level)?, &f, DEFAULT_SAMPLES_PER_EDGE)?;
        let s = compute_systole(&wm)?;
        println!(
            "{level:>5}  {:>8}  {:.6}  {:.12}  {:.9}  {:.3}",
            wm.mesh().vertices().len(),
            s.mesh_size,
            s.length,
            s.length / m_bar,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
