//! Sampled data for plotting: the transform on the pole grid and f on a
//! latitude/longitude grid, written as CSV.
//!
//! cargo run --release --example plot_data -- p4:0.5 /tmp/p4

use std::path::PathBuf;

use systolab::cli::write_plot_data;
use systolab::conformal::Preset;
use systolab::geometry::CircleRule;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset: Preset = args.next().as_deref().unwrap_or("p4:0.5").parse()?;
    let stem = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("systolab-plot"));
    for path in write_plot_data(&stem, &preset.build()?, CircleRule::default())? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
