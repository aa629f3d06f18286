//! The harmonic spec file format: an `offset` line, then `l m coeff` lines.
//!
//! cargo run --example spec_file

use systolab::conformal::{
    format_spec, parse_spec, random_terms, read_spec_file, write_spec_file, HarmonicSpec, Parity,
    DEFAULT_MAX_DEGREE,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "# f = 1 + 0.25 Y_20 - 0.1 Y_44\noffset 1\n2 0 0.25\n4 4 -0.1\n";
    let spec = parse_spec(text, DEFAULT_MAX_DEGREE)?;
    println!(
        "parsed {} terms, max degree {}",
        spec.terms().len(),
        spec.max_degree()
    );
    print!("canonical form:\n{}", format_spec(&spec));

    let dir = std::env::temp_dir().join("systolab-spec-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("random.txt");
    let random = HarmonicSpec::new(1.0, random_terms(7, 4, 0.3, Parity::Even))?;
    write_spec_file(&path, &random)?;
    let back = read_spec_file(&path, DEFAULT_MAX_DEGREE)?;
    println!(
        "\nround trip through {}: equal = {}",
        path.display(),
        back == random
    );

    println!(
        "\nerrors carry line numbers: {}",
        parse_spec("offset 1\n2 3 0.1\n", DEFAULT_MAX_DEGREE).unwrap_err()
    );
    Ok(())
}
