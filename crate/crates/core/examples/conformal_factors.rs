//! Building, validating and fingerprinting conformal factors.
//!
//! cargo run --example conformal_factors

use systolab::conformal::{
    ConformalFactor, HarmonicSpec, HarmonicTerm, Parity, Preset, ProjectiveFactor, PRESETS,
};
use systolab::geometry::UnitVec3;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for info in PRESETS {
        let preset: Preset = info.name.parse()?;
        let f = preset.build()?;
        println!(
            "{:<12} min {:.6}  f(z) = {:.6}  fingerprint {}",
            preset.to_string(),
            f.validated_min(),
            f.value(UnitVec3::Z),
            &f.fingerprint()[..16]
        );
    }

    // f = 1 + 0.2 Y_20 + 0.1 Y_2,-1 from explicit coefficients.
    let spec = HarmonicSpec::new(
        1.0,
        vec![
            HarmonicTerm {
                l: 2,
                m: 0,
                coeff: 0.2,
            },
            HarmonicTerm {
                l: 2,
                m: -1,
                coeff: 0.1,
            },
        ],
    )?;
    let f = ConformalFactor::harmonic(spec, Parity::Even)?;
    let g = f.scaled(3.0)?;
    let v = UnitVec3::from_polar(0.3, 1.0);
    println!("\nf(v) = {:.6}, (3f)(v) = {:.6}", f.value(v), g.value(v));
    let fp = ProjectiveFactor::new(f)?;
    println!("descends to RP^2: f(-v) = {:.6}", fp.value(-v));

    // Odd terms do not descend; large amplitudes are not positive.
    let odd = HarmonicSpec::new(
        1.0,
        vec![HarmonicTerm {
            l: 1,
            m: 0,
            coeff: 0.5,
        }],
    )?;
    println!(
        "\nodd factor on RP^2: {}",
        ConformalFactor::harmonic(odd, Parity::Even).unwrap_err()
    );
    println!("p2:5: {}", Preset::P2(5.0).build().unwrap_err());
    Ok(())
}
