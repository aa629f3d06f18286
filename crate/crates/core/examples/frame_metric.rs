//! Frames (v, w) on M, the metric g_M, and the two projections.
//!
//! cargo run --example frame_metric

use systolab::geometry::{frame_basis, gm_inner, Frame, TangentVector, Vec3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let frame = Frame::new(
        Vec3::new(1.0, 2.0, 2.0).scale(1.0 / 3.0),
        Vec3::new(2.0, -2.0, 1.0).scale(1.0 / 3.0),
    )?;
    println!("v = {:?}", frame.v().vec());
    println!("w = {:?}", frame.w().vec());
    println!("n = v x w = {:?}", frame.normal().vec());

    let basis = frame_basis(&frame);
    let names = ["e1 = (0, n)", "e2 = (n, 0)", "e3 = (w, -v)"];
    println!("\nGram matrix of the basis under g_M:");
    for (i, s) in basis.as_array().into_iter().enumerate() {
        let row: Vec<String> = basis
            .as_array()
            .into_iter()
            .map(|t| format!("{:6.3}", gm_inner(&frame, s, t).unwrap()))
            .collect();
        println!(
            "  {:<13} [{}]  euclidean |.|^2 = {:.3}",
            names[i],
            row.join(" "),
            s.euclidean_dot(s)
        );
    }

    println!("\npushforwards:");
    for (name, t) in names.iter().zip(basis.as_array()) {
        println!(
            "  dp({name}) = {:?}    dq({name}) = {:?}",
            frame.dp(t),
            frame.dq(t)
        );
    }

    // A vector that violates X·v = 0 is not tangent to M.
    let bad = TangentVector::new(frame.v().vec(), Vec3::ZERO);
    println!(
        "\nnon-tangent input: {}",
        gm_inner(&frame, bad, bad).unwrap_err()
    );
    Ok(())
}
