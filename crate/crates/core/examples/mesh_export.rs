//! Centrally symmetric icosphere meshes and the weighted mesh text dump.
//!
//! cargo run --example mesh_export -- 2 /tmp/mesh.txt

use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::systole::{build_mesh, weight_edges, RP2Mesh};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let level: usize = args.next().as_deref().unwrap_or("2").parse()?;
    let out = args
        .next()
        .unwrap_or_else(|| std::env::temp_dir().join("mesh.txt").display().to_string());

    for l in 0..=level {
        let m = build_mesh(l)?;
        println!(
            "level {l}: {} vertices (10*4^l+2 = {}), {} edges, {} faces, h = {:.6}",
            m.vertices().len(),
            RP2Mesh::expected_vertex_count(l),
            m.edges().len(),
            m.faces().len(),
            m.max_edge_angle()
        );
    }

    let mesh = build_mesh(level)?;
    let sigma_ok = (0..mesh.vertices().len())
        .all(|i| mesh.antipode(mesh.antipode(i)) == i && mesh.antipode(i) != i);
    println!("antipodal pairing is a free involution: {sigma_ok}");

    let f = ProjectiveFactor::new(Preset::P2(0.3).build()?)?;
    let wm = weight_edges(mesh, &f, 5)?;
    wm.write_dump(std::io::BufWriter::new(std::fs::File::create(&out)?))?;
    println!("wrote {out} ({} arcs in the search graph)", wm.arcs().len());
    Ok(())
}
