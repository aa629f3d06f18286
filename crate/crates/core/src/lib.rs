//! Numerical lab for conformal metrics g = f² g₀ on S² and RP².
//!
//! - [`geometry`]: frames, the frame manifold M with its metric, great circles
//!   and quadrature on S¹, S² and M.
//! - [`conformal`]: positive factors from harmonic terms, grids, presets, seeded
//!   random draws and spec files.
//! - [`transforms`]: the great-circle transform, its minimum m and the moments
//!   I1, I2, J1, J2.
//! - [`systole`]: centrally symmetric icosphere meshes and the graph systole L.
//! - [`verify`]: submersion, chain and systolic checks with typed reports.
//! - [`cli`]: the `systolab` command, its run configuration and report bundle.
//!
//! Each capability has a runnable example under `examples/`:
//! `frame_metric`, `quadrature`, `conformal_factors`, `spec_file`,
//! `random_factors`, `funk_transform`, `moments`, `mesh_export`,
//! `systole_scan`, `inequality_chains`, `submersion_check`, `pu_theorem`,
//! `calibrate_mesh`, `plot_data` and `report_bundle`.
//!
//! ```
//! use systolab::conformal::{Preset, ProjectiveFactor};
//! use systolab::verify::{verify_projective_chain, VerifyContext};
//!
//! let f = ProjectiveFactor::new(Preset::P2(0.3).build().unwrap()).unwrap();
//! let r = verify_projective_chain(&f, &VerifyContext::new(16, 128).unwrap()).unwrap();
//! assert!(r.pass);
//! ```

pub mod cli;
pub mod conformal;
pub mod geometry;
pub mod systole;
pub mod tolerances;
pub mod transforms;
pub mod verify;
