//! Shortest noncontractible loops on RP² with a conformal metric, computed on
//! a centrally symmetric icosphere mesh.

mod graph;
mod mesh;

use thiserror::Error;

pub use graph::{
    arc_length, compute_systole, compute_systole_exhaustive, weight_edges, weight_edges_with, Arc,
    ArcOptions, SystoleResult, WeightedMesh, DEFAULT_REACH, DEFAULT_SAMPLES_PER_EDGE,
};
pub use mesh::{build_mesh, MeshEdge, RP2Mesh, MAX_LEVEL};

pub const DEFAULT_MESH_LEVEL: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystoleError {
    #[error("mesh level {level} is out of range (maximum {max})")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("samples per edge must be odd and at least 3, got {samples}")]
    BadSamples { samples: usize },
    #[error("arc reach must be at least 1")]
    BadReach,
    #[error("arc {a}-{b} has non-positive weight {weight}")]
    NonPositiveWeight { a: usize, b: usize, weight: f64 },
    #[error("no vertex is joined to its antipode")]
    Disconnected,
}
