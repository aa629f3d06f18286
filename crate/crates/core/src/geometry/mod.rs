//! Points and frames on S² and on the frame manifold M, the metric g_M, great
//! circles, and quadrature rules on S¹, S² and M.

mod circle;
mod frame;
mod quadrature;
mod vec3;

use thiserror::Error;

pub use circle::{circle_point, GreatCircle};
pub use frame::{frame_basis, gm_inner, Frame, TangentBasis, TangentVector, TANGENCY_TOLERANCE};
pub use quadrature::{
    gauss_legendre, integrate_frames, integrate_sphere, pairwise_sum, sphere_rule, CircleRule,
    FrameRule, SphereRule,
};
pub use vec3::{antipode, slerp, UnitVec3, Vec3, PROJECTION_TOLERANCE};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("vector has norm {norm}, too far from the unit sphere to project")]
    NotUnit { norm: f64 },
    #[error("cannot normalize a vector of norm {norm}")]
    Degenerate { norm: f64 },
    #[error("frame vectors are not orthogonal (v·w = {dot})")]
    NotOrthogonal { dot: f64 },
    #[error("vector is not tangent to M (constraint residual {residual:e})")]
    NotTangent { residual: f64 },
    #[error("quadrature rule needs at least one node")]
    EmptyRule,
    #[error("integrand is not finite ({value}) at {at:?}")]
    NonFinite { at: [f64; 3], value: f64 },
}
