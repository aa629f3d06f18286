//! The frame manifold M = {(v, w) ∈ R³×R³ : |v| = |w| = 1, v·w = 0}.
//!
//! M is diffeomorphic to SO(3) via (v, w) ↦ (v, w, v×w). Its tangent space at
//! (v, w) is cut out by the linearized constraints
//! X·v = 0, Y·w = 0, X·w + Y·v = 0 on pairs (X, Y).
//!
//! The metric g_M declares ((0,n), (n,0), (w,−v)) orthonormal, n = v×w.
//! Relative to the Euclidean metric of R⁶ that is the Euclidean form on
//! A = span{(0,n), (n,0)} plus one half of it on B = span{(w,−v)}.

use serde::{Deserialize, Serialize};

use super::vec3::{UnitVec3, Vec3, PROJECTION_TOLERANCE};
use super::GeometryError;

/// Tangent inputs with a larger constraint residual are rejected by [`gm_inner`].
pub const TANGENCY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    v: UnitVec3,
    w: UnitVec3,
}

impl Frame {
    /// Builds a frame, applying Gram–Schmidt when the inputs are within the
    /// projection tolerance of an orthonormal pair.
    pub fn new(v: Vec3, w: Vec3) -> Result<Self, GeometryError> {
        let v = UnitVec3::try_from_vec(v)?;
        let overlap = v.vec().dot(w);
        if overlap.abs() > PROJECTION_TOLERANCE {
            return Err(GeometryError::NotOrthogonal { dot: overlap });
        }
        let w = UnitVec3::try_from_vec(w - v.vec() * overlap)?;
        Ok(Frame { v, w })
    }

    /// Frame with `w` taken as the point at angle `t` on the great circle with pole `v`.
    pub fn on_fiber(v: UnitVec3, t: f64) -> Self {
        let circle = super::GreatCircle::new(v);
        Frame {
            v,
            w: circle.point(t),
        }
    }

    pub fn v(&self) -> UnitVec3 {
        self.v
    }

    pub fn w(&self) -> UnitVec3 {
        self.w
    }

    /// n = v × w. Results do not depend on choosing this orientation over w × v.
    pub fn normal(&self) -> UnitVec3 {
        UnitVec3::new_unchecked(self.v.vec().cross(self.w.vec()))
    }

    /// The projection p(v, w) = v.
    pub fn p(&self) -> UnitVec3 {
        self.v
    }

    /// The projection q(v, w) = w.
    pub fn q(&self) -> UnitVec3 {
        self.w
    }

    /// Max of |v·v − 1|, |w·w − 1|, |v·w|.
    pub fn constraint_residual(&self) -> f64 {
        let v = self.v.vec();
        let w = self.w.vec();
        (v.norm_squared() - 1.0)
            .abs()
            .max((w.norm_squared() - 1.0).abs())
            .max(v.dot(w).abs())
    }

    /// Differential of p at this frame: dp(X, Y) = X.
    pub fn dp(&self, t: TangentVector) -> Vec3 {
        t.x
    }

    /// Differential of q at this frame: dq(X, Y) = Y.
    pub fn dq(&self, t: TangentVector) -> Vec3 {
        t.y
    }
}

/// A vector (X, Y) ∈ R³ × R³, tangent to M when the linearized constraints hold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub x: Vec3,
    pub y: Vec3,
}

impl TangentVector {
    pub fn new(x: Vec3, y: Vec3) -> Self {
        Self { x, y }
    }

    pub fn euclidean_dot(self, other: TangentVector) -> f64 {
        self.x.dot(other.x) + self.y.dot(other.y)
    }

    pub fn scale(self, s: f64) -> TangentVector {
        TangentVector::new(self.x * s, self.y * s)
    }

    pub fn add(self, other: TangentVector) -> TangentVector {
        TangentVector::new(self.x + other.x, self.y + other.y)
    }

    /// (X·v, Y·w, X·w + Y·v) at `frame`.
    pub fn constraint_residuals(self, frame: &Frame) -> [f64; 3] {
        let v = frame.v.vec();
        let w = frame.w.vec();
        [self.x.dot(v), self.y.dot(w), self.x.dot(w) + self.y.dot(v)]
    }

    pub fn tangency_residual(self, frame: &Frame) -> f64 {
        self.constraint_residuals(frame)
            .iter()
            .fold(0.0_f64, |acc, r| acc.max(r.abs()))
    }
}

/// The g_M-orthonormal basis at a frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentBasis {
    /// (0, n): spans the fiber of p.
    pub e1: TangentVector,
    /// (n, 0): spans the fiber of q.
    pub e2: TangentVector,
    /// (w, −v): Euclidean length √2, g_M length 1.
    pub e3: TangentVector,
}

impl TangentBasis {
    pub fn as_array(&self) -> [TangentVector; 3] {
        [self.e1, self.e2, self.e3]
    }

    /// Coordinates of `t` in this basis. Exact for tangent `t`, since the
    /// basis is Euclidean-orthogonal with squared lengths (1, 1, 2).
    pub fn coordinates(&self, t: TangentVector) -> [f64; 3] {
        [
            t.euclidean_dot(self.e1),
            t.euclidean_dot(self.e2),
            0.5 * t.euclidean_dot(self.e3),
        ]
    }
}

pub fn frame_basis(frame: &Frame) -> TangentBasis {
    let n = frame.normal().vec();
    let v = frame.v.vec();
    let w = frame.w.vec();
    TangentBasis {
        e1: TangentVector::new(Vec3::ZERO, n),
        e2: TangentVector::new(n, Vec3::ZERO),
        e3: TangentVector::new(w, -v),
    }
}

/// g_M(t1, t2) = g(t1_A, t2_A) + ½ g(t1_B, t2_B).
pub fn gm_inner(frame: &Frame, t1: TangentVector, t2: TangentVector) -> Result<f64, GeometryError> {
    for t in [t1, t2] {
        let residual = t.tangency_residual(frame);
        if !(residual <= TANGENCY_TOLERANCE) {
            return Err(GeometryError::NotTangent { residual });
        }
    }
    let basis = frame_basis(frame);
    let a = basis.coordinates(t1);
    let b = basis.coordinates(t2);
    // A-part carries the Euclidean form; the B-part has Euclidean weight 2, halved.
    let along_a = a[0] * b[0] + a[1] * b[1];
    let along_b = 0.5 * (2.0 * a[2] * b[2]);
    Ok(along_a + along_b)
}
