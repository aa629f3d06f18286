use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GeometryError;

/// Inputs farther than this from the constraint set are rejected instead of projected.
pub const PROJECTION_TOLERANCE: f64 = 1e-6;

/// Plain vector in R³.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        self.scale(rhs)
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

/// A point of the unit sphere S² ⊂ R³.
///
/// Construction projects inputs that are within [`PROJECTION_TOLERANCE`] of
/// unit length and rejects anything farther away, so accumulated round-off
/// is absorbed but a wrong vector is never silently normalized.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitVec3 = UnitVec3(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitVec3 = UnitVec3(Vec3::new(0.0, 0.0, 1.0));

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, GeometryError> {
        Self::try_from_vec(Vec3::new(x, y, z))
    }

    /// Projects `v` onto the sphere if it is already nearly unit length.
    pub fn try_from_vec(v: Vec3) -> Result<Self, GeometryError> {
        let norm = v.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > PROJECTION_TOLERANCE {
            return Err(GeometryError::NotUnit { norm });
        }
        Ok(UnitVec3(v.scale(1.0 / norm)))
    }

    /// Radial projection of any nonzero vector.
    pub fn normalize(v: Vec3) -> Result<Self, GeometryError> {
        let norm = v.norm();
        if !norm.is_finite() || norm < f64::MIN_POSITIVE.sqrt() {
            return Err(GeometryError::Degenerate { norm });
        }
        Ok(UnitVec3(v.scale(1.0 / norm)))
    }

    /// Wraps `v` without checking; callers guarantee |v| = 1 to working precision.
    pub(crate) fn new_unchecked(v: Vec3) -> Self {
        UnitVec3(v)
    }

    /// Spherical coordinates: `z` is the polar cosine, `phi` the azimuth.
    pub fn from_polar(z: f64, phi: f64) -> Self {
        let s = (1.0 - z * z).max(0.0).sqrt();
        UnitVec3(Vec3::new(s * phi.cos(), s * phi.sin(), z))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    pub fn dot(self, other: UnitVec3) -> f64 {
        self.0.dot(other.0)
    }

    /// Great-circle distance in radians.
    pub fn angle_to(self, other: UnitVec3) -> f64 {
        // atan2 form stays accurate for nearly parallel vectors.
        let c = self.0.cross(other.0).norm();
        c.atan2(self.0.dot(other.0))
    }

    /// Lexicographic order on (x, y, z), used for deterministic tie-breaking.
    pub fn lex_cmp(self, other: UnitVec3) -> std::cmp::Ordering {
        self.0
            .x
            .total_cmp(&other.0.x)
            .then(self.0.y.total_cmp(&other.0.y))
            .then(self.0.z.total_cmp(&other.0.z))
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3(-self.0)
    }
}

impl From<UnitVec3> for [f64; 3] {
    fn from(u: UnitVec3) -> Self {
        u.0.to_array()
    }
}

impl TryFrom<[f64; 3]> for UnitVec3 {
    type Error = GeometryError;
    fn try_from(a: [f64; 3]) -> Result<Self, Self::Error> {
        UnitVec3::new(a[0], a[1], a[2])
    }
}

/// The antipodal map v ↦ −v.
pub fn antipode(v: UnitVec3) -> UnitVec3 {
    -v
}

/// Spherical linear interpolation along the minor arc from `a` to `b`.
///
/// `angle` must be the arc angle between them and lie in (0, π).
pub fn slerp(a: UnitVec3, b: UnitVec3, angle: f64, t: f64) -> UnitVec3 {
    let s = angle.sin();
    let wa = ((1.0 - t) * angle).sin() / s;
    let wb = (t * angle).sin() / s;
    UnitVec3::new_unchecked(a.vec() * wa + b.vec() * wb)
}
