use serde::{Deserialize, Serialize};

use super::vec3::{UnitVec3, Vec3};

/// The great circle orthogonal to `pole`, with a fixed orthonormal frame.
///
/// e₁ = normalize(a − (a·pole) pole) with a = ẑ, or a = x̂ when |pole·ẑ| > 0.9;
/// e₂ = pole × e₁. The triple (e₁, e₂, pole) is right-handed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreatCircle {
    pole: UnitVec3,
    e1: UnitVec3,
    e2: UnitVec3,
}

impl GreatCircle {
    pub fn new(pole: UnitVec3) -> Self {
        let p = pole.vec();
        let a = if p.z.abs() > 0.9 {
            Vec3::new(1.0, 0.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        let raw = a - p * a.dot(p);
        let e1 = raw.scale(1.0 / raw.norm());
        let e2 = p.cross(e1);
        GreatCircle {
            pole,
            e1: UnitVec3::new_unchecked(e1),
            e2: UnitVec3::new_unchecked(e2),
        }
    }

    pub fn pole(&self) -> UnitVec3 {
        self.pole
    }

    pub fn e1(&self) -> UnitVec3 {
        self.e1
    }

    pub fn e2(&self) -> UnitVec3 {
        self.e2
    }

    /// c(t) = cos(t) e₁ + sin(t) e₂.
    pub fn point(&self, t: f64) -> UnitVec3 {
        let (s, c) = t.sin_cos();
        UnitVec3::new_unchecked(self.e1.vec() * c + self.e2.vec() * s)
    }
}

pub fn circle_point(circle: &GreatCircle, t: f64) -> UnitVec3 {
    circle.point(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    #[test]
    fn z_pole_starts_at_x() {
        let c = GreatCircle::new(UnitVec3::Z);
        assert_eq!(c.point(0.0), UnitVec3::X);
        assert_eq!(c.e1(), UnitVec3::X);
        assert_eq!(c.e2(), UnitVec3::Y);
    }

    #[test]
    fn equatorial_pole_uses_z_reference() {
        let c = GreatCircle::new(UnitVec3::X);
        assert_eq!(c.e1(), UnitVec3::Z);
        assert_eq!(c.e2().vec(), Vec3::new(0.0, -1.0, 0.0));
    }

    #[test]
    fn periodic() {
        let c = GreatCircle::new(UnitVec3::new(0.48, 0.6, 0.64).unwrap());
        let a = c.point(0.0).vec();
        let b = c.point(TAU).vec();
        assert!((a - b).max_abs() < 1e-14);
    }

    #[test]
    fn frame_orthonormal_and_points_on_circle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let pole = UnitVec3::from_polar(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..TAU));
            let c = GreatCircle::new(pole);
            assert!(c.e1().dot(pole).abs() < 1e-12);
            assert!(c.e2().dot(pole).abs() < 1e-12);
            assert!(c.e1().dot(c.e2()).abs() < 1e-12);
            assert!((c.e1().vec().norm() - 1.0).abs() < 1e-12);
            assert!((c.e2().vec().norm() - 1.0).abs() < 1e-12);
            // right-handed
            let triple = c.e1().vec().cross(c.e2().vec()).dot(pole.vec());
            assert!((triple - 1.0).abs() < 1e-12);
            let t = rng.gen_range(-10.0..10.0);
            let p = circle_point(&c, t);
            assert!(p.dot(pole).abs() < 1e-12);
            assert!((p.vec().norm() - 1.0).abs() < 1e-12);
        }
    }
}
