//! The zonal family f = 1 + a(z² − 1/3) against closed forms and an
//! independent one-dimensional quadrature in z.

use std::f64::consts::PI;

use proptest::prelude::*;
use systolab::conformal::{Preset, ProjectiveFactor};
use systolab::verify::{
    verify_projective_chain, verify_pu, verify_sphere_chain, Classification, VerifyContext,
};

/// Composite Simpson on [-1, 1] of g(z); zonal integrals over S² are 2π times this.
fn simpson_z(g: impl Fn(f64) -> f64, n: usize) -> f64 {
    let h = 2.0 / n as f64;
    let mut s = g(-1.0) + g(1.0);
    for i in 1..n {
        let z = -1.0 + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * g(z);
    }
    s * h / 3.0
}

fn zonal(a: f64) -> impl Fn(f64) -> f64 {
    move |z| 1.0 + a * (z * z - 1.0 / 3.0)
}

/// Circles through the poles average z² to 1/2; the equator has z = 0.
fn m_oracle(a: f64) -> f64 {
    let equator = 2.0 * PI * (1.0 - a / 3.0);
    let meridian = 2.0 * PI * (1.0 + a / 6.0);
    equator.min(meridian)
}

fn ctx() -> VerifyContext {
    VerifyContext::new(24, 256).unwrap()
}

#[test]
fn p2_at_point_three() {
    let a = 0.3;
    let f = Preset::P2(a).build().unwrap();
    let s = verify_sphere_chain(&f, &ctx()).unwrap();
    let i1 = 2.0 * PI * simpson_z(zonal(a), 2000);
    let i2 = 2.0 * PI * simpson_z(|z| zonal(a)(z).powi(2), 2000);
    assert!((s.minimum - 1.8 * PI).abs() < 1e-9);
    assert!((s.integral - i1).abs() < 1e-9);
    assert!((s.integral_sq - i2).abs() < 1e-9);
    assert!((s.integral_sq - 4.0 * PI * (1.0 + a * a * 4.0 / 45.0)).abs() < 1e-9);
    assert!((s.remainder_slack - 0.76 * PI).abs() < 1e-8);
    assert_eq!(s.classification, Classification::Strict);

    let p = verify_projective_chain(&ProjectiveFactor::new(f.clone()).unwrap(), &ctx()).unwrap();
    assert!((p.minimum - 0.9 * PI).abs() < 1e-9);
    assert!((p.integral_sq - i2 / 2.0).abs() < 1e-9);
    assert!((p.var - s.var).abs() < 1e-12);
    assert!((2.0 * PI * p.var - p.remainder).abs() < 1e-12);
}

#[test]
fn p2_surrogate_left_side() {
    let f = ProjectiveFactor::new(Preset::P2(0.3).build().unwrap()).unwrap();
    let r = verify_pu(&f, 3, &ctx()).unwrap();
    let j2 = 2.0 * PI * (1.0 + 0.09 * 4.0 / 45.0);
    assert!((r.surrogate_lhs - (j2 - 1.62 * PI)).abs() < 1e-8);
    assert!((r.surrogate_lhs - 1.2440707).abs() < 1e-6);
    assert!(r.surrogate_pass && r.systole_bound_pass);
    assert!(r.length >= r.m_bar * (1.0 - 1e-12));
}

#[test]
fn constant_is_the_equality_case() {
    let f = ProjectiveFactor::new(Preset::Constant(1.0).build().unwrap()).unwrap();
    let r = verify_pu(&f, 3, &ctx()).unwrap();
    assert!((r.area - 2.0 * PI).abs() < 1e-10);
    assert!((r.length - PI).abs() < 1e-10);
    assert!(r.var.abs() < 1e-12);
    assert_eq!(r.classification, Classification::Equality);
    assert!(r.pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn zonal_family_matches_oracles(a in -1.4f64..2.9) {
        prop_assume!(a.abs() > 1e-3);
        let f = Preset::P2(a).build().unwrap();
        let s = verify_sphere_chain(&f, &ctx()).unwrap();
        let i2 = 2.0 * PI * simpson_z(|z| zonal(a)(z).powi(2), 2000);
        prop_assert!((s.minimum - m_oracle(a)).abs() < 1e-7 * m_oracle(a));
        prop_assert!((s.integral - 4.0 * PI).abs() < 1e-9);
        prop_assert!((s.integral_sq - i2).abs() < 1e-9);
        prop_assert!(s.pass);
    }
}
