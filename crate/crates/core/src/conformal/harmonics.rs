//! Real spherical harmonics, orthonormal on S², without the Condon–Shortley phase.
//!
//! For degree l and order m, with Q_l^m the fully normalized associated
//! Legendre function divided by sin^m θ:
//!
//! ```text
//! Y_l0   = Q_l^0(z)
//! Y_lm   = √2 Q_l^m(z) Re (x + iy)^m      m > 0
//! Y_l,-m = √2 Q_l^m(z) Im (x + iy)^m      m > 0
//! ```
//!
//! The first few, written out:
//!
//! ```text
//! Y_00   = 1 / (2√π)
//! Y_1,-1 = √(3/4π) y      Y_10 = √(3/4π) z      Y_11 = √(3/4π) x
//! Y_2,-2 = √(15/4π) xy    Y_2,-1 = √(15/4π) yz  Y_20 = √(5/16π) (3z² − 1)
//! Y_21   = √(15/4π) xz    Y_22   = √(15/16π) (x² − y²)
//! ```
//!
//! Every Y_lm satisfies |Y_lm| ≤ √((2l+1)/4π) on the sphere, by the addition
//! theorem Σ_m Y_lm² = (2l+1)/4π.

use std::f64::consts::PI;

use crate::geometry::UnitVec3;

/// Position of (l, m) in a dense coefficient vector of length (lmax+1)².
pub fn harmonic_index(l: usize, m: i64) -> usize {
    ((l * l + l) as i64 + m) as usize
}

/// Uniform bound of |Y_lm| over the sphere.
pub fn sup_bound(l: usize) -> f64 {
    ((2 * l + 1) as f64 / (4.0 * PI)).sqrt()
}

/// Evaluates Σ coeffs[index(l, m)] · Y_lm(v) for all l ≤ lmax.
pub fn evaluate_series(coeffs: &[f64], lmax: usize, v: UnitVec3) -> f64 {
    debug_assert!(coeffs.len() >= (lmax + 1) * (lmax + 1));
    let (x, y, z) = (v.x(), v.y(), v.z());
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut total = 0.0;
    // Q_m^m, and Re/Im of (x + iy)^m.
    let mut qmm = 1.0 / (4.0 * PI).sqrt();
    let (mut cm, mut sm) = (1.0, 0.0);
    for m in 0..=lmax {
        if m > 0 {
            let mf = m as f64;
            qmm *= ((2.0 * mf + 1.0) / (2.0 * mf)).sqrt();
            let c_next = cm * x - sm * y;
            sm = sm * x + cm * y;
            cm = c_next;
        }
        let mut q_prev = 0.0;
        let mut q = qmm;
        for l in m..=lmax {
            if l == m + 1 {
                q_prev = q;
                q = (2.0 * m as f64 + 3.0).sqrt() * z * qmm;
            } else if l > m + 1 {
                let lf = l as f64;
                let mf = m as f64;
                let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
                let b = (((lf - 1.0) * (lf - 1.0) - mf * mf)
                    / (4.0 * (lf - 1.0) * (lf - 1.0) - 1.0))
                    .sqrt();
                let next = a * (z * q - b * q_prev);
                q_prev = q;
                q = next;
            }
            let base = l * l + l;
            if m == 0 {
                total += coeffs[base] * q;
            } else {
                let plus = coeffs[base + m];
                let minus = coeffs[base - m];
                if plus != 0.0 || minus != 0.0 {
                    total += sqrt2 * q * (plus * cm + minus * sm);
                }
            }
        }
    }
    total
}

/// A single real harmonic Y_lm(v).
pub fn real_harmonic(l: usize, m: i64, v: UnitVec3) -> f64 {
    assert!(m.unsigned_abs() as usize <= l, "|m| must not exceed l");
    let mut coeffs = vec![0.0; (l + 1) * (l + 1)];
    coeffs[harmonic_index(l, m)] = 1.0;
    evaluate_series(&coeffs, l, v)
}

/// Legendre polynomial P_l(x) by the three-term recurrence.
pub fn legendre(l: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if l == 0 {
        return 1.0;
    }
    for k in 2..=l {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    p1
}
