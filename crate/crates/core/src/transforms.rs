//! The great-circle transform of a factor, its minimum over great circles
//! (sphere) and projective lines (RP²), and the moment/variance functionals.
//!
//! For a great circle C with pole u, the transform is ∫_C f, the g-length of
//! C. On degree-l harmonics it acts as multiplication by 2π P_l(0), so odd
//! degrees are annihilated. A projective line lifts to a full great circle,
//! traversed once per sheet, hence m̄ = m/2 for even f.

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conformal::{ConformalFactor, ProjectiveFactor};
use crate::geometry::{pairwise_sum, CircleRule, GeometryError, GreatCircle, SphereRule, UnitVec3};

/// Value of the transform at one pole.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunkValue {
    pub pole: UnitVec3,
    pub value: f64,
}

/// (2π/n) Σ h(c(tᵢ)) over the great circle with pole `pole`.
pub fn great_circle_integral<F>(h: F, pole: UnitVec3, rule: CircleRule) -> f64
where
    F: Fn(UnitVec3) -> f64,
{
    let circle = GreatCircle::new(pole);
    let samples: Vec<f64> = rule.angles().map(|t| h(circle.point(t))).collect();
    rule.weight() * pairwise_sum(&samples)
}

pub fn funk(f: &ConformalFactor, pole: UnitVec3, rule: CircleRule) -> FunkValue {
    FunkValue {
        pole,
        value: great_circle_integral(|v| f.value(v), pole, rule),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Poles on the Fibonacci spiral over the upper hemisphere.
    pub grid_points: usize,
    /// Local Newton/descent iterations started from the best grid pole.
    pub refine_iterations: usize,
    pub circle: CircleRule,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_points: 2000,
            refine_iterations: 20,
            circle: CircleRule::default(),
        }
    }
}

impl SearchConfig {
    pub fn with_circle(circle: CircleRule) -> Self {
        SearchConfig {
            circle,
            ..Default::default()
        }
    }
}

/// Result of a global minimization of the transform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunkMinimum {
    pub value: f64,
    pub pole: UnitVec3,
    /// Best value and pole on the coarse grid, before refinement.
    pub grid_value: f64,
    pub grid_pole: UnitVec3,
    /// True when local refinement converged: the last step changed the value
    /// by less than 1e-8 (relative) at a point with a non-negative Hessian.
    pub certified: bool,
    pub iterations: usize,
}

impl FunkMinimum {
    fn halved(self) -> FunkMinimum {
        FunkMinimum {
            value: 0.5 * self.value,
            grid_value: 0.5 * self.grid_value,
            ..self
        }
    }
}

/// `n` poles on the Fibonacci spiral with polar cosine in (0, 1].
pub fn fibonacci_hemisphere(n: usize) -> Vec<UnitVec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (i as f64 + 0.5) / n as f64;
            UnitVec3::from_polar(z, (golden * i as f64) % TAU)
        })
        .collect()
}

const CERTIFY_TOLERANCE: f64 = 1e-8;
const FD_STEP: f64 = 1e-3;

/// Minimizes `h` over poles. Antipodal poles give the same circle, so the
/// upper hemisphere suffices for the grid stage.
pub fn minimize_over_poles<F>(h: F, config: &SearchConfig) -> FunkMinimum
where
    F: Fn(UnitVec3) -> f64 + Sync,
{
    let poles = fibonacci_hemisphere(config.grid_points.max(1));
    let circle = config.circle;
    let values: Vec<f64> = poles
        .par_iter()
        .map(|&u| great_circle_integral(&h, u, circle))
        .collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let tie = 1e-12 * min.abs().max(f64::MIN_POSITIVE);
    // Ties go to the lexicographically smallest pole.
    let (grid_pole, grid_value) = poles
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v <= min + tie)
        .min_by(|a, b| a.0.lex_cmp(*b.0))
        .map(|(&p, &v)| (p, v))
        .expect("grid is non-empty");

    let transform = |u: UnitVec3| great_circle_integral(&h, u, circle);
    let spacing = (2.0 * PI / poles.len() as f64).sqrt();
    let refined = refine(
        transform,
        grid_pole,
        grid_value,
        config.refine_iterations,
        spacing,
    );
    FunkMinimum {
        value: refined.value,
        pole: refined.pole,
        grid_value,
        grid_pole,
        certified: refined.certified,
        iterations: refined.iterations,
    }
}

struct Refined {
    pole: UnitVec3,
    value: f64,
    certified: bool,
    iterations: usize,
}

/// Newton steps in the tangent plane with finite-difference derivatives,
/// falling back to steepest descent where the Hessian is indefinite. A step
/// that does not decrease the value is halved until it does.
fn refine<F>(h: F, start: UnitVec3, start_value: f64, iterations: usize, trust0: f64) -> Refined
where
    F: Fn(UnitVec3) -> f64,
{
    let mut pole = start;
    let mut value = start_value;
    let mut trust = trust0;
    let mut last_improvement = f64::INFINITY;
    let mut hessian_ok = false;
    let mut done = 0;
    for it in 0..iterations {
        done = it + 1;
        let frame = GreatCircle::new(pole);
        let (e1, e2) = (frame.e1().vec(), frame.e2().vec());
        let at = |a: f64, b: f64| {
            UnitVec3::normalize(pole.vec() + e1 * a + e2 * b).expect("offset is small")
        };
        let d = FD_STEP;
        let fpa = h(at(d, 0.0));
        let fma = h(at(-d, 0.0));
        let fpb = h(at(0.0, d));
        let fmb = h(at(0.0, -d));
        let fpp = h(at(d, d));
        let fpm = h(at(d, -d));
        let fmp = h(at(-d, d));
        let fmm = h(at(-d, -d));
        let g = [(fpa - fma) / (2.0 * d), (fpb - fmb) / (2.0 * d)];
        let haa = (fpa - 2.0 * value + fma) / (d * d);
        let hbb = (fpb - 2.0 * value + fmb) / (d * d);
        let hab = (fpp - fpm - fmp + fmm) / (4.0 * d * d);
        let scale = value.abs().max(1.0);
        let det = haa * hbb - hab * hab;
        // Curvature below the finite-difference noise floor counts as zero.
        let noise = 1e-6 * scale;
        hessian_ok =
            haa >= -noise && hbb >= -noise && det >= -noise * (haa.abs() + hbb.abs() + noise);
        let gnorm = g[0].hypot(g[1]);
        if gnorm <= 1e-12 * scale {
            last_improvement = 0.0;
            break;
        }
        let mut step = if haa > 0.0 && det > 0.0 {
            [
                -(hbb * g[0] - hab * g[1]) / det,
                -(-hab * g[0] + haa * g[1]) / det,
            ]
        } else {
            [-g[0] / gnorm * trust, -g[1] / gnorm * trust]
        };
        let len = step[0].hypot(step[1]);
        if len > trust {
            step = [step[0] * trust / len, step[1] * trust / len];
        }
        let mut accepted = None;
        for _ in 0..40 {
            let cand = at(step[0], step[1]);
            let cv = h(cand);
            if cv < value {
                accepted = Some((cand, cv));
                break;
            }
            step = [0.5 * step[0], 0.5 * step[1]];
            trust *= 0.5;
        }
        match accepted {
            Some((cand, cv)) => {
                last_improvement = value - cv;
                pole = cand;
                value = cv;
                if last_improvement < 1e-15 * scale {
                    break;
                }
            }
            None => {
                last_improvement = 0.0;
                break;
            }
        }
    }
    let certified = hessian_ok && last_improvement < CERTIFY_TOLERANCE * value.abs().max(1.0);
    // Keep the representative in the upper hemisphere for stable reporting.
    if pole.z() < 0.0 {
        pole = -pole;
    }
    Refined {
        pole,
        value,
        certified,
        iterations: done,
    }
}

/// m = min over great circles of ∫_C f.
pub fn min_funk_sphere(f: &ConformalFactor, config: &SearchConfig) -> FunkMinimum {
    minimize_over_poles(|v| f.value(v), config)
}

/// m̄ = min over projective lines of ∫_C f = m(f∘ρ)/2.
pub fn min_funk_projective(f: &ProjectiveFactor, config: &SearchConfig) -> FunkMinimum {
    min_funk_sphere(f.lift(), config).halved()
}

/// Integral moments of f over S², and f as a random variable under area/4π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereMoments {
    /// ∫ f
    pub i1: f64,
    /// ∫ f²
    pub i2: f64,
    /// E(f) = I1 / 4π
    pub mean: f64,
    /// Var(f) = E(f²) − E(f)² = V / 4π
    pub var: f64,
    /// V_f = I2 − I1²/(4π)
    pub v: f64,
}

/// Moments over RP², with the probability measure of g₀/2π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveMoments {
    /// ∫_{RP²} f = I1/2
    pub j1: f64,
    /// ∫_{RP²} f² = I2/2, the area of f² g₀
    pub j2: f64,
    /// E(f) = J1 / 2π
    pub mean: f64,
    /// V̄_f = J2 − J1²/(2π)
    pub v_bar: f64,
    /// Var(f) = V̄ / 2π
    pub var: f64,
}

impl ProjectiveMoments {
    pub fn area(&self) -> f64 {
        self.j2
    }
}

pub fn moments_sphere(
    f: &ConformalFactor,
    rule: &SphereRule,
) -> Result<SphereMoments, GeometryError> {
    let i1 = rule.integrate(|v| f.value(v))?;
    let i2 = rule.integrate(|v| {
        let x = f.value(v);
        x * x
    })?;
    let four_pi = 4.0 * PI;
    let v = i2 - i1 * i1 / four_pi;
    Ok(SphereMoments {
        i1,
        i2,
        mean: i1 / four_pi,
        var: v / four_pi,
        v,
    })
}

pub fn moments_projective(
    f: &ProjectiveFactor,
    rule: &SphereRule,
) -> Result<ProjectiveMoments, GeometryError> {
    let lift = moments_sphere(f.lift(), rule)?;
    let j1 = 0.5 * lift.i1;
    let j2 = 0.5 * lift.i2;
    let v_bar = j2 - j1 * j1 / TAU;
    Ok(ProjectiveMoments {
        j1,
        j2,
        mean: j1 / TAU,
        v_bar,
        var: v_bar / TAU,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{harmonics, Preset};
    use crate::geometry::sphere_rule;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_pole(rng: &mut impl Rng) -> UnitVec3 {
        UnitVec3::from_polar(rng.gen_range(-1.0..1.0), rng.gen_range(0.0..TAU))
    }

    #[test]
    fn unit_factor_gives_circumference() {
        let f = ConformalFactor::constant(1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..10 {
            let v = funk(&f, random_pole(&mut rng), CircleRule::default()).value;
            assert!((v - TAU).abs() < 1e-12);
        }
    }

    #[test]
    fn p2_transform_values() {
        let f = Preset::P2(0.3).build().unwrap();
        let rule = CircleRule::default();
        let at_z = funk(&f, UnitVec3::Z, rule).value;
        let at_x = funk(&f, UnitVec3::X, rule).value;
        // Independent oracle: multiplier P₂(0) = −1/2 on the degree-2 part.
        let oracle = |u: UnitVec3| {
            TAU * (1.0 + 0.2 * harmonics::legendre(2, 0.0) * harmonics::legendre(2, u.z()))
        };
        assert!((at_z - TAU * 0.9).abs() < 1e-12);
        assert!((at_z - oracle(UnitVec3::Z)).abs() < 1e-12);
        assert!((at_x - TAU * 1.05).abs() < 1e-12);
        assert!((at_x - oracle(UnitVec3::X)).abs() < 1e-12);
        assert!((at_z - 5.654867).abs() < 1e-6);
        assert!((at_x - 6.597345).abs() < 1e-6);
    }

    #[test]
    fn transform_is_antipodally_symmetric() {
        let f = Preset::Mixed(3).build().unwrap();
        let g = crate::conformal::random_factor(4, 5, 0.5, crate::conformal::Parity::Any).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let u = random_pole(&mut rng);
            for h in [&f, &g] {
                let a = funk(h, u, CircleRule::default()).value;
                let b = funk(h, -u, CircleRule::default()).value;
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn odd_degrees_are_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for l in [1usize, 3, 5, 7] {
            for m in -(l as i64)..=(l as i64) {
                let pole = random_pole(&mut rng);
                let value = great_circle_integral(
                    |v| 1.0 + 0.1 * harmonics::real_harmonic(l, m, v),
                    pole,
                    CircleRule::default(),
                );
                assert!((value - TAU).abs() < 1e-10, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn grid_covers_hemisphere() {
        let g = fibonacci_hemisphere(2000);
        assert_eq!(g.len(), 2000);
        assert!(g.iter().all(|p| p.z() > 0.0));
        // Every point of the upper hemisphere is within ~0.05 rad of the grid.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let mut u = random_pole(&mut rng);
            if u.z() < 0.0 {
                u = -u;
            }
            let nearest = g
                .iter()
                .map(|p| p.angle_to(u))
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 0.05, "{nearest}");
        }
    }

    #[test]
    fn constant_minimum_ties_to_lexicographic_pole() {
        let f = ConformalFactor::constant(1.7).unwrap();
        let m = min_funk_sphere(&f, &SearchConfig::default());
        assert!((m.value - TAU * 1.7).abs() < 1e-12);
        assert!(m.certified);
        let grid = fibonacci_hemisphere(2000);
        let smallest = grid.iter().copied().min_by(|a, b| a.lex_cmp(*b)).unwrap();
        assert_eq!(m.grid_pole, smallest);
        assert_eq!(m.pole, smallest);
    }

    #[test]
    fn p2_minimum_at_poles() {
        let f = Preset::P2(0.3).build().unwrap();
        let m = min_funk_sphere(&f, &SearchConfig::default());
        // Brute-force oracle over a dense pole grid of 2π(1 − 0.1 P₂(u_z)).
        let brute = (0..=100_000)
            .map(|k| k as f64 / 100_000.0)
            .map(|uz| TAU * (1.0 - 0.1 * harmonics::legendre(2, uz)))
            .fold(f64::INFINITY, f64::min);
        assert!((brute - 1.8 * PI).abs() < 1e-12);
        assert!((m.value - 1.8 * PI).abs() < 1e-9 * 1.8 * PI, "{}", m.value);
        assert!(m.pole.z().abs() > 1.0 - 1e-6);
        assert!(m.certified);
        let mb = min_funk_projective(&f.clone().try_into().unwrap(), &SearchConfig::default());
        assert!((mb.value - 0.9 * PI).abs() < 1e-9);
        assert!((mb.value - 2.827433).abs() < 1e-6);
    }

    #[test]
    fn minimum_beats_random_poles() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for seed in 0..20 {
            let f = crate::conformal::random_factor(seed, 6, 0.5, crate::conformal::Parity::Any)
                .unwrap();
            let m = min_funk_sphere(&f, &SearchConfig::default());
            for _ in 0..1000 {
                let v = funk(&f, random_pole(&mut rng), CircleRule::default()).value;
                assert!(m.value <= v + 1e-9, "seed {seed}: {} > {v}", m.value);
            }
        }
    }

    #[test]
    fn projective_minimum_is_homogeneous() {
        let f: ProjectiveFactor = Preset::P4(0.4).build().unwrap().try_into().unwrap();
        let cfg = SearchConfig::default();
        let a = min_funk_projective(&f, &cfg).value;
        let b = min_funk_projective(&f.scaled(3.0).unwrap(), &cfg).value;
        assert!((b - 3.0 * a).abs() < 1e-12 * b);
        let c = min_funk_projective(
            &Preset::Constant(2.0).build().unwrap().try_into().unwrap(),
            &cfg,
        );
        assert!((c.value - 2.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn moment_examples() {
        let rule = sphere_rule(32).unwrap();
        let one = moments_sphere(&ConformalFactor::constant(1.0).unwrap(), &rule).unwrap();
        assert!((one.i1 - 4.0 * PI).abs() < 1e-12);
        assert!((one.i2 - 4.0 * PI).abs() < 1e-12);
        assert!(one.v.abs() < 1e-12 && one.var.abs() < 1e-13);

        // Analytic oracle: ∫z² = 4π/3, ∫z⁴ = 4π/5.
        let a = 0.3;
        let i2 = 4.0 * PI + a * a * (4.0 * PI / 5.0 - 2.0 / 3.0 * 4.0 * PI / 3.0 + 4.0 * PI / 9.0);
        let p2 = moments_sphere(&Preset::P2(a).build().unwrap(), &rule).unwrap();
        assert!((p2.i1 - 4.0 * PI).abs() < 1e-10);
        assert!((p2.i2 - i2).abs() < 1e-10);
        assert!((p2.v - 16.0 * PI * 0.09 / 45.0).abs() < 1e-10);
        assert!((p2.v - 0.100531).abs() < 1e-6);
        assert!((p2.v - 4.0 * PI * p2.var).abs() < 1e-12 * p2.v);

        let proj =
            moments_projective(&Preset::P2(a).build().unwrap().try_into().unwrap(), &rule).unwrap();
        assert!((proj.j2 - i2 / 2.0).abs() < 1e-10);
        assert!((proj.v_bar - 0.5 * p2.v).abs() < 1e-12);
        assert!((proj.v_bar - 0.050265).abs() < 1e-6);
        assert!((proj.var - 0.008).abs() < 1e-6);

        let c = moments_projective(
            &Preset::Constant(1.5).build().unwrap().try_into().unwrap(),
            &rule,
        )
        .unwrap();
        assert!((c.area() - TAU * 2.25).abs() < 1e-12);
        assert!(c.v_bar.abs() < 1e-12);
    }

    #[test]
    fn moments_match_monte_carlo() {
        let f = Preset::P2(0.3).build().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let n = 400_000;
        let (mut s1, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = f.value(random_pole(&mut rng));
            s1 += x;
            s2 += x * x;
        }
        let rule = sphere_rule(16).unwrap();
        let q = moments_sphere(&f, &rule).unwrap();
        let mc_i2 = 4.0 * PI * s2 / n as f64;
        let mc_i1 = 4.0 * PI * s1 / n as f64;
        assert!((mc_i1 - q.i1).abs() < 2e-3);
        assert!((mc_i2 - q.i2).abs() < 4e-3);
    }

    #[test]
    fn variance_positive_except_for_constants() {
        let rule = sphere_rule(16).unwrap();
        for seed in 0..100 {
            let f = crate::conformal::random_factor(seed, 6, 0.3, crate::conformal::Parity::Any)
                .unwrap();
            let m = moments_sphere(&f, &rule).unwrap();
            assert!(m.v > 1e-6, "seed {seed}");
            let even = crate::conformal::random_even_factor(seed, 6, 0.3).unwrap();
            let lift = moments_sphere(&even, &rule).unwrap();
            let pm = moments_projective(&ProjectiveFactor::new(even).unwrap(), &rule).unwrap();
            assert!((pm.v_bar - 0.5 * lift.v).abs() < 1e-12 * lift.v);
        }
    }
}
