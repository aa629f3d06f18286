//! Numerical checks of the submersion structure of M, the inequality chains on
//! S² and RP², and the systolic inequality with variance remainder.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conformal::{ConformalFactor, FactorError, ProjectiveFactor};
use crate::geometry::{
    frame_basis, gm_inner, integrate_frames, integrate_sphere, sphere_rule, CircleRule, Frame,
    FrameRule, GeometryError, GreatCircle, SphereRule, UnitVec3, Vec3,
};
use crate::systole::{build_mesh, compute_systole, weight_edges_with, ArcOptions, SystoleError};
use crate::tolerances;
use crate::transforms::{
    min_funk_projective, min_funk_sphere, moments_projective, moments_sphere, FunkMinimum,
    SearchConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Systole(#[from] SystoleError),
}

/// Quadrature and search settings shared by the chain and theorem checks.
#[derive(Clone, Debug)]
pub struct VerifyContext {
    pub rule: SphereRule,
    pub search: SearchConfig,
    pub kappa: f64,
    pub arcs: ArcOptions,
}

impl VerifyContext {
    pub fn new(quad_level: usize, circle_n: usize) -> Result<Self, VerifyError> {
        Ok(VerifyContext {
            rule: sphere_rule(quad_level)?,
            search: SearchConfig::with_circle(CircleRule::new(circle_n)?),
            kappa: tolerances::DEFAULT_KAPPA,
            arcs: ArcOptions::default(),
        })
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }
}

impl Default for VerifyContext {
    fn default() -> Self {
        VerifyContext::new(32, 256).expect("default rules are valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Equality,
    Strict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubmersionReport {
    pub frames_sampled: usize,
    pub seed: u64,
    /// Max entry of |Gram − I| over {dp e2, dp e3}, {dq e1, dq e3} and the g_M
    /// basis, together with |dp e1| and |dq e2|.
    pub orthonormality_residual: f64,
    /// max over factors and over p, q of |∫_M f∘π − 2π∫f| / |2π∫f|.
    pub fubini_residual: f64,
    /// max |p(v', w) · w| for frames (v', w) on sampled fibers of q.
    pub fiber_image_residual: f64,
    pub volume: f64,
    pub volume_residual: f64,
    pub factors_checked: usize,
    pub pass: bool,
}

fn random_unit(rng: &mut impl Rng) -> UnitVec3 {
    UnitVec3::from_polar(rng.gen_range(-1.0..=1.0), rng.gen_range(0.0..TAU))
}

/// `count` frames drawn from the seed: v uniform, w uniform on v's great circle.
pub fn random_frames(seed: u64, count: usize) -> Vec<Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = random_unit(&mut rng);
            Frame::on_fiber(v, rng.gen_range(0.0..TAU))
        })
        .collect()
}

fn gram_residual(vectors: &[Vec3]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.dot(*b) - target).abs());
        }
    }
    worst
}

fn frame_residuals(frame: &Frame, fiber_points: usize) -> Result<(f64, f64), GeometryError> {
    let b = frame_basis(frame);
    let mut ortho = gram_residual(&[frame.dp(b.e2), frame.dp(b.e3)])
        .max(gram_residual(&[frame.dq(b.e1), frame.dq(b.e3)]))
        .max(frame.dp(b.e1).norm())
        .max(frame.dq(b.e2).norm());
    let basis = b.as_array();
    for (i, &s) in basis.iter().enumerate() {
        for (j, &t) in basis.iter().enumerate() {
            let target = if i == j { 1.0 } else { 0.0 };
            ortho = ortho.max((gm_inner(frame, s, t)? - target).abs());
        }
    }
    let w = frame.w();
    let circle = GreatCircle::new(w);
    let mut fiber: f64 = 0.0;
    for k in 0..fiber_points {
        let point = Frame::new(
            circle.point(TAU * k as f64 / fiber_points as f64).vec(),
            w.vec(),
        )?;
        fiber = fiber.max(point.p().dot(w).abs());
    }
    Ok((ortho, fiber))
}

/// Pointwise checks at `frames` seeded random frames plus Fubini integrals of
/// every factor through both projections on `rule`.
pub fn check_submersion(
    rule: &FrameRule,
    factors: &[ConformalFactor],
    frames: usize,
    seed: u64,
) -> Result<SubmersionReport, VerifyError> {
    let mut ortho: f64 = 0.0;
    let mut fiber: f64 = 0.0;
    for frame in random_frames(seed, frames) {
        let (o, f) = frame_residuals(&frame, 16)?;
        ortho = ortho.max(o);
        fiber = fiber.max(f);
    }

    let mut fubini: f64 = 0.0;
    for f in factors {
        let reference = TAU * integrate_sphere(&rule.base, |v| f.value(v))?;
        let via_p = integrate_frames(rule, |fr| f.value(fr.p()))?;
        let via_q = integrate_frames(rule, |fr| f.value(fr.q()))?;
        for total in [via_p, via_q] {
            fubini = fubini.max((total - reference).abs() / reference.abs());
        }
    }

    let volume = integrate_frames(rule, |_| 1.0)?;
    let target = 8.0 * PI * PI;
    let volume_residual = (volume - target).abs() / target;
    let pass = ortho < tolerances::ORTHONORMALITY
        && fiber < tolerances::FIBER_IMAGE
        && fubini < tolerances::FUBINI
        && volume_residual < tolerances::VOLUME;
    Ok(SubmersionReport {
        frames_sampled: frames,
        seed,
        orthonormality_residual: ortho,
        fubini_residual: fubini,
        fiber_image_residual: fiber,
        volume,
        volume_residual,
        factors_checked: factors.len(),
        pass,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Sphere,
    Projective,
}

/// The chain  c·min² ≤ (∫f)²/|X| ≤ ∫f²  on X = S² (c = 1/π) or RP² (c = 2/π).
///
/// Serializes with the symbol names of its space: `m`, `I1`, `I2`, `V` on S²
/// and `m_bar`, `J1`, `J2`, `V_bar` on RP².
#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub space: Space,
    /// m on S², m̄ on RP².
    pub minimum: f64,
    pub minimum_certified: bool,
    /// Grid value minus refined value of the transform search.
    pub minimum_gap: f64,
    /// ∫f (I1 or J1).
    pub integral: f64,
    /// ∫f² (I2 or J2).
    pub integral_sq: f64,
    /// [m²/π or 2m̄²/π, normalized square of the mean, mean of the square].
    pub chain: [f64; 3],
    pub slack1: f64,
    pub slack2: f64,
    /// V on S², V̄ on RP².
    pub remainder: f64,
    /// (∫f² − chain[0]) − remainder.
    pub remainder_slack: f64,
    pub var: f64,
    pub classification: Classification,
    pub threshold: f64,
    pub pass: bool,
}

impl Serialize for ChainReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let sphere = self.space == Space::Sphere;
        let name = |a: &'static str, b: &'static str| if sphere { a } else { b };
        let mut st = serializer.serialize_struct("ChainReport", 15)?;
        st.serialize_field("space", &self.space)?;
        st.serialize_field(name("m", "m_bar"), &self.minimum)?;
        st.serialize_field(
            name("m_certified", "m_bar_certified"),
            &self.minimum_certified,
        )?;
        st.serialize_field("search_gap", &self.minimum_gap)?;
        st.serialize_field(name("I1", "J1"), &self.integral)?;
        st.serialize_field(name("I2", "J2"), &self.integral_sq)?;
        st.serialize_field("chain", &self.chain)?;
        st.serialize_field("slack1", &self.slack1)?;
        st.serialize_field("slack2", &self.slack2)?;
        st.serialize_field(name("V", "V_bar"), &self.remainder)?;
        st.serialize_field("remainder_slack", &self.remainder_slack)?;
        st.serialize_field("var", &self.var)?;
        st.serialize_field("classification", &self.classification)?;
        st.serialize_field("threshold", &self.threshold)?;
        st.serialize_field("pass", &self.pass)?;
        st.end()
    }
}

#[allow(clippy::too_many_arguments)]
fn chain_report(
    space: Space,
    min: &FunkMinimum,
    first: f64,
    integral: f64,
    middle: f64,
    integral_sq: f64,
    remainder: f64,
    var: f64,
) -> ChainReport {
    let slack1 = middle - first;
    let slack2 = integral_sq - middle;
    let threshold = tolerances::EQUALITY * integral_sq;
    let classification = if slack1.abs() < threshold && slack2.abs() < threshold {
        Classification::Equality
    } else {
        Classification::Strict
    };
    let remainder_slack = (integral_sq - first) - remainder;
    let pass = [slack1, slack2, remainder_slack]
        .iter()
        .all(|&s| s >= -tolerances::SLACK);
    ChainReport {
        space,
        minimum: min.value,
        minimum_certified: min.certified,
        minimum_gap: min.grid_value - min.value,
        integral,
        integral_sq,
        chain: [first, middle, integral_sq],
        slack1,
        slack2,
        remainder,
        remainder_slack,
        var,
        classification,
        threshold,
        pass,
    }
}

pub fn verify_sphere_chain(
    f: &ConformalFactor,
    ctx: &VerifyContext,
) -> Result<ChainReport, VerifyError> {
    let min = min_funk_sphere(f, &ctx.search);
    let mo = moments_sphere(f, &ctx.rule)?;
    Ok(chain_report(
        Space::Sphere,
        &min,
        min.value * min.value / PI,
        mo.i1,
        mo.i1 * mo.i1 / (4.0 * PI),
        mo.i2,
        mo.v,
        mo.var,
    ))
}

pub fn verify_projective_chain(
    f: &ProjectiveFactor,
    ctx: &VerifyContext,
) -> Result<ChainReport, VerifyError> {
    let min = min_funk_projective(f, &ctx.search);
    let mo = moments_projective(f, &ctx.rule)?;
    Ok(chain_report(
        Space::Projective,
        &min,
        2.0 * min.value * min.value / PI,
        mo.j1,
        mo.j1 * mo.j1 / TAU,
        mo.j2,
        mo.v_bar,
        mo.var,
    ))
}

/// Both forms of area − 2L²/π ≥ 2π Var(f) on RP².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PuReport {
    pub area: f64,
    /// Graph systole on the mesh.
    #[serde(rename = "L")]
    pub length: f64,
    pub level: usize,
    /// Largest mesh edge angle h.
    pub mesh_size: f64,
    pub kappa: f64,
    /// L − L/(1 + κh): how far the graph length may exceed the true systole.
    pub length_envelope: f64,
    /// 2(L² − (L/(1 + κh))²)/π, the same envelope on the scale of 2L²/π.
    pub eps_mesh: f64,
    pub base_vertex: usize,
    pub path_vertices: usize,
    pub m_bar: f64,
    pub m_bar_certified: bool,
    pub var: f64,
    #[serde(rename = "V_bar")]
    pub v_bar: f64,
    /// area − 2L²/π
    pub lhs: f64,
    /// 2π Var(f)
    pub rhs: f64,
    /// area − 2m̄²/π
    pub surrogate_lhs: f64,
    pub mesh_slack: f64,
    pub surrogate_slack: f64,
    pub mesh_pass: bool,
    pub surrogate_pass: bool,
    /// L ≤ m̄ + length envelope.
    pub systole_bound_pass: bool,
    pub classification: Classification,
    pub threshold: f64,
    pub pass: bool,
}

pub fn verify_pu(
    f: &ProjectiveFactor,
    level: usize,
    ctx: &VerifyContext,
) -> Result<PuReport, VerifyError> {
    let mo = moments_projective(f, &ctx.rule)?;
    let min = min_funk_projective(f, &ctx.search);
    let wm = weight_edges_with(build_mesh(level)?, f, ctx.arcs)?;
    let sys = compute_systole(&wm)?;

    let area = mo.area();
    let l = sys.length;
    let h = sys.mesh_size;
    let shrunk = l / (1.0 + ctx.kappa * h);
    let length_envelope = l - shrunk;
    let eps_mesh = 2.0 * (l * l - shrunk * shrunk) / PI;
    let lhs = area - 2.0 * l * l / PI;
    let rhs = TAU * mo.var;
    let surrogate_lhs = area - 2.0 * min.value * min.value / PI;
    let mesh_slack = lhs - rhs;
    let surrogate_slack = surrogate_lhs - rhs;
    let mesh_pass = mesh_slack >= -eps_mesh - tolerances::SLACK;
    let surrogate_pass = surrogate_slack >= -tolerances::SLACK;
    let systole_bound_pass = l <= min.value + length_envelope;
    let threshold = tolerances::EQUALITY * area;
    let classification = if surrogate_lhs.abs() < threshold && rhs.abs() < threshold {
        Classification::Equality
    } else {
        Classification::Strict
    };
    Ok(PuReport {
        area,
        length: l,
        level,
        mesh_size: h,
        kappa: ctx.kappa,
        length_envelope,
        eps_mesh,
        base_vertex: sys.base,
        path_vertices: sys.path.len(),
        m_bar: min.value,
        m_bar_certified: min.certified,
        var: mo.var,
        v_bar: mo.v_bar,
        lhs,
        rhs,
        surrogate_lhs,
        mesh_slack,
        surrogate_slack,
        mesh_pass,
        surrogate_pass,
        systole_bound_pass,
        classification,
        threshold,
        pass: mesh_pass && surrogate_pass && systole_bound_pass,
    })
}
