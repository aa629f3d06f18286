use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::harmonics::{evaluate_series, harmonic_index, sup_bound};
use super::FactorError;
use crate::geometry::{sphere_rule, SphereRule, UnitVec3};

/// Degree cap for harmonic factors unless a caller asks for more.
pub const DEFAULT_MAX_DEGREE: usize = 16;
/// Level of the rule used by [`ConformalFactor::from_representation`].
pub const DEFAULT_VALIDATION_LEVEL: usize = 32;
/// Largest |f(v) − f(−v)| accepted for a factor that must descend to RP².
pub const EVENNESS_TOLERANCE: f64 = 1e-9;

pub(crate) fn default_validation_rule() -> &'static SphereRule {
    static RULE: OnceLock<SphereRule> = OnceLock::new();
    RULE.get_or_init(|| sphere_rule(DEFAULT_VALIDATION_LEVEL).expect("level is positive"))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTerm {
    pub l: usize,
    pub m: i64,
    pub coeff: f64,
}

/// f(v) = offset + Σ coeff · Y_lm(v), in the real basis of [`super::harmonics`].
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicSpec {
    offset: f64,
    terms: Vec<HarmonicTerm>,
    dense: Vec<f64>,
    lmax: usize,
}

impl HarmonicSpec {
    pub fn new(offset: f64, terms: Vec<HarmonicTerm>) -> Result<Self, FactorError> {
        Self::with_max_degree(offset, terms, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(
        offset: f64,
        terms: Vec<HarmonicTerm>,
        max_degree: usize,
    ) -> Result<Self, FactorError> {
        if !offset.is_finite() {
            return Err(FactorError::NonFinite { what: "offset" });
        }
        let mut lmax = 0;
        for t in &terms {
            if t.l > max_degree {
                return Err(FactorError::DegreeTooHigh {
                    l: t.l,
                    max: max_degree,
                });
            }
            if t.m.unsigned_abs() as usize > t.l {
                return Err(FactorError::BadOrder { l: t.l, m: t.m });
            }
            if !t.coeff.is_finite() {
                return Err(FactorError::NonFinite {
                    what: "coefficient",
                });
            }
            lmax = lmax.max(t.l);
        }
        let mut dense = vec![0.0; (lmax + 1) * (lmax + 1)];
        for t in &terms {
            // Repeated (l, m) entries accumulate.
            dense[harmonic_index(t.l, t.m)] += t.coeff;
        }
        Ok(HarmonicSpec {
            offset,
            terms,
            dense,
            lmax,
        })
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn terms(&self) -> &[HarmonicTerm] {
        &self.terms
    }

    pub fn max_degree(&self) -> usize {
        self.lmax
    }

    pub fn evaluate(&self, v: UnitVec3) -> f64 {
        if self.terms.is_empty() {
            return self.offset;
        }
        self.offset + evaluate_series(&self.dense, self.lmax, v)
    }

    /// Σ |coeff| · sup|Y_l|, an upper bound on the sup-norm of the non-constant part.
    pub fn sup_norm_estimate(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeff.abs() * sup_bound(t.l))
            .sum()
    }

    /// True when every term has even degree, so the series is antipodally even.
    pub fn is_even_by_construction(&self) -> bool {
        self.terms.iter().all(|t| t.l % 2 == 0)
    }
}

/// Bilinear interpolation order in (polar cosine, azimuth).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpolation {
    #[default]
    Bilinear,
}

/// Samples of f at the nodes of a sphere rule, interpolated bilinearly in
/// (polar cosine, azimuth) with periodic azimuth wrap. Beyond the outermost
/// Gauss rows the interpolant runs linearly to a pole value taken as the
/// mean of the adjacent row.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFactor {
    level: usize,
    interpolation: Interpolation,
    values: Vec<f64>,
    polar: Vec<f64>,
    south: f64,
    north: f64,
}

impl GridFactor {
    /// `values[i]` is f at node `i` of `sphere_rule(level)`.
    pub fn new(level: usize, values: Vec<f64>) -> Result<Self, FactorError> {
        let rule = sphere_rule(level).map_err(|_| FactorError::BadGrid {
            reason: "level must be positive".into(),
        })?;
        if values.len() != rule.len() {
            return Err(FactorError::BadGrid {
                reason: format!("expected {} samples, got {}", rule.len(), values.len()),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(FactorError::NonFinite {
                what: "grid sample",
            });
        }
        let az = rule.azimuth_count();
        let row_mean =
            |row: usize| values[row * az..(row + 1) * az].iter().sum::<f64>() / az as f64;
        let south = row_mean(0);
        let north = row_mean(level - 1);
        Ok(GridFactor {
            level,
            interpolation: Interpolation::Bilinear,
            polar: rule.polar_nodes().to_vec(),
            values,
            south,
            north,
        })
    }

    /// Samples `h` at the nodes of `sphere_rule(level)`.
    pub fn sample<F: Fn(UnitVec3) -> f64>(level: usize, h: F) -> Result<Self, FactorError> {
        let rule = sphere_rule(level).map_err(|_| FactorError::BadGrid {
            reason: "level must be positive".into(),
        })?;
        let values = rule.nodes().iter().map(|&v| h(v)).collect();
        Self::new(level, values)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    fn azimuths(&self) -> usize {
        2 * self.level
    }

    fn row_value(&self, row: usize, phi: f64) -> f64 {
        let az = self.azimuths();
        let dphi = std::f64::consts::TAU / az as f64;
        let s = phi / dphi;
        let j = (s.floor() as usize).min(az - 1);
        let t = s - j as f64;
        let a = self.values[row * az + j];
        let b = self.values[row * az + (j + 1) % az];
        a + t * (b - a)
    }

    pub fn evaluate(&self, v: UnitVec3) -> f64 {
        let z = v.z().clamp(-1.0, 1.0);
        let mut phi = v.y().atan2(v.x());
        if phi < 0.0 {
            phi += std::f64::consts::TAU;
        }
        let rows = self.polar.len();
        let first = self.polar[0];
        let last = self.polar[rows - 1];
        if z <= first {
            let t = (z + 1.0) / (first + 1.0);
            return self.south + t * (self.row_value(0, phi) - self.south);
        }
        if z >= last {
            let t = (1.0 - z) / (1.0 - last);
            return self.north + t * (self.row_value(rows - 1, phi) - self.north);
        }
        let upper = self.polar.partition_point(|&p| p <= z).min(rows - 1);
        let lower = upper - 1;
        let t = (z - self.polar[lower]) / (self.polar[upper] - self.polar[lower]);
        let a = self.row_value(lower, phi);
        let b = self.row_value(upper, phi);
        a + t * (b - a)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    Constant { value: f64 },
    Harmonic(HarmonicSpec),
    Grid(GridFactor),
}

impl Representation {
    pub fn evaluate(&self, v: UnitVec3) -> f64 {
        match self {
            Representation::Constant { value } => *value,
            Representation::Harmonic(spec) => spec.evaluate(v),
            Representation::Grid(grid) => grid.evaluate(v),
        }
    }

    /// Canonical text form. Constants and harmonic series use the harmonic
    /// spec file format; grids list their level and samples.
    pub fn canonical_text(&self) -> String {
        match self {
            Representation::Constant { value } => super::spec_file::format_terms(*value, &[]),
            Representation::Harmonic(spec) => super::spec_file::format_spec(spec),
            Representation::Grid(grid) => {
                let mut s = format!("grid {} bilinear\n", grid.level);
                for v in &grid.values {
                    s.push_str(&format!("{v:e}\n"));
                }
                s
            }
        }
    }
}

/// Which symmetry a factor must have.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    /// Any positive factor on S².
    Any,
    /// f(−v) = f(v), so f descends to RP².
    Even,
}

/// Outcome of a validation scan over the nodes of a sphere rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Validation {
    pub min: f64,
    pub argmin: UnitVec3,
    /// max |f(v) − f(−v)| over antipodal node pairs.
    pub evenness_residual: f64,
}

/// Scans `f` over the nodes of `rule`.
pub fn validate<F: Fn(UnitVec3) -> f64>(f: F, rule: &SphereRule) -> Validation {
    let values: Vec<f64> = rule.nodes().iter().map(|&v| f(v)).collect();
    let mut min = f64::INFINITY;
    let mut argmin = rule.nodes()[0];
    let mut residual = 0.0_f64;
    for (i, &value) in values.iter().enumerate() {
        // NaN counts as the worst possible value.
        if value < min || value.is_nan() && !min.is_nan() {
            min = value;
            argmin = rule.nodes()[i];
        }
        let j = rule.antipodal_index(i);
        let d = (value - values[j]).abs();
        if d > residual || d.is_nan() {
            residual = d;
        }
    }
    Validation {
        min,
        argmin,
        evenness_residual: residual,
    }
}

/// A positive conformal factor f on S², with g = f² g₀.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFactor {
    representation: Representation,
    scale: f64,
    even: bool,
    validated_min: f64,
    evenness_residual: f64,
}

impl ConformalFactor {
    /// Validates `representation` on `rule`; rejects non-positive values and,
    /// for [`Parity::Even`], antipodal asymmetry above [`EVENNESS_TOLERANCE`].
    pub fn new(
        representation: Representation,
        rule: &SphereRule,
        parity: Parity,
    ) -> Result<Self, FactorError> {
        let scan = validate(|v| representation.evaluate(v), rule);
        if !(scan.min > 0.0) {
            return Err(FactorError::NonPositive {
                min: scan.min,
                at: scan.argmin.into(),
            });
        }
        let even = scan.evenness_residual < EVENNESS_TOLERANCE;
        if parity == Parity::Even && !even {
            return Err(FactorError::NotEven {
                residual: scan.evenness_residual,
            });
        }
        Ok(ConformalFactor {
            representation,
            scale: 1.0,
            even,
            validated_min: scan.min,
            evenness_residual: scan.evenness_residual,
        })
    }

    /// Validates on the default level-32 rule.
    pub fn from_representation(
        representation: Representation,
        parity: Parity,
    ) -> Result<Self, FactorError> {
        Self::new(representation, default_validation_rule(), parity)
    }

    pub fn constant(c: f64) -> Result<Self, FactorError> {
        Self::from_representation(Representation::Constant { value: c }, Parity::Any)
    }

    pub fn harmonic(spec: HarmonicSpec, parity: Parity) -> Result<Self, FactorError> {
        Self::from_representation(Representation::Harmonic(spec), parity)
    }

    /// The factor c·f. Scaling is carried outside the representation so that
    /// evaluate(c·f, v) = c · evaluate(f, v) holds bit for bit.
    pub fn scaled(&self, c: f64) -> Result<Self, FactorError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(FactorError::BadScale { scale: c });
        }
        Ok(ConformalFactor {
            representation: self.representation.clone(),
            scale: self.scale * c,
            even: self.even,
            validated_min: self.validated_min * c,
            evenness_residual: self.evenness_residual * c,
        })
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn validated_min(&self) -> f64 {
        self.validated_min
    }

    pub fn evenness_residual(&self) -> f64 {
        self.evenness_residual
    }

    pub fn is_constant(&self) -> bool {
        match &self.representation {
            Representation::Constant { .. } => true,
            Representation::Harmonic(spec) => spec.terms().iter().all(|t| t.coeff == 0.0),
            Representation::Grid(grid) => grid.values().windows(2).all(|w| w[0] == w[1]),
        }
    }

    /// f(v) without the positivity check.
    #[inline]
    pub fn value(&self, v: UnitVec3) -> f64 {
        self.scale * self.representation.evaluate(v)
    }

    /// f(v), reporting a non-positive value as an error.
    pub fn evaluate(&self, v: UnitVec3) -> Result<f64, FactorError> {
        let value = self.value(v);
        if value > 0.0 {
            Ok(value)
        } else {
            Err(FactorError::NonPositive {
                min: value,
                at: v.into(),
            })
        }
    }

    /// Hex SHA-256 of the canonical text, prefixed by the scale when it is not 1.
    pub fn fingerprint(&self) -> String {
        let mut text = self.representation.canonical_text();
        if self.scale != 1.0 {
            text = format!("scale {:e}\n{text}", self.scale);
        }
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

/// An even conformal factor, read as a function on RP² through the double
/// covering S² → RP². Integrals over RP² are half the integrals of the lift.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveFactor(ConformalFactor);

impl ProjectiveFactor {
    pub fn new(f: ConformalFactor) -> Result<Self, FactorError> {
        if !f.is_even() {
            return Err(FactorError::NotEven {
                residual: f.evenness_residual(),
            });
        }
        Ok(ProjectiveFactor(f))
    }

    pub fn lift(&self) -> &ConformalFactor {
        &self.0
    }

    pub fn into_lift(self) -> ConformalFactor {
        self.0
    }

    pub fn scaled(&self, c: f64) -> Result<Self, FactorError> {
        Ok(ProjectiveFactor(self.0.scaled(c)?))
    }

    #[inline]
    pub fn value(&self, v: UnitVec3) -> f64 {
        self.0.value(v)
    }
}

impl TryFrom<ConformalFactor> for ProjectiveFactor {
    type Error = FactorError;
    fn try_from(f: ConformalFactor) -> Result<Self, Self::Error> {
        ProjectiveFactor::new(f)
    }
}
