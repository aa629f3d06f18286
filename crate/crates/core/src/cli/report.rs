use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::config::{Check, RunConfig};
use super::CliError;
use crate::conformal::{ConformalFactor, Representation};
use crate::verify::{ChainReport, Classification, PuReport, SubmersionReport};

/// Bumped whenever a field is added, removed or renamed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorInfo {
    pub description: String,
    /// Hex SHA-256 of the canonical coefficient text.
    pub fingerprint: String,
    pub representation: &'static str,
    pub even: bool,
    /// Smallest value seen on the validation rule.
    pub validated_min: f64,
}

impl FactorInfo {
    pub fn new(description: String, f: &ConformalFactor) -> Self {
        FactorInfo {
            description,
            fingerprint: f.fingerprint(),
            representation: match f.representation() {
                Representation::Constant { .. } => "constant",
                Representation::Harmonic(_) => "harmonic",
                Representation::Grid(_) => "grid",
            },
            even: f.is_even(),
            validated_min: f.validated_min(),
        }
    }
}

/// Meaning of each transliterated symbol used as a field name.
pub const SYMBOLS: &[(&str, &str)] = &[
    ("f", "conformal factor, g = f^2 g0"),
    (
        "m",
        "minimum over great circles C of the g-length of C on S^2",
    ),
    (
        "m_bar",
        "minimum over projective lines of their g-length on RP^2, m/2",
    ),
    ("I1", "integral of f over S^2"),
    ("I2", "integral of f^2 over S^2, the area of (S^2, g)"),
    ("J1", "integral of f over RP^2, I1/2"),
    ("J2", "integral of f^2 over RP^2, I2/2"),
    ("V", "I2 - I1^2/(4 pi)"),
    ("V_bar", "J2 - J1^2/(2 pi)"),
    (
        "var",
        "variance of f under the normalized round measure (V/(4 pi) or V_bar/(2 pi))",
    ),
    ("area", "area of (RP^2, g), J2"),
    (
        "L",
        "graph systole: shortest noncontractible loop on the weighted mesh",
    ),
    ("mesh_size", "largest mesh edge angle h"),
    ("kappa", "mesh length-inflation constant"),
    ("eps_mesh", "2(L^2 - (L/(1 + kappa h))^2)/pi"),
    ("lhs", "area - 2 L^2/pi"),
    ("rhs", "2 pi var"),
    ("surrogate_lhs", "area - 2 m_bar^2/pi"),
];

#[derive(Clone, Copy, Debug, Default)]
pub struct SymbolLegend;

impl Serialize for SymbolLegend {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(SYMBOLS.len()))?;
        for (k, v) in SYMBOLS {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReports {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub submersion: Option<SubmersionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere: Option<ChainReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projective: Option<ChainReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pu: Option<PuReport>,
}

impl CheckReports {
    pub fn passed(&self, check: Check) -> Option<bool> {
        match check {
            Check::Submersion => self.submersion.as_ref().map(|r| r.pass),
            Check::Sphere => self.sphere.as_ref().map(|r| r.pass),
            Check::Projective => self.projective.as_ref().map(|r| r.pass),
            Check::Pu => self.pu.as_ref().map(|r| r.pass),
        }
    }
}

/// Everything written by one run. Wall-clock timings are reported on stderr
/// only, so that identical configurations give byte-identical files.
#[derive(Clone, Debug, Serialize)]
pub struct ReportBundle {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub factor: FactorInfo,
    pub symbols: SymbolLegend,
    pub checks: CheckReports,
    pub pass: bool,
}

impl ReportBundle {
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s =
            serde_json::to_string_pretty(self).map_err(|e| CliError::Config(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// One row per check over a fixed column set; inapplicable cells are empty.
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in self.csv_rows() {
            w.serialize(row)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Config(e.to_string()))
    }

    fn csv_rows(&self) -> Vec<CsvRow<'_>> {
        let mut rows = Vec::new();
        let fp = self.factor.fingerprint.as_str();
        if let Some(r) = &self.checks.submersion {
            rows.push(CsvRow {
                check: "submersion",
                fingerprint: fp,
                pass: r.pass,
                orthonormality_residual: Some(r.orthonormality_residual),
                fubini_residual: Some(r.fubini_residual),
                fiber_image_residual: Some(r.fiber_image_residual),
                volume: Some(r.volume),
                ..CsvRow::default()
            });
        }
        for (name, chain) in [
            ("sphere", &self.checks.sphere),
            ("projective", &self.checks.projective),
        ] {
            if let Some(r) = chain {
                rows.push(CsvRow {
                    check: name,
                    fingerprint: fp,
                    pass: r.pass,
                    classification: Some(r.classification),
                    minimum: Some(r.minimum),
                    integral: Some(r.integral),
                    integral_sq: Some(r.integral_sq),
                    chain1: Some(r.chain[0]),
                    chain2: Some(r.chain[1]),
                    chain3: Some(r.chain[2]),
                    slack1: Some(r.slack1),
                    slack2: Some(r.slack2),
                    remainder: Some(r.remainder),
                    remainder_slack: Some(r.remainder_slack),
                    var: Some(r.var),
                    ..CsvRow::default()
                });
            }
        }
        if let Some(r) = &self.checks.pu {
            rows.push(CsvRow {
                check: "pu",
                fingerprint: fp,
                pass: r.pass,
                classification: Some(r.classification),
                minimum: Some(r.m_bar),
                integral_sq: Some(r.area),
                remainder: Some(r.v_bar),
                var: Some(r.var),
                length: Some(r.length),
                level: Some(r.level),
                mesh_size: Some(r.mesh_size),
                eps_mesh: Some(r.eps_mesh),
                lhs: Some(r.lhs),
                rhs: Some(r.rhs),
                surrogate_lhs: Some(r.surrogate_lhs),
                ..CsvRow::default()
            });
        }
        rows
    }
}

/// `minimum` is m (sphere) or m_bar (projective, pu); `integral_sq` is I2,
/// J2 or the area; `remainder` is V or V_bar.
#[derive(Debug, Default, Serialize)]
struct CsvRow<'a> {
    check: &'a str,
    fingerprint: &'a str,
    pass: bool,
    classification: Option<Classification>,
    minimum: Option<f64>,
    integral: Option<f64>,
    integral_sq: Option<f64>,
    chain1: Option<f64>,
    chain2: Option<f64>,
    chain3: Option<f64>,
    slack1: Option<f64>,
    slack2: Option<f64>,
    remainder: Option<f64>,
    remainder_slack: Option<f64>,
    var: Option<f64>,
    #[serde(rename = "L")]
    length: Option<f64>,
    level: Option<usize>,
    mesh_size: Option<f64>,
    eps_mesh: Option<f64>,
    lhs: Option<f64>,
    rhs: Option<f64>,
    surrogate_lhs: Option<f64>,
    orthonormality_residual: Option<f64>,
    fubini_residual: Option<f64>,
    fiber_image_residual: Option<f64>,
    volume: Option<f64>,
}
