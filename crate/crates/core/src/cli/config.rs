use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use super::CliError;
use crate::conformal::{
    random_even_factor, read_spec_file, ConformalFactor, FactorError, Parity, Preset,
    DEFAULT_MAX_DEGREE,
};
use crate::systole::MAX_LEVEL;
use crate::tolerances::DEFAULT_KAPPA;

/// Where the conformal factor comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorSource {
    Preset {
        preset: Preset,
    },
    /// Harmonic spec file.
    Spec {
        path: PathBuf,
    },
    /// Even random factor, see [`random_even_factor`].
    Random {
        seed: u64,
        degree: usize,
        amplitude: f64,
    },
}

impl FactorSource {
    pub fn describe(&self) -> String {
        match self {
            FactorSource::Preset { preset } => preset.to_string(),
            FactorSource::Spec { path } => format!("spec:{}", path.display()),
            FactorSource::Random {
                seed,
                degree,
                amplitude,
            } => format!("random:seed={seed},degree={degree},amplitude={amplitude}"),
        }
    }

    /// Spec files are validated without a parity requirement; presets and
    /// random factors are even by construction.
    pub fn build(&self) -> Result<ConformalFactor, CliError> {
        match self {
            FactorSource::Preset { preset } => preset.build().map_err(CliError::from_factor),
            FactorSource::Spec { path } => {
                let spec =
                    read_spec_file(path, DEFAULT_MAX_DEGREE).map_err(CliError::from_factor)?;
                ConformalFactor::harmonic(spec, Parity::Any).map_err(CliError::from_factor)
            }
            FactorSource::Random {
                seed,
                degree,
                amplitude,
            } => random_even_factor(*seed, *degree, *amplitude).map_err(CliError::from_factor),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Submersion,
    Sphere,
    Projective,
    Pu,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Submersion,
        Check::Sphere,
        Check::Projective,
        Check::Pu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Submersion => "submersion",
            Check::Sphere => "sphere",
            Check::Projective => "projective",
            Check::Pu => "pu",
        }
    }

    pub fn needs_projective(self) -> bool {
        matches!(self, Check::Projective | Check::Pu)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown check `{s}` (expected submersion, sphere, projective or pu)"
                ))
            })
    }
}

/// Parses a comma-separated check list into canonical order without duplicates.
pub fn parse_checks(list: &str) -> Result<Vec<Check>, CliError> {
    let mut checks = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Check>, _>>()?;
    checks.sort();
    checks.dedup();
    if checks.is_empty() {
        return Err(CliError::Config("no checks requested".into()));
    }
    Ok(checks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Everything a `verify` run depends on.
///
/// The serialized echo leaves out the output path and the thread count; the
/// report does not depend on either.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub source: FactorSource,
    pub quad_level: usize,
    pub circle_n: usize,
    pub mesh_level: usize,
    pub checks: Vec<Check>,
    pub format: OutputFormat,
    pub plot_data: bool,
    pub kappa: f64,
    /// Seed for the sampled frames of the submersion check.
    pub seed: u64,
    pub frames: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[serde(skip)]
    pub threads: Option<usize>,
}

pub const QUAD_LEVELS: std::ops::RangeInclusive<usize> = 2..=256;
pub const CIRCLE_SIZES: std::ops::RangeInclusive<usize> = 8..=1 << 16;

impl RunConfig {
    pub fn new(source: FactorSource) -> Self {
        let seed = match &source {
            FactorSource::Random { seed, .. } => *seed,
            _ => 0,
        };
        RunConfig {
            source,
            quad_level: 32,
            circle_n: 256,
            mesh_level: crate::systole::DEFAULT_MESH_LEVEL,
            checks: Check::ALL.to_vec(),
            format: OutputFormat::Json,
            plot_data: false,
            kappa: DEFAULT_KAPPA,
            seed,
            frames: 1000,
            out: None,
            threads: None,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if !QUAD_LEVELS.contains(&self.quad_level) {
            return bad(format!(
                "--quad-level must lie in {QUAD_LEVELS:?}, got {}",
                self.quad_level
            ));
        }
        if !CIRCLE_SIZES.contains(&self.circle_n) {
            return bad(format!(
                "--circle-n must lie in {CIRCLE_SIZES:?}, got {}",
                self.circle_n
            ));
        }
        if self.mesh_level > MAX_LEVEL {
            return bad(format!(
                "--mesh-level must be at most {MAX_LEVEL}, got {}",
                self.mesh_level
            ));
        }
        if self.checks.is_empty() {
            return bad("no checks requested".into());
        }
        if !(self.kappa.is_finite() && self.kappa >= 0.0) {
            return bad(format!(
                "mesh constant kappa must be finite and nonnegative, got {}",
                self.kappa
            ));
        }
        if self.threads == Some(0) {
            return bad("--threads must be at least 1".into());
        }
        match &self.source {
            FactorSource::Spec { path } if !path.is_file() => {
                return bad(format!("spec file {} does not exist", path.display()));
            }
            FactorSource::Random {
                degree, amplitude, ..
            } => {
                if *degree > DEFAULT_MAX_DEGREE {
                    return bad(format!(
                        "--degree must be at most {DEFAULT_MAX_DEGREE}, got {degree}"
                    ));
                }
                if !(*amplitude > 0.0 && *amplitude < 1.0) {
                    return bad(format!("--amplitude must lie in (0, 1), got {amplitude}"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn needs_projective(&self) -> bool {
        self.checks.iter().any(|c| c.needs_projective())
    }

    /// Stem for sidecar plot files: the output path without extension, or
    /// `systolab` when writing to stdout.
    pub fn plot_stem(&self) -> PathBuf {
        match &self.out {
            Some(p) => p.with_extension(""),
            None => Path::new("systolab").to_path_buf(),
        }
    }
}

impl CliError {
    /// Input errors (files, syntax, ranges) map to exit 2; a factor that
    /// parses but is not positive or not even maps to exit 3.
    pub fn from_factor(e: FactorError) -> CliError {
        match e {
            FactorError::NonPositive { .. } | FactorError::NotEven { .. } => CliError::Factor(e),
            other => CliError::Config(other.to_string()),
        }
    }
}
