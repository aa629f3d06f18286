use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::calibrate::load_calibration;
use super::config::{parse_checks, FactorSource, OutputFormat, RunConfig};
use super::CliError;
use crate::systole::{DEFAULT_MESH_LEVEL, DEFAULT_REACH};

#[derive(Debug, Parser)]
#[command(
    name = "systolab",
    version,
    about = "Systolic inequality checks for conformal metrics on RP^2"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run checks on one factor and write a report.
    Verify(VerifyArgs),
    /// List the named factor presets.
    Presets,
    /// Fit the mesh constant kappa on the constant metric at levels 3-6.
    Calibrate {
        /// Where to store the fitted constant.
        #[arg(long, default_value = "mesh-calibration.json")]
        store: PathBuf,
        #[arg(long, default_value_t = DEFAULT_REACH)]
        reach: usize,
    },
    /// Write a weighted mesh as `v x y z` and `e i j weight` lines.
    Mesh {
        #[command(flatten)]
        factor: FactorArgs,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long, default_value_t = DEFAULT_REACH)]
        reach: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "factor_source")]
pub struct FactorSourceArgs {
    /// Named preset, NAME[:PARAM]; see `systolab presets`.
    #[arg(long)]
    pub preset: Option<String>,
    /// Harmonic spec file.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Seeded random even factor (see --seed, --degree, --amplitude).
    #[arg(long)]
    pub random: bool,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[command(flatten)]
    pub source: FactorSourceArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    #[arg(long, default_value_t = 0.4)]
    pub amplitude: f64,
}

impl FactorArgs {
    pub fn source(&self) -> Result<FactorSource, CliError> {
        let s = &self.source;
        if let Some(name) = &s.preset {
            let preset = name.parse().map_err(CliError::from_factor)?;
            Ok(FactorSource::Preset { preset })
        } else if let Some(path) = &s.spec {
            Ok(FactorSource::Spec { path: path.clone() })
        } else {
            Ok(FactorSource::Random {
                seed: self.seed,
                degree: self.degree,
                amplitude: self.amplitude,
            })
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub factor: FactorArgs,
    /// Gauss–Legendre sphere rule level L (exact to degree 2L − 1).
    #[arg(long, default_value_t = 32)]
    pub quad_level: usize,
    /// Points per great circle.
    #[arg(long, default_value_t = 256)]
    pub circle_n: usize,
    #[arg(long, default_value_t = DEFAULT_MESH_LEVEL)]
    pub mesh_level: usize,
    /// Comma-separated subset of submersion, sphere, projective, pu.
    #[arg(long, default_value = "submersion,sphere,projective,pu")]
    pub checks: String,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Also write <out>.funk.csv and <out>.factor.csv.
    #[arg(long)]
    pub plot_data: bool,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Calibration store written by `systolab calibrate`; supplies kappa.
    #[arg(long)]
    pub mesh_config: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut c = RunConfig::new(self.factor.source()?);
        c.seed = self.factor.seed;
        c.quad_level = self.quad_level;
        c.circle_n = self.circle_n;
        c.mesh_level = self.mesh_level;
        c.checks = parse_checks(&self.checks)?;
        c.out = self.out;
        c.format = self.format;
        c.plot_data = self.plot_data;
        c.threads = self.threads;
        if let Some(path) = &self.mesh_config {
            c.kappa = load_calibration(path)?.kappa;
        }
        c.validate()?;
        Ok(c)
    }
}
