//! Command-line front end: run configuration, the `verify` run and its report
//! bundle, the preset table, mesh calibration and mesh export.

mod args;
mod calibrate;
mod config;
mod plot;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

use crate::conformal::{FactorError, ProjectiveFactor, PRESETS};
use crate::geometry::{sphere_rule, CircleRule, FrameRule};
use crate::systole::{build_mesh, weight_edges_with, ArcOptions};
use crate::verify::{
    check_submersion, verify_projective_chain, verify_pu, verify_sphere_chain, VerifyContext,
    VerifyError,
};

pub use args::{Cli, Command, FactorArgs, FactorSourceArgs, VerifyArgs};
pub use calibrate::{
    calibrate_mesh, fit, load_calibration, measure, save_calibration, strictly_decreasing,
    Calibration, CalibrationError, CalibrationPoint, CALIBRATION_LEVELS, DEGENERATE_KAPPA,
    FIT_TOLERANCE,
};
pub use config::{parse_checks, Check, FactorSource, OutputFormat, RunConfig};
pub use plot::{factor_samples, funk_samples, write_plot_data, FactorSample, FunkSample};
pub use report::{
    CheckReports, FactorInfo, ReportBundle, SymbolLegend, ToolInfo, SCHEMA_VERSION, SYMBOLS,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_FACTOR: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("factor rejected: {0}")]
    Factor(FactorError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Calibration(#[from] CalibrationError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Factor(_) => EXIT_FACTOR,
            CliError::Verify(VerifyError::Factor(e)) => {
                CliError::from_factor(e.clone()).exit_code()
            }
            CliError::Calibration(_) => EXIT_CHECK_FAILED,
            _ => EXIT_CONFIG,
        }
    }
}

/// Result of [`run`]: the bundle as written, its exit code and stage timings.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub bundle: ReportBundle,
    /// (stage, seconds); never part of the bundle.
    pub timings: Vec<(String, f64)>,
    pub plot_files: Vec<PathBuf>,
}

/// Runs the configured checks without writing anything.
pub fn evaluate(config: &RunConfig) -> Result<(ReportBundle, Vec<(String, f64)>), CliError> {
    config.validate()?;
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(|| evaluate_inner(config)),
        None => evaluate_inner(config),
    }
}

fn evaluate_inner(config: &RunConfig) -> Result<(ReportBundle, Vec<(String, f64)>), CliError> {
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut Vec<(String, f64)>| {
        timings.push((name.to_string(), clock.elapsed().as_secs_f64()));
        clock = Instant::now();
    };

    let f = config.source.build()?;
    let projective = if config.needs_projective() {
        Some(ProjectiveFactor::new(f.clone()).map_err(CliError::from_factor)?)
    } else {
        None
    };
    let ctx = VerifyContext::new(config.quad_level, config.circle_n)?.with_kappa(config.kappa);
    lap("factor", &mut timings);

    let mut checks = CheckReports::default();
    for &check in &config.checks {
        match check {
            Check::Submersion => {
                let rule = FrameRule::new(
                    sphere_rule(config.quad_level).map_err(VerifyError::from)?,
                    CircleRule::new(config.circle_n).map_err(VerifyError::from)?,
                );
                checks.submersion = Some(check_submersion(
                    &rule,
                    std::slice::from_ref(&f),
                    config.frames,
                    config.seed,
                )?);
            }
            Check::Sphere => checks.sphere = Some(verify_sphere_chain(&f, &ctx)?),
            Check::Projective => {
                checks.projective = Some(verify_projective_chain(
                    projective.as_ref().expect("built above"),
                    &ctx,
                )?)
            }
            Check::Pu => {
                checks.pu = Some(verify_pu(
                    projective.as_ref().expect("built above"),
                    config.mesh_level,
                    &ctx,
                )?)
            }
        }
        lap(check.name(), &mut timings);
    }
    let pass = config
        .checks
        .iter()
        .all(|&c| checks.passed(c) == Some(true));
    let bundle = ReportBundle {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo::current(),
        config: config.clone(),
        factor: FactorInfo::new(config.source.describe(), &f),
        symbols: SymbolLegend,
        checks,
        pass,
    };
    Ok((bundle, timings))
}

/// Evaluates, writes the report (stdout when `out` is unset) and plot data.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let (bundle, timings) = evaluate(config)?;
    let text = match config.format {
        OutputFormat::Json => bundle.to_json()?,
        OutputFormat::Csv => bundle.to_csv()?,
    };
    match &config.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })?;
        }
    }
    let plot_files = if config.plot_data {
        let f = config.source.build()?;
        let circle = CircleRule::new(config.circle_n).map_err(VerifyError::from)?;
        write_plot_data(&config.plot_stem(), &f, circle)?
    } else {
        Vec::new()
    };
    Ok(RunOutcome {
        exit_code: if bundle.pass {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        },
        bundle,
        timings,
        plot_files,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Name, parameter range and formula of every preset, as an aligned table.
pub fn list_presets() -> String {
    let mut s = format!(
        "{:<10} {:<18} {:<8} {}\n",
        "name", "parameter", "default", "formula"
    );
    for p in PRESETS {
        s.push_str(&format!(
            "{:<10} {:<18} {:<8} {}\n",
            p.name, p.parameter, p.default, p.formula
        ));
    }
    s
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// process exit code. Errors go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_CONFIG
            } else {
                EXIT_PASS
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Verify(args) => {
            let config = args.into_config()?;
            let outcome = run(&config)?;
            for (stage, secs) in &outcome.timings {
                eprintln!("timing {stage} {secs:.3}s");
            }
            for p in &outcome.plot_files {
                eprintln!("wrote {}", p.display());
            }
            for &c in &config.checks {
                let ok = outcome.bundle.checks.passed(c) == Some(true);
                eprintln!("{c}: {}", if ok { "PASS" } else { "FAIL" });
            }
            Ok(outcome.exit_code)
        }
        Command::Presets => {
            print!("{}", list_presets());
            Ok(EXIT_PASS)
        }
        Command::Calibrate { store, reach } => {
            let arcs = ArcOptions {
                reach,
                ..ArcOptions::default()
            };
            let c = calibrate_mesh(CALIBRATION_LEVELS, arcs)?;
            save_calibration(&store, &c)?;
            println!(
                "kappa = {} (residual {:e}) stored in {}",
                c.kappa,
                c.residual,
                store.display()
            );
            Ok(EXIT_PASS)
        }
        Command::Mesh {
            factor,
            level,
            reach,
            out,
        } => {
            let source = factor.source()?;
            let f = ProjectiveFactor::new(source.build()?).map_err(CliError::from_factor)?;
            let mesh = build_mesh(level).map_err(VerifyError::from)?;
            let arcs = ArcOptions {
                reach,
                ..ArcOptions::default()
            };
            let wm = weight_edges_with(mesh, &f, arcs).map_err(VerifyError::from)?;
            let io = |e: std::io::Error| CliError::Io {
                path: out.display().to_string(),
                message: e.to_string(),
            };
            let file = std::fs::File::create(&out).map_err(io)?;
            let mut w = std::io::BufWriter::new(file);
            wm.write_dump(&mut w).map_err(io)?;
            w.flush().map_err(io)?;
            Ok(EXIT_PASS)
        }
    }
}
