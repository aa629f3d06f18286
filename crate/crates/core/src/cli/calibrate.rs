use std::fmt;
use std::ops::RangeInclusive;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CliError;
use crate::conformal::{ConformalFactor, ProjectiveFactor};
use crate::systole::{build_mesh, compute_systole, weight_edges_with, ArcOptions, SystoleError};
use crate::tolerances;

pub const CALIBRATION_LEVELS: RangeInclusive<usize> = 3..=6;
/// Largest allowed |L/π − 1 − κh| over the calibration levels.
pub const FIT_TOLERANCE: f64 = 5e-3;
/// |κ| below this means the mesh shows no measurable inflation.
pub const DEGENERATE_KAPPA: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationPoint {
    pub level: usize,
    pub mesh_size: f64,
    #[serde(rename = "L")]
    pub length: f64,
    /// L/π
    pub ratio: f64,
}

/// Stored mesh constant together with the measurements it was fitted to.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub kappa: f64,
    pub residual: f64,
    pub points: Vec<CalibrationPoint>,
}

pub struct Points<'a>(pub &'a [CalibrationPoint]);

impl fmt::Display for Points<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.0 {
            write!(
                f,
                "\n  level {}: h = {:.6}, L/pi = {:.15}",
                p.level, p.mesh_size, p.ratio
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("L/pi is not strictly decreasing in the level:{}", Points(.points))]
    NotDecreasing { points: Vec<CalibrationPoint> },
    #[error("fitted kappa = {kappa:e} is outside (0, 1):{}", Points(.points))]
    KappaOutOfRange {
        kappa: f64,
        points: Vec<CalibrationPoint>,
    },
    #[error("fit residual {residual:e} exceeds {FIT_TOLERANCE:e}:{}", Points(.points))]
    PoorFit {
        residual: f64,
        points: Vec<CalibrationPoint>,
    },
    #[error(transparent)]
    Systole(#[from] SystoleError),
}

/// Constant-metric graph systole at each level.
pub fn measure(
    levels: RangeInclusive<usize>,
    arcs: ArcOptions,
) -> Result<Vec<CalibrationPoint>, SystoleError> {
    let unit = ProjectiveFactor::new(ConformalFactor::constant(1.0).expect("1 is positive"))
        .expect("constants are even");
    levels
        .map(|level| {
            let wm = weight_edges_with(build_mesh(level)?, &unit, arcs)?;
            let s = compute_systole(&wm)?;
            Ok(CalibrationPoint {
                level,
                mesh_size: s.mesh_size,
                length: s.length,
                ratio: s.length / std::f64::consts::PI,
            })
        })
        .collect()
}

/// True when each ratio is below its predecessor by more than rounding noise.
pub fn strictly_decreasing(points: &[CalibrationPoint]) -> bool {
    points
        .windows(2)
        .all(|w| w[0].ratio - w[1].ratio > tolerances::ROUNDING * w[0].ratio)
}

/// Least-squares κ through the origin for L/π − 1 ≈ κh.
pub fn fit(points: Vec<CalibrationPoint>) -> Result<Calibration, CalibrationError> {
    if !strictly_decreasing(&points) {
        return Err(CalibrationError::NotDecreasing { points });
    }
    let num: f64 = points.iter().map(|p| p.mesh_size * (p.ratio - 1.0)).sum();
    let den: f64 = points.iter().map(|p| p.mesh_size * p.mesh_size).sum();
    let kappa = num / den;
    if !(kappa > DEGENERATE_KAPPA && kappa < 1.0) {
        return Err(CalibrationError::KappaOutOfRange { kappa, points });
    }
    let residual = points
        .iter()
        .map(|p| (p.ratio - 1.0 - kappa * p.mesh_size).abs())
        .fold(0.0, f64::max);
    if residual > FIT_TOLERANCE {
        return Err(CalibrationError::PoorFit { residual, points });
    }
    Ok(Calibration {
        kappa,
        residual,
        points,
    })
}

pub fn calibrate_mesh(
    levels: RangeInclusive<usize>,
    arcs: ArcOptions,
) -> Result<Calibration, CalibrationError> {
    fit(measure(levels, arcs)?)
}

pub fn save_calibration(path: &Path, c: &Calibration) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(c).map_err(|e| CliError::Config(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_calibration(path: &Path) -> Result<Calibration, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}
