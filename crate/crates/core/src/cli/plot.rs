use std::f64::consts::{PI, TAU};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::CliError;
use crate::conformal::ConformalFactor;
use crate::geometry::{CircleRule, UnitVec3};
use crate::transforms::{fibonacci_hemisphere, funk};

pub const FUNK_POLES: usize = 2000;
pub const GRID_LATITUDES: usize = 91;
pub const GRID_LONGITUDES: usize = 180;

#[derive(Debug, Serialize)]
pub struct FunkSample {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub funk: f64,
}

#[derive(Debug, Serialize)]
pub struct FactorSample {
    pub lat_deg: f64,
    pub lon_deg: f64,
    pub f: f64,
}

/// The great-circle transform on the Fibonacci pole grid of the minimum search.
pub fn funk_samples(f: &ConformalFactor, poles: usize, circle: CircleRule) -> Vec<FunkSample> {
    fibonacci_hemisphere(poles)
        .into_par_iter()
        .map(|p| FunkSample {
            x: p.x(),
            y: p.y(),
            z: p.z(),
            funk: funk(f, p, circle).value,
        })
        .collect()
}

/// f on a latitude/longitude grid, poles included.
pub fn factor_samples(f: &ConformalFactor, lats: usize, lons: usize) -> Vec<FactorSample> {
    let mut out = Vec::with_capacity(lats * lons);
    for i in 0..lats {
        let lat = -PI / 2.0 + PI * i as f64 / (lats - 1) as f64;
        for j in 0..lons {
            let lon = TAU * j as f64 / lons as f64;
            let v = UnitVec3::from_polar(lat.sin(), lon);
            out.push(FactorSample {
                lat_deg: lat.to_degrees(),
                lon_deg: lon.to_degrees(),
                f: f.value(v),
            });
        }
    }
    out
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| io(e.into()))
}

/// Writes `<stem>.funk.csv` and `<stem>.factor.csv`; returns their paths.
pub fn write_plot_data(
    stem: &Path,
    f: &ConformalFactor,
    circle: CircleRule,
) -> Result<Vec<PathBuf>, CliError> {
    let funk_path = PathBuf::from(format!("{}.funk.csv", stem.display()));
    let factor_path = PathBuf::from(format!("{}.factor.csv", stem.display()));
    write_csv(&funk_path, &funk_samples(f, FUNK_POLES, circle))?;
    write_csv(
        &factor_path,
        &factor_samples(f, GRID_LATITUDES, GRID_LONGITUDES),
    )?;
    Ok(vec![funk_path, factor_path])
}
