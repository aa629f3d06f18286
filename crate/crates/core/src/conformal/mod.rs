//! Positive conformal factors f on S² (g = f² g₀), including even factors that
//! descend to RP² through the double covering.

mod factor;
pub mod harmonics;
mod presets;
mod random;
mod spec_file;

use thiserror::Error;

pub use factor::{
    validate, ConformalFactor, GridFactor, HarmonicSpec, HarmonicTerm, Interpolation, Parity,
    ProjectiveFactor, Representation, Validation, DEFAULT_MAX_DEGREE, DEFAULT_VALIDATION_LEVEL,
    EVENNESS_TOLERANCE,
};
pub use presets::{Preset, PresetInfo, PRESETS};
pub use random::{random_even_factor, random_factor, random_terms};
pub use spec_file::{format_spec, format_terms, parse_spec, read_spec_file, write_spec_file};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FactorError {
    #[error("factor is not positive: minimum {min} at {at:?}")]
    NonPositive { min: f64, at: [f64; 3] },
    #[error("factor is not even (max |f(v) - f(-v)| = {residual:e}); it does not descend to RP^2")]
    NotEven { residual: f64 },
    #[error("harmonic degree {l} exceeds the configured maximum {max}")]
    DegreeTooHigh { l: usize, max: usize },
    #[error("order {m} is out of range for degree {l}")]
    BadOrder { l: usize, m: i64 },
    #[error("non-finite {what}")]
    NonFinite { what: &'static str },
    #[error("invalid grid: {reason}")]
    BadGrid { reason: String },
    #[error("scale must be positive and finite, got {scale}")]
    BadScale { scale: f64 },
    #[error("amplitude must lie in (0, 1), got {amplitude}")]
    BadAmplitude { amplitude: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("unknown preset `{name}`")]
    UnknownPreset { name: String },
}
