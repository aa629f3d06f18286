//! Numerical thresholds shared by the checks and the acceptance suite.

/// Gram-matrix residuals of pushforward and g_M bases.
pub const ORTHONORMALITY: f64 = 1e-12;
/// max |p(fiber point) · w| over sampled fibers of q.
pub const FIBER_IMAGE: f64 = 1e-12;
/// Relative error of the Fubini identity ∫_M f∘p = 2π ∫_{S²} f.
pub const FUBINI: f64 = 1e-8;
/// Relative error of vol(M) against 8π².
pub const VOLUME: f64 = 1e-8;
/// Inequality slacks may dip this far below zero from rounding.
pub const SLACK: f64 = 1e-9;
/// Chain slacks below this fraction of ∫f² classify as equality.
pub const EQUALITY: f64 = 1e-8;
/// Mesh length-inflation constant κ in L_mesh ≈ (1 + κh) L.
pub const DEFAULT_KAPPA: f64 = 0.31;
/// Relative float tolerance for comparisons that hold exactly in real arithmetic.
pub const ROUNDING: f64 = 1e-12;
