use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::factor::{ConformalFactor, HarmonicSpec, HarmonicTerm, Parity, Representation};
use super::random::random_even_factor;
use super::FactorError;

/// Named factor families, written `name[:param]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Preset {
    /// f ≡ c.
    Constant(f64),
    /// f = 1 + a (z² − 1/3).
    P2(f64),
    /// f = 1 + a P₄(z).
    P4(f64),
    /// Even random factor of degree ≤ 6 and amplitude 0.4 from the given seed.
    Mixed(u64),
}

pub struct PresetInfo {
    pub name: &'static str,
    pub parameter: &'static str,
    pub formula: &'static str,
    pub default: &'static str,
}

pub const PRESETS: &[PresetInfo] = &[
    PresetInfo {
        name: "constant",
        parameter: "c > 0",
        formula: "f = c",
        default: "1",
    },
    PresetInfo {
        name: "p2",
        parameter: "a in (-1.5, 3)",
        formula: "f = 1 + a(v_z^2 - 1/3)",
        default: "0.3",
    },
    PresetInfo {
        name: "p4",
        parameter: "a in (-1, 7/3)",
        formula: "f = 1 + a P4(v_z), P4(t) = (35t^4 - 30t^2 + 3)/8",
        default: "0.3",
    },
    PresetInfo {
        name: "mixed",
        parameter: "seed (integer)",
        formula: "f = 1 + random even harmonics, degree <= 6, sup-norm estimate 0.4",
        default: "0",
    },
];

/// Coefficient of Y_l0 that reproduces a · P_l(z).
fn zonal(l: usize, a: f64) -> HarmonicTerm {
    let norm = ((2 * l + 1) as f64 / (4.0 * PI)).sqrt();
    HarmonicTerm {
        l,
        m: 0,
        coeff: a / norm,
    }
}

impl Preset {
    pub fn build(self) -> Result<ConformalFactor, FactorError> {
        match self {
            Preset::Constant(c) => ConformalFactor::from_representation(
                Representation::Constant { value: c },
                Parity::Even,
            ),
            // z² − 1/3 = (2/3) P₂(z)
            Preset::P2(a) => ConformalFactor::harmonic(
                HarmonicSpec::new(1.0, vec![zonal(2, a * 2.0 / 3.0)])?,
                Parity::Even,
            ),
            Preset::P4(a) => {
                ConformalFactor::harmonic(HarmonicSpec::new(1.0, vec![zonal(4, a)])?, Parity::Even)
            }
            Preset::Mixed(seed) => random_even_factor(seed, 6, 0.4),
        }
    }
}

impl FromStr for Preset {
    type Err = FactorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let info =
            PRESETS
                .iter()
                .find(|p| p.name == name)
                .ok_or_else(|| FactorError::UnknownPreset {
                    name: s.to_string(),
                })?;
        let param = param.unwrap_or(info.default);
        let bad = || FactorError::UnknownPreset {
            name: s.to_string(),
        };
        let real = || param.parse::<f64>().map_err(|_| bad());
        Ok(match name {
            "constant" => Preset::Constant(real()?),
            "p2" => Preset::P2(real()?),
            "p4" => Preset::P4(real()?),
            "mixed" => Preset::Mixed(param.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Constant(c) => write!(f, "constant:{c}"),
            Preset::P2(a) => write!(f, "p2:{a}"),
            Preset::P4(a) => write!(f, "p4:{a}"),
            Preset::Mixed(seed) => write!(f, "mixed:{seed}"),
        }
    }
}

/// Serialized as its `name:param` string.
impl Serialize for Preset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
