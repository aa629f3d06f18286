//! Seeded generator for test populations of positive factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::factor::{ConformalFactor, HarmonicSpec, HarmonicTerm, Parity, Representation};
use super::harmonics::sup_bound;
use super::FactorError;

/// Raw coefficient list for [`random_factor`], before validation.
///
/// Degrees run over 1..=max_degree (even degrees only for [`Parity::Even`]),
/// every order m of each degree gets a coefficient uniform in [−1, 1], and the
/// list is rescaled so that Σ |c| · sup|Y_l| = amplitude. Since that sum bounds
/// the harmonic part in sup-norm, the factor 1 + Σ c Y satisfies
/// f ≥ 1 − amplitude everywhere.
pub fn random_terms(
    seed: u64,
    max_degree: usize,
    amplitude: f64,
    parity: Parity,
) -> Vec<HarmonicTerm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for l in 1..=max_degree {
        if parity == Parity::Even && l % 2 == 1 {
            continue;
        }
        let l_i = l as i64;
        for m in -l_i..=l_i {
            terms.push(HarmonicTerm {
                l,
                m,
                coeff: rng.gen_range(-1.0..=1.0),
            });
        }
    }
    let bound: f64 = terms.iter().map(|t| t.coeff.abs() * sup_bound(t.l)).sum();
    if bound > 0.0 {
        let s = amplitude / bound;
        for t in &mut terms {
            t.coeff *= s;
        }
    }
    terms
}

/// f = 1 + (random harmonic part with sup-norm estimate ≤ amplitude).
pub fn random_factor(
    seed: u64,
    max_degree: usize,
    amplitude: f64,
    parity: Parity,
) -> Result<ConformalFactor, FactorError> {
    if !(amplitude > 0.0 && amplitude < 1.0) {
        return Err(FactorError::BadAmplitude { amplitude });
    }
    let terms = random_terms(seed, max_degree, amplitude, parity);
    if terms.is_empty() {
        return ConformalFactor::from_representation(
            Representation::Constant { value: 1.0 },
            parity,
        );
    }
    let spec = HarmonicSpec::with_max_degree(1.0, terms, max_degree)?;
    ConformalFactor::harmonic(spec, parity)
}

/// Even factor, descending to RP².
pub fn random_even_factor(
    seed: u64,
    max_degree: usize,
    amplitude: f64,
) -> Result<ConformalFactor, FactorError> {
    random_factor(seed, max_degree, amplitude, Parity::Even)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::validate;
    use crate::geometry::sphere_rule;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(
            random_terms(42, 6, 0.4, Parity::Even),
            random_terms(42, 6, 0.4, Parity::Even)
        );
        assert_ne!(
            random_terms(42, 6, 0.4, Parity::Even),
            random_terms(43, 6, 0.4, Parity::Even)
        );
    }

    #[test]
    fn even_parity_has_only_even_degrees() {
        let terms = random_terms(1, 8, 0.5, Parity::Even);
        assert!(terms.iter().all(|t| t.l % 2 == 0));
        // degrees 2, 4, 6, 8: 5 + 9 + 13 + 17 orders
        assert_eq!(terms.len(), 44);
        let any = random_terms(1, 3, 0.5, Parity::Any);
        assert_eq!(any.len(), 3 + 5 + 7);
    }

    #[test]
    fn sup_norm_estimate_equals_amplitude() {
        let terms = random_terms(5, 8, 0.37, Parity::Any);
        let spec = HarmonicSpec::new(1.0, terms).unwrap();
        assert!((spec.sup_norm_estimate() - 0.37).abs() < 1e-12);
    }

    #[test]
    fn amplitude_bounds_minimum() {
        let rule = sphere_rule(24).unwrap();
        for seed in 0..100 {
            let f = random_even_factor(seed, 8, 0.5).unwrap();
            let scan = validate(|v| f.value(v), &rule);
            assert!(scan.min >= 0.5 - 1e-9, "seed {seed}: min {}", scan.min);
            assert!(scan.evenness_residual < 1e-9);
            assert!(f.is_even());
        }
    }

    #[test]
    fn degree_zero_is_constant_one() {
        let f = random_even_factor(9, 0, 0.5).unwrap();
        assert!(matches!(f.representation(), Representation::Constant { value } if *value == 1.0));
        let f = random_even_factor(9, 1, 0.5).unwrap();
        assert!(f.is_constant());
    }

    #[test]
    fn amplitude_must_be_in_unit_interval() {
        assert!(matches!(
            random_even_factor(1, 4, 1.0),
            Err(FactorError::BadAmplitude { .. })
        ));
        assert!(matches!(
            random_even_factor(1, 4, 0.0),
            Err(FactorError::BadAmplitude { .. })
        ));
    }
}
