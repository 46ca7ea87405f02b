//! Training monitors.

use crate::distribution::DiscreteDistribution;
use crate::error::{QuganError, Result};
use crate::statevec::StateVector;

/// Floor on generated probabilities inside the KL logarithm.
pub const KL_FLOOR: f64 = 1e-12;

/// `|⟨a|b⟩|`, clamped to `[0, 1]` against rounding.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm().min(1.0))
}

/// `Σ_{p_i > 0} p_i ln(p_i / max(|v_i|², 1e−12))`.
pub fn kl_divergence(target: &DiscreteDistribution, generated: &StateVector) -> Result<f64> {
    if target.len() != generated.dim() {
        return Err(QuganError::DimensionMismatch {
            expected: target.len(),
            actual: generated.dim(),
        });
    }
    Ok(target
        .masses()
        .iter()
        .zip(generated.amplitudes())
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, v)| p * (p / v.norm_sqr().max(KL_FLOOR)).ln())
        .sum())
}

/// `‖|a⟩⟨a| − |b⟩⟨b|‖₁ = 2√(1 − |⟨a|b⟩|²)` for unit vectors.
pub fn trace_distance_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    let f = fidelity(a, b)?;
    Ok(2.0 * (1.0 - f * f).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::target_state;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn fidelity_examples() {
        let z = StateVector::basis(1, 0).unwrap();
        let o = StateVector::basis(1, 1).unwrap();
        assert_eq!(fidelity(&z, &z).unwrap(), 1.0);
        assert_eq!(fidelity(&z, &o).unwrap(), 0.0);
        assert!((fidelity(&z, &StateVector::plus()).unwrap() - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(fidelity(&z, &StateVector::zero(2).unwrap()).is_err());
    }

    #[test]
    fn kl_examples() {
        let p = DiscreteDistribution::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert!(kl_divergence(&p, &target_state(&p)).unwrap().abs() < 1e-9);

        let u = DiscreteDistribution::uniform(2).unwrap();
        let point = StateVector::basis(2, 0).unwrap();
        // ¼ ln(¼) + ¾ ln(¼ / 1e−12)
        let expected = 0.25 * 0.25f64.ln() + 0.75 * (0.25 / 1e-12f64).ln();
        assert!((kl_divergence(&u, &point).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn trace_distance_examples() {
        let z = StateVector::basis(2, 0).unwrap();
        let o = StateVector::basis(2, 3).unwrap();
        assert_eq!(trace_distance_pure(&z, &z).unwrap(), 0.0);
        assert_eq!(trace_distance_pure(&z, &o).unwrap(), 2.0);
    }
}
