use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QuganError, Result};
use crate::statevec::StateVector;

/// Tolerance on `Σ p_i = 1`.
pub const MASS_TOL: f64 = 1e-12;

/// Probability masses over the `2^n` uniform bins of `[−1, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteDistribution {
    n_qubits: usize,
    masses: Vec<f64>,
}

impl DiscreteDistribution {
    pub fn new(masses: Vec<f64>) -> Result<Self> {
        let len = masses.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuganError::InvalidArgument(format!(
                "need 2^n masses with n ≥ 1, got {len}"
            )));
        }
        if let Some(&bad) = masses.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(QuganError::OutOfDomain {
                value: bad,
                domain: "[0, ∞)",
            });
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(QuganError::InvalidArgument(format!(
                "masses sum to {total}"
            )));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            masses,
        })
    }

    /// Rescales non-negative weights to unit mass.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(QuganError::InvalidArgument(format!(
                "cannot normalize total {total}"
            )));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(n_qubits: usize) -> Result<Self> {
        let d = 1usize << n_qubits;
        Self::new(vec![1.0 / d as f64; d])
    }

    pub fn point_mass(n_qubits: usize, index: usize) -> Result<Self> {
        let mut m = vec![0.0; 1usize << n_qubits];
        *m.get_mut(index).ok_or(QuganError::IndexOutOfRange {
            index,
            num_qubits: n_qubits,
        })? = 1.0;
        Self::new(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    /// Left edges of the bins plus the final right edge: `−1 + 2i/2^n`.
    pub fn bin_edges(&self) -> Vec<f64> {
        let d = self.masses.len() as f64;
        (0..=self.masses.len())
            .map(|i| -1.0 + 2.0 * i as f64 / d)
            .collect()
    }

    /// Adds adjacent bins pairwise, giving the distribution on `n − 1` qubits.
    pub fn coarsen(&self) -> Result<Self> {
        Self::normalized(self.masses.chunks(2).map(|c| c[0] + c[1]).collect())
    }
}

/// `|ψ⟩ = Σ √p_i |i⟩`.
pub fn target_state(dist: &DiscreteDistribution) -> StateVector {
    StateVector::from_amplitudes(
        dist.masses()
            .iter()
            .map(|p| Complex64::new(p.sqrt(), 0.0))
            .collect(),
    )
    .expect("unit mass gives a unit vector")
}
