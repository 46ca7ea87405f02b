//! Quantum phase estimation.
//!
//! For a unitary `U` with eigenvector `|u⟩` and eigenvalue `e^{2iπφ}`, an
//! `m`-qubit ancilla register is put in uniform superposition, ancilla `a`
//! (weight `2^{m-1-a}`) controls `U^{2^{m-1-a}}` on the eigenstate register,
//! and an inverse QFT on the ancillas leaves an `m`-bit estimate of `φ`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{QuganError, Result};
use crate::fourier::inverse_qft_gate;
use crate::statevec::{hadamard, QuantumCircuit, StateVector, UnitaryGate};

/// Residual tolerance for the eigenvector precondition.
pub const EIGEN_TOL: f64 = 1e-8;

/// Number of ancillas needed for `accuracy_bits` bits of `φ` with failure
/// probability at most `failure_prob`: `n + ⌈log₂(2 + 1/(2ε))⌉`.
pub fn size_ancillas(accuracy_bits: usize, failure_prob: f64) -> Result<usize> {
    if accuracy_bits == 0 {
        return Err(QuganError::InvalidArgument(
            "accuracy_bits must be ≥ 1".into(),
        ));
    }
    if !(failure_prob > 0.0 && failure_prob < 1.0) {
        return Err(QuganError::OutOfDomain {
            value: failure_prob,
            domain: "(0, 1)",
        });
    }
    let extra = (2.0 + 1.0 / (2.0 * failure_prob)).log2().ceil() as usize;
    Ok(accuracy_bits + extra)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QpeConfig {
    pub ancillas: usize,
    pub accuracy_bits: usize,
    pub failure_prob: f64,
}

impl QpeConfig {
    pub fn sized(accuracy_bits: usize, failure_prob: f64) -> Result<Self> {
        Ok(Self {
            ancillas: size_ancillas(accuracy_bits, failure_prob)?,
            accuracy_bits,
            failure_prob,
        })
    }
}

/// Appends the phase-estimation block to `circuit`: Hadamards on `ancillas`,
/// controlled powers of `unitary` on `register`, inverse QFT on `ancillas`.
pub fn append_qpe(
    circuit: &mut QuantumCircuit,
    unitary: &UnitaryGate,
    ancillas: &[usize],
    register: &[usize],
) -> Result<()> {
    let m = ancillas.len();
    if m == 0 {
        return Err(QuganError::InvalidArgument(
            "need at least one ancilla".into(),
        ));
    }
    if register.len() != unitary.arity() {
        return Err(QuganError::DimensionMismatch {
            expected: unitary.arity(),
            actual: register.len(),
        });
    }
    for &a in ancillas {
        circuit.push(hadamard(), &[a], &[])?;
    }
    for (pos, &a) in ancillas.iter().enumerate() {
        let power = unitary.power(1u64 << (m - 1 - pos));
        circuit.push(power, register, &[a])?;
    }
    circuit.push(inverse_qft_gate(m), ancillas, &[])?;
    Ok(())
}

/// Standalone QPE circuit: `ancillas` leading wires, then the eigenstate register.
pub fn qpe_circuit(unitary: &UnitaryGate, ancillas: usize) -> Result<QuantumCircuit> {
    let q = unitary.arity();
    let mut c = QuantumCircuit::new(ancillas + q)?;
    let anc: Vec<usize> = (0..ancillas).collect();
    let reg: Vec<usize> = (ancillas..ancillas + q).collect();
    append_qpe(&mut c, unitary, &anc, &reg)?;
    Ok(c)
}

/// Checks `‖Uv − λv‖ < 1e-8` with `λ = ⟨v|Uv⟩` and returns `λ`.
pub fn check_eigenstate(unitary: &UnitaryGate, state: &StateVector) -> Result<Complex64> {
    let uv = unitary.apply_to(state.amplitudes())?;
    let lambda: Complex64 = state
        .amplitudes()
        .iter()
        .zip(&uv)
        .map(|(v, w)| v.conj() * w)
        .sum();
    let residual = uv
        .iter()
        .zip(state.amplitudes())
        .map(|(w, v)| (w - lambda * v).norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual >= EIGEN_TOL {
        return Err(QuganError::NotEigenstate(residual));
    }
    Ok(lambda)
}

/// Exact distribution of the `m`-bit ancilla readout.
pub fn qpe_distribution(
    unitary: &UnitaryGate,
    eigenstate: &StateVector,
    ancillas: usize,
) -> Result<Vec<f64>> {
    check_eigenstate(unitary, eigenstate)?;
    let circuit = qpe_circuit(unitary, ancillas)?;
    let input = StateVector::zero(ancillas)?.tensor(eigenstate)?;
    circuit.run(&input)?.marginal(0, ancillas)
}

/// Draws an index from a discrete distribution.
pub(crate) fn sample_index(probs: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // rounding left a sliver above the cumulative sum: take the last non-zero outcome
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// One simulated measurement of the ancilla register, returned as `k / 2^m`.
pub fn estimate_phase(
    unitary: &UnitaryGate,
    eigenstate: &StateVector,
    config: &QpeConfig,
    rng_seed: u64,
) -> Result<f64> {
    let probs = qpe_distribution(unitary, eigenstate, config.ancillas)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let k = sample_index(&probs, &mut rng);
    Ok(k as f64 / (1u64 << config.ancillas) as f64)
}
