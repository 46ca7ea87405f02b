//! Quantum Fourier transform and binary fractions.
//!
//! The transform maps `|j⟩ ↦ 2^{-n/2} Σ_k e^{2iπ jk/2^n} |k⟩`. It is applied as
//! an exact dense matrix; [`qft_circuit`] additionally gives the textbook
//! Hadamard / controlled-phase / SWAP decomposition.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{QuganError, Result};
use crate::statevec::{crz, hadamard, swap, QuantumCircuit, StateVector, UnitaryGate};

fn fourier_matrix(num_qubits: usize, sign: f64) -> Vec<Complex64> {
    let d = 1usize << num_qubits;
    let scale = 1.0 / (d as f64).sqrt();
    let mut m = Vec::with_capacity(d * d);
    for k in 0..d {
        for j in 0..d {
            // reduce jk mod d first to keep the angle small
            let turns = ((j * k) % d) as f64 / d as f64;
            m.push(Complex64::from_polar(scale, sign * 2.0 * PI * turns));
        }
    }
    m
}

/// Dense QFT on `num_qubits` wires as a gate.
pub fn qft_gate(num_qubits: usize) -> UnitaryGate {
    UnitaryGate::new("QFT", num_qubits, fourier_matrix(num_qubits, 1.0))
        .expect("Fourier matrix is unitary")
}

/// Dense inverse QFT on `num_qubits` wires as a gate.
pub fn inverse_qft_gate(num_qubits: usize) -> UnitaryGate {
    UnitaryGate::new("QFT†", num_qubits, fourier_matrix(num_qubits, -1.0))
        .expect("Fourier matrix is unitary")
}

fn transform(state: &StateVector, sign: f64) -> StateVector {
    let n = state.num_qubits();
    let d = state.dim();
    let scale = 1.0 / (d as f64).sqrt();
    let input = state.amplitudes();
    let amps = (0..d)
        .map(|k| {
            input
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let turns = ((j * k) % d) as f64 / d as f64;
                    a * Complex64::from_polar(scale, sign * 2.0 * PI * turns)
                })
                .sum()
        })
        .collect();
    let out = StateVector::from_amplitudes(amps).expect("unitary map preserves norm");
    debug_assert_eq!(out.num_qubits(), n);
    out
}

/// QFT of a whole register.
pub fn qft(state: &StateVector) -> StateVector {
    transform(state, 1.0)
}

/// Inverse QFT of a whole register.
pub fn inverse_qft(state: &StateVector) -> StateVector {
    transform(state, -1.0)
}

/// Gate-level QFT: on each wire a Hadamard followed by controlled phases
/// `cRz(1/2^r)` from the lower wires, then a wire reversal with SWAPs.
pub fn qft_circuit(num_qubits: usize) -> Result<QuantumCircuit> {
    let mut c = QuantumCircuit::new(num_qubits)?;
    for i in 0..num_qubits {
        c.push(hadamard(), &[i], &[])?;
        for j in i + 1..num_qubits {
            let r = (j - i + 1) as i32;
            c.push(crz(2f64.powi(-r)), &[j, i], &[])?;
        }
    }
    for i in 0..num_qubits / 2 {
        c.push(swap(), &[i, num_qubits - 1 - i], &[])?;
    }
    Ok(c)
}

/// An `m`-bit binary fraction `0.j_1 j_2 … j_m = Σ 2^{-i} j_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryFraction {
    bits: Vec<bool>,
}

impl BinaryFraction {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// The fraction `index / 2^len` written on `len` bits, most significant first.
    pub fn from_index(index: usize, len: usize) -> Self {
        Self {
            bits: (0..len).map(|i| index >> (len - 1 - i) & 1 == 1).collect(),
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// The integer `2^len · value`.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
    }

    pub fn value(&self) -> f64 {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| 2f64.powi(-(i as i32 + 1)))
            .sum()
    }
}

/// Best `bits`-bit approximation of `x ∈ [0, 1]` from below. `x = 1` clamps to
/// the largest representable fraction `1 − 2^{-bits}`.
pub fn encode_fraction(x: f64, bits: usize) -> Result<BinaryFraction> {
    if !(0.0..=1.0).contains(&x) {
        return Err(QuganError::OutOfDomain {
            value: x,
            domain: "[0, 1]",
        });
    }
    if bits == 0 || bits >= usize::BITS as usize {
        return Err(QuganError::InvalidArgument(format!(
            "unsupported precision {bits}"
        )));
    }
    let scale = (1usize << bits) as f64;
    let index = ((x * scale).floor() as usize).min((1usize << bits) - 1);
    Ok(BinaryFraction::from_index(index, bits))
}
