//! The perceptron discriminator `𝔇(w)`.
//!
//! Wires: `m1` activation ancillas, `m2` inner-product ancillas, then the `n`
//! data qubits. On a basis input `|j⟩` the inner-product register estimates
//! `φ_jᵀw` (the bits of `j` against `w`) with the halved-phase signed scheme,
//! and the activation register phase-estimates `σ` of the decoded value. The
//! first activation qubit is the label: `1` is Real, `0` is Fake.

use num_complex::Complex64;

use crate::error::{QuganError, Result};
use crate::fourier::inverse_qft_gate;
use crate::phase_estimation::append_qpe;
use crate::qneuron::{
    append_u_wm, check_phases, check_signed_capacity, decode_signed, min_signed_ancillas,
    ActivationFn,
};
use crate::statevec::{diagonal, hadamard, Projector, QuantumCircuit, StateVector};

#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminatorWeights {
    w: Vec<f64>,
}

impl DiscriminatorWeights {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = w.iter().find(|v| !(v.abs() <= 1.0)) {
            return Err(QuganError::OutOfDomain {
                value: bad,
                domain: "[-1, 1]",
            });
        }
        Ok(Self { w })
    }

    /// Skips the range check. Finite-difference probes step just past `±1`.
    pub(crate) fn unchecked(w: Vec<f64>) -> Self {
        Self { w }
    }

    /// Projects every coordinate onto `[−1, 1]`.
    pub fn clipped(w: Vec<f64>) -> Self {
        Self {
            w: w.into_iter().map(|v| v.clamp(-1.0, 1.0)).collect(),
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.w
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub(crate) fn shifted(&self, i: usize, delta: f64) -> Self {
        let mut w = self.w.clone();
        w[i] += delta;
        Self { w }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DiscriminatorConfig {
    pub m1: usize,
    pub m2: usize,
    pub activation: ActivationFn,
}

impl DiscriminatorConfig {
    /// One activation ancilla, the fewest inner-product ancillas that keep
    /// signed readouts unambiguous for `n` data qubits, and the half sigmoid
    /// (whose single-ancilla label probability is monotone).
    pub fn for_qubits(n: usize) -> Self {
        Self {
            m1: 1,
            m2: min_signed_ancillas(n),
            activation: ActivationFn::HalfSigmoid,
        }
    }

    pub fn width(&self, n: usize) -> usize {
        self.m1 + self.m2 + n
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.m1 == 0 || self.m2 == 0 {
            return Err(QuganError::InvalidArgument("m1 and m2 must be ≥ 1".into()));
        }
        check_signed_capacity(n, self.m2)
    }
}

/// Activation values indexed by the inner-product readout.
pub fn activation_phases(cfg: &DiscriminatorConfig) -> Vec<f64> {
    (0..1usize << cfg.m2)
        .map(|k| cfg.activation.eval(decode_signed(k, cfg.m2)))
        .collect()
}

pub fn build_discriminator(
    w: &DiscriminatorWeights,
    cfg: &DiscriminatorConfig,
    n: usize,
) -> Result<QuantumCircuit> {
    if w.len() != n {
        return Err(QuganError::DimensionMismatch {
            expected: n,
            actual: w.len(),
        });
    }
    cfg.validate(n)?;
    let width = cfg.width(n);
    let act: Vec<usize> = (0..cfg.m1).collect();
    let ip: Vec<usize> = (cfg.m1..cfg.m1 + cfg.m2).collect();
    let data: Vec<usize> = (cfg.m1 + cfg.m2..width).collect();

    let mut c = QuantumCircuit::new(width)?;
    for &a in &ip {
        c.push(hadamard(), &[a], &[])?;
    }
    append_u_wm(&mut c, w.as_slice(), 0.5, &ip, &data, 1)?;
    c.push(inverse_qft_gate(cfg.m2), &ip, &[])?;

    let phases = activation_phases(cfg);
    check_phases(&phases)?;
    append_qpe(&mut c, &diagonal(&phases)?, &act, &ip)?;
    Ok(c)
}

/// `𝔇(w)|0⟩^{⊗(m1+m2)}|input⟩`.
pub fn discriminate(
    w: &DiscriminatorWeights,
    cfg: &DiscriminatorConfig,
    input: &StateVector,
) -> Result<StateVector> {
    let n = input.num_qubits();
    let circuit = build_discriminator(w, cfg, n)?;
    circuit.run(&StateVector::zero(cfg.m1 + cfg.m2)?.tensor(input)?)
}

/// `‖Π₁ 𝔇(w)|0…0⟩|input⟩‖²`, the probability of the label Real.
pub fn label_real_probability(
    w: &DiscriminatorWeights,
    cfg: &DiscriminatorConfig,
    input: &StateVector,
) -> Result<f64> {
    discriminate(w, cfg, input)?.outcome_probability(Projector::new(0, true))
}

/// `r_j`, the label-Real probability of each basis input `|j⟩`.
///
/// `𝔇(w)` leaves the data register unchanged, so the branches of different
/// basis inputs stay orthogonal and one run on the uniform superposition
/// yields every `r_j`. For any input `|v⟩`, `P(Real) = Σ_j |v_j|² r_j`.
pub fn basis_real_probabilities(
    w: &DiscriminatorWeights,
    cfg: &DiscriminatorConfig,
    n: usize,
) -> Result<Vec<f64>> {
    let d = 1usize << n;
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let uniform = StateVector::from_amplitudes(vec![amp; d])?;
    let out = discriminate(w, cfg, &uniform)?;
    let anc = cfg.m1 + cfg.m2;
    // label qubit is the most significant of the ancilla index
    let real_from = 1usize << (anc - 1);
    let mut r = vec![0.0; d];
    for (idx, a) in out.amplitudes().iter().enumerate() {
        if idx >> n >= real_from {
            r[idx & (d - 1)] += a.norm_sqr() * d as f64;
        }
    }
    Ok(r)
}
