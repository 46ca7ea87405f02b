//! The quantum neuron: binary input encoding, the inner-product kernel
//! `U_{w,m}`, inner-product estimation (plain and signed), and the activation
//! stage built from phase estimation over a diagonal unitary.
//!
//! Register layout used throughout: ancillas first, then data. Component `j`
//! of an input encoded with precision `p` occupies data wires
//! `j·p .. (j+1)·p`, most significant bit first.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QuganError, Result};
use crate::fourier::{encode_fraction, inverse_qft_gate, BinaryFraction};
use crate::phase_estimation::{append_qpe, sample_index};
use crate::statevec::{crz, diagonal, hadamard, QuantumCircuit, StateVector};

/// A classical vector written on `n·p` qubits as a computational basis state.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedInput {
    values: Vec<f64>,
    precision: usize,
    fractions: Vec<BinaryFraction>,
    register: StateVector,
}

impl EncodedInput {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn fractions(&self) -> &[BinaryFraction] {
        &self.fractions
    }

    /// The `p`-bit approximations `x̃_j`.
    pub fn approximations(&self) -> Vec<f64> {
        self.fractions.iter().map(BinaryFraction::value).collect()
    }

    pub fn register(&self) -> &StateVector {
        &self.register
    }

    /// Basis index of the register.
    pub fn index(&self) -> usize {
        self.fractions
            .iter()
            .fold(0, |acc, f| acc << self.precision | f.index())
    }

    pub fn num_qubits(&self) -> usize {
        self.values.len() * self.precision
    }
}

pub fn encode_input(x: &[f64], precision: usize) -> Result<EncodedInput> {
    if x.is_empty() {
        return Err(QuganError::InvalidArgument("empty input vector".into()));
    }
    let fractions = x
        .iter()
        .map(|&v| encode_fraction(v, precision))
        .collect::<Result<Vec<_>>>()?;
    let width = x.len() * precision;
    let index = fractions
        .iter()
        .fold(0, |acc, f| acc << precision | f.index());
    Ok(EncodedInput {
        values: x.to_vec(),
        precision,
        fractions,
        register: StateVector::basis(width, index)?,
    })
}

/// Weights `w ∈ [−1, 1]^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(QuganError::InvalidArgument("empty weight vector".into()));
        }
        if let Some(&bad) = w.iter().find(|v| !(v.abs() <= 1.0)) {
            return Err(QuganError::OutOfDomain {
                value: bad,
                domain: "[-1, 1]",
            });
        }
        Ok(Self(w))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Activation functions. [`build_activation`] evaluates them on the integer
/// index of its input register; outputs must lie in `[0, 1)`.
#[derive(Clone, Copy, Debug)]
pub enum ActivationFn {
    /// `(1 + e^{−x})^{−1}`.
    Sigmoid,
    /// `σ(x)/2`, so a single activation ancilla reads `1` with probability
    /// `sin²(π σ(x)/2)`, increasing in `x`.
    HalfSigmoid,
    /// `x ↦ scale · x`.
    Linear(f64),
    Constant(f64),
    Custom(fn(f64) -> f64),
}

impl ActivationFn {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ActivationFn::Sigmoid => 1.0 / (1.0 + (-x).exp()),
            ActivationFn::HalfSigmoid => 0.5 / (1.0 + (-x).exp()),
            ActivationFn::Linear(scale) => scale * x,
            ActivationFn::Constant(c) => c,
            ActivationFn::Custom(f) => f(x),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ActivationFn::Sigmoid => "sigmoid",
            ActivationFn::HalfSigmoid => "half_sigmoid",
            ActivationFn::Linear(_) => "linear",
            ActivationFn::Constant(_) => "constant",
            ActivationFn::Custom(_) => "custom",
        }
    }
}

pub(crate) fn check_phases(values: &[f64]) -> Result<()> {
    match values.iter().find(|v| !(0.0..1.0).contains(*v)) {
        Some(&bad) => Err(QuganError::OutOfDomain {
            value: bad,
            domain: "activation range [0, 1)",
        }),
        None => Ok(()),
    }
}

/// Appends `U_{w,m}`: for the ancilla of binary weight `2^b`, the block
/// `Π_j Π_k cRz(scale·w_j / 2^{m+k})` (ancilla → data bit `x_{j,k}`) repeated
/// `2^b` times. After Hadamards on the ancillas this writes the phase
/// `e^{2iπ j·scale·x̃ᵀw / 2^m}` on ancilla basis state `|j⟩`.
pub(crate) fn append_u_wm(
    circuit: &mut QuantumCircuit,
    weights: &[f64],
    scale: f64,
    ancillas: &[usize],
    data: &[usize],
    precision: usize,
) -> Result<()> {
    if data.len() != weights.len() * precision {
        return Err(QuganError::DimensionMismatch {
            expected: weights.len() * precision,
            actual: data.len(),
        });
    }
    let m = ancillas.len();
    for (pos, &anc) in ancillas.iter().enumerate() {
        let repetitions = 1usize << (m - 1 - pos);
        for _ in 0..repetitions {
            for (j, &w) in weights.iter().enumerate() {
                for k in 1..=precision {
                    let angle = scale * w / 2f64.powi((m + k) as i32);
                    circuit.push(crz(angle), &[anc, data[j * precision + k - 1]], &[])?;
                }
            }
        }
    }
    Ok(())
}

/// `U_{w,m}` on `m` ancillas followed by `n·p` data wires.
pub fn build_u_wm(w: &WeightVector, ancillas: usize, precision: usize) -> Result<QuantumCircuit> {
    if ancillas == 0 || precision == 0 {
        return Err(QuganError::InvalidArgument(
            "ancillas and precision must be ≥ 1".into(),
        ));
    }
    let width = ancillas + w.len() * precision;
    let mut c = QuantumCircuit::new(width)?;
    let anc: Vec<usize> = (0..ancillas).collect();
    let data: Vec<usize> = (ancillas..width).collect();
    append_u_wm(&mut c, w.as_slice(), 1.0, &anc, &data, precision)?;
    Ok(c)
}

/// Full inner-product circuit: `H^{⊗m}`, `U_{w,m}` (weights multiplied by
/// `scale`), inverse QFT on the ancillas.
pub fn qip_circuit(
    w: &WeightVector,
    ancillas: usize,
    precision: usize,
    scale: f64,
) -> Result<QuantumCircuit> {
    let width = ancillas + w.len() * precision;
    let mut c = QuantumCircuit::new(width)?;
    let anc: Vec<usize> = (0..ancillas).collect();
    let data: Vec<usize> = (ancillas..width).collect();
    for &a in &anc {
        c.push(hadamard(), &[a], &[])?;
    }
    append_u_wm(&mut c, w.as_slice(), scale, &anc, &data, precision)?;
    c.push(inverse_qft_gate(ancillas), &anc, &[])?;
    Ok(c)
}

fn check_lengths(x: &[f64], w: &WeightVector) -> Result<()> {
    if x.len() != w.len() {
        return Err(QuganError::DimensionMismatch {
            expected: w.len(),
            actual: x.len(),
        });
    }
    Ok(())
}

fn run_qip(x: &[f64], w: &WeightVector, m: usize, p: usize, scale: f64) -> Result<Vec<f64>> {
    check_lengths(x, w)?;
    if m == 0 {
        return Err(QuganError::InvalidArgument(
            "need at least one ancilla".into(),
        ));
    }
    let input = encode_input(x, p)?;
    let state = StateVector::zero(m)?.tensor(input.register())?;
    qip_circuit(w, m, p, scale)?.run(&state)?.marginal(0, m)
}

/// Index of the largest probability; ties (within `1e-12`) go to the lowest index.
pub fn mode(probs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p > probs[best] + 1e-12 {
            best = i;
        }
    }
    best
}

/// Result of an inner-product estimation: the most likely readout and the
/// exact readout distribution.
#[derive(Clone, Debug, PartialEq)]
pub struct QipResult {
    pub estimate: f64,
    pub distribution: Vec<f64>,
}

/// Inner-product estimation for `x̃ᵀw ∈ {0, …, 2^m − 1}`. For other values the
/// returned estimate is the readout mode, the nearest point of the register
/// grid modulo `2^m`.
pub fn qip(x: &[f64], w: &WeightVector, ancillas: usize, precision: usize) -> Result<QipResult> {
    let distribution = run_qip(x, w, ancillas, precision, 1.0)?;
    Ok(QipResult {
        estimate: mode(&distribution) as f64,
        distribution,
    })
}

/// Single simulated measurement of the inner-product register.
pub fn qip_sample(
    x: &[f64],
    w: &WeightVector,
    ancillas: usize,
    precision: usize,
    seed: u64,
) -> Result<f64> {
    let probs = run_qip(x, w, ancillas, precision, 1.0)?;
    Ok(sample_index(&probs, &mut ChaCha8Rng::seed_from_u64(seed)) as f64)
}

/// Maps a readout `k` of the halved-phase scheme to a signed inner product:
/// `φ = k/2^m ∈ [0, ½)` gives `2^{m+1} φ`, `φ ∈ [½, 1)` gives `2^{m+1}(φ − 1)`.
pub fn decode_signed(k: usize, ancillas: usize) -> f64 {
    let half = 1usize << (ancillas - 1);
    if k < half {
        2.0 * k as f64
    } else {
        2.0 * (k as f64 - (1usize << ancillas) as f64)
    }
}

/// `n < 2^m`, which keeps the readout `φ = ½` out of reach.
pub fn check_signed_capacity(inputs: usize, ancillas: usize) -> Result<()> {
    if ancillas == 0 || ancillas >= usize::BITS as usize || inputs >= 1usize << ancillas {
        return Err(QuganError::AmbiguousPhase { ancillas, inputs });
    }
    Ok(())
}

/// Smallest ancilla count satisfying [`check_signed_capacity`].
pub fn min_signed_ancillas(inputs: usize) -> usize {
    (usize::BITS - inputs.leading_zeros()) as usize
}

/// Readout distribution of the halved-phase (signed) scheme.
pub fn qip_signed_distribution(
    x: &[f64],
    w: &WeightVector,
    ancillas: usize,
    precision: usize,
) -> Result<Vec<f64>> {
    check_signed_capacity(w.len(), ancillas)?;
    run_qip(x, w, ancillas, precision, 0.5)
}

/// Signed inner-product estimate for `w ∈ [−1, 1]^n`; resolution is 2.
pub fn qip_signed(x: &[f64], w: &WeightVector, ancillas: usize, precision: usize) -> Result<f64> {
    let d = qip_signed_distribution(x, w, ancillas, precision)?;
    Ok(decode_signed(mode(&d), ancillas))
}

/// Phase estimation over `Diag(e^{2iπ f(0)}, …, e^{2iπ f(2^q − 1)})`: `m1`
/// ancillas followed by the `q` input wires.
pub fn build_activation(
    act: &ActivationFn,
    input_qubits: usize,
    ancillas: usize,
) -> Result<QuantumCircuit> {
    let phases: Vec<f64> = (0..1usize << input_qubits)
        .map(|x| act.eval(x as f64))
        .collect();
    build_activation_table(&phases, ancillas)
}

/// As [`build_activation`] with the activation values given explicitly.
pub fn build_activation_table(phases: &[f64], ancillas: usize) -> Result<QuantumCircuit> {
    check_phases(phases)?;
    let u = diagonal(phases)?;
    let q = u.arity();
    let mut c = QuantumCircuit::new(ancillas + q)?;
    let anc: Vec<usize> = (0..ancillas).collect();
    let reg: Vec<usize> = (ancillas..ancillas + q).collect();
    append_qpe(&mut c, &u, &anc, &reg)?;
    Ok(c)
}

/// The single neuron: encode `x`, estimate `x̃ᵀw` on `m2` ancillas, then
/// phase-estimate `act(k)` of that register's index `k` on `m1` ancillas.
/// Returns the readout distribution of the activation register only.
pub fn neuron_forward(
    x: &[f64],
    w: &WeightVector,
    act: &ActivationFn,
    m1: usize,
    m2: usize,
    precision: usize,
) -> Result<Vec<f64>> {
    check_lengths(x, w)?;
    if m1 == 0 || m2 == 0 {
        return Err(QuganError::InvalidArgument(
            "ancilla registers must be non-empty".into(),
        ));
    }
    let input = encode_input(x, precision)?;
    let data_width = input.num_qubits();
    let width = m1 + m2 + data_width;
    let act_wires: Vec<usize> = (0..m1).collect();
    let ip_wires: Vec<usize> = (m1..m1 + m2).collect();
    let data_wires: Vec<usize> = (m1 + m2..width).collect();

    let mut c = QuantumCircuit::new(width)?;
    for &a in &ip_wires {
        c.push(hadamard(), &[a], &[])?;
    }
    append_u_wm(&mut c, w.as_slice(), 1.0, &ip_wires, &data_wires, precision)?;
    c.push(inverse_qft_gate(m2), &ip_wires, &[])?;

    let phases: Vec<f64> = (0..1usize << m2).map(|k| act.eval(k as f64)).collect();
    check_phases(&phases)?;
    append_qpe(&mut c, &diagonal(&phases)?, &act_wires, &ip_wires)?;

    let state = StateVector::zero(m1 + m2)?.tensor(input.register())?;
    c.run(&state)?.marginal(0, m1)
}
