//! Dense state-vector simulation.
//!
//! Qubit 0 is the most significant bit of a basis index: on `n` qubits the
//! basis state `|j_1 j_2 … j_n⟩` has index `Σ j_i 2^(n-i)`. Every module in
//! the crate uses this ordering, including the local ordering of a gate's
//! target wires (the first target is the most significant bit of the gate's
//! matrix index).

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;

use num_complex::Complex64;

use crate::error::{QuganError, Result};

/// Largest register the simulator will allocate.
pub const MAX_QUBITS: usize = 20;

/// Tolerance used when validating normalization and unitarity.
pub const VALIDATION_TOL: f64 = 1e-10;

pub type Amplitude = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `e^{2iπ x}`.
pub(crate) fn cis_turns(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 {
        return Err(QuganError::InvalidArgument(
            "a register needs at least one qubit".into(),
        ));
    }
    if num_qubits > MAX_QUBITS {
        return Err(QuganError::TooManyQubits(num_qubits));
    }
    Ok(())
}

/// A pure state of `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_width(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(QuganError::IndexOutOfRange { index, num_qubits });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { num_qubits, amps })
    }

    /// Builds a state from explicit amplitudes. The length must be a power of
    /// two, every entry finite and the squared norm within `1e-10` of one.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuganError::DimensionMismatch {
                expected: len.next_power_of_two().max(2),
                actual: len,
            });
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_width(num_qubits)?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuganError::InvalidArgument("non-finite amplitude".into()));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > VALIDATION_TOL {
            return Err(QuganError::NotNormalized(norm_sqr));
        }
        Ok(Self { num_qubits, amps })
    }

    /// Convenience constructor for real amplitude vectors.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::from_amplitudes(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// `|+⟩ = (|0⟩ + |1⟩)/√2`.
    pub fn plus() -> Self {
        Self {
            num_qubits: 1,
            amps: vec![Complex64::new(FRAC_1_SQRT_2, 0.0); 2],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born-rule probabilities of every basis outcome.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `self ⊗ other`, with `self` on the leading (most significant) wires.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_width(self.num_qubits + other.num_qubits)?;
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amps,
        })
    }

    /// `⟨self|other⟩ = Σ conj(self_j) other_j`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(QuganError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Applies one operation and returns the new state.
    pub fn apply(&self, op: &CircuitOp) -> Result<StateVector> {
        let mut out = self.clone();
        out.apply_in_place(op)?;
        Ok(out)
    }

    pub(crate) fn apply_in_place(&mut self, op: &CircuitOp) -> Result<()> {
        op.validate(self.num_qubits)?;
        apply_raw(&mut self.amps, self.num_qubits, op);
        Ok(())
    }

    /// `‖Π state‖²` for the projector onto `outcome` of one qubit.
    pub fn outcome_probability(&self, projector: Projector) -> Result<f64> {
        if projector.qubit >= self.num_qubits {
            return Err(QuganError::InvalidWires(format!(
                "projector qubit {} on a {}-qubit state",
                projector.qubit, self.num_qubits
            )));
        }
        let bit = 1usize << (self.num_qubits - 1 - projector.qubit);
        let want = if projector.outcome { bit } else { 0 };
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == want)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Outcome distribution of a contiguous block of qubits
    /// `first..first + count`, with the rest traced out.
    pub fn marginal(&self, first: usize, count: usize) -> Result<Vec<f64>> {
        if count == 0 || first + count > self.num_qubits {
            return Err(QuganError::InvalidWires(format!(
                "register {}..{} on a {}-qubit state",
                first,
                first + count,
                self.num_qubits
            )));
        }
        let shift = self.num_qubits - first - count;
        let mask = (1usize << count) - 1;
        let mut out = vec![0.0; 1 << count];
        for (i, a) in self.amps.iter().enumerate() {
            out[(i >> shift) & mask] += a.norm_sqr();
        }
        Ok(out)
    }
}

/// Measurement projector `|outcome⟩⟨outcome|` on one qubit, identity elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Projector {
    pub qubit: usize,
    pub outcome: bool,
}

impl Projector {
    pub fn new(qubit: usize, outcome: bool) -> Self {
        Self { qubit, outcome }
    }
}

/// A unitary on `arity` qubits stored as a row-major `2^arity` square matrix.
#[derive(Clone, PartialEq)]
pub struct UnitaryGate {
    name: String,
    arity: usize,
    matrix: Vec<Complex64>,
}

impl fmt::Debug for UnitaryGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}q]", self.name, self.arity)
    }
}

impl UnitaryGate {
    /// Validated constructor for an arbitrary unitary.
    pub fn new(name: impl Into<String>, arity: usize, matrix: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << arity;
        if arity == 0 || matrix.len() != dim * dim {
            return Err(QuganError::DimensionMismatch {
                expected: dim * dim,
                actual: matrix.len(),
            });
        }
        let gate = Self {
            name: name.into(),
            arity,
            matrix,
        };
        let dev = gate.unitarity_deviation();
        if dev > VALIDATION_TOL {
            return Err(QuganError::NotUnitary(dev));
        }
        Ok(gate)
    }

    fn from_real(name: impl Into<String>, arity: usize, entries: &[f64]) -> Self {
        Self {
            name: name.into(),
            arity,
            matrix: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        1 << self.arity
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.dim() + col]
    }

    /// `max |(U U†)_{ij} − δ_ij|`.
    pub fn unitarity_deviation(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let mut acc = ZERO;
                for k in 0..d {
                    acc += self.matrix[i * d + k] * self.matrix[j * d + k].conj();
                }
                let expected = if i == j { ONE } else { ZERO };
                worst = worst.max((acc - expected).norm());
            }
        }
        worst
    }

    /// Applies the matrix to a vector of matching dimension.
    pub fn apply_to(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let d = self.dim();
        if v.len() != d {
            return Err(QuganError::DimensionMismatch {
                expected: d,
                actual: v.len(),
            });
        }
        Ok((0..d)
            .map(|r| (0..d).map(|c| self.matrix[r * d + c] * v[c]).sum())
            .collect())
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &UnitaryGate) -> Result<UnitaryGate> {
        if self.arity != other.arity {
            return Err(QuganError::DimensionMismatch {
                expected: self.arity,
                actual: other.arity,
            });
        }
        let d = self.dim();
        let mut m = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.matrix[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    m[i * d + j] += a * other.matrix[k * d + j];
                }
            }
        }
        Ok(UnitaryGate {
            name: format!("{}·{}", self.name, other.name),
            arity: self.arity,
            matrix: m,
        })
    }

    /// `U^exponent` by repeated squaring.
    pub fn power(&self, exponent: u64) -> UnitaryGate {
        let d = self.dim();
        let mut result = UnitaryGate {
            name: String::new(),
            arity: self.arity,
            matrix: (0..d * d)
                .map(|i| if i / d == i % d { ONE } else { ZERO })
                .collect(),
        };
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base).expect("same arity");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same arity");
            }
        }
        result.name = format!("{}^{}", self.name, exponent);
        result
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> UnitaryGate {
        let d = self.dim();
        let mut m = vec![ZERO; d * d];
        for i in 0..d {
            for j in 0..d {
                m[j * d + i] = self.matrix[i * d + j].conj();
            }
        }
        UnitaryGate {
            name: format!("{}†", self.name),
            arity: self.arity,
            matrix: m,
        }
    }
}

pub fn hadamard() -> UnitaryGate {
    let h = FRAC_1_SQRT_2;
    UnitaryGate::from_real("H", 1, &[h, h, h, -h])
}

pub fn pauli_x() -> UnitaryGate {
    UnitaryGate::from_real("X", 1, &[0.0, 1.0, 1.0, 0.0])
}

/// `R_Y(θ) = [[cos θ/2, −sin θ/2], [sin θ/2, cos θ/2]]`.
pub fn ry(theta: f64) -> UnitaryGate {
    let (s, c) = (theta / 2.0).sin_cos();
    UnitaryGate::from_real(format!("RY({theta})"), 1, &[c, -s, s, c])
}

/// Two-qubit controlled `R_Y(θ)`; the first wire is the control.
pub fn cry(theta: f64) -> UnitaryGate {
    let (s, c) = (theta / 2.0).sin_cos();
    #[rustfmt::skip]
    let m = [
        1.0, 0.0, 0.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, c,   -s,
        0.0, 0.0, s,   c,
    ];
    UnitaryGate::from_real(format!("CRY({theta})"), 2, &m)
}

/// Controlled phase `diag(1, 1, 1, e^{2iπα})`. Symmetric in its two wires.
pub fn crz(alpha: f64) -> UnitaryGate {
    let mut m = vec![ZERO; 16];
    m[0] = ONE;
    m[5] = ONE;
    m[10] = ONE;
    m[15] = cis_turns(alpha);
    UnitaryGate {
        name: format!("cRz({alpha})"),
        arity: 2,
        matrix: m,
    }
}

pub fn swap() -> UnitaryGate {
    #[rustfmt::skip]
    let m = [
        1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
    ];
    UnitaryGate::from_real("SWAP", 2, &m)
}

/// `Diag(e^{2iπ φ_0}, …, e^{2iπ φ_{2^q−1}})`, phases given in turns.
pub fn diagonal(phases: &[f64]) -> Result<UnitaryGate> {
    let len = phases.len();
    if len < 2 || !len.is_power_of_two() {
        return Err(QuganError::InvalidArgument(format!(
            "diagonal gate needs a power-of-two number of phases, got {len}"
        )));
    }
    if phases.iter().any(|p| !p.is_finite()) {
        return Err(QuganError::InvalidArgument("non-finite phase".into()));
    }
    let mut m = vec![ZERO; len * len];
    for (i, &p) in phases.iter().enumerate() {
        m[i * len + i] = cis_turns(p);
    }
    Ok(UnitaryGate {
        name: "Diag".into(),
        arity: len.trailing_zeros() as usize,
        matrix: m,
    })
}

/// A gate placed on concrete wires, active when every control wire is `|1⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitOp {
    pub gate: UnitaryGate,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

impl CircuitOp {
    pub fn new(gate: UnitaryGate, targets: Vec<usize>, controls: Vec<usize>) -> Self {
        Self {
            gate,
            targets,
            controls,
        }
    }

    pub fn validate(&self, width: usize) -> Result<()> {
        if self.targets.len() != self.gate.arity() {
            return Err(QuganError::InvalidWires(format!(
                "{:?} needs {} targets, got {}",
                self.gate,
                self.gate.arity(),
                self.targets.len()
            )));
        }
        let mut seen = vec![false; width];
        for &w in self.targets.iter().chain(&self.controls) {
            if w >= width {
                return Err(QuganError::InvalidWires(format!(
                    "wire {w} on a {width}-qubit register"
                )));
            }
            if seen[w] {
                return Err(QuganError::InvalidWires(format!("wire {w} used twice")));
            }
            seen[w] = true;
        }
        Ok(())
    }
}

fn apply_raw(amps: &mut [Complex64], n: usize, op: &CircuitOp) {
    let k = op.targets.len();
    let dim = 1usize << k;
    let bit = |q: usize| 1usize << (n - 1 - q);
    let target_mask: usize = op.targets.iter().map(|&q| bit(q)).fold(0, |a, b| a | b);
    let control_mask: usize = op.controls.iter().map(|&q| bit(q)).fold(0, |a, b| a | b);
    let offsets: Vec<usize> = (0..dim)
        .map(|s| {
            op.targets
                .iter()
                .enumerate()
                .filter(|(t, _)| s >> (k - 1 - t) & 1 == 1)
                .map(|(_, &q)| bit(q))
                .fold(0, |a, b| a | b)
        })
        .collect();
    let m = op.gate.matrix();
    let mut buf = vec![ZERO; dim];
    for base in 0..amps.len() {
        if base & target_mask != 0 || base & control_mask != control_mask {
            continue;
        }
        for (s, off) in offsets.iter().enumerate() {
            buf[s] = amps[base | off];
        }
        for (r, off) in offsets.iter().enumerate() {
            let row = &m[r * dim..(r + 1) * dim];
            amps[base | off] = row.iter().zip(&buf).map(|(a, b)| a * b).sum();
        }
    }
}

/// An ordered list of operations on a fixed register width.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuantumCircuit {
    num_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl QuantumCircuit {
    pub fn new(num_qubits: usize) -> Result<Self> {
        check_width(num_qubits)?;
        Ok(Self {
            num_qubits,
            ops: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push_op(&mut self, op: CircuitOp) -> Result<&mut Self> {
        op.validate(self.num_qubits)?;
        self.ops.push(op);
        Ok(self)
    }

    pub fn push(
        &mut self,
        gate: UnitaryGate,
        targets: &[usize],
        controls: &[usize],
    ) -> Result<&mut Self> {
        self.push_op(CircuitOp::new(gate, targets.to_vec(), controls.to_vec()))
    }

    /// Appends `other` with its wire `i` mapped to `wires[i]`.
    pub fn append(&mut self, other: &QuantumCircuit, wires: &[usize]) -> Result<&mut Self> {
        if wires.len() != other.num_qubits {
            return Err(QuganError::DimensionMismatch {
                expected: other.num_qubits,
                actual: wires.len(),
            });
        }
        for op in &other.ops {
            let map = |v: &Vec<usize>| v.iter().map(|&q| wires[q]).collect::<Vec<_>>();
            self.push_op(CircuitOp::new(
                op.gate.clone(),
                map(&op.targets),
                map(&op.controls),
            ))?;
        }
        Ok(self)
    }

    /// Left-to-right application of every operation.
    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        if input.num_qubits() != self.num_qubits {
            return Err(QuganError::DimensionMismatch {
                expected: self.num_qubits,
                actual: input.num_qubits(),
            });
        }
        let mut state = input.clone();
        for op in &self.ops {
            apply_raw(&mut state.amps, self.num_qubits, op);
        }
        Ok(state)
    }

    /// The full `2^n × 2^n` matrix of the circuit (row-major), built column by
    /// column from basis states.
    pub fn unitary_matrix(&self) -> Vec<Complex64> {
        let d = 1usize << self.num_qubits;
        let mut m = vec![ZERO; d * d];
        for col in 0..d {
            let out = self
                .run(&StateVector::basis(self.num_qubits, col).expect("in range"))
                .expect("width matches");
            for (row, a) in out.amps.iter().enumerate() {
                m[row * d + col] = *a;
            }
        }
        m
    }

    /// Inverse circuit: reversed order, every gate daggered.
    pub fn inverse(&self) -> QuantumCircuit {
        QuantumCircuit {
            num_qubits: self.num_qubits,
            ops: self
                .ops
                .iter()
                .rev()
                .map(|op| CircuitOp::new(op.gate.dagger(), op.targets.clone(), op.controls.clone()))
                .collect(),
        }
    }
}
