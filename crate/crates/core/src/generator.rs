//! The entangled generator and the exact conditional-Bernoulli loader.
//!
//! Parametric architecture on wires `0..n` (wire `i` is qubit `i + 1`):
//!
//! * `R_Y(θ₁)` on wire 0;
//! * for `k = 2..=n`: `CR_Y(θ_{2k−2})` on wire `k−1` controlled by wire `k−2`,
//!   then `X` on the control, `CR_Y(θ_{2k−1})`, `X` again, so the target is
//!   rotated by one angle when the previous qubit is `1` and by the other
//!   when it is `0`;
//! * a mixing layer `R_Y(θ_{2n−1+j})` on wire `j+1`, `j = 1..=n−2`.
//!
//! This is `3n − 3` parameters (9 at `n = 4`), one for `n = 1`. Each qubit only
//! conditions on its predecessor; the exact loader conditions on the whole
//! prefix.

use serde::{Deserialize, Serialize};

use crate::distribution::DiscreteDistribution;
use crate::error::{QuganError, Result};
use crate::statevec::{cry, pauli_x, ry, QuantumCircuit, StateVector};

/// Number of generator parameters for `n` qubits.
pub fn num_params(n: usize) -> usize {
    if n <= 1 {
        1
    } else {
        3 * n - 3
    }
}

/// How a parameter enters the circuit, which fixes its shift rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Ry,
    Cry,
}

/// Kind of every parameter, in order.
pub fn param_kinds(n: usize) -> Vec<ParamKind> {
    let mut kinds = vec![ParamKind::Ry];
    for _ in 2..=n {
        kinds.extend([ParamKind::Cry, ParamKind::Cry]);
    }
    kinds.extend(std::iter::repeat_n(ParamKind::Ry, n.saturating_sub(2)));
    kinds
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    thetas: Vec<f64>,
}

impl GeneratorParams {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if let Some(&bad) = thetas.iter().find(|t| !t.is_finite()) {
            return Err(QuganError::OutOfDomain {
                value: bad,
                domain: "finite angles",
            });
        }
        Ok(Self { thetas })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            thetas: vec![0.0; num_params(n)],
        }
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    /// Copy with coordinate `i` moved by `delta`.
    pub fn shifted(&self, i: usize, delta: f64) -> Self {
        let mut thetas = self.thetas.clone();
        thetas[i] += delta;
        Self { thetas }
    }
}

fn check_len(n: usize, params: &GeneratorParams) -> Result<()> {
    if n == 0 {
        return Err(QuganError::InvalidArgument("generator needs n ≥ 1".into()));
    }
    if params.len() != num_params(n) {
        return Err(QuganError::DimensionMismatch {
            expected: num_params(n),
            actual: params.len(),
        });
    }
    Ok(())
}

pub fn build_parametric_circuit(n: usize, params: &GeneratorParams) -> Result<QuantumCircuit> {
    check_len(n, params)?;
    let t = params.thetas();
    let mut c = QuantumCircuit::new(n)?;
    c.push(ry(t[0]), &[0], &[])?;
    for k in 2..=n {
        let (ctrl, tgt) = (k - 2, k - 1);
        c.push(cry(t[2 * k - 3]), &[ctrl, tgt], &[])?;
        c.push(pauli_x(), &[ctrl], &[])?;
        c.push(cry(t[2 * k - 2]), &[ctrl, tgt], &[])?;
        c.push(pauli_x(), &[ctrl], &[])?;
    }
    for j in 1..=n.saturating_sub(2) {
        c.push(ry(t[2 * n - 2 + j]), &[j + 1], &[])?;
    }
    Ok(c)
}

/// `|v_θ⟩`: the parametric circuit applied to `|0…0⟩`.
pub fn generate_state(n: usize, params: &GeneratorParams) -> Result<StateVector> {
    build_parametric_circuit(n, params)?.run(&StateVector::zero(n)?)
}

/// Angles of the exact loader. `levels[k][x]` rotates qubit `k` given that the
/// first `k` qubits read the prefix `x` (most significant first).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalAngles {
    levels: Vec<Vec<f64>>,
}

impl ConditionalAngles {
    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }

    pub fn num_qubits(&self) -> usize {
        self.levels.len()
    }

    pub fn angle(&self, depth: usize, prefix: usize) -> f64 {
        self.levels[depth][prefix]
    }
}

/// `θ = 2 arccos √q` with `q = P[X_k = 0 | prefix]`; prefixes of zero mass
/// take `q = 1`.
pub fn exact_angles(target: &DiscreteDistribution) -> ConditionalAngles {
    let n = target.n_qubits();
    let p = target.masses();
    let levels = (0..n)
        .map(|k| {
            // each prefix of length k owns a block of 2^{n−k} consecutive outcomes
            let block = 1usize << (n - k);
            (0..1usize << k)
                .map(|prefix| {
                    let cell = &p[prefix * block..(prefix + 1) * block];
                    let total: f64 = cell.iter().sum();
                    let zeros: f64 = cell[..block / 2].iter().sum();
                    let q = if total > 0.0 {
                        (zeros / total).clamp(0.0, 1.0)
                    } else {
                        1.0
                    };
                    2.0 * q.sqrt().acos()
                })
                .collect()
        })
        .collect();
    ConditionalAngles { levels }
}

/// Multi-controlled `R_Y` per prefix, with `X` conjugation on the zero bits.
pub fn build_exact_circuit(angles: &ConditionalAngles) -> Result<QuantumCircuit> {
    let n = angles.num_qubits();
    let mut c = QuantumCircuit::new(n)?;
    for (k, level) in angles.levels().iter().enumerate() {
        let controls: Vec<usize> = (0..k).collect();
        for (prefix, &theta) in level.iter().enumerate() {
            if theta == 0.0 {
                continue;
            }
            let zero_bits: Vec<usize> =
                (0..k).filter(|&b| prefix >> (k - 1 - b) & 1 == 0).collect();
            for &b in &zero_bits {
                c.push(pauli_x(), &[b], &[])?;
            }
            c.push(ry(theta), &[k], &controls)?;
            for &b in &zero_bits {
                c.push(pauli_x(), &[b], &[])?;
            }
        }
    }
    Ok(c)
}

/// Parametric angles reproducing `angles` exactly, available for `n ≤ 2`
/// where the architecture conditions on the full prefix.
pub fn from_exact_angles(angles: &ConditionalAngles) -> Result<GeneratorParams> {
    match angles.levels() {
        [root] => GeneratorParams::new(vec![root[0]]),
        [root, second] => GeneratorParams::new(vec![root[0], second[1], second[0]]),
        _ => Err(QuganError::InvalidArgument(
            "parametric generator is exact only for n ≤ 2".into(),
        )),
    }
}
