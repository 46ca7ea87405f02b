//! Dense state-vector simulation of a fully connected quantum GAN.
//!
//! The crate builds, from a small gate-level simulator, the quantum neuron
//! (inner product by phase estimation plus a phase-encoded activation), a
//! perceptron discriminator, an entangled `R_Y`/`CR_Y` generator, and the
//! adversarial training loop. The target distribution is a discretized SVI
//! log-price density.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod adversarial;
pub mod cli;
pub mod discriminator;
pub mod distribution;
pub mod error;
pub mod fourier;
pub mod generator;
pub mod metrics;
pub mod phase_estimation;
pub mod qneuron;
pub mod statevec;
pub mod svi;

pub use adversarial::{train, EpochRecord, TrainConfig, TrainTrace};
pub use discriminator::{DiscriminatorConfig, DiscriminatorWeights};
pub use distribution::{target_state, DiscreteDistribution};
pub use error::{QuganError, Result};
pub use generator::GeneratorParams;
pub use qneuron::{ActivationFn, WeightVector};
pub use statevec::{QuantumCircuit, StateVector, UnitaryGate};
pub use svi::SviParams;
