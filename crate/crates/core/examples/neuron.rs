//! A full quantum neuron: inner product, then activation by phase estimation.

use qugan::qneuron::neuron_forward;
use qugan::{ActivationFn, WeightVector};

fn main() -> qugan::Result<()> {
    let w = WeightVector::new(vec![0.5, -0.5])?;
    for act in [
        ActivationFn::Sigmoid,
        ActivationFn::HalfSigmoid,
        ActivationFn::Linear(0.25),
    ] {
        for x in [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]] {
            let probs = neuron_forward(&x, &w, &act, 2, 2, 1)?;
            let shown: Vec<String> = probs.iter().map(|p| format!("{p:.3}")).collect();
            println!("{:>12} x = {x:?}: [{}]", act.name(), shown.join(", "));
        }
    }
    Ok(())
}
