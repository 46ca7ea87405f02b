//! Label probabilities of the discriminator on every basis input.

use qugan::discriminator::{basis_real_probabilities, label_real_probability};
use qugan::{DiscriminatorConfig, DiscriminatorWeights, StateVector};

fn main() -> qugan::Result<()> {
    let n = 3;
    let cfg = DiscriminatorConfig::for_qubits(n);
    let w = DiscriminatorWeights::new(vec![1.0, 0.5, -0.5])?;
    println!("m1 = {}, m2 = {}, {} wires", cfg.m1, cfg.m2, cfg.width(n));

    let r = basis_real_probabilities(&w, &cfg, n)?;
    for (j, rj) in r.iter().enumerate() {
        println!("  |{j:03b}>  P(Real) = {rj:.4}");
    }

    let v = StateVector::from_real(&[0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.0, 0.0])?;
    println!(
        "superposition P(Real) = {:.4}",
        label_real_probability(&w, &cfg, &v)?
    );
    Ok(())
}
