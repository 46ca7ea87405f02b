//! Score and gradients for a fixed generator and discriminator.

use qugan::adversarial::{grad_theta, grad_w, score};
use qugan::svi::discretize;
use qugan::{target_state, DiscriminatorConfig, DiscriminatorWeights, GeneratorParams, SviParams};

fn main() -> qugan::Result<()> {
    let n = 3;
    let target = target_state(&discretize(&SviParams::REFERENCE, n)?.distribution);
    let cfg = DiscriminatorConfig::for_qubits(n);
    let theta = GeneratorParams::new(vec![0.9, 0.3, 1.2, 0.5, 0.7, 0.2])?;
    let w = DiscriminatorWeights::new(vec![0.8, -0.3, 0.4])?;

    println!("S        = {:.6}", score(&theta, &w, &target, &cfg)?);
    println!("dS/dθ    = {:?}", grad_theta(&theta, &w, &target, &cfg)?);
    println!("dS/dw    = {:?}", grad_w(&theta, &w, &target, &cfg, 0.5)?);
    Ok(())
}
