//! Adversarial training on the 4-qubit SVI target, several seeds.

use qugan::svi::discretize;
use qugan::{train, SviParams, TrainConfig};

fn main() -> qugan::Result<()> {
    let target = discretize(&SviParams::REFERENCE, 4)?.distribution;
    for seed in 0..3 {
        let mut cfg = TrainConfig::new(4);
        cfg.seed = seed;
        let trace = train(&cfg, &target)?;
        let last = trace.last();
        println!(
            "seed {seed}: F {:.4} -> {:.4}, KL {:.4} -> {:.4}",
            trace.initial.fidelity, last.fidelity, trace.initial.kl, last.kl
        );
    }
    Ok(())
}
