//! Adversarial training on a two-qubit toy distribution.

use qugan::{train, DiscreteDistribution, TrainConfig};

fn main() -> qugan::Result<()> {
    let target = DiscreteDistribution::new(vec![0.1, 0.2, 0.3, 0.4])?;
    let mut cfg = TrainConfig::new(2);
    cfg.lr_g = 10.0;
    let trace = train(&cfg, &target)?;
    for r in trace.records.iter().step_by(50) {
        println!(
            "epoch {:>3}  S = {:+.4}  F = {:.4}  KL = {:.4}",
            r.epoch, r.score, r.fidelity, r.kl
        );
    }
    let last = trace.last();
    println!("final F = {:.4}, θ = {:?}", last.fidelity, last.theta);
    Ok(())
}
