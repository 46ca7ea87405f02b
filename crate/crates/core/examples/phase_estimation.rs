//! Phase estimation on a diagonal unitary, exact and sampled.

use qugan::phase_estimation::{estimate_phase, qpe_distribution, QpeConfig};
use qugan::statevec::diagonal;
use qugan::StateVector;

fn main() -> qugan::Result<()> {
    let eig = StateVector::basis(1, 1)?;

    // a phase with a finite binary expansion is read exactly
    let u = diagonal(&[0.0, 0.375])?;
    let probs = qpe_distribution(&u, &eig, 3)?;
    println!(
        "phi = 0.375, m = 3: {:?}",
        probs.iter().map(|p| format!("{p:.3}")).collect::<Vec<_>>()
    );

    // otherwise the readout concentrates near it
    let phi = 1.0 / 3.0;
    let cfg = QpeConfig::sized(4, 0.05)?;
    let u = diagonal(&[0.0, phi])?;
    println!("phi = 1/3 with {} ancillas:", cfg.ancillas);
    for seed in 0..5 {
        println!(
            "  seed {seed}: {:.5}",
            estimate_phase(&u, &eig, &cfg, seed)?
        );
    }
    Ok(())
}
