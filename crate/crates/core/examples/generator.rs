//! The parametric generator and the exact amplitude-encoding circuit.

use qugan::generator::{build_exact_circuit, exact_angles, generate_state, num_params};
use qugan::metrics::fidelity;
use qugan::{target_state, DiscreteDistribution, GeneratorParams, StateVector};

fn main() -> qugan::Result<()> {
    let p = DiscreteDistribution::new(vec![0.05, 0.15, 0.3, 0.2, 0.1, 0.1, 0.06, 0.04])?;
    let v = target_state(&p);

    let angles = exact_angles(&p);
    let exact = build_exact_circuit(&angles)?.run(&StateVector::zero(3)?)?;
    println!("exact circuit fidelity {:.12}", fidelity(&exact, &v)?);

    let n = 3;
    let theta = GeneratorParams::new(vec![0.4; num_params(n)])?;
    let g = generate_state(n, &theta)?;
    println!(
        "{} parameters, generated {:?}",
        num_params(n),
        g.probabilities()
    );
    println!("fidelity to target {:.4}", fidelity(&g, &v)?);
    Ok(())
}
