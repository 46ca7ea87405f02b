//! Build a Bell pair, read marginals and projector probabilities.

use qugan::statevec::{hadamard, pauli_x, Projector, QuantumCircuit, StateVector};

fn main() -> qugan::Result<()> {
    let mut c = QuantumCircuit::new(2)?;
    c.push(hadamard(), &[0], &[])?;
    c.push(pauli_x(), &[1], &[0])?;
    let bell = c.run(&StateVector::zero(2)?)?;

    println!("amplitudes  {:?}", bell.amplitudes());
    println!(
        "P(q0 = 1)   {:.6}",
        bell.outcome_probability(Projector::new(0, true))?
    );
    println!("marginal q1 {:?}", bell.marginal(1, 1)?);

    // the inverse circuit undoes it
    let back = c.inverse().run(&bell)?;
    println!("round trip  {:?}", back.probabilities());
    Ok(())
}
