//! QFT of basis states and the binary-fraction encoding of a phase.

use qugan::fourier::{encode_fraction, inverse_qft, qft};
use qugan::StateVector;

fn main() -> qugan::Result<()> {
    for j in 0..4 {
        let y = qft(&StateVector::basis(2, j)?);
        let row: Vec<String> = y
            .amplitudes()
            .iter()
            .map(|a| format!("{:+.3}{:+.3}i", a.re, a.im))
            .collect();
        println!("QFT|{j:02b}> = [{}]", row.join(", "));
    }

    let x = StateVector::from_real(&[0.6, 0.0, 0.8, 0.0])?;
    let back = inverse_qft(&qft(&x));
    println!("round trip {:?}", back.probabilities());

    let f = encode_fraction(0.8125, 4)?;
    println!("0.8125 -> bits {:?} (index {})", f.bits(), f.index());
    Ok(())
}
