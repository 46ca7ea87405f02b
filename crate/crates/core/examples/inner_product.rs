//! Quantum inner-product estimation, unsigned and signed.

use qugan::qneuron::{decode_signed, qip, qip_signed, qip_signed_distribution};
use qugan::WeightVector;

fn main() -> qugan::Result<()> {
    let x = [0.5, 0.75, 0.25];
    let w = WeightVector::new(vec![1.0, 1.0, 1.0])?;
    // x̃ᵀw = 1.5 with two bits per input
    let r = qip(&x, &w, 3, 2)?;
    println!(
        "unsigned estimate {}  distribution {:?}",
        r.estimate, r.distribution
    );

    let w = WeightVector::new(vec![1.0, -1.0, 0.5])?;
    let m = 3;
    println!("signed estimate   {}", qip_signed(&x, &w, m, 2)?);
    for (k, p) in qip_signed_distribution(&x, &w, m, 2)?.iter().enumerate() {
        if *p > 1e-3 {
            println!("  readout {:+.0}  p = {p:.4}", decode_signed(k, m));
        }
    }
    Ok(())
}
