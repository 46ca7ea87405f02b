//! The SVI implied density and its discretization onto 4 qubits.

use qugan::svi::{density, discretize, total_variance};
use qugan::SviParams;

fn main() -> qugan::Result<()> {
    let p = SviParams::REFERENCE;
    for k in [-0.5, 0.0, 0.3, 0.5] {
        println!(
            "k = {k:+.1}  w = {:.5}  density = {:.4}",
            total_variance(&p, k)?,
            density(&p, k)?
        );
    }
    let d = discretize(&p, 4)?;
    println!("truncated mass {:.3e}", d.truncated_mass);
    for (i, m) in d.distribution.masses().iter().enumerate() {
        println!(
            "  [{:+.3}, {:+.3})  {m:.5}",
            d.bin_edges[i],
            d.bin_edges[i + 1]
        );
    }
    Ok(())
}
