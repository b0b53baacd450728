//! Displacement in a truncated Fock space: vacuum to coherent state,
//! round trip, and the truncation check.
//!
//! `cargo run --example displacement`

use spacs::fock::{coherent, displace, fidelity, FockVector};
use spacs::C64;

fn main() -> spacs::Result<()> {
    let beta = C64::from_polar(1.5, 0.4);
    let vac = FockVector::vacuum(128)?;
    let shifted = displace(beta, &vac)?;
    let target = coherent(beta, 128)?;
    println!("|<beta|D(beta)|0>|^2 = {:.15}", fidelity(&target, &shifted)?);

    let back = displace(-beta, &shifted)?;
    println!("round trip fidelity  = {:.15}", fidelity(&vac, &back)?);

    let small = FockVector::vacuum(16)?;
    match displace(C64::new(4.0, 0.0), &small) {
        Ok(_) => println!("16 levels held |beta| = 4"),
        Err(e) => println!("16 levels, |beta| = 4: {e}"),
    }
    Ok(())
}
