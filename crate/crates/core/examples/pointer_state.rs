//! Final pointer state for the figure preset: normalization, moments and
//! similarity to the initial state as the coupling grows.
//!
//! `cargo run --example pointer_state`

use spacs::fock::{self, final_pointer, moments};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let base = ExperimentParams::figure_preset();
    println!("alpha = {:.4}, w = {:.4}", base.alpha(), base.weak_value()?.value);
    println!("{:>5} {:>10} {:>10} {:>22} {:>10}", "s", "kappa^2", "<n>", "<a>", "F");
    for s in [0.0, 0.25, 0.5, 1.0, 2.0, 3.0] {
        let p = base.with_s(s);
        let out = final_pointer(&p)?;
        let m = moments(&out.state);
        let initial = fock::spacs(p.alpha(), p.trunc)?;
        println!(
            "{:>5.2} {:>10.6} {:>10.6} {:>22.6} {:>10.6}",
            s,
            out.kappa_sq(),
            m.n_mean,
            m.m_a,
            fock::fidelity(&initial, &out.state)?
        );
    }
    Ok(())
}
