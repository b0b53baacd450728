//! Weak value and postselection probability across the preselection angle.
//!
//! `cargo run --example weak_value`

use std::f64::consts::PI;

use spacs::params::{postselection_probability, weak_value};

fn main() -> spacs::Result<()> {
    let delta = PI / 6.0;
    println!("{:>8} {:>10} {:>10} {:>10} {:>12}", "phi/pi", "Re w", "Im w", "|w|", "P_s");
    for k in 0..=9 {
        let phi = k as f64 * PI / 10.0;
        let w = weak_value(delta, phi)?;
        let ps = postselection_probability(phi)?;
        println!(
            "{:>8.2} {:>10.4} {:>10.4} {:>10.4} {:>12.6}",
            phi / PI,
            w.value.re,
            w.value.im,
            w.modulus(),
            ps
        );
    }
    // large weak values come with rare postselection
    match weak_value(delta, PI) {
        Err(e) => println!("phi = pi: {e}"),
        Ok(w) => println!("unexpected weak value {}", w.value),
    }
    Ok(())
}
