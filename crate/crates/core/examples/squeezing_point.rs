//! Squeezing witnesses at one point from both backends.
//!
//! `cargo run --example squeezing_point -- 1.0 0.5` (r, s)

use spacs::squeezing::{evaluate, Backend};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>());
    let r = args.next().transpose().ok().flatten().unwrap_or(1.0);
    let s = args.next().transpose().ok().flatten().unwrap_or(0.5);
    let p = ExperimentParams::figure_preset().with_r(r).with_s(s).validate()?;
    for backend in [Backend::Oracle, Backend::Printed] {
        let rep = evaluate(&p, backend)?;
        println!("[{backend}]");
        println!("  s_os      = {:.10}", rep.s_os);
        println!("  s_ass     = {:.10}", rep.s_ass);
        println!("  var_x_min = {:.10}", rep.var_x_min);
        println!("  var_y_min = {:.10}", rep.var_y_min);
        println!("  n_mean    = {:.10}", rep.n_mean);
        if let Some(f) = rep.fidelity_to_initial {
            println!("  fidelity  = {f:.10}");
        }
    }
    Ok(())
}
