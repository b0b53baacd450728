//! Similarity to the initial state against the coherent amplitude for
//! several couplings; writes `fig3.csv`.
//!
//! `cargo run --release --example fidelity_sweep -- [out-dir]`

use std::path::PathBuf;

use spacs::io::commands::{cmd_fig, FigOptions};
use spacs::io::FigSeries;
use spacs::squeezing::{Backend, Exec};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("spacs"));
    let out = dir.join("fig3.csv");
    cmd_fig(
        FigSeries::Fig3,
        &FigOptions::default(),
        &ExperimentParams::figure_preset(),
        Backend::Oracle,
        Exec::Parallel,
        &out,
    )?;
    let text = std::fs::read_to_string(&out)?;
    for (i, line) in text.lines().enumerate() {
        // header and every half unit of r
        if i == 0 || (i - 1) % 25 == 0 {
            println!("{line}");
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}
