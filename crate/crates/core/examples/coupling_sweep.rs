//! Ordinary and amplitude-squared squeezing against the coupling for the
//! four weak values; writes `fig1a.csv` and prints where each curve dips.
//!
//! `cargo run --release --example coupling_sweep -- [out-dir]`

use std::path::PathBuf;

use spacs::io::commands::{cmd_fig, FigOptions};
use spacs::io::{FigSeries, Table};
use spacs::squeezing::{Backend, Exec};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("spacs"));
    let out = dir.join("fig1a.csv");
    cmd_fig(
        FigSeries::Fig1a,
        &FigOptions::default(),
        &ExperimentParams::figure_preset(),
        Backend::Oracle,
        Exec::Parallel,
        &out,
    )?;
    let t = Table::from_csv_str(&std::fs::read_to_string(&out)?)?;
    let col = |n: &str| t.column(n).unwrap();
    let (phi, s, sos, sass) = (col("phi"), col("s"), col("s_os"), col("s_ass"));
    let num = |row: &Vec<spacs::io::Cell>, c: usize| row[c].as_f64().unwrap();

    let mut phis: Vec<f64> = t.rows.iter().map(|r| num(r, phi)).collect();
    phis.dedup();
    for ph in phis {
        let rows: Vec<_> = t.rows.iter().filter(|r| num(r, phi) == ph).collect();
        let min_by = |c: usize| {
            rows.iter()
                .map(|r| (num(r, s), num(r, c)))
                .fold((0.0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
        };
        let (so, vo) = min_by(sos);
        let (sa, va) = min_by(sass);
        println!(
            "phi = {:.4}: min s_os {vo:+.4} at s = {so:.2}, min s_ass {va:+.4} at s = {sa:.2}",
            ph
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}
