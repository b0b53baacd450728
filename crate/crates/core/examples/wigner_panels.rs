//! Wigner function for r in {0, 1, 2} and s in {0, 0.5, 2}: one CSV per
//! panel on the default [-4, 4]^2 grid, with extrema and normalization.
//!
//! `cargo run --release --example wigner_panels -- [out-dir]`

use std::path::PathBuf;

use spacs::io::{GridSpec, WignerGrid};
use spacs::squeezing::{Backend, Exec};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("spacs"));
    let spec = GridSpec::default();
    for r in [0.0, 1.0, 2.0] {
        for s in [0.0, 0.5, 2.0] {
            let p = ExperimentParams::figure_preset().with_r(r).with_s(s);
            let g = WignerGrid::evaluate(&p, Backend::Oracle, &spec, Exec::Parallel)?;
            let (xl, pl, lo) = g.argmin();
            let (xh, ph, hi) = g.argmax();
            let out = dir.join(format!("wigner_r{r}_s{s}.csv"));
            g.to_table().write_atomic(&out)?;
            println!(
                "r={r} s={s}: min {lo:+.4} at ({xl:+.2}, {pl:+.2}), max {hi:+.4} at ({xh:+.2}, {ph:+.2}), sum {:.6}",
                g.integral()
            );
        }
    }
    println!("panels in {}", dir.display());
    Ok(())
}
