//! Every output carries a TOML manifest; replaying it regenerates the file
//! byte for byte.
//!
//! `cargo run --example manifest_replay`

use spacs::io::commands::{cmd_wigner, replay};
use spacs::io::{GridSpec, RunManifest};
use spacs::squeezing::{Backend, Exec};
use spacs::ExperimentParams;

fn main() -> spacs::Result<()> {
    let dir = std::env::temp_dir().join("spacs-replay");
    let out = dir.join("wigner.csv");
    let p = ExperimentParams::figure_preset().with_s(2.0);
    cmd_wigner(GridSpec::nodes(-2.0, 2.0, -2.0, 2.0, 0.1), &p, Backend::Oracle, Exec::Parallel, &out)?;

    let manifest = RunManifest::path_for(&out);
    println!("{}", std::fs::read_to_string(&manifest)?);

    let again = dir.join("wigner-replayed.csv");
    replay(&manifest, Some(&again), Exec::Serial)?;
    let same = std::fs::read(&out)? == std::fs::read(&again)?;
    println!("replayed output identical: {same}");
    Ok(())
}
