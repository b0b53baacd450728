//! Printed closed forms against the Fock-space oracle on the default grid.
//!
//! `cargo run --release --example closed_form_audit -- [out-dir]`

use std::path::PathBuf;

use spacs::audit::{AuditGrid, Quantity};
use spacs::io::commands::cmd_audit;
use spacs::squeezing::Exec;

fn main() -> spacs::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("spacs"));
    let out = dir.join("audit.csv");
    let summary = cmd_audit(&Quantity::ALL, &AuditGrid::default(), Exec::Parallel, &out)?;
    print!("{summary}");
    println!("rows in {}", out.display());
    Ok(())
}
