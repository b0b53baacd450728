//! Files and commands: CSV tables, run manifests, Wigner grids and the
//! command implementations behind the `spacs` binary.
//!
//! Every output file `<out>` gets a TOML sidecar `<out>.manifest` from which
//! [`replay`] regenerates the same bytes.

pub mod args;
pub mod commands;
pub mod grid;
pub mod manifest;
pub mod table;

pub use commands::{cmd_audit, cmd_fig, cmd_point, cmd_wigner, replay, FigOptions};
pub use grid::{GridSpec, Sampling, WignerGrid};
pub use manifest::{FigSeries, Job, RunManifest};
pub use table::{fmt_num, Cell, Table};
