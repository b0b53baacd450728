//! Postselected von Neumann measurement acting on a single-photon-added
//! coherent state (SPACS).
//!
//! The pointer starts in `|phi> = a^dag|alpha> / sqrt(1 + |alpha|^2)`, couples
//! to a polarization qubit through `sigma_x (x) P`, and is conditioned on a
//! postselected polarization. The result is a two-branch superposition of
//! displaced SPACS weighted by `1 +/- w`, with `w` the weak value.
//!
//! * [`params`]: scenario parameters, weak value, postselection probability.
//! * [`fock`]: truncated Fock-space oracle (states, displacement, moments,
//!   fidelity, Wigner function).
//! * [`closed_form`]: the printed analytic expressions, transcribed as-is.
//! * [`squeezing`]: squeezing witnesses, minimum variances and sweeps.
//! * [`audit`]: least-squares comparison of printed expressions against the
//!   oracle.
//! * [`io`]: CSV tables, run manifests, Wigner grids and the command
//!   implementations behind the `spacs` binary.

pub mod audit;
pub mod closed_form;
pub mod error;
pub mod fock;
pub mod io;
pub mod params;
pub mod squeezing;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use params::ExperimentParams;
