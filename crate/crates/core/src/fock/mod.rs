//! Truncated Fock-space backend.
//!
//! States are finite amplitude arrays over photon number. Every constructor
//! normalizes and then checks that the top levels carry negligible weight,
//! so a state that does not fit the truncation is rejected instead of being
//! silently clipped.

mod displacement;
mod wigner;

pub use displacement::{displace, displace_with_drift, GeneratorEigen};
pub use wigner::{
    characteristic_grid, wigner_point, wigner_point_quadrature, CharacteristicGrid,
    MAX_WORKING_DIM,
};

use crate::error::{Error, Result};
use crate::params::{self, ExperimentParams};
use crate::C64;

/// Number of top Fock levels inspected by the tail check.
pub const TAIL_LEVELS: usize = 4;

/// Maximum probability allowed in the top [`TAIL_LEVELS`] levels.
pub const TAIL_THRESHOLD: f64 = 1e-10;

/// Norm drift above which a state is renormalized (and the drift logged).
pub const RENORM_TOLERANCE: f64 = 1e-12;

/// Normalized pure state in a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amps: Vec<C64>,
}

/// First level counted as "tail" for a space of `dim` levels. For small
/// spaces the tail is the upper half rather than four levels.
fn tail_start(dim: usize) -> usize {
    dim.saturating_sub(TAIL_LEVELS).max(dim / 2)
}

pub(crate) fn tail_mass_of(amps: &[C64]) -> f64 {
    amps[tail_start(amps.len())..].iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn norm_sq_of(amps: &[C64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

pub(crate) fn check_tail(amps: &[C64]) -> Result<()> {
    let tail = tail_mass_of(amps);
    // tail is a fraction of the total only for normalized input
    let tail = tail / norm_sq_of(amps).max(f64::MIN_POSITIVE);
    if tail > TAIL_THRESHOLD || !tail.is_finite() {
        return Err(Error::TruncationTooSmall {
            dim: amps.len(),
            tail,
            threshold: TAIL_THRESHOLD,
        });
    }
    Ok(())
}

impl FockVector {
    /// Normalizes `amps` and applies the tail check.
    pub fn from_amplitudes(mut amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::Range {
                field: "dim",
                value: amps.len() as f64,
                reason: "must be at least 2",
            });
        }
        let norm = norm_sq_of(&amps).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "cannot normalize amplitude vector with norm {norm}"
            )));
        }
        check_tail(&amps)?;
        for a in &mut amps {
            *a /= norm;
        }
        Ok(FockVector { amps })
    }

    /// Number state `|n>` in a space of `dim` levels.
    pub fn basis(n: usize, dim: usize) -> Result<Self> {
        if dim < 2 || n >= dim {
            return Err(Error::Range {
                field: "dim",
                value: dim as f64,
                reason: "basis index must be below the dimension and dim >= 2",
            });
        }
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[n] = C64::new(1.0, 0.0);
        Ok(FockVector { amps })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::basis(0, dim)
    }

    pub(crate) fn from_normalized_unchecked(amps: Vec<C64>) -> Self {
        FockVector { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq_of(&self.amps)
    }

    pub fn tail_mass(&self) -> f64 {
        tail_mass_of(&self.amps)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &FockVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Smallest `k` such that levels `>= k` hold less than `1e-30` of the
    /// probability. Work on this state can skip everything above it.
    pub fn support(&self) -> usize {
        let mut tail = 0.0;
        for (n, a) in self.amps.iter().enumerate().rev() {
            tail += a.norm_sqr();
            if tail > 1e-30 {
                return n + 1;
            }
        }
        1
    }

    /// Copy of this state embedded in a larger space (zero padded).
    pub fn padded(&self, dim: usize) -> FockVector {
        let mut amps = self.amps.clone();
        if dim > amps.len() {
            amps.resize(dim, C64::new(0.0, 0.0));
        }
        FockVector { amps }
    }
}

/// Raw coherent amplitudes `e^{-|alpha|^2/2} alpha^n / sqrt(n!)`.
fn coherent_amps(alpha: C64, dim: usize) -> Vec<C64> {
    let mut amps = Vec::with_capacity(dim);
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amps.push(c);
    for n in 1..dim {
        c = c * alpha / (n as f64).sqrt();
        amps.push(c);
    }
    amps
}

/// Coherent state `|alpha>`.
pub fn coherent(alpha: C64, dim: usize) -> Result<FockVector> {
    if dim < 2 {
        return Err(Error::Range {
            field: "dim",
            value: dim as f64,
            reason: "must be at least 2",
        });
    }
    FockVector::from_amplitudes(coherent_amps(alpha, dim))
}

/// Single-photon-added coherent state `a^dag|alpha> / sqrt(1 + |alpha|^2)`.
pub fn spacs(alpha: C64, dim: usize) -> Result<FockVector> {
    if dim < 3 {
        return Err(Error::Range {
            field: "dim",
            value: dim as f64,
            reason: "must be at least 3",
        });
    }
    let gamma = 1.0 / (1.0 + alpha.norm_sqr()).sqrt();
    let coh = coherent_amps(alpha, dim);
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    for n in 1..dim {
        amps[n] = coh[n - 1] * (gamma * (n as f64).sqrt());
    }
    FockVector::from_amplitudes(amps)
}

/// Final pointer state together with the squared norm of the
/// postselected branch sum before normalization.
#[derive(Debug, Clone)]
pub struct PointerOutcome {
    pub state: FockVector,
    /// `||(1 + w) D(s/2)|phi> + (1 - w) D(-s/2)|phi>||^2`
    pub branch_norm_sq: f64,
}

impl PointerOutcome {
    /// Normalization `|kappa|^2` implied by the branch norm, for a state
    /// written as `kappa / sqrt(2) * [...]`.
    pub fn kappa_sq(&self) -> f64 {
        2.0 / self.branch_norm_sq
    }
}

pub fn final_pointer(params: &ExperimentParams) -> Result<PointerOutcome> {
    let params = params::validate(*params)?;
    let w = params.weak_value()?.value;
    let phi = spacs(params.alpha(), params.trunc)?;
    let one = C64::new(1.0, 0.0);
    let half = C64::new(params.s / 2.0, 0.0);
    let plus = displace(half, &phi)?;
    let minus = displace(-half, &phi)?;
    let amps: Vec<C64> = plus
        .amps()
        .iter()
        .zip(minus.amps())
        .map(|(p, m)| (one + w) * p + (one - w) * m)
        .collect();
    let branch_norm_sq = norm_sq_of(&amps);
    let state = FockVector::from_amplitudes(amps)?;
    Ok(PointerOutcome {
        state,
        branch_norm_sq,
    })
}

/// Normalized `(1 + w) D(s/2)|phi> + (1 - w) D(-s/2)|phi>` with `|phi>` the
/// SPACS of `alpha`.
pub fn final_pointer_state(params: &ExperimentParams) -> Result<FockVector> {
    final_pointer(params).map(|o| o.state)
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &FockVector, b: &FockVector) -> Result<f64> {
    a.inner(b).map(|z| z.norm_sqr())
}

/// The five field moments of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    /// `<a>`
    pub m_a: C64,
    /// `<a^2>`
    pub m_a2: C64,
    /// `<a^4>`
    pub m_a4: C64,
    /// `<a^dag a>`
    pub n_mean: f64,
    /// `<a^dag^2 a^2>`
    pub m_a2d2: f64,
}

/// `a` acting on an amplitude array (band above the diagonal).
fn lower(amps: &[C64]) -> Vec<C64> {
    let dim = amps.len();
    let mut out = vec![C64::new(0.0, 0.0); dim];
    for n in 0..dim - 1 {
        out[n] = amps[n + 1] * ((n + 1) as f64).sqrt();
    }
    out
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn moments(state: &FockVector) -> MomentSet {
    let psi = state.amps();
    let a1 = lower(psi);
    let a2 = lower(&a1);
    let a3 = lower(&a2);
    let a4 = lower(&a3);
    MomentSet {
        m_a: dot(psi, &a1),
        m_a2: dot(psi, &a2),
        m_a4: dot(psi, &a4),
        n_mean: norm_sq_of(&a1),
        m_a2d2: norm_sq_of(&a2),
    }
}
