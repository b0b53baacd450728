//! Ordinary and amplitude-squared squeezing witnesses, minimum quadrature
//! variances, and the parameter sweeps behind the figure tables.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_form::printed_moments;
use crate::error::{Error, Result};
use crate::fock::{self, MomentSet};
use crate::params::{self, ExperimentParams};

/// Which evaluation path produces moments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// Truncated Fock-space numerics.
    #[default]
    Oracle,
    /// Printed closed-form expressions.
    Printed,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Oracle => "oracle",
            Backend::Printed => "printed",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(Backend::Oracle),
            "printed" => Ok(Backend::Printed),
            other => Err(Error::InvalidArgument(format!(
                "unknown backend `{other}` (expected oracle or printed)"
            ))),
        }
    }
}

/// Serial or rayon-parallel evaluation. Both give identical results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Serial,
    #[default]
    Parallel,
}

impl Exec {
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Exec::Serial => items.iter().map(f).collect(),
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }
}

/// `<a^dag a> - |<a>|^2 - |<a^2> - <a>^2|`; negative means ordinary squeezing.
pub fn s_os(m: &MomentSet) -> f64 {
    m.n_mean - m.m_a.norm_sqr() - (m.m_a2 - m.m_a * m.m_a).norm()
}

/// `<a^dag^2 a^2> - |<a^2>|^2 - |<a^4> - <a^2>^2|`; negative means
/// amplitude-squared squeezing.
pub fn s_ass(m: &MomentSet) -> f64 {
    m.m_a2d2 - m.m_a2.norm_sqr() - (m.m_a4 - m.m_a2 * m.m_a2).norm()
}

/// Minimum variances of the quadrature `X` and of the squared amplitude `Y`
/// over the quadrature angle.
pub fn min_variances(m: &MomentSet) -> (f64, f64) {
    (
        0.25 + 0.5 * s_os(m),
        m.n_mean + 0.5 + 0.5 * s_ass(m),
    )
}

/// Squeezing summary at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingReport {
    pub s_os: f64,
    pub s_ass: f64,
    pub var_x_min: f64,
    pub var_y_min: f64,
    pub n_mean: f64,
    /// `|<phi|Phi>|^2`; only the oracle backend provides it.
    pub fidelity_to_initial: Option<f64>,
}

impl SqueezingReport {
    pub fn from_moments(m: &MomentSet, fidelity_to_initial: Option<f64>) -> Self {
        let (var_x_min, var_y_min) = min_variances(m);
        SqueezingReport {
            s_os: s_os(m),
            s_ass: s_ass(m),
            var_x_min,
            var_y_min,
            n_mean: m.n_mean,
            fidelity_to_initial,
        }
    }
}

pub fn evaluate(params: &ExperimentParams, backend: Backend) -> Result<SqueezingReport> {
    match backend {
        Backend::Oracle => {
            let out = fock::final_pointer(params)?;
            let initial = fock::spacs(params.alpha(), params.trunc)?;
            let f = fock::fidelity(&initial, &out.state)?;
            Ok(SqueezingReport::from_moments(&fock::moments(&out.state), Some(f)))
        }
        Backend::Printed => {
            let m = printed_moments(params)?;
            Ok(SqueezingReport::from_moments(&m.as_moments(), None))
        }
    }
}

/// Inclusive range `min, min + step, ...` up to `max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeSpec {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl RangeSpec {
    pub fn new(min: f64, max: f64, step: f64) -> Self {
        RangeSpec { min, max, step }
    }

    fn check(&self, name: &'static str, lo: f64, hi: f64) -> Result<()> {
        let ok = self.min.is_finite()
            && self.max.is_finite()
            && self.step.is_finite()
            && self.step > 0.0
            && self.min <= self.max
            && self.min >= lo
            && self.max <= hi;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{name} range {}..{} step {} must satisfy {lo} <= min <= max <= {hi}, step > 0",
                self.min, self.max, self.step
            )))
        }
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..n).map(|i| self.min + i as f64 * self.step).collect()
    }
}

/// One sweep point. `result` carries a row-level error instead of aborting
/// the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub params: ExperimentParams,
    pub result: Result<SqueezingReport>,
}

fn run_rows(points: Vec<ExperimentParams>, backend: Backend, exec: Exec) -> Vec<SweepRow> {
    exec.map(&points, |p| SweepRow {
        params: *p,
        result: evaluate(p, backend),
    })
}

fn check_phis(base: &ExperimentParams, phis: &[f64]) -> Result<()> {
    for &phi in phis {
        params::validate(base.with_phi(phi))?;
    }
    Ok(())
}

/// Sweep over coupling `s` for each `phi`; rows are ordered phi-major.
pub fn sweep_s(
    base: &ExperimentParams,
    phis: &[f64],
    s_range: RangeSpec,
    backend: Backend,
    exec: Exec,
) -> Result<Vec<SweepRow>> {
    s_range.check("s", 0.0, 4.0)?;
    check_phis(base, phis)?;
    let s_values = s_range.points();
    let points = phis
        .iter()
        .flat_map(|&phi| s_values.iter().map(move |&s| base.with_phi(phi).with_s(s)))
        .collect();
    Ok(run_rows(points, backend, exec))
}

/// Sweep over coherent amplitude `r` for each `phi`; rows are ordered
/// phi-major.
pub fn sweep_r(
    base: &ExperimentParams,
    phis: &[f64],
    r_range: RangeSpec,
    backend: Backend,
    exec: Exec,
) -> Result<Vec<SweepRow>> {
    r_range.check("r", 0.0, 3.0)?;
    check_phis(base, phis)?;
    let r_values = r_range.points();
    let points = phis
        .iter()
        .flat_map(|&phi| r_values.iter().map(move |&r| base.with_phi(phi).with_r(r)))
        .collect();
    Ok(run_rows(points, backend, exec))
}
