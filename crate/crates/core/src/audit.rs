//! Printed closed forms against the Fock-space oracle.
//!
//! For every quantity a single real, non-negative scale `c` minimizing
//! `sum |printed - c * oracle|^2` is fitted over the grid. Rows report the
//! raw residual `|printed - oracle|` and the scale-normalized residual
//! `|printed - c * oracle|`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::closed_form::{printed_moments, printed_wigner, PrintedMomentSet};
use crate::error::{Error, Result};
use crate::fock::{self, MomentSet};
use crate::params::ExperimentParams;
use crate::squeezing::Exec;
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    NMean,
    MA,
    MA2,
    MA2d2,
    MA4,
    KappaSq,
    Wigner,
}

impl Quantity {
    pub const ALL: [Quantity; 7] = [
        Quantity::NMean,
        Quantity::MA,
        Quantity::MA2,
        Quantity::MA2d2,
        Quantity::MA4,
        Quantity::KappaSq,
        Quantity::Wigner,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::NMean => "n_mean",
            Quantity::MA => "m_a",
            Quantity::MA2 => "m_a2",
            Quantity::MA2d2 => "m_a2d2",
            Quantity::MA4 => "m_a4",
            Quantity::KappaSq => "kappa_sq",
            Quantity::Wigner => "wigner",
        }
    }

    fn of_moments(self, m: &MomentSet, kappa_sq: f64) -> C64 {
        match self {
            Quantity::NMean => C64::new(m.n_mean, 0.0),
            Quantity::MA => m.m_a,
            Quantity::MA2 => m.m_a2,
            Quantity::MA2d2 => C64::new(m.m_a2d2, 0.0),
            Quantity::MA4 => m.m_a4,
            Quantity::KappaSq => C64::new(kappa_sq, 0.0),
            Quantity::Wigner => unreachable!("wigner is evaluated pointwise"),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown quantity `{s}`")))
    }
}

/// Parameter points for the moment/normalization audit and, separately,
/// parameter points times phase-space points for the Wigner audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditGrid {
    pub params: Vec<ExperimentParams>,
    pub wigner_params: Vec<ExperimentParams>,
    pub wigner_z: Vec<(f64, f64)>,
}

impl Default for AuditGrid {
    fn default() -> Self {
        let base = ExperimentParams::figure_preset();
        let phis = [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 7.0 * PI / 9.0];
        let rs = [0.0, 0.5, 1.0, 1.5, 2.0];
        let ss = [0.0, 0.25, 0.5, 1.0, 2.0, 3.0];
        let mut params = Vec::new();
        for &phi in &phis {
            for &r in &rs {
                for &s in &ss {
                    params.push(base.with_phi(phi).with_r(r).with_s(s));
                }
            }
        }
        let mut wigner_params = Vec::new();
        for &r in &[0.0, 1.0, 2.0] {
            for &s in &[0.0, 0.5, 2.0] {
                wigner_params.push(base.with_r(r).with_s(s));
            }
        }
        let axis: Vec<f64> = (0..=12).map(|i| -3.0 + 0.5 * i as f64).collect();
        let wigner_z = axis
            .iter()
            .flat_map(|&x| axis.iter().map(move |&p| (x, p)))
            .collect();
        AuditGrid {
            params,
            wigner_params,
            wigner_z,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub quantity: Quantity,
    pub params: ExperimentParams,
    /// phase-space point for Wigner rows
    pub z: Option<C64>,
    pub oracle: Option<C64>,
    pub printed: Option<C64>,
    pub raw_residual: f64,
    pub fitted_scale: f64,
    pub scaled_residual: f64,
    pub error: Option<Error>,
}

impl ComparisonRow {
    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

/// Per-quantity fit over a subset of rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaleFit {
    pub quantity: Quantity,
    /// `all` or `s=0`
    pub subset: &'static str,
    pub scale: f64,
    pub max_raw_residual: f64,
    pub max_scaled_residual: f64,
    pub points: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub rows: Vec<ComparisonRow>,
    pub fits: Vec<ScaleFit>,
}

impl AuditReport {
    pub fn fit(&self, quantity: Quantity, subset: &str) -> Option<&ScaleFit> {
        self.fits
            .iter()
            .find(|f| f.quantity == quantity && f.subset == subset)
    }
}

/// Least-squares real scale `c >= 0` for `printed ~ c * oracle`.
pub fn fit_scale(pairs: &[(C64, C64)]) -> f64 {
    let num: f64 = pairs.iter().map(|(o, p)| (o.conj() * p).re).sum();
    let den: f64 = pairs.iter().map(|(o, _)| o.norm_sqr()).sum();
    if den == 0.0 {
        return f64::NAN;
    }
    (num / den).max(0.0)
}

struct OraclePoint {
    moments: MomentSet,
    kappa_sq: f64,
    state: fock::FockVector,
}

fn oracle_point(p: &ExperimentParams) -> Result<OraclePoint> {
    let out = fock::final_pointer(p)?;
    Ok(OraclePoint {
        moments: fock::moments(&out.state),
        kappa_sq: out.kappa_sq(),
        state: out.state,
    })
}

fn printed_point(p: &ExperimentParams) -> Result<PrintedMomentSet> {
    printed_moments(p)
}

fn raw_row(
    quantity: Quantity,
    params: ExperimentParams,
    z: Option<C64>,
    values: Result<(C64, C64)>,
) -> ComparisonRow {
    match values {
        Ok((o, p)) => ComparisonRow {
            quantity,
            params,
            z,
            oracle: Some(o),
            printed: Some(p),
            raw_residual: (p - o).norm(),
            fitted_scale: f64::NAN,
            scaled_residual: f64::NAN,
            error: None,
        },
        Err(e) => ComparisonRow {
            quantity,
            params,
            z,
            oracle: None,
            printed: None,
            raw_residual: f64::NAN,
            fitted_scale: f64::NAN,
            scaled_residual: f64::NAN,
            error: Some(e),
        },
    }
}

fn summarize(quantity: Quantity, subset: &'static str, rows: &[&ComparisonRow]) -> ScaleFit {
    let pairs: Vec<(C64, C64)> = rows
        .iter()
        .filter_map(|r| Some((r.oracle?, r.printed?)))
        .collect();
    let scale = fit_scale(&pairs);
    let max = |f: &dyn Fn(&(C64, C64)) -> f64| pairs.iter().map(f).fold(0.0, f64::max);
    ScaleFit {
        quantity,
        subset,
        scale,
        max_raw_residual: max(&|(o, p)| (p - o).norm()),
        max_scaled_residual: max(&|(o, p)| (p - scale * o).norm()),
        points: pairs.len(),
        failed: rows.len() - pairs.len(),
    }
}

/// Evaluates both paths for each requested quantity over the grid.
pub fn compare(grid: &AuditGrid, quantities: &[Quantity], exec: Exec) -> AuditReport {
    let mut rows = Vec::new();
    let moment_quantities: Vec<Quantity> = quantities
        .iter()
        .copied()
        .filter(|q| *q != Quantity::Wigner)
        .collect();

    if !moment_quantities.is_empty() {
        let evaluated = exec.map(&grid.params, |p| {
            let oracle = oracle_point(p);
            let printed = printed_point(p);
            moment_quantities
                .iter()
                .map(|&q| {
                    let values = match (&oracle, &printed) {
                        (Ok(o), Ok(pm)) => {
                            let printed_value = match q {
                                Quantity::KappaSq => C64::new(pm.kappa_sq, 0.0),
                                _ => q.of_moments(&pm.as_moments(), pm.kappa_sq),
                            };
                            Ok((q.of_moments(&o.moments, o.kappa_sq), printed_value))
                        }
                        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                    };
                    raw_row(q, *p, None, values)
                })
                .collect::<Vec<_>>()
        });
        rows.extend(evaluated.into_iter().flatten());
    }

    if quantities.contains(&Quantity::Wigner) {
        let evaluated = exec.map(&grid.wigner_params, |p| {
            let oracle = oracle_point(p);
            grid.wigner_z
                .iter()
                .map(|&(x, y)| {
                    let z = C64::new(x, y);
                    let values = oracle.as_ref().map_err(Clone::clone).and_then(|o| {
                        let ow = fock::wigner_point(&o.state, z)?;
                        let pw = printed_wigner(p, z)?;
                        Ok((C64::new(ow, 0.0), C64::new(pw, 0.0)))
                    });
                    raw_row(Quantity::Wigner, *p, Some(z), values)
                })
                .collect::<Vec<_>>()
        });
        rows.extend(evaluated.into_iter().flatten());
    }

    let mut fits = Vec::new();
    for &q in quantities {
        let all: Vec<&ComparisonRow> = rows.iter().filter(|r| r.quantity == q).collect();
        let zero: Vec<&ComparisonRow> = all.iter().copied().filter(|r| r.params.s == 0.0).collect();
        let fit = summarize(q, "all", &all);
        if !zero.is_empty() {
            fits.push(summarize(q, "s=0", &zero));
        }
        for row in rows.iter_mut().filter(|r| r.quantity == q && r.is_ok()) {
            row.fitted_scale = fit.scale;
            let (o, p) = (row.oracle.unwrap(), row.printed.unwrap());
            row.scaled_residual = (p - fit.scale * o).norm();
        }
        fits.push(fit);
    }
    fits.sort_by(|a, b| (a.quantity, a.subset).cmp(&(b.quantity, b.subset)));

    AuditReport { rows, fits }
}
