use std::f64::consts::FRAC_2_PI;

use serde::{Deserialize, Serialize};

use crate::closed_form::printed_wigner;
use crate::error::{Error, Result};
use crate::fock::{self, FockVector};
use crate::io::table::{fmt_num, Cell, Table};
use crate::params::ExperimentParams;
use crate::squeezing::{Backend, Exec};
use crate::C64;

/// Coordinates beyond this magnitude are refused for grid evaluation.
pub const SAFE_EXTENT: f64 = 16.0;

const MAX_POINTS: usize = 4_000_000;

/// Slack allowed on the `|W| <= 2/pi` bound.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    /// `lo, lo + step, ...` up to `hi` inclusive
    Nodes,
    /// cell centres of `[lo, hi]` split into cells of width `step`
    Midpoints,
}

/// Requested phase-space rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub step: f64,
    pub sampling: Sampling,
}

impl Default for GridSpec {
    /// `[-4, 4]^2` at step 0.04.
    fn default() -> Self {
        GridSpec::nodes(-4.0, 4.0, -4.0, 4.0, 0.04)
    }
}

impl GridSpec {
    pub fn nodes(x_min: f64, x_max: f64, p_min: f64, p_max: f64, step: f64) -> Self {
        GridSpec {
            x_min,
            x_max,
            p_min,
            p_max,
            step,
            sampling: Sampling::Nodes,
        }
    }

    pub fn midpoints(x_min: f64, x_max: f64, p_min: f64, p_max: f64, step: f64) -> Self {
        GridSpec {
            sampling: Sampling::Midpoints,
            ..GridSpec::nodes(x_min, x_max, p_min, p_max, step)
        }
    }

    /// First coordinate and count along one axis.
    fn axis(&self, lo: f64, hi: f64) -> (f64, usize) {
        match self.sampling {
            Sampling::Nodes => (lo, ((hi - lo) / self.step + 1e-9).floor() as usize + 1),
            Sampling::Midpoints => (
                lo + 0.5 * self.step,
                ((hi - lo) / self.step).round().max(1.0) as usize,
            ),
        }
    }

    pub fn check(&self) -> Result<()> {
        let all = [self.x_min, self.x_max, self.p_min, self.p_max, self.step];
        if all.iter().any(|v| !v.is_finite()) || self.step <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid bounds must be finite with step > 0, got {self:?}"
            )));
        }
        if self.x_min > self.x_max || self.p_min > self.p_max {
            return Err(Error::InvalidArgument(format!(
                "grid needs x_min <= x_max and p_min <= p_max, got {self:?}"
            )));
        }
        if all[..4].iter().any(|v| v.abs() > SAFE_EXTENT) {
            return Err(Error::InvalidArgument(format!(
                "grid leaves the evaluable region |x|, |p| <= {SAFE_EXTENT}"
            )));
        }
        let (_, nx) = self.axis(self.x_min, self.x_max);
        let (_, np) = self.axis(self.p_min, self.p_max);
        if nx.saturating_mul(np) > MAX_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid has {nx} x {np} points, more than {MAX_POINTS}"
            )));
        }
        Ok(())
    }
}

/// Wigner values on a rectangular grid.
///
/// `x_min`, `x_max` (and likewise for `p`) are the first and last sampled
/// coordinates, so `x_max = x_min + (nx - 1) step`. Values are row-major:
/// `values[i * np + j]` sits at `(x_min + i step, p_min + j step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub x_min: f64,
    pub x_max: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub step: f64,
    pub nx: usize,
    pub np: usize,
    pub values: Vec<f64>,
}

impl WignerGrid {
    fn layout(spec: &GridSpec) -> Result<WignerGrid> {
        spec.check()?;
        let (x0, nx) = spec.axis(spec.x_min, spec.x_max);
        let (p0, np) = spec.axis(spec.p_min, spec.p_max);
        Ok(WignerGrid {
            x_min: x0,
            x_max: x0 + (nx - 1) as f64 * spec.step,
            p_min: p0,
            p_max: p0 + (np - 1) as f64 * spec.step,
            step: spec.step,
            nx,
            np,
            values: Vec::new(),
        })
    }

    fn fill<F>(mut self, exec: Exec, f: F) -> Result<WignerGrid>
    where
        F: Fn(C64) -> Result<f64> + Sync + Send,
    {
        let rows: Vec<usize> = (0..self.nx).collect();
        let (x0, p0, h, np) = (self.x_min, self.p_min, self.step, self.np);
        let computed = exec.map(&rows, |&i| {
            let x = x0 + i as f64 * h;
            (0..np)
                .map(|j| {
                    let p = p0 + j as f64 * h;
                    f(C64::new(x, p)).map_err(|e| Error::Row {
                        index: i * np + j,
                        label: format!("x={}, p={}", fmt_num(x), fmt_num(p)),
                        inner: Box::new(e),
                    })
                })
                .collect::<Result<Vec<f64>>>()
        });
        self.values.reserve(self.nx * self.np);
        for row in computed {
            self.values.extend(row?);
        }
        Ok(self)
    }

    /// Oracle Wigner function of an arbitrary state.
    pub fn from_state(state: &FockVector, spec: &GridSpec, exec: Exec) -> Result<WignerGrid> {
        Self::layout(spec)?.fill(exec, |z| fock::wigner_point(state, z))
    }

    /// Wigner function of the final pointer state for `params`.
    ///
    /// The printed backend evaluates the closed form and is not held to
    /// the `2/pi` bound.
    pub fn evaluate(
        params: &ExperimentParams,
        backend: Backend,
        spec: &GridSpec,
        exec: Exec,
    ) -> Result<WignerGrid> {
        let grid = Self::layout(spec)?;
        let params = params.validate()?;
        match backend {
            Backend::Oracle => {
                let state = fock::final_pointer_state(&params)?;
                grid.fill(exec, |z| fock::wigner_point(&state, z))
            }
            Backend::Printed => grid.fill(exec, |z| printed_wigner(&params, z)),
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.step
    }

    pub fn p(&self, j: usize) -> f64 {
        self.p_min + j as f64 * self.step
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.np + j]
    }

    /// `sum W * step^2`; the midpoint rule when built from
    /// [`GridSpec::midpoints`].
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.step * self.step
    }

    fn extreme(&self, better: impl Fn(f64, f64) -> bool) -> (f64, f64, f64) {
        let mut best = 0;
        for (k, &v) in self.values.iter().enumerate() {
            if better(v, self.values[best]) {
                best = k;
            }
        }
        (self.x(best / self.np), self.p(best % self.np), self.values[best])
    }

    /// `(x, p, W)` at the smallest value.
    pub fn argmin(&self) -> (f64, f64, f64) {
        self.extreme(|a, b| a < b)
    }

    /// `(x, p, W)` at the largest value.
    pub fn argmax(&self) -> (f64, f64, f64) {
        self.extreme(|a, b| a > b)
    }

    pub fn within_bound(&self) -> bool {
        self.values.iter().all(|v| v.abs() <= FRAC_2_PI + BOUND_SLACK)
    }

    /// Long format, `x, p, W`, x-major.
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["x", "p", "W"]);
        for i in 0..self.nx {
            for j in 0..self.np {
                t.push(vec![Cell::from(self.x(i)), Cell::from(self.p(j)), Cell::from(self.get(i, j))]);
            }
        }
        t
    }
}
