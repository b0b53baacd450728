//! Wigner function of truncated pure states.
//!
//! The primary route is the displaced-parity identity
//! `W(z) = (2/pi) sum_n (-1)^n |<n|D(-z)|psi>|^2`. In the eigenbasis of
//! `a + a^dag` the parity operator pairs eigenvector `k` with `dim - 1 - k`
//! (up to a sign), so the parity sum costs `O(dim)` once the eigenbasis
//! coefficients are known. Points far from the state are evaluated in a
//! zero-padded working space large enough for `D(-z)|psi>` to pass the
//! tail check.
//!
//! The characteristic-function quadrature is an independent cross-check
//! and is only used at a handful of points.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;

use super::{FockVector, GeneratorEigen, TAIL_LEVELS, TAIL_THRESHOLD};
use crate::error::{Error, Result};
use crate::C64;

/// Largest working dimension used for padded evaluation.
pub const MAX_WORKING_DIM: usize = 1024;

const DIM_STEP: usize = 32;

fn round_up(n: usize) -> usize {
    n.div_ceil(DIM_STEP) * DIM_STEP
}

/// Eigenbasis coefficients of `D(beta)|psi>` in the smallest working
/// dimension (from a ladder of multiples of 32) where the displaced state
/// passes the tail check.
struct Displaced {
    eig: Arc<GeneratorEigen>,
    /// coefficients before the evolution phase `e^{i t lambda_k}`
    coeffs: Vec<C64>,
    t: f64,
}

fn tail_after(eig: &GeneratorEigen, t: f64, coeffs: &[C64]) -> f64 {
    let dim = eig.dim();
    (dim - TAIL_LEVELS..dim)
        .map(|n| eig.evolve_row(n, t, coeffs).norm_sqr())
        .sum()
}

fn displaced_in_working_space(state: &FockVector, support: usize, beta: C64) -> Result<Displaced> {
    let (t, chi) = beta.to_polar();
    let radius = (support as f64).sqrt();
    let estimate = (t + radius + 2.0).powi(2).ceil() as usize;
    let mut dim = state.dim().max(round_up(estimate));
    loop {
        let eig = GeneratorEigen::for_dim(dim);
        let coeffs = eig.project(chi, state.amps(), support);
        let tail = tail_after(&eig, t, &coeffs);
        if tail <= TAIL_THRESHOLD {
            return Ok(Displaced { eig, coeffs, t });
        }
        if dim >= MAX_WORKING_DIM {
            return Err(Error::TruncationTooSmall {
                dim,
                tail,
                threshold: TAIL_THRESHOLD,
            });
        }
        dim = (dim + DIM_STEP).min(MAX_WORKING_DIM);
    }
}

/// Wigner function at `z` by displaced parity.
///
/// Fails with `TruncationTooSmall` only when even [`MAX_WORKING_DIM`]
/// levels cannot hold `D(-z)|state>`.
pub fn wigner_point(state: &FockVector, z: C64) -> Result<f64> {
    let support = state.support();
    let d = displaced_in_working_space(state, support, -z)?;
    let dim = d.eig.dim();
    let values = d.eig.values();
    let parity = d.eig.parity();
    let u: Vec<C64> = d
        .coeffs
        .iter()
        .zip(values)
        .map(|(c, l)| c * C64::from_polar(1.0, d.t * l))
        .collect();
    let mut acc = 0.0;
    for k in 0..dim {
        acc += parity[k] * (u[k].conj() * u[dim - 1 - k]).re;
    }
    Ok(2.0 / PI * acc)
}

/// Symmetric-order characteristic function `<psi|D(lambda)|psi>` sampled
/// at the cell midpoints of `[-cutoff, cutoff]^2`.
#[derive(Debug, Clone)]
pub struct CharacteristicGrid {
    pub cutoff: f64,
    /// actual spacing, `2 cutoff / points`
    pub step: f64,
    pub points: usize,
    /// row-major, `values[i * points + j]` at
    /// `lambda = (c_i, c_j)` with `c_i = -cutoff + (i + 1/2) step`
    pub values: Vec<C64>,
}

impl CharacteristicGrid {
    pub fn coordinate(&self, i: usize) -> f64 {
        -self.cutoff + (i as f64 + 0.5) * self.step
    }

    /// Midpoint-rule evaluation of
    /// `W(x, p) = pi^-2 int e^{2i(p l' - x l'')} C(l) dl' dl''`.
    pub fn wigner(&self, z: C64) -> f64 {
        let (x, p) = (z.re, z.im);
        let n = self.points;
        // e^{2i p l'} and e^{-2i x l''} separate
        let row_phase: Vec<C64> = (0..n)
            .map(|i| C64::from_polar(1.0, 2.0 * p * self.coordinate(i)))
            .collect();
        let col_phase: Vec<C64> = (0..n)
            .map(|j| C64::from_polar(1.0, -2.0 * x * self.coordinate(j)))
            .collect();
        let mut acc = 0.0;
        for (row, rp) in self.values.chunks_exact(n).zip(&row_phase) {
            let mut s = C64::new(0.0, 0.0);
            for (c, ph) in row.iter().zip(&col_phase) {
                s += c * ph;
            }
            acc += (rp * s).re;
        }
        acc * self.step * self.step / (PI * PI)
    }
}

/// Samples the characteristic function of `state` on the midpoint grid of
/// `[-cutoff, cutoff]^2` with spacing close to `res`.
pub fn characteristic_grid(state: &FockVector, cutoff: f64, res: f64) -> Result<CharacteristicGrid> {
    if !(cutoff > 0.0 && res > 0.0 && res <= 2.0 * cutoff) {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs 0 < res <= 2 cutoff, got cutoff={cutoff}, res={res}"
        )));
    }
    let points = (2.0 * cutoff / res).round().max(1.0) as usize;
    let step = 2.0 * cutoff / points as f64;
    let support = state.support();
    // the largest displacements sit in the corners
    let corner = cutoff - 0.5 * step;
    let mut dim = state.dim();
    for (a, b) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        match displaced_in_working_space(state, support, C64::new(a * corner, b * corner)) {
            Ok(d) => dim = dim.max(d.eig.dim()),
            // beyond the cap the characteristic function is negligible for
            // normalized states; keep the largest space available
            Err(Error::TruncationTooSmall { .. }) => dim = MAX_WORKING_DIM,
            Err(e) => return Err(e),
        }
    }
    let eig = GeneratorEigen::for_dim(dim);
    let coord = |i: usize| -cutoff + (i as f64 + 0.5) * step;
    let values: Vec<C64> = (0..points * points)
        .into_par_iter()
        .map(|idx| {
            let lambda = C64::new(coord(idx / points), coord(idx % points));
            let (t, chi) = lambda.to_polar();
            let c = eig.project(chi, state.amps(), support);
            c.iter()
                .zip(eig.values())
                .map(|(ck, l)| C64::from_polar(ck.norm_sqr(), t * l))
                .sum()
        })
        .collect();
    Ok(CharacteristicGrid {
        cutoff,
        step,
        points,
        values,
    })
}

/// Wigner function at `z` by direct quadrature of the characteristic
/// function over `[-cutoff, cutoff]^2` with spacing `res`.
///
/// Accuracy is limited by the discarded region outside the cutoff; the
/// midpoint rule itself converges very quickly for these integrands.
pub fn wigner_point_quadrature(state: &FockVector, z: C64, cutoff: f64, res: f64) -> Result<f64> {
    Ok(characteristic_grid(state, cutoff, res)?.wigner(z))
}
