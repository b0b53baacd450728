//! Displacement operators on the truncated space.
//!
//! With `beta = t e^{i chi}` the truncated generator factors as
//!
//! ```text
//! beta a^dag - beta^* a = R(chi) T^dag (i t X) T R(chi)^dag
//! ```
//!
//! where `X = a + a^dag` is real symmetric tridiagonal, `T = diag(i^n)` and
//! `R(chi) = diag(e^{i n chi})`. One eigendecomposition `X = V diag(lambda) V^T`
//! per dimension therefore diagonalizes every displacement generator:
//! `D(beta) = R T^dag V e^{i t lambda} V^T T R^dag`. The truncated operator is
//! exactly unitary; truncation error appears only when amplitude reaches the
//! top levels, which the tail check rejects.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};

use super::{check_tail, norm_sq_of, FockVector, RENORM_TOLERANCE};
use crate::error::Result;
use crate::C64;

/// Eigendecomposition of the truncated `a + a^dag`.
#[derive(Debug)]
pub struct GeneratorEigen {
    dim: usize,
    /// ascending
    values: Vec<f64>,
    /// `vectors[k * dim + n] = V[n][k]`
    vectors: Vec<f64>,
    /// `Pi V_k = parity[k] V_{dim - 1 - k}`
    parity: Vec<f64>,
}

impl GeneratorEigen {
    fn compute(dim: usize) -> Self {
        let x = DMatrix::<f64>::from_fn(dim, dim, |i, j| {
            if i + 1 == j {
                (j as f64).sqrt()
            } else if j + 1 == i {
                (i as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(x);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

        let mut values = Vec::with_capacity(dim);
        let mut vectors = Vec::with_capacity(dim * dim);
        for &k in &order {
            values.push(eig.eigenvalues[k]);
            let col = eig.eigenvectors.column(k);
            // fix the sign convention: first component positive
            let sign = if col[0] < 0.0 { -1.0 } else { 1.0 };
            vectors.extend(col.iter().map(|v| v * sign));
        }

        let parity = (0..dim)
            .map(|k| {
                let kp = dim - 1 - k;
                let overlap: f64 = (0..dim)
                    .map(|n| {
                        let p = if n % 2 == 0 { 1.0 } else { -1.0 };
                        p * vectors[k * dim + n] * vectors[kp * dim + n]
                    })
                    .sum();
                debug_assert!((overlap.abs() - 1.0).abs() < 1e-8, "parity pairing broken");
                overlap.signum()
            })
            .collect();

        GeneratorEigen {
            dim,
            values,
            vectors,
            parity,
        }
    }

    /// Shared, lazily computed decomposition for `dim` levels.
    pub fn for_dim(dim: usize) -> Arc<GeneratorEigen> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GeneratorEigen>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(e) = cache.lock().unwrap().get(&dim) {
            return e.clone();
        }
        // computed outside the lock; a racing duplicate is identical
        let e = Arc::new(GeneratorEigen::compute(dim));
        cache.lock().unwrap().entry(dim).or_insert(e).clone()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn vector(&self, k: usize) -> &[f64] {
        &self.vectors[k * self.dim..(k + 1) * self.dim]
    }

    pub(crate) fn parity(&self) -> &[f64] {
        &self.parity
    }

    /// Phases `i^n e^{-i n chi}` of `T R(chi)^dag`.
    pub(crate) fn input_phases(chi: f64, len: usize) -> Vec<C64> {
        let step = std::f64::consts::FRAC_PI_2 - chi;
        (0..len)
            .map(|n| C64::from_polar(1.0, n as f64 * step))
            .collect()
    }

    /// Eigenbasis coefficients `c = V^T T R(chi)^dag psi` using only the
    /// first `support` amplitudes of `psi`.
    pub(crate) fn project(&self, chi: f64, psi: &[C64], support: usize) -> Vec<C64> {
        let support = support.min(psi.len()).min(self.dim);
        let phases = Self::input_phases(chi, support);
        let x: Vec<C64> = psi[..support]
            .iter()
            .zip(&phases)
            .map(|(a, p)| a * p)
            .collect();
        (0..self.dim)
            .map(|k| {
                let v = &self.vector(k)[..support];
                let mut acc = C64::new(0.0, 0.0);
                for (vn, xn) in v.iter().zip(&x) {
                    acc += xn * *vn;
                }
                acc
            })
            .collect()
    }

    /// Row `n` of `V e^{i t lambda} c` (before the output phase).
    pub(crate) fn evolve_row(&self, n: usize, t: f64, c: &[C64]) -> C64 {
        (0..self.dim)
            .map(|k| c[k] * C64::from_polar(self.vectors[k * self.dim + n], t * self.values[k]))
            .sum()
    }

    /// Full `D(beta) psi` in this dimension, without tail check or
    /// renormalization.
    pub(crate) fn apply(&self, beta: C64, psi: &[C64]) -> Vec<C64> {
        let (t, chi) = beta.to_polar();
        let c = self.project(chi, psi, psi.len());
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (k, (ck, lk)) in c.iter().zip(&self.values).enumerate() {
            let u = ck * C64::from_polar(1.0, t * lk);
            for (o, v) in out.iter_mut().zip(self.vector(k)) {
                *o += u * *v;
            }
        }
        let phases = Self::input_phases(chi, self.dim);
        for (o, p) in out.iter_mut().zip(&phases) {
            *o *= p.conj();
        }
        out
    }
}

/// Applies `D(beta)` and returns the result together with the norm drift
/// `| ||D psi|| - 1 |` observed before renormalization.
pub fn displace_with_drift(beta: C64, state: &FockVector) -> Result<(FockVector, f64)> {
    if beta == C64::new(0.0, 0.0) {
        return Ok((state.clone(), 0.0));
    }
    let eig = GeneratorEigen::for_dim(state.dim());
    let mut out = eig.apply(beta, state.amps());
    check_tail(&out)?;
    let norm = norm_sq_of(&out).sqrt();
    let drift = (norm - 1.0).abs();
    if drift > RENORM_TOLERANCE {
        log::debug!("displace({beta}): renormalizing, norm drift {drift:e}");
        for a in &mut out {
            *a /= norm;
        }
    }
    Ok((FockVector::from_normalized_unchecked(out), drift))
}

/// `D(beta)|state>` restricted to the truncated space.
pub fn displace(beta: C64, state: &FockVector) -> Result<FockVector> {
    displace_with_drift(beta, state).map(|(v, _)| v)
}
