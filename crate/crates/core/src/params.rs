//! Scenario parameters and the scalar quantities derived from the
//! two-level system: weak value and postselection probability.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Default Fock-space truncation dimension.
pub const DEFAULT_TRUNC: usize = 128;

/// Environment variable that overrides [`DEFAULT_TRUNC`] for the CLI.
pub const TRUNC_ENV: &str = "SPACS_TRUNC";

/// Truncation from `SPACS_TRUNC` when set, otherwise [`DEFAULT_TRUNC`].
pub fn trunc_from_env() -> Result<usize> {
    match std::env::var(TRUNC_ENV) {
        Ok(raw) => raw.trim().parse().map_err(|_| {
            Error::InvalidArgument(format!("{TRUNC_ENV}={raw:?} is not a positive integer"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TRUNC),
        Err(e) => Err(Error::InvalidArgument(format!("{TRUNC_ENV}: {e}"))),
    }
}

/// One measurement scenario.
///
/// `r`, `theta` give the coherent amplitude `alpha = r e^{i theta}`;
/// `delta`, `phi` fix the preselected polarization; `s` is the coupling
/// to beam-width ratio; `trunc` is the number of Fock levels kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentParams {
    pub r: f64,
    pub theta: f64,
    pub delta: f64,
    pub phi: f64,
    pub s: f64,
    pub trunc: usize,
}

impl ExperimentParams {
    /// Figure preset: `theta = pi/4`, `delta = pi/6`, `phi = 7pi/9`,
    /// with `r = 1`, `s = 0.5` and the default truncation.
    pub fn figure_preset() -> Self {
        ExperimentParams {
            r: 1.0,
            theta: PI / 4.0,
            delta: PI / 6.0,
            phi: 7.0 * PI / 9.0,
            s: 0.5,
            trunc: DEFAULT_TRUNC,
        }
    }

    pub fn alpha(&self) -> C64 {
        C64::from_polar(self.r, self.theta)
    }

    pub fn weak_value(&self) -> Result<WeakValue> {
        weak_value(self.delta, self.phi)
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = s;
        self
    }

    pub fn with_phi(mut self, phi: f64) -> Self {
        self.phi = phi;
        self
    }

    pub fn with_trunc(mut self, trunc: usize) -> Self {
        self.trunc = trunc;
        self
    }

    pub fn validate(self) -> Result<Self> {
        validate(self)
    }
}

impl Default for ExperimentParams {
    fn default() -> Self {
        Self::figure_preset()
    }
}

fn range(field: &'static str, value: f64, reason: &'static str) -> Error {
    Error::Range {
        field,
        value,
        reason,
    }
}

/// Checks every range invariant and hands the parameters back unchanged.
pub fn validate(params: ExperimentParams) -> Result<ExperimentParams> {
    let ExperimentParams {
        r,
        theta,
        delta,
        phi,
        s,
        trunc,
    } = params;
    if !r.is_finite() || r < 0.0 {
        return Err(range("r", r, "must be a finite value >= 0"));
    }
    if !theta.is_finite() || !(0.0..2.0 * PI).contains(&theta) {
        return Err(range("theta", theta, "must lie in [0, 2pi)"));
    }
    if !delta.is_finite() || !(0.0..=2.0 * PI).contains(&delta) {
        return Err(range("delta", delta, "must lie in [0, 2pi]"));
    }
    if !phi.is_finite() || phi < 0.0 {
        return Err(range("phi", phi, "must lie in [0, pi)"));
    }
    if phi >= PI {
        return Err(Error::DegeneratePostselection { phi });
    }
    if !s.is_finite() || s < 0.0 {
        return Err(range("s", s, "must be a finite value >= 0"));
    }
    if trunc < 2 {
        return Err(range("trunc", trunc as f64, "must be at least 2"));
    }
    Ok(params)
}

/// Weak value of `sigma_x` for the preselected state fixed by
/// `(delta, phi)` and postselection onto `|H>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeakValue {
    pub value: C64,
}

impl WeakValue {
    pub fn modulus(&self) -> f64 {
        self.value.norm()
    }
}

/// `e^{i delta} tan(phi / 2)`.
pub fn weak_value(delta: f64, phi: f64) -> Result<WeakValue> {
    if phi >= PI {
        return Err(Error::DegeneratePostselection { phi });
    }
    if !phi.is_finite() || phi < 0.0 {
        return Err(range("phi", phi, "must lie in [0, pi)"));
    }
    Ok(WeakValue {
        value: C64::from_polar((phi / 2.0).tan(), delta),
    })
}

/// `|<psi_f|psi_i>|^2 = cos^2(phi / 2)`.
pub fn postselection_probability(phi: f64) -> Result<f64> {
    if phi >= PI {
        return Err(Error::DegeneratePostselection { phi });
    }
    if !phi.is_finite() || phi < 0.0 {
        return Err(range("phi", phi, "must lie in [0, pi)"));
    }
    Ok((phi / 2.0).cos().powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn figure_preset_is_valid() {
        let p = ExperimentParams::figure_preset();
        assert_eq!(validate(p), Ok(p));
    }

    #[test]
    fn negative_r_rejected() {
        let p = ExperimentParams::figure_preset().with_r(-1.0);
        assert!(matches!(validate(p), Err(Error::Range { field: "r", .. })));
    }

    #[test]
    fn phi_pi_is_degenerate() {
        let p = ExperimentParams::figure_preset().with_phi(PI);
        assert!(matches!(
            validate(p),
            Err(Error::DegeneratePostselection { .. })
        ));
        assert!(weak_value(0.0, PI).is_err());
        assert!(postselection_probability(PI).is_err());
    }

    #[test]
    fn other_ranges() {
        let base = ExperimentParams::figure_preset();
        let bad = [
            ExperimentParams { theta: 2.0 * PI, ..base },
            ExperimentParams { delta: 7.0, ..base },
            ExperimentParams { s: -0.1, ..base },
            ExperimentParams { trunc: 1, ..base },
            ExperimentParams { r: f64::NAN, ..base },
        ];
        for p in bad {
            assert!(matches!(validate(p), Err(Error::Range { .. })), "{p:?}");
        }
        // delta's range is closed at 2pi
        assert!(validate(ExperimentParams { delta: 2.0 * PI, ..base }).is_ok());
    }

    #[test]
    fn weak_value_examples() {
        let w = weak_value(0.0, PI / 2.0).unwrap().value;
        assert!((w - C64::new(1.0, 0.0)).norm() < 1e-15);

        assert_eq!(weak_value(1.234, 0.0).unwrap().value.norm(), 0.0);

        let w = weak_value(PI / 6.0, 7.0 * PI / 9.0).unwrap().value;
        assert!((w.norm() - (7.0 * PI / 18.0).tan()).abs() < 1e-14);
        assert!((w.arg() - PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn postselection_probability_examples() {
        assert_eq!(postselection_probability(0.0).unwrap(), 1.0);
        assert!((postselection_probability(PI / 2.0).unwrap() - 0.5).abs() < 1e-15);
        let p = postselection_probability(7.0 * PI / 9.0).unwrap();
        assert!((p - (7.0 * PI / 18.0).cos().powi(2)).abs() < 1e-15);
        assert!((p - 0.117).abs() < 1e-3);
    }

    proptest! {
        #[test]
        fn weak_value_times_probability(delta in 0.0..2.0 * PI, phi in 0.0..3.1f64) {
            let w = weak_value(delta, phi).unwrap();
            let ps = postselection_probability(phi).unwrap();
            let lhs = w.modulus().powi(2) * ps;
            prop_assert!((lhs - (phi / 2.0).sin().powi(2)).abs() < 1e-12);
            prop_assert!((w.modulus() - (phi / 2.0).tan()).abs() < 1e-12 * (1.0 + w.modulus()));
            if phi > 1e-6 {
                let d = (w.value.arg() - delta).rem_euclid(2.0 * PI);
                prop_assert!(d < 1e-9 || 2.0 * PI - d < 1e-9);
            }
        }

        #[test]
        fn postselection_probability_decreasing(a in 0.0..3.1f64, b in 0.0..3.1f64) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(postselection_probability(lo).unwrap() >= postselection_probability(hi).unwrap());
        }
    }
}
