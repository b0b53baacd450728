//! Printed analytic expressions for the final pointer state.
//!
//! Everything here is transcribed as printed, without correction, so it can
//! be audited against the Fock-space oracle. Readings of ambiguous or
//! malformed fragments are listed in [`TRANSCRIPTION_NOTES`]; in short:
//!
//! * the bare `|<sigma_x>|^2` in the normalization is read as `|w|^2`;
//! * a doubled `++` in `<a>` is read as a single `+`, and its unmatched
//!   closing bracket is dropped;
//! * the undefined `f2` in `<a^dag^2 a^2>` is taken to be `f1`;
//! * `w(Gamma)` uses `+s` and `w(-Gamma)` the same expression with `s -> -s`.
//!
//! Known consequence: the moment formulas carry `|kappa|^2` where the state
//! prefactor is `kappa / sqrt(2)`, so at `s = 0` they come out twice the
//! exact value. The audit reports this instead of correcting it.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fock::MomentSet;
use crate::params::{self, ExperimentParams};
use crate::C64;

/// Source fragment for every transcribed expression.
pub const TRANSCRIPTION_NOTES: &str = include_str!("../TRANSCRIPTION_NOTES.txt");

/// Moments as given by the printed formulas, plus `|kappa|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedMomentSet {
    pub m_a: C64,
    pub m_a2: C64,
    pub m_a4: C64,
    pub n_mean: f64,
    pub m_a2d2: f64,
    pub kappa_sq: f64,
}

impl PrintedMomentSet {
    pub fn as_moments(&self) -> MomentSet {
        MomentSet {
            m_a: self.m_a,
            m_a2: self.m_a2,
            m_a4: self.m_a4,
            n_mean: self.n_mean,
            m_a2d2: self.m_a2d2,
        }
    }
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Shared inputs of every printed expression.
#[derive(Debug, Clone, Copy)]
struct Symbols {
    alpha: C64,
    /// `gamma^2 = 1 / (1 + |alpha|^2)`
    g2: f64,
    w: C64,
}

impl Symbols {
    fn new(params: &ExperimentParams) -> Result<Self> {
        let p = params::validate(*params)?;
        let alpha = p.alpha();
        Ok(Symbols {
            alpha,
            g2: 1.0 / (1.0 + alpha.norm_sqr()),
            w: p.weak_value()?.value,
        })
    }

    fn abs2(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    /// `e^{2 i s Im(alpha)} e^{-s^2/2}`
    fn cross_gauss(&self, s: f64) -> C64 {
        C64::from_polar((-s * s / 2.0).exp(), 2.0 * s * self.alpha.im)
    }

    /// `|1 + w|^2`
    fn plus2(&self) -> f64 {
        (c(1.0) + self.w).norm_sqr()
    }

    /// `|1 - w|^2`
    fn minus2(&self) -> f64 {
        (c(1.0) - self.w).norm_sqr()
    }

    /// `(1 - w)(1 + w)^*`
    fn cross(&self) -> C64 {
        (c(1.0) - self.w) * (c(1.0) + self.w).conj()
    }

    fn t1(&self, s: f64) -> f64 {
        let a = self.alpha;
        let abs2 = self.abs2();
        self.g2 * ((2.0 + abs2 * abs2 + s * abs2) * a.re + 3.0 * abs2 + 1.0) + s * s / 4.0
    }

    fn t3(&self, s: f64) -> C64 {
        let a = self.alpha;
        let ac = a.conj();
        let abs2 = self.abs2();
        let inner = c(4.0 * abs2 * abs2) - 6.0 * s * a * abs2
            + 2.0
                * (c(6.0 * abs2)
                    + s * ac * ac * (3.0 * a + s)
                    + s * a.re * (8.0 - 9.0 * s * a - 3.0 * s * s))
            + 11.0 * a * a * s * s
            + s.powi(4)
            + 6.0 * a * s.powi(3)
            - 5.0 * s * s
            - 16.0 * a * s
            + 4.0;
        0.25 * self.g2 * self.cross_gauss(s) * inner
    }

    fn w1(&self, s: f64) -> C64 {
        let a = self.alpha;
        let ac = a.conj();
        let inner = 4.0 * a + ac * (s - 2.0 * a) * (s - a) + 2.0 * a * a * s + s.powi(3)
            - 3.0 * a * s * s
            - 3.0 * s;
        0.5 * self.cross_gauss(s) * inner
    }

    fn q1(&self, s: f64) -> C64 {
        let a = self.alpha;
        0.25 * self.g2 * (2.0 * a + s) * (6.0 * a + self.abs2() * (2.0 * a + s) + s)
    }

    fn q2(&self, s: f64) -> C64 {
        let a = self.alpha;
        let ac = a.conj();
        let inner = 6.0 * a + ac * (s - 2.0 * a) * (s - a) + 2.0 * a * a * s + s.powi(3)
            - 3.0 * a * s * s
            - 5.0 * s;
        -0.25 * self.cross_gauss(s) * self.g2 * (s - 2.0 * a) * inner
    }

    fn f1(&self, s: f64) -> f64 {
        let a = self.alpha;
        let abs2 = self.abs2();
        let re_a2 = (a * a).re;
        let inner = 2.0 * abs2.powi(3)
            + s * abs2 * ((s * s + 16.0) * a.re + s * re_a2)
            + 2.0 * abs2 * abs2 * (2.0 * s * a.re + s * s + 5.0)
            + 8.0 * abs2
            + 6.0 * s * s * abs2
            + (2.0 * s.powi(3) + 8.0 * s) * a.re
            + 3.0 * s * s * re_a2;
        0.5 * self.g2 * inner + s.powi(4) / 16.0 + self.g2 * s * s
    }

    /// Referenced but never defined in print; taken to equal `f1`.
    fn f2(&self, s: f64) -> f64 {
        self.f1(s)
    }

    fn f3(&self, s: f64) -> C64 {
        let a = self.alpha;
        let ac = a.conj();
        let bracket = 2.0 * ac * ac * (s - 2.0 * a) * (s - a)
            + 20.0 * self.abs2()
            + 3.0 * s * ac * (s - 2.0 * a) * (s - a)
            + 28.0 * I * s * a.im
            + s * s * (2.0 * a * a + s * s - 3.0 * a * s - 9.0)
            + 16.0 * (-0.5 * s * (s - 4.0 * I * a.im)).exp();
        -(1.0 / 16.0) * self.g2 * (s - 2.0 * a) * (2.0 * ac + s) * bracket
    }

    fn h1(&self, s: f64) -> C64 {
        let a = self.alpha;
        let g2 = self.g2;
        (1.0 / 16.0)
            * (8.0 * a * g2 * self.abs2() * (a + s) * (2.0 * a * a + s * s + 2.0 * a * s)
                + s.powi(4)
                + 8.0 * a * g2 * (10.0 * a.powi(3) + 2.0 * s.powi(3) + 9.0 * a * s * s + 16.0 * a * a * s))
    }

    fn h2(&self, s: f64) -> C64 {
        let a = self.alpha;
        let ac = a.conj();
        let inner = 10.0 * a + ac * (s - 2.0 * a) * (s - a) + 2.0 * a * a * s + s.powi(3)
            - 3.0 * a * s * s
            - 9.0 * s;
        -(1.0 / 16.0) * self.g2 * self.cross_gauss(s) * (s - 2.0 * a).powi(3) * inner
    }

    /// Right-hand side of the printed `kappa^{-2}`.
    fn kappa_inv_sq(&self, s: f64) -> f64 {
        let a = self.alpha;
        let w = self.w;
        let factor = (c(1.0) + w.conj())
            * (c(1.0) - w)
            * (c(1.0 / self.g2) - s * s + a * s - a.conj() * s)
            * C64::from_polar(1.0, 2.0 * s * a.im);
        1.0 + w.norm_sqr() + self.g2 * (-s * s / 2.0).exp() * factor.re
    }

    /// `w(Gamma)`; `w(-Gamma)` is the same with `s -> -s`.
    fn wigner_w(&self, s: f64, z: C64) -> f64 {
        let a = self.alpha;
        (-0.5 * s * s).exp()
            * (-2.0 * (a.re - z.re) * s).exp()
            * (-1.0 + (2.0 * z - a).norm_sqr() + 2.0 * s * (a.re - 2.0 * z.re + s / 2.0))
    }
}

/// `|kappa|^2` from the printed normalization.
pub fn printed_kappa_sq(params: &ExperimentParams) -> Result<f64> {
    let sym = Symbols::new(params)?;
    let inv = sym.kappa_inv_sq(params.s);
    if inv.is_nan() || inv <= 0.0 {
        return Err(Error::NonPositiveNorm { value: inv });
    }
    Ok(1.0 / inv)
}

pub fn printed_moments(params: &ExperimentParams) -> Result<PrintedMomentSet> {
    let sym = Symbols::new(params)?;
    let kappa_sq = printed_kappa_sq(params)?;
    let s = params.s;
    let (p2, m2, cross) = (sym.plus2(), sym.minus2(), sym.cross());
    // (1 + w)(1 - w)^*
    let cross_rev = cross.conj();

    let n_mean = kappa_sq * (p2 * sym.t1(s) + m2 * sym.t1(-s) + 2.0 * (cross * sym.t3(s)).re);

    let a = sym.alpha;
    let abs2 = sym.abs2();
    let m_a = kappa_sq
        * sym.g2
        * (p2 * (2.0 * a + a * abs2 + s / (2.0 * sym.g2))
            + m2 * (2.0 * a + a * abs2 - s / (2.0 * sym.g2))
            + cross * sym.w1(s)
            + cross_rev * sym.w1(-s));

    let m_a2 = kappa_sq
        * (p2 * sym.q1(s) + m2 * sym.q1(-s) + cross * sym.q2(s) + cross_rev * sym.q2(-s));

    let m_a2d2 =
        kappa_sq * (p2 * sym.f1(s) + m2 * sym.f2(-s) + 2.0 * (cross * sym.f3(s)).re);

    // printed order: (1 + w)^* (1 - w) h2(s) + (1 + w)(1 - w)^* h2(-s)
    let m_a4 = kappa_sq
        * (p2 * sym.h1(s) + m2 * sym.h1(-s) + cross * sym.h2(s) + cross_rev * sym.h2(-s));

    Ok(PrintedMomentSet {
        m_a,
        m_a2,
        m_a4,
        n_mean,
        m_a2d2,
        kappa_sq,
    })
}

/// Printed closed-form Wigner function of the final pointer state.
pub fn printed_wigner(params: &ExperimentParams, z: C64) -> Result<f64> {
    let sym = Symbols::new(params)?;
    let kappa_sq = printed_kappa_sq(params)?;
    let s = params.s;
    let a = sym.alpha;
    let lead = 2.0 * kappa_sq / (PI * (1.0 + a.norm_sqr())) * (-2.0 * (z - a).norm_sqr()).exp();
    let interference = 2.0
        * (-1.0 + (2.0 * z - a).norm_sqr())
        * (sym.cross() * C64::from_polar(1.0, 2.0 * s * z.im)).re;
    Ok(lead
        * (sym.plus2() * sym.wigner_w(s, z) + sym.minus2() * sym.wigner_w(-s, z) + interference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{moments, spacs};

    fn preset() -> ExperimentParams {
        ExperimentParams::figure_preset()
    }

    #[test]
    fn kappa_at_zero_coupling() {
        for (delta, phi) in [(0.0, 0.0), (PI / 6.0, 7.0 * PI / 9.0), (1.0, 2.5), (6.0, 0.3)] {
            let p = ExperimentParams {
                delta,
                phi,
                s: 0.0,
                ..preset()
            };
            assert!((printed_kappa_sq(&p).unwrap() - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn kappa_positive_on_preset() {
        for s in [0.1, 0.5, 1.0, 2.0, 4.0] {
            assert!(printed_kappa_sq(&preset().with_s(s)).unwrap() > 0.0);
        }
    }

    #[test]
    fn printed_mean_field_is_twice_exact_at_zero_coupling() {
        // the printed <a> at s = 0 collapses to 2 g^2 alpha (|alpha|^2 + 2)
        let p = preset().with_s(0.0);
        let printed = printed_moments(&p).unwrap();
        let exact = moments(&spacs(p.alpha(), p.trunc).unwrap());
        assert!((printed.m_a - 2.0 * exact.m_a).norm() < 1e-12);
    }

    #[test]
    fn printed_values_finite() {
        for s in [0.0, 0.3, 1.0, 2.5, 4.0] {
            for r in [0.0, 0.5, 1.0, 2.0, 3.0] {
                let p = preset().with_s(s).with_r(r);
                let m = printed_moments(&p).unwrap();
                for v in [m.m_a, m.m_a2, m.m_a4] {
                    assert!(v.re.is_finite() && v.im.is_finite());
                }
                assert!(m.n_mean.is_finite() && m.m_a2d2.is_finite());
                assert!(printed_wigner(&p, C64::new(0.3, -0.4)).unwrap().is_finite());
            }
        }
    }

    #[test]
    fn depends_on_angles_only_through_weak_value() {
        // delta = 0 and delta = 2pi give the same w
        let a = preset().with_s(0.7);
        let c0 = ExperimentParams { delta: 0.0, ..a };
        let c1 = ExperimentParams { delta: 2.0 * PI, ..a };
        let (m0, m1) = (printed_moments(&c0).unwrap(), printed_moments(&c1).unwrap());
        assert!((m0.m_a - m1.m_a).norm() < 1e-12);
        assert!((m0.n_mean - m1.n_mean).abs() < 1e-12);
    }

    #[test]
    fn printed_wigner_single_photon_origin() {
        let p = preset().with_r(0.0).with_s(0.0);
        let w = printed_wigner(&p, C64::new(0.0, 0.0)).unwrap();
        assert!((w + 4.0 / PI).abs() < 1e-12);
    }

    #[test]
    fn notes_cover_every_helper() {
        for name in ["kappa", "t1", "t3", "w1", "q1", "q2", "f1", "f2", "f3", "h1", "h2", "w(Gamma)"] {
            assert!(TRANSCRIPTION_NOTES.contains(name), "missing {name}");
        }
    }
}
