//! Symmetric two-mode Gaussian Q-functions and their superposition.
//!
//! Every Q-function handled here has the form
//!
//! ```text
//! Q(a, b) = (U^2 - V^2)/pi^2 exp[-U(|a|^2 + |b|^2) - V(ab + a*b*) + L(a + a* + b + b*) + C]
//! ```
//!
//! with `U > |V|` and `C = -2 L^2 / (U + V)`, which makes it normalized. The
//! coherent cavity gives `U = 1, V = 0`; the subharmonic cavity gives `L = C = 0`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::subharmonic;

const FAMILY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianQ {
    u: f64,
    v: f64,
    l: f64,
    c: f64,
}

/// Single-mode marginal `w/pi exp(-w |a - d|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarginalGaussianQ {
    pub w: f64,
    pub d: f64,
}

impl GaussianQ {
    /// Builds a normalized Q-function, rejecting non-integrable coefficients
    /// or an exponent constant inconsistent with normalization.
    pub fn new(u: f64, v: f64, l: f64, c: f64) -> Result<Self> {
        if ![u, v, l, c].iter().all(|x| x.is_finite()) {
            return Err(Error::MalformedInput(
                "non-finite Q-function coefficient".into(),
            ));
        }
        if u <= v.abs() {
            return Err(Error::MalformedInput(format!(
                "Q-function not integrable: U = {u}, V = {v}"
            )));
        }
        let expected = -2.0 * l * l / (u + v);
        if (c - expected).abs() > FAMILY_TOL * (1.0 + expected.abs()) {
            return Err(Error::MalformedInput(format!(
                "exponent constant {c} inconsistent with normalization (expected {expected})"
            )));
        }
        Ok(Self { u, v, l, c })
    }

    /// Two independent coherent states of real amplitude `q`.
    pub fn coherent(q: f64) -> Result<Self> {
        Self::new(1.0, 0.0, q, -2.0 * q * q)
    }

    /// Zero-mean correlated pair.
    pub fn centered(u: f64, v: f64) -> Result<Self> {
        Self::new(u, v, 0.0, 0.0)
    }

    pub fn u(&self) -> f64 {
        self.u
    }
    pub fn v(&self) -> f64 {
        self.v
    }
    pub fn l(&self) -> f64 {
        self.l
    }
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn prefactor(&self) -> f64 {
        (self.u * self.u - self.v * self.v) / (PI * PI)
    }

    /// Common real displacement of both modes, `L / (U + V)`.
    pub fn displacement(&self) -> f64 {
        self.l / (self.u + self.v)
    }

    fn is_coherent_family(&self) -> bool {
        (self.u - 1.0).abs() <= FAMILY_TOL && self.v.abs() <= FAMILY_TOL
    }

    fn is_centered_family(&self) -> bool {
        self.l.abs() <= FAMILY_TOL && self.c.abs() <= FAMILY_TOL
    }

    pub fn exponent(&self, alpha: Complex64, beta: Complex64) -> f64 {
        -self.u * (alpha.norm_sqr() + beta.norm_sqr()) - self.v * 2.0 * (alpha * beta).re
            + self.l * 2.0 * (alpha.re + beta.re)
            + self.c
    }

    pub fn evaluate(&self, alpha: Complex64, beta: Complex64) -> f64 {
        self.prefactor() * self.exponent(alpha, beta).exp()
    }
}

impl MarginalGaussianQ {
    pub fn w(&self) -> f64 {
        self.w
    }

    /// Peak position on the real axis.
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn evaluate(&self, alpha: Complex64) -> f64 {
        self.w / PI * (-self.w * (alpha - self.d).norm_sqr()).exp()
    }
}

/// Convolves a coherent-family Q with a centered-family Q. The result keeps
/// the correlation structure `(u, v)` of the centered input and inherits the
/// displacement `q` of the coherent one: `L = q(u + v)`, `C = -2 q^2 (u + v)`.
pub fn superpose(coherent: &GaussianQ, centered: &GaussianQ) -> Result<GaussianQ> {
    if !coherent.is_coherent_family() {
        return Err(Error::MalformedInput(
            "first argument must be a coherent-family Q (U = 1, V = 0)".into(),
        ));
    }
    if !centered.is_centered_family() {
        return Err(Error::MalformedInput(
            "second argument must be a centered Q (L = 0, C = 0)".into(),
        ));
    }
    let q = coherent.l;
    let (u, v) = (centered.u, centered.v);
    GaussianQ::new(u, v, q * (u + v), -2.0 * q * q * (u + v))
}

/// Superposed Q-function of the coherent and subharmonic cavities at steady state.
pub fn superposed_qfunction(params: &SystemParams) -> Result<GaussianQ> {
    let coh = crate::coherent::coherent_qfunction(params, crate::params::Time::SteadyState)?;
    let sub = subharmonic::subharmonic_qfunction(params)?;
    superpose(&coh, &sub)
}

/// Integrates out the second mode.
pub fn marginal(q: &GaussianQ) -> MarginalGaussianQ {
    MarginalGaussianQ {
        w: (q.u * q.u - q.v * q.v) / q.u,
        d: q.displacement(),
    }
}

/// `<a^+ a>` from the antinormal second moment of the marginal, minus one.
pub fn q_mean_photon_single(q: &GaussianQ) -> f64 {
    let m = marginal(q);
    1.0 / m.w + m.d * m.d - 1.0
}

/// `(<a^+ b>, <a2 b2>)`: the cross moment `q^2` and the anomalous moment of
/// the zero-mean part, `-V / (U^2 - V^2)`.
pub fn q_cross_moments(q: &GaussianQ) -> (f64, f64) {
    let d = q.displacement();
    (d * d, -q.v / (q.u * q.u - q.v * q.v))
}

/// `(<c'^+ c'>, <c'^2>, <c'^+2>)` for the zero-mean part of `c = a + b`.
/// The coherent fluctuations are in vacuum, so only the subharmonic pair
/// contributes.
pub fn composite_fluctuation_moments(params: &SystemParams) -> Result<(f64, f64, f64)> {
    let m = subharmonic::steady_moments(params)?;
    Ok((2.0 * m.n_a, 2.0 * m.m_ab, 2.0 * m.m_ab))
}
