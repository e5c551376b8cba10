//! Two-mode subharmonic generator below threshold, pumped by a classical
//! field folded into `gamma`. Only steady-state moments are available in
//! closed form; transients come from the moment-equation integrator.

use crate::error::Result;
use crate::params::{lambda_pm, SystemParams, Time};
use crate::superposition::GaussianQ;

/// Steady-state moments of the signal/idler pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubharmonicMoments {
    /// `<a^+ a> = <b^+ b>`
    pub n_a: f64,
    /// `<a b> = <a^+ b^+>`
    pub m_ab: f64,
    /// `<a^+ b>`, identically zero.
    pub cross: f64,
    /// `<a^2>`, identically zero.
    pub sq_a: f64,
}

/// Coefficients of the characteristic function and of the Q-function exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QCoefficients {
    pub a_coef: f64,
    pub b_coef: f64,
    pub u: f64,
    pub v: f64,
}

pub fn steady_moments(params: &SystemParams) -> Result<SubharmonicMoments> {
    params.require_subthreshold()?;
    let denom = params.detuning_denominator();
    Ok(SubharmonicMoments {
        n_a: 2.0 * params.gamma * params.gamma / denom,
        m_ab: -params.kappa * params.gamma / denom,
        cross: 0.0,
        sq_a: 0.0,
    })
}

pub fn char_coefficients(params: &SystemParams) -> Result<QCoefficients> {
    params.require_subthreshold()?;
    let (k, g) = (params.kappa, params.gamma);
    let denom = params.detuning_denominator();
    let a_coef = (k * k - 2.0 * g * g) / denom;
    let b_coef = k * g / denom;
    let det = a_coef * a_coef - b_coef * b_coef;
    Ok(QCoefficients {
        a_coef,
        b_coef,
        u: a_coef / det,
        v: b_coef / det,
    })
}

/// Q-function `(u^2 - v^2)/pi^2 exp[-u(|a|^2 + |b|^2) - v(ab + a*b*)]`.
pub fn subharmonic_qfunction(params: &SystemParams) -> Result<GaussianQ> {
    let c = char_coefficients(params)?;
    GaussianQ::centered(c.u, c.v)
}

/// `E+- = (exp(-lambda+ t/2) +- exp(-lambda- t/2)) / 2`, the weights with
/// which `a(0)` and `b^+(0)` feed `a(t)`.
pub fn mixing_factors(params: &SystemParams, t: f64) -> Result<(f64, f64)> {
    let (lp, lm) = lambda_pm(params)?;
    Time::At(t).check()?;
    let fast = (-0.5 * lp * t).exp();
    let slow = (-0.5 * lm * t).exp();
    Ok((0.5 * (fast + slow), 0.5 * (fast - slow)))
}
