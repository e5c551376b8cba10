//! Observables of the superposed field `c = a + b`, where each of `a`, `b`
//! is the sum of a coherent-cavity mode and a subharmonic-cavity mode.
//!
//! Conventions: `[c, c^+] = 4` and, for the composite modes, `[a, a^+] = 2`.
//! Quadrature variances and the EPR sum are measured against the two-mode
//! vacuum level 4.

use crate::coherent::displacement;
use crate::error::{Error, Result};
use crate::params::{Regime, SystemParams, Time};
use crate::subharmonic::steady_moments;

/// Vacuum level of the quadrature variances and of the EPR sum.
pub const VACUUM_VARIANCE: f64 = 4.0;

/// A quantity that is either finite or diverges at threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaybeDivergent {
    Finite(f64),
    Divergent,
}

impl MaybeDivergent {
    pub fn finite(self) -> Option<f64> {
        match self {
            MaybeDivergent::Finite(x) => Some(x),
            MaybeDivergent::Divergent => None,
        }
    }

    /// Finite value, or `+inf` when divergent.
    pub fn value(self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhotonStatistics {
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport {
    pub plus_var: f64,
    pub minus_var: MaybeDivergent,
    pub squeezing: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub g2_a: f64,
    pub g2_b: f64,
    pub g2_ab: f64,
    pub cs_lhs: f64,
    pub cs_rhs: f64,
    pub cs_satisfied: bool,
    pub epr_sum: f64,
    pub entangled: bool,
    pub degree: f64,
}

/// `(1 - exp(-kappa t/2))^2`, the growth factor of the coherent contribution.
fn coherent_growth(params: &SystemParams, time: Time) -> Result<f64> {
    let q = displacement(params, time)?;
    let steady = 2.0 * params.epsilon / params.kappa;
    Ok(if steady == 0.0 {
        0.0
    } else {
        (q / steady).powi(2)
    })
}

/// Mean photon number of `c`: the subharmonic steady term plus the coherent
/// term `16 eps^2/kappa^2 (1 - exp(-kappa t/2))^2`.
pub fn mean_photon(params: &SystemParams, time: Time) -> Result<f64> {
    params.require_subthreshold()?;
    let (k, g, e) = (params.kappa, params.gamma, params.epsilon);
    let growth = coherent_growth(params, time)?;
    Ok(4.0 * g * g / params.detuning_denominator() + 16.0 * e * e / (k * k) * growth)
}

/// Photon-number variance of `c` in fully expanded form.
pub fn photon_variance(params: &SystemParams, time: Time) -> Result<f64> {
    params.require_subthreshold()?;
    let (k, g, e) = (params.kappa, params.gamma, params.epsilon);
    let growth = coherent_growth(params, time)?;
    let d = params.detuning_denominator();
    let (g2, e2, k2) = (g * g, e * e, k * k);
    Ok(16.0 * g2 * g2 / (d * d)
        + 4.0 * k2 * g2 / (d * d)
        + 16.0 * g2 / d
        + 128.0 * e2 * g2 / (k2 * d) * growth
        - 64.0 * e2 * g / (k * d) * growth
        + 64.0 * e2 / k2 * growth)
}

/// Photon-number variance of `c` assembled from the fluctuation moments
/// `<a2 b2>`, `<a2^+ a2>`, the displacement `q` and the mean photon number.
pub fn photon_variance_from_moments(params: &SystemParams, time: Time) -> Result<f64> {
    let m = steady_moments(params)?;
    let q = displacement(params, time)?;
    let mean = mean_photon(params, time)?;
    let q2 = q * q;
    let fourth = 4.0 * m.m_ab * m.m_ab
        + 8.0 * m.n_a * m.n_a
        + 16.0 * q2 * m.m_ab
        + 32.0 * q2 * m.n_a
        + 16.0 * q2 * q2;
    Ok(fourth + 4.0 * mean - mean * mean)
}

pub fn photon_statistics(params: &SystemParams, time: Time) -> Result<PhotonStatistics> {
    Ok(PhotonStatistics {
        mean: mean_photon(params, time)?,
        variance: photon_variance(params, time)?,
    })
}

fn plus_variance(params: &SystemParams, regime: Regime) -> f64 {
    match regime {
        Regime::AtThreshold => 3.0,
        _ => VACUUM_VARIANCE - 4.0 * params.gamma / (params.kappa + 2.0 * params.gamma),
    }
}

/// Squeezing of the plus quadrature relative to the vacuum level.
pub fn squeezing(params: &SystemParams) -> Result<f64> {
    let class = params.require_not_above()?;
    Ok(match class.regime {
        Regime::AtThreshold => 0.25,
        _ => params.gamma / (params.kappa + 2.0 * params.gamma),
    })
}

/// Plus/minus quadrature variances and squeezing. At threshold the minus
/// variance is reported as divergent while the rest stay finite.
pub fn quadrature_report(params: &SystemParams) -> Result<QuadratureReport> {
    let class = params.require_not_above()?;
    let minus_var = match class.regime {
        Regime::AtThreshold => MaybeDivergent::Divergent,
        _ => MaybeDivergent::Finite(
            VACUUM_VARIANCE + 4.0 * params.gamma / (params.kappa - 2.0 * params.gamma),
        ),
    };
    Ok(QuadratureReport {
        plus_var: plus_variance(params, class.regime),
        minus_var,
        squeezing: squeezing(params)?,
    })
}

/// `(q^2, <a2^+ a2>, <a2 b2>)` at steady state, rejecting the vacuum.
fn correlation_inputs(params: &SystemParams) -> Result<(f64, f64, f64)> {
    if params.is_vacuum() {
        return Err(Error::UndefinedCorrelation);
    }
    let m = steady_moments(params)?;
    let q = displacement(params, Time::SteadyState)?;
    Ok((q * q, m.n_a, m.m_ab))
}

/// Zero-delay second-order correlation of one composite mode at steady state.
pub fn g2_single(params: &SystemParams) -> Result<f64> {
    let class = params.require_not_above()?;
    if params.is_vacuum() {
        return Err(Error::UndefinedCorrelation);
    }
    if class.regime == Regime::AtThreshold {
        return Ok(2.0);
    }
    let (q2, n, _) = correlation_inputs(params)?;
    Ok(1.0 + (n * n + 2.0 * q2 * n) / (q2 + n).powi(2))
}

/// Zero-delay second-order cross-correlation of the two composite modes.
pub fn g2_cross(params: &SystemParams) -> Result<f64> {
    let class = params.require_not_above()?;
    if params.is_vacuum() {
        return Err(Error::UndefinedCorrelation);
    }
    if class.regime == Regime::AtThreshold {
        return Ok(2.0);
    }
    let (q2, n, m) = correlation_inputs(params)?;
    Ok(1.0 + (2.0 * q2 * m + m * m) / (q2 + n).powi(2))
}

/// Sum of the variances of the EPR-like operators `x1 + x2` and `p1 - p2`.
/// Identical to the plus quadrature variance.
pub fn epr_sum(params: &SystemParams) -> Result<f64> {
    let class = params.require_not_above()?;
    Ok(plus_variance(params, class.regime))
}

pub fn degree_of_entanglement(params: &SystemParams) -> Result<f64> {
    Ok(epr_sum(params)? / VACUUM_VARIANCE)
}

pub fn epr_report(params: &SystemParams) -> Result<EntanglementReport> {
    let g2_a = g2_single(params)?;
    let g2_ab = g2_cross(params)?;
    let epr = epr_sum(params)?;
    let cs_lhs = g2_a * g2_a;
    let cs_rhs = g2_ab * g2_ab;
    Ok(EntanglementReport {
        g2_a,
        g2_b: g2_a,
        g2_ab,
        cs_lhs,
        cs_rhs,
        cs_satisfied: cs_lhs >= cs_rhs,
        epr_sum: epr,
        entangled: epr < VACUUM_VARIANCE,
        degree: epr / VACUUM_VARIANCE,
    })
}
