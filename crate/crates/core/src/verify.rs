//! Oracle-versus-closed-form comparison suite.

use std::fmt;

use num_complex::Complex64;

use crate::coherent::displacement;
use crate::error::{Error, Result};
use crate::oracles::{
    composite_statistics, composite_word, density_moments, fock_steady_state,
    gaussian_integral_identity, gaussian_integral_quadrature, integrate_coherent_odes,
    integrate_subharmonic_odes, numeric_marginal_qfunction, numeric_qfunction, FockSystem,
    IntegrationConfig, MomentTable, TwoModeDensityMatrix,
};
use crate::params::{SystemParams, Time};
use crate::statistics::{
    epr_sum, g2_cross, g2_single, mean_photon, photon_variance, photon_variance_from_moments,
    quadrature_report,
};
use crate::subharmonic::{steady_moments, subharmonic_qfunction};
use crate::superposition::{marginal, superposed_qfunction, GaussianQ, MarginalGaussianQ};

pub const DEFAULT_TOLERANCE: f64 = 1e-4;
/// Cutoff growth when no explicit truncation is requested.
pub const TRUNCATION_STEP: usize = 3;
pub const MAX_TRUNCATION: usize = 40;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Absolute (or, where the name says so, relative) deviation.
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.measured <= self.tolerance
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "CHECK {} {:e} {:e} {}",
            self.name, self.measured, self.tolerance, verdict
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Fixed Fock cutoff for the parametric system; `None` grows it until adequate.
    pub fock_dim: Option<usize>,
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            fock_dim: None,
            tol: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub subharmonic_truncation: usize,
    pub coherent_truncation: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn relative(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        x.abs()
    } else {
        ((x - reference) / reference).abs()
    }
}

/// Steady state at the first adequate cutoff, starting from `start`.
fn adaptive_steady_state(
    params: &SystemParams,
    system: FockSystem,
    start: usize,
    fixed: bool,
) -> Result<TwoModeDensityMatrix> {
    let mut n = start;
    loop {
        let config = IntegrationConfig::steady(params).with_truncation(n);
        match fock_steady_state(params, system, &config) {
            Err(Error::TruncationTooSmall { .. })
                if !fixed && n + TRUNCATION_STEP <= MAX_TRUNCATION =>
            {
                n += TRUNCATION_STEP;
            }
            other => return other,
        }
    }
}

pub fn subharmonic_fock_state(
    params: &SystemParams,
    fock_dim: Option<usize>,
) -> Result<TwoModeDensityMatrix> {
    params.require_subthreshold()?;
    adaptive_steady_state(
        params,
        FockSystem::Subharmonic,
        fock_dim.unwrap_or(crate::oracles::config::DEFAULT_TRUNCATION),
        fock_dim.is_some(),
    )
}

pub fn coherent_fock_state(params: &SystemParams) -> Result<TwoModeDensityMatrix> {
    adaptive_steady_state(
        params,
        FockSystem::Coherent,
        crate::oracles::config::DEFAULT_COHERENT_TRUNCATION,
        false,
    )
}

/// Trapezoid rule over the square `[cx - half, cx + half] × [-half, half]`.
pub fn plane_integral(center: f64, half: f64, points: usize, f: impl Fn(Complex64) -> f64) -> f64 {
    let h = 2.0 * half / (points - 1) as f64;
    let weight = |i: usize| if i == 0 || i == points - 1 { 0.5 } else { 1.0 };
    let mut sum = 0.0;
    for i in 0..points {
        let x = center - half + i as f64 * h;
        for j in 0..points {
            let y = -half + j as f64 * h;
            sum += weight(i) * weight(j) * f(Complex64::new(x, y));
        }
    }
    sum * h * h
}

/// `(∫Q, ∫|a|²Q, ∫|a|⁴Q)` of a marginal Q over a window of ±7 widths.
pub fn marginal_antinormal_moments(q: &MarginalGaussianQ) -> (f64, f64, f64) {
    let half = (49.0 / q.w()).sqrt();
    let integrate = |power: i32| {
        plane_integral(q.d(), half, 241, |z| {
            z.norm_sqr().powi(power) * q.evaluate(z)
        })
    };
    (integrate(0), integrate(1), integrate(2))
}

/// Points `(alpha, beta)` on the real 9 × 9 grid with `|alpha|, |beta| <= 2`.
pub fn q_grid() -> Vec<(Complex64, Complex64)> {
    let axis: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    axis.iter()
        .flat_map(|&x| {
            axis.iter()
                .map(move |&y| (Complex64::new(x, 0.0), Complex64::new(y, 0.0)))
        })
        .collect()
}

pub fn max_q_deviation(rho: &TwoModeDensityMatrix, analytic: &GaussianQ) -> Result<f64> {
    let mut worst = 0.0f64;
    for (a, b) in q_grid() {
        worst = worst.max((numeric_qfunction(rho, a, b)? - analytic.evaluate(a, b)).abs());
    }
    Ok(worst)
}

fn gaussian_identity_deviation() -> Result<f64> {
    let c = Complex64::new;
    let zero = c(0.0, 0.0);
    let cases = [
        (1.0, zero, zero, zero, zero),
        (1.0, c(0.5, 0.0), c(0.3, 0.0), zero, zero),
        (2.0, zero, zero, c(0.3, 0.0), c(0.3, 0.0)),
        (1.5, c(0.2, -0.4), c(0.1, 0.3), c(0.2, 0.1), c(-0.1, 0.25)),
    ];
    let mut worst = 0.0f64;
    for (a, b, cc, ba, bb) in cases {
        let exact = gaussian_integral_identity(a, b, cc, ba, bb)?;
        let numeric = gaussian_integral_quadrature(a, b, cc, ba, bb, 241)?;
        worst = worst.max((exact - numeric).norm());
    }
    Ok(worst)
}

/// Runs every comparison. Fails early with `ThresholdDivergence` at or
/// above threshold and with `TruncationTooSmall` if the Fock cutoff is
/// inadequate.
pub fn run_verification(params: &SystemParams, options: &VerifyOptions) -> Result<VerifyReport> {
    params.require_subthreshold()?;
    let tol = options.tol;
    let mut checks = Vec::new();
    let mut push = |name, measured: f64| {
        checks.push(Check {
            name,
            measured: if measured.is_nan() {
                f64::INFINITY
            } else {
                measured
            },
            tolerance: tol,
        })
    };

    let sub_rho = subharmonic_fock_state(params, options.fock_dim)?;
    let coh_rho = coherent_fock_state(params)?;
    let sub = density_moments(&sub_rho, 4)?;
    let coh = density_moments(&coh_rho, 4)?;

    let m = steady_moments(params)?;
    let q = displacement(params, Time::SteadyState)?;
    let g = |t: &MomentTable, w| t.get(w);

    push("fock_sub_trace", (sub_rho.trace() - 1.0).norm());
    push("fock_sub_hermiticity", sub_rho.hermiticity_error());
    push("fock_sub_n_a", (g(&sub, [1, 1, 0, 0])?.re - m.n_a).abs());
    push("fock_sub_n_b", (g(&sub, [0, 0, 1, 1])?.re - m.n_a).abs());
    push("fock_sub_ab", (g(&sub, [0, 1, 0, 1])? - m.m_ab).norm());
    push("fock_sub_a_dag_b", g(&sub, [1, 0, 0, 1])?.norm());
    push("fock_sub_a_sq", g(&sub, [0, 2, 0, 0])?.norm());

    push("fock_coh_mean_a", (g(&coh, [0, 1, 0, 0])? - q).norm());
    push("fock_coh_n_a", (g(&coh, [1, 1, 0, 0])?.re - q * q).abs());
    push(
        "fock_coh_a_dag2_a2",
        (g(&coh, [2, 2, 0, 0])?.re - q.powi(4)).abs(),
    );
    push("fock_coh_purity", (coh_rho.purity() - 1.0).abs());

    let coh_ode = integrate_coherent_odes(params, &IntegrationConfig::steady(params))?;
    let coh_last = coh_ode.last();
    push(
        "ode_coh_mean_a_rel",
        relative(coh_last.a.re, q) + coh_last.a.im.abs(),
    );
    push("ode_coh_n_a_rel", relative(coh_last.a_dag_a.re, q * q));
    let transient = integrate_coherent_odes(params, &IntegrationConfig::until(1.0))?;
    push(
        "ode_coh_transient_mean_a",
        (transient.last().a - displacement(params, Time::At(1.0))?).norm(),
    );

    let sub_ode = integrate_subharmonic_odes(params, &IntegrationConfig::steady(params))?;
    let sub_last = sub_ode.last();
    push("ode_sub_n_a_rel", relative(sub_last.a_dag_a.re, m.n_a));
    push(
        "ode_sub_ab_rel",
        relative(sub_last.ab.re, m.m_ab) + sub_last.ab.im.abs(),
    );
    push(
        "ode_vs_fock_n_a",
        (sub_last.a_dag_a - g(&sub, [1, 1, 0, 0])?).norm(),
    );
    push(
        "ode_vs_fock_n_b",
        (sub_last.b_dag_b - g(&sub, [0, 0, 1, 1])?).norm(),
    );
    push(
        "ode_vs_fock_ab",
        (sub_last.ab - g(&sub, [0, 1, 0, 1])?).norm(),
    );

    let stats = composite_statistics(&coh, &sub)?;
    let quad = quadrature_report(params)?;
    push(
        "composite_mean",
        (stats.mean - mean_photon(params, Time::SteadyState)?).abs(),
    );
    push(
        "composite_variance",
        (stats.variance - photon_variance(params, Time::SteadyState)?).abs(),
    );
    push("composite_plus_var", (stats.plus_var - quad.plus_var).abs());
    push(
        "composite_minus_var",
        (stats.minus_var - quad.minus_var.value()).abs(),
    );
    push(
        "composite_epr_sum",
        (stats.epr_sum - epr_sum(params)?).abs(),
    );
    if !params.is_vacuum() {
        let g2a = g2_single(params)?;
        let g2ab = g2_cross(params)?;
        push(
            "composite_g2_a",
            (stats.g2_a.unwrap_or(f64::NAN) - g2a).abs(),
        );
        push(
            "composite_g2_b",
            (stats.g2_b.unwrap_or(f64::NAN) - g2a).abs(),
        );
        push(
            "composite_g2_ab",
            (stats.g2_ab.unwrap_or(f64::NAN) - g2ab).abs(),
        );
    }
    push("gaussian_factorization", stats.gaussian_residual);

    let sub_q = subharmonic_qfunction(params)?;
    push("numeric_q_vs_analytic", max_q_deviation(&sub_rho, &sub_q)?);
    let sub_marginal = marginal(&sub_q);
    let mut worst = 0.0f64;
    for (a, _) in q_grid().into_iter().step_by(9) {
        worst =
            worst.max((numeric_marginal_qfunction(&sub_rho, a)? - sub_marginal.evaluate(a)).abs());
    }
    push("numeric_marginal_q_vs_analytic", worst);

    let superposed = superposed_qfunction(params)?;
    let (norm, second, fourth) = marginal_antinormal_moments(&marginal(&superposed));
    push("superposed_marginal_norm", (norm - 1.0).abs());
    let n_single = composite_word([1, 1, 0, 0], &coh, &sub)?.re;
    push(
        "marginal_mean_photon",
        (second - 1.0 - (q * q + m.n_a)).abs(),
    );
    push(
        "marginal_mean_photon_vs_fock",
        (second - 1.0 - n_single).abs(),
    );
    let a_dag2_a2 = composite_word([2, 2, 0, 0], &coh, &sub)?.re;
    push(
        "marginal_fourth_order",
        (fourth - 4.0 * second + 2.0 - a_dag2_a2).abs(),
    );

    push(
        "variance_forms_steady",
        (photon_variance(params, Time::SteadyState)?
            - photon_variance_from_moments(params, Time::SteadyState)?)
        .abs(),
    );
    push(
        "variance_forms_transient",
        (photon_variance(params, Time::At(1.0))?
            - photon_variance_from_moments(params, Time::At(1.0))?)
        .abs(),
    );
    let (k, gm) = (params.kappa, params.gamma);
    push(
        "uncertainty_product",
        (quad.plus_var * quad.minus_var.value()
            - 16.0 * (k * k - gm * gm) / (k * k - 4.0 * gm * gm))
            .abs(),
    );
    push(
        "gaussian_identity_vs_quadrature",
        gaussian_identity_deviation()?,
    );

    Ok(VerifyReport {
        subharmonic_truncation: sub_rho.truncation(),
        coherent_truncation: coh_rho.truncation(),
        checks,
    })
}
