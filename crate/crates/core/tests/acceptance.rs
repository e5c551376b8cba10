//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::process::ExitCode;

use cavityq_core::oracles::{
    composite_statistics, density_moments, integrate_subharmonic_odes, IntegrationConfig,
};
use cavityq_core::statistics::{
    degree_of_entanglement, epr_report, epr_sum, g2_cross, g2_single, photon_variance,
    photon_variance_from_moments, quadrature_report, squeezing,
};
use cavityq_core::subharmonic::{steady_moments, subharmonic_qfunction};
use cavityq_core::superposition::{marginal, q_mean_photon_single, superposed_qfunction};
use cavityq_core::verify::{
    coherent_fock_state, marginal_antinormal_moments, max_q_deviation, subharmonic_fock_state,
};
use cavityq_core::{Result, SystemParams, Time};

const REFERENCE: SystemParams = SystemParams {
    kappa: 1.0,
    gamma: 0.3,
    epsilon: 0.1,
};

fn threshold() -> SystemParams {
    SystemParams::new(0.8, 0.4, 0.1)
}

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = fn() -> Result<Outcome>;

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn threshold_squeezing() -> Result<Outcome> {
    let s = squeezing(&threshold())?;
    outcome((s - 0.25).abs() <= 1e-12, format!("S = {s}"))
}

fn epr_at_threshold() -> Result<Outcome> {
    let p = threshold();
    let sum = epr_sum(&p)?;
    let degree = degree_of_entanglement(&p)?;
    let mut all_entangled = true;
    for k in 1..=200 {
        let q = SystemParams::new(0.8, 0.4 * f64::from(k) / 200.0, 0.1);
        all_entangled &= epr_report(&q)?.entangled;
    }
    outcome(
        (sum - 3.0).abs() <= 1e-12 && (degree - 0.75).abs() <= 1e-12 && all_entangled,
        format!("epr_sum = {sum}, degree = {degree}, entangled on (0, kappa/2]: {all_entangled}"),
    )
}

fn threshold_correlations() -> Result<Outcome> {
    let r = epr_report(&threshold())?;
    let values = [r.g2_a, r.g2_b, r.g2_ab];
    let ok = values.iter().all(|g| (g - 2.0).abs() <= 1e-9)
        && (r.cs_lhs - 4.0).abs() <= 1e-9
        && (r.cs_rhs - 4.0).abs() <= 1e-9
        && r.cs_satisfied;
    outcome(
        ok,
        format!("g2 = {values:?}, cs = ({}, {})", r.cs_lhs, r.cs_rhs),
    )
}

fn vacuum_baseline() -> Result<Outcome> {
    let mut ok = true;
    let mut detail = String::new();
    for p in [
        SystemParams::new(0.8, 0.0, 0.1),
        SystemParams::new(1.0, 0.0, 0.0),
    ] {
        let q = quadrature_report(&p)?;
        let minus = q.minus_var.value();
        ok &=
            (q.plus_var - 4.0).abs() <= 1e-12 && (minus - 4.0).abs() <= 1e-12 && q.squeezing == 0.0;
        detail += &format!("[plus {}, minus {}, S {}] ", q.plus_var, minus, q.squeezing);
    }
    outcome(ok, detail.trim_end().to_string())
}

fn figure_sweep() -> Result<Outcome> {
    let kappa = 0.8;
    let n = 101;
    let gammas: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                0.4
            } else {
                0.4 * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let mut plus = Vec::new();
    let mut sq = Vec::new();
    let mut worst_epr = 0.0f64;
    for &g in &gammas {
        let p = SystemParams::new(kappa, g, 0.1);
        let q = quadrature_report(&p)?;
        plus.push(q.plus_var);
        sq.push(q.squeezing);
        worst_epr = worst_epr.max((epr_sum(&p)? - q.plus_var).abs());
    }
    let decreasing = plus.windows(2).all(|w| w[1] < w[0]);
    let increasing = sq.windows(2).all(|w| w[1] > w[0]);
    let endpoints = (plus[0] - 4.0).abs() <= 1e-12
        && (plus[n - 1] - 3.0).abs() <= 1e-12
        && sq[0] == 0.0
        && (sq[n - 1] - 0.25).abs() <= 1e-12;
    outcome(
        decreasing && increasing && endpoints && worst_epr <= 1e-12,
        format!(
            "plus {} -> {}, S {} -> {}, monotone {decreasing}/{increasing}, max |epr - plus| = {worst_epr:e}",
            plus[0],
            plus[n - 1],
            sq[0],
            sq[n - 1]
        ),
    )
}

fn oracle_equivalence() -> Result<Outcome> {
    let p = REFERENCE;
    let m = steady_moments(&p)?;
    let ode = integrate_subharmonic_odes(&p, &IntegrationConfig::steady(&p))?;
    let last = ode.last();
    let ode_rel = f64::max(
        ((last.a_dag_a.re - m.n_a) / m.n_a).abs(),
        ((last.ab.re - m.m_ab) / m.m_ab).abs(),
    );

    let sub_rho = subharmonic_fock_state(&p, Some(15))?;
    let sub = density_moments(&sub_rho, 4)?;
    let fock_abs = f64::max(
        (sub.get([1, 1, 0, 0])?.re - m.n_a).abs(),
        (sub.get([0, 1, 0, 1])?.re - m.m_ab).abs(),
    );

    let coh = density_moments(&coherent_fock_state(&p)?, 4)?;
    let s = composite_statistics(&coh, &sub)?;
    let g2a = s.g2_a.unwrap_or(f64::NAN);
    let g2ab = s.g2_ab.unwrap_or(f64::NAN);
    let ok = ode_rel <= 1e-8
        && fock_abs <= 1e-6
        && (s.mean - 0.7225).abs() <= 1e-4
        && (s.variance - 3.9653125).abs() <= 1e-4
        && (g2a - 1.9845048).abs() <= 1e-4
        && (g2ab - 2.7657261).abs() <= 1e-4
        && (g2_single(&p)? - 1.9845048).abs() <= 1e-4
        && (g2_cross(&p)? - 2.7657261).abs() <= 1e-4;
    outcome(
        ok,
        format!(
            "ode rel {ode_rel:e}, fock abs {fock_abs:e}, composite n = {}, var = {}, g2_a = {g2a}, g2_ab = {g2ab}",
            s.mean, s.variance
        ),
    )
}

fn q_cross_validation() -> Result<Outcome> {
    let p = REFERENCE;
    let sub_rho = subharmonic_fock_state(&SystemParams::new(1.0, 0.3, 0.0), Some(15))?;
    let pointwise = max_q_deviation(&sub_rho, &subharmonic_qfunction(&p)?)?;

    let joint = superposed_qfunction(&p)?;
    let (norm, second, _) = marginal_antinormal_moments(&marginal(&joint));
    let closed = q_mean_photon_single(&joint);
    let expected = 0.04 + steady_moments(&p)?.n_a;
    let extraction = f64::max((second - 1.0 - expected).abs(), (closed - expected).abs());
    outcome(
        pointwise <= 1e-6 && (norm - 1.0).abs() <= 1e-6 && extraction <= 1e-3,
        format!(
            "max |Q - Q_fock| = {pointwise:e}, norm = {norm}, mean photon error {extraction:e}"
        ),
    )
}

fn algebra_properties() -> Result<Outcome> {
    let mut worst_variance = 0.0f64;
    let mut worst_product = 0.0f64;
    let mut min_product = f64::INFINITY;
    for kappa in [0.5, 1.0, 2.0, 4.0] {
        for ratio in [0.0, 0.1, 0.2, 0.3, 0.45] {
            let p = SystemParams::new(kappa, ratio * kappa, 0.07 * kappa + 0.01);
            let a = photon_variance(&p, Time::SteadyState)?;
            let b = photon_variance_from_moments(&p, Time::SteadyState)?;
            worst_variance = worst_variance.max((a - b).abs());
            let q = quadrature_report(&p)?;
            let product = q.plus_var * q.minus_var.value();
            let (k, g) = (p.kappa, p.gamma);
            worst_product =
                worst_product.max((product - 16.0 * (k * k - g * g) / (k * k - 4.0 * g * g)).abs());
            min_product = min_product.min(product);
        }
    }

    let p = REFERENCE;
    let sub = density_moments(&subharmonic_fock_state(&p, Some(15))?, 4)?;
    let coh = density_moments(&coherent_fock_state(&p)?, 4)?;
    let residual = composite_statistics(&coh, &sub)?.gaussian_residual;
    outcome(
        worst_variance <= 1e-12 && worst_product <= 1e-12 && min_product >= 16.0 - 1e-12 && residual <= 1e-6,
        format!(
            "variance forms {worst_variance:e}, product formula {worst_product:e}, min product {min_product}, gaussian residual {residual:e}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("threshold squeezing", threshold_squeezing),
        ("EPR sum and degree", epr_at_threshold),
        ("threshold correlations", threshold_correlations),
        ("vacuum baseline", vacuum_baseline),
        ("figure sweep", figure_sweep),
        ("oracle equivalence", oracle_equivalence),
        ("Q-function cross-validation", q_cross_validation),
        ("internal algebra", algebra_properties),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (passed, detail) = match check() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!passed);
        println!(
            "criterion {} {name}: {} ({detail})",
            i + 1,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}
