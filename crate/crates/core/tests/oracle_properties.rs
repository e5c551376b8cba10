use num_complex::Complex64;
use proptest::prelude::*;

use cavityq_core::oracles::{
    composite_statistics, density_moments, fock_steady_state, integrate_subharmonic_odes,
    numeric_marginal_qfunction, FockSystem, IntegrationConfig, MomentTable,
};
use cavityq_core::statistics::{
    g2_cross, g2_single, mean_photon, photon_variance, quadrature_report,
};
use cavityq_core::subharmonic::steady_moments;
use cavityq_core::verify::plane_integral;
use cavityq_core::{SystemParams, Time};

fn subharmonic_moments(kappa: f64, gamma: f64, n: usize) -> MomentTable {
    let params = SystemParams::new(kappa, gamma, 0.0);
    let config = IntegrationConfig::steady(&params).with_truncation(n);
    density_moments(
        &fock_steady_state(&params, FockSystem::Subharmonic, &config).unwrap(),
        2,
    )
    .unwrap()
}

#[test]
fn fock_moments_converge_with_truncation() {
    let words = [[1, 1, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1]];
    for gamma in [0.1, 0.2, 0.3] {
        let tables: Vec<MomentTable> = [15, 18, 21]
            .iter()
            .map(|&n| subharmonic_moments(1.0, gamma, n))
            .collect();
        let change = |i: usize| {
            words
                .iter()
                .map(|&w| (tables[i].get(w).unwrap() - tables[i + 1].get(w).unwrap()).norm())
                .fold(0.0, f64::max)
        };
        let (first, second) = (change(0), change(1));
        assert!(
            second < first || first < 1e-12,
            "gamma {gamma}: {first:e} then {second:e}"
        );
        assert!(
            second < 1e-8,
            "gamma {gamma}: N = 18 -> 21 changes by {second:e}"
        );
        if gamma <= 0.2 {
            assert!(
                first < 1e-8,
                "gamma {gamma}: N = 15 -> 18 changes by {first:e}"
            );
        }
    }
}

#[test]
fn moment_equations_agree_with_master_equation() {
    for (kappa, gamma) in [(1.0, 0.15), (2.0, 0.5), (0.8, 0.2)] {
        let params = SystemParams::new(kappa, gamma, 0.0);
        let fock = subharmonic_moments(kappa, gamma, 15);
        let ode = integrate_subharmonic_odes(&params, &IntegrationConfig::steady(&params)).unwrap();
        let last = ode.last();
        let pairs = [
            (last.a_dag_a, [1, 1, 0, 0]),
            (last.b_dag_b, [0, 0, 1, 1]),
            (last.ab, [0, 1, 0, 1]),
            (last.a_dag_b, [1, 0, 0, 1]),
            (last.a_sq, [0, 2, 0, 0]),
        ];
        for (value, word) in pairs {
            assert!((value - fock.get(word).unwrap()).norm() < 1e-6, "{word:?}");
        }
    }
}

#[test]
fn numeric_marginal_q_is_normalized() {
    let params = SystemParams::new(1.0, 0.3, 0.0);
    // The coherent-state tails reach |alpha| ~ 7, which needs a wider cutoff
    // than the default for the truncation bound to hold at every node.
    let config = IntegrationConfig::steady(&params).with_truncation(24);
    let rho = fock_steady_state(&params, FockSystem::Subharmonic, &config).unwrap();
    let sigma = (1.0 + steady_moments(&params).unwrap().n_a).sqrt();
    let total = plane_integral(0.0, 6.0 * sigma, 121, |z| {
        numeric_marginal_qfunction(&rho, z).unwrap()
    });
    assert!((total - 1.0).abs() < 1e-4, "{total}");
}

#[test]
fn driven_state_stays_physical() {
    let params = SystemParams::new(1.0, 0.2, 0.15);
    let config = IntegrationConfig::steady(&params).with_truncation(8);
    let rho = fock_steady_state(&params, FockSystem::Coherent, &config).unwrap();
    assert!((rho.trace() - 1.0).norm() < 1e-9);
    assert!(rho.hermiticity_error() < 1e-12);
    assert!(rho.is_positive_within(1e-8));
    assert!(rho.top_population() < 1e-8);
    let q = numeric_marginal_qfunction(&rho, Complex64::new(0.3, 0.0)).unwrap();
    assert!(q >= 0.0);
}

/// Moment tables of the exact Gaussian steady states, via Wick's theorem.
fn analytic_tables(params: &SystemParams) -> (MomentTable, MomentTable) {
    let q = 2.0 * params.epsilon / params.kappa;
    let m = steady_moments(params).unwrap();
    let mut coh = MomentTable::new(4);
    let mut sub = MomentTable::new(4);
    for word in MomentTable::words(4) {
        let total: u8 = word.iter().sum();
        coh.insert(word, Complex64::new(q.powi(i32::from(total)), 0.0));
        let value = match word {
            [0, 0, 0, 0] => 1.0,
            [1, 1, 0, 0] | [0, 0, 1, 1] => m.n_a,
            [0, 1, 0, 1] | [1, 0, 1, 0] => m.m_ab,
            [2, 2, 0, 0] | [0, 0, 2, 2] => 2.0 * m.n_a * m.n_a,
            [1, 1, 1, 1] => m.n_a * m.n_a + m.m_ab * m.m_ab,
            [0, 2, 0, 2] | [2, 0, 2, 0] => 2.0 * m.m_ab * m.m_ab,
            _ => 0.0,
        };
        sub.insert(word, Complex64::new(value, 0.0));
    }
    (coh, sub)
}

proptest! {
    #[test]
    fn composite_expansion_reproduces_closed_forms(
        kappa in 0.2f64..5.0,
        ratio in 0.0f64..0.45,
        drive in 0.01f64..0.5,
    ) {
        let params = SystemParams::new(kappa, ratio * kappa, drive * kappa);
        let (coh, sub) = analytic_tables(&params);
        let s = composite_statistics(&coh, &sub).unwrap();
        let scale = |x: f64| 1e-10 * x.abs().max(1.0);
        let mean = mean_photon(&params, Time::SteadyState).unwrap();
        let variance = photon_variance(&params, Time::SteadyState).unwrap();
        let quad = quadrature_report(&params).unwrap();
        prop_assert!((s.mean - mean).abs() < scale(mean));
        prop_assert!((s.variance - variance).abs() < scale(variance));
        prop_assert!((s.plus_var - quad.plus_var).abs() < scale(quad.plus_var));
        prop_assert!((s.minus_var - quad.minus_var.value()).abs() < scale(quad.minus_var.value()));
        prop_assert!((s.epr_sum - quad.plus_var).abs() < scale(quad.plus_var));
        prop_assert!((s.g2_a.unwrap() - g2_single(&params).unwrap()).abs() < 1e-10);
        prop_assert!((s.g2_ab.unwrap() - g2_cross(&params).unwrap()).abs() < 1e-10);
        prop_assert!(s.gaussian_residual < scale(variance));
    }
}
