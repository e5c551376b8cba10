//! Coherently driven two-mode cavity coupled to a vacuum reservoir.
//!
//! Starting from the two-mode vacuum, each mode evolves into a coherent state
//! of real amplitude `q(t) = (2 eps / kappa)(1 - exp(-kappa t / 2))`; the
//! fluctuation operators stay in vacuum, so every normally ordered
//! fluctuation moment vanishes.

use crate::error::Result;
use crate::moments::ModeMoments;
use crate::params::{SystemParams, Time};
use crate::superposition::GaussianQ;

/// Decay factor and displacement of the coherent solution at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentSolution {
    pub p: f64,
    pub q: f64,
}

/// `exp(-kappa t / 2)`; zero in the steady state.
pub fn decay_factor(params: &SystemParams, time: Time) -> Result<f64> {
    params.validate()?;
    Ok(match time.check()? {
        Time::At(t) => (-0.5 * params.kappa * t).exp(),
        Time::SteadyState => 0.0,
    })
}

/// Real coherent amplitude `q` of each mode.
pub fn displacement(params: &SystemParams, time: Time) -> Result<f64> {
    let p = decay_factor(params, time)?;
    // -expm1 keeps q accurate for kappa t << 1.
    let one_minus_p = match time {
        Time::At(t) => -(-0.5 * params.kappa * t).exp_m1(),
        Time::SteadyState => 1.0 - p,
    };
    Ok(2.0 * params.epsilon / params.kappa * one_minus_p)
}

pub fn solution(params: &SystemParams, time: Time) -> Result<CoherentSolution> {
    Ok(CoherentSolution {
        p: decay_factor(params, time)?,
        q: displacement(params, time)?,
    })
}

pub fn coherent_moments(params: &SystemParams, time: Time) -> Result<ModeMoments> {
    let q = displacement(params, time)?;
    let q2 = q * q;
    Ok(ModeMoments {
        mean_a: q,
        mean_b: q,
        n_a: q2,
        n_b: q2,
        ab: q2,
        a_dag_b: q2,
        a_sq: q2,
        b_sq: q2,
        a_dag2_a2: q2 * q2,
        a_dag_b_dag_ab: q2 * q2,
    })
}

/// Q-function `exp(-|a|^2 - |b|^2 + q(a + a* + b + b*) - 2 q^2) / pi^2`.
pub fn coherent_qfunction(params: &SystemParams, time: Time) -> Result<GaussianQ> {
    let q = displacement(params, time)?;
    GaussianQ::coherent(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use num_complex::Complex64;

    fn p(kappa: f64, eps: f64) -> SystemParams {
        SystemParams::new(kappa, 0.0, eps)
    }

    #[test]
    fn decay_factor_values() {
        assert_eq!(decay_factor(&p(1.0, 0.0), Time::At(0.0)).unwrap(), 1.0);
        let v = decay_factor(&p(1.0, 0.0), Time::At(2.0)).unwrap();
        assert!((v - 0.3678794412).abs() < 1e-10);
        assert_eq!(decay_factor(&p(1.0, 0.0), Time::SteadyState).unwrap(), 0.0);
        assert_eq!(
            decay_factor(&p(1.0, 0.0), Time::At(-1.0)),
            Err(Error::NegativeTime(-1.0))
        );
    }

    #[test]
    fn displacement_values() {
        assert_eq!(displacement(&p(1.0, 0.1), Time::At(0.0)).unwrap(), 0.0);
        let ss = displacement(&p(1.0, 0.1), Time::SteadyState).unwrap();
        assert!((ss - 0.2).abs() < 1e-15);
        let t1 = displacement(&p(1.0, 0.1), Time::At(1.0)).unwrap();
        assert!((t1 - 0.0786939).abs() < 1e-7);
        assert!(displacement(&p(1.0, 0.1), Time::At(-0.5)).is_err());
    }

    #[test]
    fn solution_stays_in_bounds() {
        let params = p(0.7, 0.3);
        for &t in &[0.0, 0.1, 1.0, 10.0, 100.0] {
            let s = solution(&params, Time::At(t)).unwrap();
            assert!(s.p > 0.0 && s.p <= 1.0);
            assert!(s.q >= 0.0 && s.q < 2.0 * 0.3 / 0.7);
        }
    }

    #[test]
    fn moments_of_undriven_and_driven_cavity() {
        let vac = coherent_moments(&p(2.0, 0.0), Time::SteadyState).unwrap();
        assert_eq!(vac, ModeMoments::default());

        let m = coherent_moments(&p(1.0, 0.1), Time::SteadyState).unwrap();
        assert!((m.mean_a - 0.2).abs() < 1e-15);
        assert!((m.n_a - 0.04).abs() < 1e-15);
        let f = m.fluctuations();
        assert!(f.n_a.abs() < 1e-15 && f.ab.abs() < 1e-15 && f.a_sq.abs() < 1e-15);

        let m = coherent_moments(&p(1.0, 0.1), Time::At(1.0)).unwrap();
        assert!((m.mean_a - 0.0786939).abs() < 1e-7);
    }

    #[test]
    fn qfunction_coefficients() {
        let q = coherent_qfunction(&p(1.0, 0.0), Time::At(3.0)).unwrap();
        assert_eq!((q.u(), q.v(), q.l(), q.c()), (1.0, 0.0, 0.0, 0.0));

        let q = coherent_qfunction(&p(1.0, 0.1), Time::SteadyState).unwrap();
        assert!((q.l() - 0.2).abs() < 1e-15);
        assert!((q.c() + 0.08).abs() < 1e-15);
        assert!((q.prefactor() - 1.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn qfunction_peaks_at_displacement() {
        let params = p(1.3, 0.4);
        for time in [Time::At(0.5), Time::At(4.0), Time::SteadyState] {
            let qf = coherent_qfunction(&params, time).unwrap();
            let q = displacement(&params, time).unwrap();
            let peak = qf.evaluate(Complex64::new(q, 0.0), Complex64::new(q, 0.0));
            for (da, db) in [(0.01, 0.0), (0.0, 0.01), (-0.02, 0.01)] {
                let off = qf.evaluate(Complex64::new(q + da, db), Complex64::new(q - db, da));
                assert!(off < peak);
            }
        }
    }
}
