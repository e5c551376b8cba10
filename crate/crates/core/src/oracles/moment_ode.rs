//! Direct integration of the closed linear equations of motion for the first
//! and second moments of the driven or parametrically pumped cavity.

use num_complex::Complex64;

use super::config::{Horizon, IntegrationConfig};
use super::rk4::Rk4;
use crate::error::{Error, Result};
use crate::params::SystemParams;

const LEN: usize = 9;
const A: usize = 0;
const B: usize = 1;
const ADA: usize = 2;
const BDB: usize = 3;
const AB: usize = 4;
const ADB: usize = 5;
const A2: usize = 6;
const B2: usize = 7;
const ADBD: usize = 8;

/// Tracked expectation values at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentVector {
    pub t: f64,
    pub a: Complex64,
    pub b: Complex64,
    pub a_dag_a: Complex64,
    pub b_dag_b: Complex64,
    pub ab: Complex64,
    pub a_dag_b: Complex64,
    pub a_sq: Complex64,
    pub b_sq: Complex64,
    pub a_dag_b_dag: Complex64,
}

impl MomentVector {
    fn from_state(t: f64, y: &[Complex64]) -> Self {
        Self {
            t,
            a: y[A],
            b: y[B],
            a_dag_a: y[ADA],
            b_dag_b: y[BDB],
            ab: y[AB],
            a_dag_b: y[ADB],
            a_sq: y[A2],
            b_sq: y[B2],
            a_dag_b_dag: y[ADBD],
        }
    }
}

/// Integrated moments, sampled along the way; the last sample is the final state.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTrajectory {
    pub samples: Vec<MomentVector>,
}

impl MomentTrajectory {
    pub fn last(&self) -> &MomentVector {
        self.samples
            .last()
            .expect("trajectory always holds the final state")
    }
}

/// Heisenberg equations for `H = i eps (a^+ - a + b^+ - b) + i gamma (ab - a^+ b^+)`
/// with both modes damped at rate `kappa` into a vacuum reservoir.
fn rhs(kappa: f64, eps: f64, gamma: f64, y: &[Complex64], dy: &mut [Complex64]) {
    let half = 0.5 * kappa;
    let (a, b) = (y[A], y[B]);
    let (ad, bd) = (a.conj(), b.conj());
    let e = Complex64::new(eps, 0.0);
    dy[A] = -a * half + e - bd * gamma;
    dy[B] = -b * half + e - ad * gamma;
    let pair = y[AB] + y[ADBD];
    dy[ADA] = -y[ADA] * kappa + (ad + a) * eps - pair * gamma;
    dy[BDB] = -y[BDB] * kappa + (bd + b) * eps - pair * gamma;
    dy[AB] = -y[AB] * kappa + (a + b) * eps - (y[ADA] + y[BDB] + 1.0) * gamma;
    dy[ADBD] = -y[ADBD] * kappa + (ad + bd) * eps - (y[ADA] + y[BDB] + 1.0) * gamma;
    dy[ADB] = -y[ADB] * kappa + (ad + b) * eps - (y[A2].conj() + y[B2]) * gamma;
    dy[A2] = -y[A2] * kappa + a * (2.0 * eps) - y[ADB].conj() * (2.0 * gamma);
    dy[B2] = -y[B2] * kappa + b * (2.0 * eps) - y[ADB] * (2.0 * gamma);
}

fn integrate(
    kappa: f64,
    eps: f64,
    gamma: f64,
    dt: f64,
    config: &IntegrationConfig,
) -> Result<MomentTrajectory> {
    let mut y = [Complex64::new(0.0, 0.0); LEN];
    let mut dy = [Complex64::new(0.0, 0.0); LEN];
    let mut rk = Rk4::new(LEN);
    let f = |y: &[Complex64], dy: &mut [Complex64]| rhs(kappa, eps, gamma, y, dy);
    let mut samples = vec![MomentVector::from_state(0.0, &y)];
    let every = config.sample_every.max(1);

    match config.horizon {
        Horizon::Until(t_end) => {
            let steps = (t_end / dt).ceil() as usize;
            let h = if steps == 0 {
                0.0
            } else {
                t_end / steps as f64
            };
            for n in 1..=steps {
                rk.step(&mut y, h, f);
                if n % every == 0 || n == steps {
                    samples.push(MomentVector::from_state(n as f64 * h, &y));
                }
            }
        }
        Horizon::Steady { tol, t_max } => {
            let max_steps = (t_max / dt).ceil() as usize;
            let mut drift = f64::INFINITY;
            let mut converged = false;
            for n in 1..=max_steps {
                rk.step(&mut y, dt, f);
                if n % every == 0 {
                    samples.push(MomentVector::from_state(n as f64 * dt, &y));
                }
                if n % 10 == 0 {
                    f(&y, &mut dy);
                    drift = dy.iter().map(|d| d.norm()).fold(0.0, f64::max);
                    if drift < tol {
                        samples.push(MomentVector::from_state(n as f64 * dt, &y));
                        converged = true;
                        break;
                    }
                }
            }
            if !converged {
                return Err(Error::NoConvergence {
                    t_end: t_max,
                    drift,
                });
            }
        }
    }
    Ok(MomentTrajectory { samples })
}

/// Coherently driven cavity from the two-mode vacuum (`gamma` is ignored).
pub fn integrate_coherent_odes(
    params: &SystemParams,
    config: &IntegrationConfig,
) -> Result<MomentTrajectory> {
    params.validate()?;
    config.check()?;
    let system = SystemParams::new(params.kappa, 0.0, params.epsilon);
    let dt = config.step_size(&system)?;
    integrate(params.kappa, params.epsilon, 0.0, dt, config)
}

/// Parametrically pumped cavity from the two-mode vacuum (`epsilon` is ignored).
pub fn integrate_subharmonic_odes(
    params: &SystemParams,
    config: &IntegrationConfig,
) -> Result<MomentTrajectory> {
    params.validate()?;
    config.check()?;
    let dt = config.step_size(params)?;
    integrate(params.kappa, 0.0, params.gamma, dt, config)
}
