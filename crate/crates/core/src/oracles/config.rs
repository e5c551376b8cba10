use crate::error::{Error, Result};
use crate::params::SystemParams;

/// How far an integration runs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Horizon {
    /// Integrate to exactly this time.
    Until(f64),
    /// Integrate until the largest moment drift `|d<O>/dt|` falls below
    /// `tol`, failing with `NoConvergence` at `t_max`.
    Steady { tol: f64, t_max: f64 },
}

/// Settings shared by the moment-equation and master-equation oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    /// Fixed RK4 step; `None` selects `min(0.01/kappa, 0.01/(kappa + 2 gamma))`.
    pub dt: Option<f64>,
    pub horizon: Horizon,
    /// Fock cutoff per mode (highest retained photon number).
    pub truncation: usize,
    /// Record every n-th step of the trajectory (the final state is always kept).
    pub sample_every: usize,
}

pub const DEFAULT_STEADY_TOL: f64 = 1e-11;
pub const DEFAULT_TRUNCATION: usize = 15;
pub const DEFAULT_COHERENT_TRUNCATION: usize = 8;

impl IntegrationConfig {
    pub fn until(t: f64) -> Self {
        Self {
            dt: None,
            horizon: Horizon::Until(t),
            truncation: DEFAULT_TRUNCATION,
            sample_every: 100,
        }
    }

    /// Steady-state run with the default drift tolerance and a horizon long
    /// enough for every subthreshold point of interest.
    pub fn steady(params: &SystemParams) -> Self {
        Self {
            dt: None,
            horizon: Horizon::Steady {
                tol: DEFAULT_STEADY_TOL,
                t_max: 2000.0 / params.kappa,
            },
            truncation: DEFAULT_TRUNCATION,
            sample_every: 1000,
        }
    }

    pub fn with_dt(mut self, dt: f64) -> Self {
        self.dt = Some(dt);
        self
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = n;
        self
    }

    pub fn with_steady_tol(mut self, tol: f64) -> Self {
        if let Horizon::Steady { t_max, .. } = self.horizon {
            self.horizon = Horizon::Steady { tol, t_max };
        }
        self
    }

    pub fn with_t_max(mut self, t_max: f64) -> Self {
        if let Horizon::Steady { tol, .. } = self.horizon {
            self.horizon = Horizon::Steady { tol, t_max };
        }
        self
    }

    pub(crate) fn check(&self) -> Result<()> {
        if let Some(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(Error::MalformedInput(format!(
                    "step size must be positive, got {dt}"
                )));
            }
        }
        if self.truncation < 2 {
            return Err(Error::MalformedInput(format!(
                "Fock truncation must be at least 2, got {}",
                self.truncation
            )));
        }
        match self.horizon {
            Horizon::Until(t) if !(t >= 0.0 && t.is_finite()) => Err(Error::NegativeTime(t)),
            Horizon::Steady { tol, t_max } if !(tol > 0.0 && t_max > 0.0) => Err(
                Error::MalformedInput("steady detection needs positive tol and t_max".into()),
            ),
            _ => Ok(()),
        }
    }

    /// Step size for the given parameters, enforcing `dt kappa <= 0.1`.
    pub(crate) fn step_size(&self, params: &SystemParams) -> Result<f64> {
        let fast = params.kappa + 2.0 * params.gamma;
        let dt = self
            .dt
            .unwrap_or_else(|| (1e-2 / params.kappa).min(1e-2 / fast));
        let limit = 0.1 / params.kappa;
        if dt > limit {
            return Err(Error::StepSizeTooLarge { dt, limit });
        }
        Ok(dt)
    }
}
