//! Physical parameters shared by every cavity model, and their classification
//! relative to the parametric oscillation threshold `kappa = 2 gamma`.

use crate::error::{Error, Result};

/// Relative band around `kappa = 2 gamma` treated as exactly at threshold.
pub const THRESHOLD_TOL: f64 = 1e-12;

/// The physical triple of the cavity: damping, parametric coupling and
/// coherent drive. All rates share one implicit time unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    /// Cavity decay rate.
    pub kappa: f64,
    /// Effective parametric coupling (pump amplitude times coupling constant).
    pub gamma: f64,
    /// Coherent drive amplitude, equal on both modes.
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Subthreshold,
    AtThreshold,
    AboveThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdClass {
    pub regime: Regime,
    /// `(kappa - 2 gamma) / kappa`.
    pub margin: f64,
}

/// Evaluation time: a finite instant or the steady state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    At(f64),
    SteadyState,
}

impl Time {
    pub(crate) fn check(self) -> Result<Self> {
        match self {
            Time::At(t) if !t.is_finite() => Err(Error::NonFinite("t")),
            Time::At(t) if t < 0.0 => Err(Error::NegativeTime(t)),
            other => Ok(other),
        }
    }
}

impl SystemParams {
    pub fn new(kappa: f64, gamma: f64, epsilon: f64) -> Self {
        Self {
            kappa,
            gamma,
            epsilon,
        }
    }

    /// Checks the raw inputs and classifies them against threshold.
    pub fn validate(&self) -> Result<ThresholdClass> {
        for (name, value) in [
            ("kappa", self.kappa),
            ("gamma", self.gamma),
            ("epsilon", self.epsilon),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if self.kappa <= 0.0 {
            return Err(Error::NonPositiveKappa(self.kappa));
        }
        if self.gamma < 0.0 {
            return Err(Error::NegativeRate {
                name: "gamma",
                value: self.gamma,
            });
        }
        if self.epsilon < 0.0 {
            return Err(Error::NegativeRate {
                name: "epsilon",
                value: self.epsilon,
            });
        }

        let gap = self.kappa - 2.0 * self.gamma;
        let regime = if gap.abs() <= THRESHOLD_TOL * self.kappa {
            Regime::AtThreshold
        } else if gap > 0.0 {
            Regime::Subthreshold
        } else {
            Regime::AboveThreshold
        };
        let margin = if regime == Regime::AtThreshold {
            0.0
        } else {
            gap / self.kappa
        };
        Ok(ThresholdClass { regime, margin })
    }

    /// Validates and rejects anything not strictly below threshold.
    pub fn require_subthreshold(&self) -> Result<ThresholdClass> {
        let class = self.validate()?;
        match class.regime {
            Regime::Subthreshold => Ok(class),
            _ => Err(self.divergence()),
        }
    }

    /// Validates and rejects only the above-threshold regime.
    pub fn require_not_above(&self) -> Result<ThresholdClass> {
        let class = self.validate()?;
        match class.regime {
            Regime::AboveThreshold => Err(self.divergence()),
            _ => Ok(class),
        }
    }

    pub(crate) fn divergence(&self) -> Error {
        Error::ThresholdDivergence {
            kappa: self.kappa,
            gamma: self.gamma,
        }
    }

    /// `kappa^2 - 4 gamma^2`, the common denominator of the steady moments.
    pub(crate) fn detuning_denominator(&self) -> f64 {
        self.kappa * self.kappa - 4.0 * self.gamma * self.gamma
    }

    pub(crate) fn is_vacuum(&self) -> bool {
        self.gamma == 0.0 && self.epsilon == 0.0
    }
}

/// Decay rates of the normal modes `a +- b^+`: `(kappa + 2 gamma, kappa - 2 gamma)`.
pub fn lambda_pm(params: &SystemParams) -> Result<(f64, f64)> {
    params.validate()?;
    Ok((
        params.kappa + 2.0 * params.gamma,
        params.kappa - 2.0 * params.gamma,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classifies_reference_points() {
        let at = SystemParams::new(0.8, 0.4, 0.1).validate().unwrap();
        assert_eq!(at.regime, Regime::AtThreshold);
        assert_eq!(at.margin, 0.0);

        let vac = SystemParams::new(1.0, 0.0, 0.0).validate().unwrap();
        assert_eq!(vac.regime, Regime::Subthreshold);
        assert_eq!(vac.margin, 1.0);

        let sub = SystemParams::new(1.0, 0.3, 0.1).validate().unwrap();
        assert_eq!(sub.regime, Regime::Subthreshold);
        assert!((sub.margin - 0.4).abs() < 1e-15);

        let above = SystemParams::new(1.0, 0.6, 0.0).validate().unwrap();
        assert_eq!(above.regime, Regime::AboveThreshold);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            SystemParams::new(0.0, 0.1, 0.1).validate(),
            Err(Error::NonPositiveKappa(0.0))
        );
        assert!(matches!(
            SystemParams::new(1.0, -0.1, 0.1).validate(),
            Err(Error::NegativeRate { name: "gamma", .. })
        ));
        assert!(matches!(
            SystemParams::new(1.0, 0.1, -0.1).validate(),
            Err(Error::NegativeRate {
                name: "epsilon",
                ..
            })
        ));
        assert_eq!(
            SystemParams::new(f64::NAN, 0.1, 0.1).validate(),
            Err(Error::NonFinite("kappa"))
        );
        assert_eq!(
            SystemParams::new(1.0, f64::INFINITY, 0.1).validate(),
            Err(Error::NonFinite("gamma"))
        );
    }

    #[test]
    fn decay_rates() {
        let (p, m) = lambda_pm(&SystemParams::new(1.0, 0.3, 0.0)).unwrap();
        assert!((p - 1.6).abs() < 1e-15 && (m - 0.4).abs() < 1e-15);
        assert_eq!(
            lambda_pm(&SystemParams::new(1.0, 0.0, 0.0)).unwrap(),
            (1.0, 1.0)
        );
        let (p, m) = lambda_pm(&SystemParams::new(0.8, 0.4, 0.0)).unwrap();
        assert!((p - 1.6).abs() < 1e-15);
        assert_eq!(m, 0.0);
    }

    #[test]
    fn negative_time_rejected() {
        assert_eq!(Time::At(-1.0).check(), Err(Error::NegativeTime(-1.0)));
        assert_eq!(Time::At(2.0).check(), Ok(Time::At(2.0)));
    }

    proptest! {
        #[test]
        fn decay_rate_sum_and_difference(kappa in 1e-3f64..10.0, gamma in 0.0f64..10.0) {
            let (p, m) = lambda_pm(&SystemParams::new(kappa, gamma, 0.0)).unwrap();
            prop_assert!((p + m - 2.0 * kappa).abs() <= 1e-12 * kappa.max(gamma));
            prop_assert!((p - m - 4.0 * gamma).abs() <= 1e-12 * kappa.max(gamma));
        }

        #[test]
        fn classification_is_scale_invariant(
            kappa in 1e-3f64..10.0,
            ratio in 0.0f64..1.0,
            eps in 0.0f64..5.0,
            scale in 1e-3f64..1e3,
        ) {
            let params = SystemParams::new(kappa, ratio * kappa, eps);
            let scaled = SystemParams::new(kappa * scale, ratio * kappa * scale, eps * scale);
            prop_assert_eq!(
                params.validate().unwrap().regime,
                scaled.validate().unwrap().regime
            );
        }
    }
}
