use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cavity decay rate must be positive, got kappa = {0}")]
    NonPositiveKappa(f64),
    #[error("{name} must be non-negative, got {value}")]
    NegativeRate { name: &'static str, value: f64 },
    #[error("{0} is not a finite number")]
    NonFinite(&'static str),
    #[error("time must be non-negative, got t = {0}")]
    NegativeTime(f64),
    #[error(
        "steady-state moments diverge at or above threshold (kappa = {kappa}, gamma = {gamma})"
    )]
    ThresholdDivergence { kappa: f64, gamma: f64 },
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("second-order correlation is undefined for the vacuum (zero mean photon number)")]
    UndefinedCorrelation,
    #[error("step size {dt} exceeds the stability limit {limit}")]
    StepSizeTooLarge { dt: f64, limit: f64 },
    #[error("no steady state reached within t = {t_end} (last drift {drift:e})")]
    NoConvergence { t_end: f64, drift: f64 },
    #[error(
        "Fock truncation N = {truncation} too small: top-level population {population:e} exceeds {bound:e}"
    )]
    TruncationTooSmall {
        truncation: usize,
        population: f64,
        bound: f64,
    },
    #[error("moment order {0} exceeds the supported maximum of 4")]
    OrderTooHigh(usize),
    #[error("moment <a^+{0} a^{1} b^+{2} b^{3}> missing from table")]
    MissingMoment(u8, u8, u8, u8),
    #[error("Gaussian integral diverges: {0}")]
    Divergent(String),
}
