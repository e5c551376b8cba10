use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;

use cavityq_core::SystemParams;

use crate::config::FileConfig;
use crate::error::CliError;
use crate::output::{emit, number, warn};
use crate::stats::{select, steady_value, Value};

pub const SWEEP_OBSERVABLES: &[&str] = &[
    "plus_var",
    "minus_var",
    "squeezing",
    "epr_sum",
    "mean_photon",
    "photon_variance",
    "g2_a",
    "g2_ab",
];

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    gamma_min: Option<f64>,
    #[arg(long)]
    gamma_max: Option<f64>,
    /// Number of grid points, endpoints included.
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated columns after `gamma`.
    #[arg(long, value_delimiter = ',')]
    observables: Option<Vec<String>>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kappa: f64,
    pub epsilon: f64,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub steps: usize,
    pub observables: Vec<String>,
}

impl SweepSpec {
    pub fn check(&self) -> Result<(), CliError> {
        let invalid = |m: String| Err(CliError::Usage(m));
        if self.steps < 2 {
            return invalid(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.gamma_min >= 0.0 && self.gamma_min < self.gamma_max) {
            return invalid(format!(
                "need 0 <= gamma-min < gamma-max, got {} and {}",
                self.gamma_min, self.gamma_max
            ));
        }
        SystemParams::new(self.kappa, self.gamma_max, self.epsilon)
            .require_not_above()
            .map_err(|e| CliError::Usage(format!("gamma-max must not exceed kappa/2: {e}")))?;
        Ok(())
    }

    /// Evenly spaced, with the last point pinned to `gamma_max`.
    pub fn gammas(&self) -> Vec<f64> {
        let n = self.steps;
        let h = (self.gamma_max - self.gamma_min) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.gamma_max
                } else {
                    self.gamma_min + h * i as f64
                }
            })
            .collect()
    }
}

/// CSV text plus the warnings raised while filling it, in grid order.
pub fn tabulate(spec: &SweepSpec) -> Result<(String, Vec<String>), CliError> {
    let rows: Vec<Result<(String, Vec<String>), CliError>> = spec
        .gammas()
        .into_par_iter()
        .map(|gamma| {
            let params = SystemParams::new(spec.kappa, gamma, spec.epsilon);
            let mut cells = vec![number(gamma)];
            let mut warnings = Vec::new();
            for name in &spec.observables {
                let cell = match steady_value(&params, name)? {
                    Value::Number(x) => number(x),
                    Value::Flag(b) => b.to_string(),
                    Value::Divergent => {
                        warnings.push(format!(
                            "{name} diverges at gamma = {}; written as inf",
                            number(gamma)
                        ));
                        "inf".to_string()
                    }
                    Value::Undefined => {
                        warnings.push(format!(
                            "{name} is undefined at gamma = {}; written as nan",
                            number(gamma)
                        ));
                        "nan".to_string()
                    }
                };
                cells.push(cell);
            }
            Ok((cells.join(","), warnings))
        })
        .collect();

    let mut text = format!("gamma,{}\n", spec.observables.join(","));
    let mut warnings = Vec::new();
    for row in rows {
        let (line, w) = row?;
        text.push_str(&line);
        text.push('\n');
        warnings.extend(w);
    }
    Ok((text, warnings))
}

pub fn run(args: &SweepArgs, file: &FileConfig) -> Result<(), CliError> {
    let requested = match &args.observables {
        Some(list) => Some(list.clone()),
        None => file
            .get::<String>("observables")?
            .map(|s| s.split(',').map(str::to_string).collect()),
    };
    let spec = SweepSpec {
        kappa: file.require(args.kappa, "kappa")?,
        epsilon: file.require(args.epsilon, "epsilon")?,
        gamma_min: file.require(args.gamma_min, "gamma_min")?,
        gamma_max: file.require(args.gamma_max, "gamma_max")?,
        steps: file.require(args.steps, "steps")?,
        observables: select(requested, SWEEP_OBSERVABLES)?,
    };
    SystemParams::new(spec.kappa, 0.0, spec.epsilon).validate()?;
    spec.check()?;
    let out = match &args.out {
        Some(p) => Some(p.clone()),
        None => file.get::<PathBuf>("out")?,
    };

    let (text, warnings) = tabulate(&spec)?;
    for w in &warnings {
        warn(w);
    }
    emit(out.as_deref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(steps: usize) -> SweepSpec {
        SweepSpec {
            kappa: 0.8,
            epsilon: 0.1,
            gamma_min: 0.0,
            gamma_max: 0.4,
            steps,
            observables: vec!["plus_var".into(), "squeezing".into(), "epr_sum".into()],
        }
    }

    #[test]
    fn grid_is_inclusive() {
        let g = spec(101).gammas();
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 0.4);
        assert!((g[50] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn rejects_invalid_specs() {
        assert!(spec(1).check().is_err());
        let mut s = spec(5);
        s.gamma_max = 0.5;
        assert!(s.check().is_err());
        s.gamma_max = 0.0;
        assert!(s.check().is_err());
        assert!(spec(5).check().is_ok());
    }

    #[test]
    fn threshold_row_uses_limits() {
        let (text, warnings) = tabulate(&spec(3)).unwrap();
        let last = text.lines().last().unwrap();
        assert_eq!(last, "0.4,3,0.25,3");
        assert!(warnings.is_empty());
        let mut s = spec(3);
        s.observables = vec!["minus_var".into()];
        let (text, warnings) = tabulate(&s).unwrap();
        assert_eq!(text.lines().last().unwrap(), "0.4,inf");
        assert_eq!(warnings.len(), 1);
    }
}
