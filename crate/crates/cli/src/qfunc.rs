use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use num_complex::Complex64;

use cavityq_core::superposition::{marginal, superposed_qfunction};

use crate::config::FileConfig;
use crate::error::CliError;
use crate::output::{emit, number};
use crate::ParamArgs;

#[derive(Args, Debug)]
pub struct QfuncArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Axis grid `min:max:count`, applied to every real and imaginary axis.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<Grid>,
    /// Sample the single-mode marginal instead of the joint function.
    #[arg(long)]
    marginal: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("expected min:max:count, got `{s}`"));
        };
        let min: f64 = min
            .trim()
            .parse()
            .map_err(|_| format!("bad grid minimum `{min}`"))?;
        let max: f64 = max
            .trim()
            .parse()
            .map_err(|_| format!("bad grid maximum `{max}`"))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| format!("bad grid count `{count}`"))?;
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(format!(
                "grid bounds must be finite with min <= max, got {min}:{max}"
            ));
        }
        if count == 0 || (count == 1 && min != max) {
            return Err(format!(
                "grid count must be at least 2 for a nonempty range, got {count}"
            ));
        }
        Ok(Grid { min, max, count })
    }
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }
}

pub fn run(args: &QfuncArgs, file: &FileConfig) -> Result<(), CliError> {
    let params = args.params.resolve(file)?;
    let grid = match args.grid {
        Some(g) => g,
        None => {
            let raw: String = file.require(None, "grid")?;
            raw.parse().map_err(CliError::Usage)?
        }
    };
    let marginal_mode = file.switch(args.marginal, "marginal")?;
    let out = match &args.out {
        Some(p) => Some(p.clone()),
        None => file.get::<PathBuf>("out")?,
    };

    let q = superposed_qfunction(&params)?;
    let axis = grid.points();
    let mut text = String::new();
    if marginal_mode {
        let m = marginal(&q);
        text.push_str("re_alpha,im_alpha,Q\n");
        for &x in &axis {
            for &y in &axis {
                let value = m.evaluate(Complex64::new(x, y));
                text.push_str(&format!("{},{},{}\n", number(x), number(y), number(value)));
            }
        }
    } else {
        text.push_str("re_a,im_a,re_b,im_b,Q\n");
        for &ar in &axis {
            for &ai in &axis {
                for &br in &axis {
                    for &bi in &axis {
                        let value = q.evaluate(Complex64::new(ar, ai), Complex64::new(br, bi));
                        text.push_str(&format!(
                            "{},{},{},{},{}\n",
                            number(ar),
                            number(ai),
                            number(br),
                            number(bi),
                            number(value)
                        ));
                    }
                }
            }
        }
    }
    emit(out.as_deref(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: Grid = "-6:6:201".parse().unwrap();
        assert_eq!((g.min, g.max, g.count), (-6.0, 6.0, 201));
        let p = g.points();
        assert_eq!(p[0], -6.0);
        assert_eq!(p[200], 6.0);
        assert!((p[100]).abs() < 1e-15);
        assert_eq!("0:0:1".parse::<Grid>().unwrap().points(), vec![0.0]);
        for bad in [
            "1:2", "a:1:3", "2:1:3", "0:1:0", "0:1:1", "0:1:x", "0:inf:3",
        ] {
            assert!(bad.parse::<Grid>().is_err(), "{bad}");
        }
    }
}
