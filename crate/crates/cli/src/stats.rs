use clap::{Args, ValueEnum};

use cavityq_core::coherent::displacement;
use cavityq_core::statistics::{
    degree_of_entanglement, epr_report, epr_sum, g2_cross, g2_single, mean_photon, photon_variance,
    quadrature_report, squeezing, MaybeDivergent, VACUUM_VARIANCE,
};
use cavityq_core::{Error, SystemParams, Time};

use crate::config::FileConfig;
use crate::error::CliError;
use crate::output::{emit, number, warn};
use crate::ParamArgs;

pub const STEADY_OBSERVABLES: &[&str] = &[
    "mean_photon",
    "photon_variance",
    "plus_var",
    "minus_var",
    "squeezing",
    "epr_sum",
    "degree",
    "entangled",
    "g2_a",
    "g2_b",
    "g2_ab",
    "cs_lhs",
    "cs_rhs",
    "cs_satisfied",
];

pub const TIME_OBSERVABLES: &[&str] = &["q", "mean_photon", "photon_variance"];

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluate at time T after switch-on (photon statistics only).
    #[arg(long, value_name = "T", conflicts_with = "steady")]
    time: Option<f64>,
    /// Evaluate at steady state.
    #[arg(long)]
    steady: bool,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Comma-separated subset of observables to print.
    #[arg(long, value_delimiter = ',')]
    observables: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Number(f64),
    Flag(bool),
    Divergent,
    Undefined,
}

impl Value {
    fn render(self) -> String {
        match self {
            Value::Number(x) => number(x),
            Value::Flag(b) => b.to_string(),
            Value::Divergent => "inf".to_string(),
            Value::Undefined => "undefined".to_string(),
        }
    }
}

fn soften(result: Result<f64, Error>) -> Result<Value, Error> {
    match result {
        Ok(x) => Ok(Value::Number(x)),
        Err(Error::ThresholdDivergence { .. }) => Ok(Value::Divergent),
        Err(Error::UndefinedCorrelation) => Ok(Value::Undefined),
        Err(e) => Err(e),
    }
}

/// One observable at steady state. Divergent and undefined values are
/// returned as such rather than as errors.
pub fn steady_value(params: &SystemParams, name: &str) -> Result<Value, Error> {
    let t = Time::SteadyState;
    Ok(match name {
        "mean_photon" => soften(mean_photon(params, t))?,
        "photon_variance" => soften(photon_variance(params, t))?,
        "plus_var" => Value::Number(quadrature_report(params)?.plus_var),
        "minus_var" => match quadrature_report(params)?.minus_var {
            MaybeDivergent::Finite(x) => Value::Number(x),
            MaybeDivergent::Divergent => Value::Divergent,
        },
        "squeezing" => Value::Number(squeezing(params)?),
        "epr_sum" => Value::Number(epr_sum(params)?),
        "degree" => Value::Number(degree_of_entanglement(params)?),
        "entangled" => Value::Flag(epr_sum(params)? < VACUUM_VARIANCE),
        "g2_a" | "g2_b" => soften(g2_single(params))?,
        "g2_ab" => soften(g2_cross(params))?,
        "cs_lhs" | "cs_rhs" | "cs_satisfied" => match epr_report(params) {
            Ok(r) => match name {
                "cs_lhs" => Value::Number(r.cs_lhs),
                "cs_rhs" => Value::Number(r.cs_rhs),
                _ => Value::Flag(r.cs_satisfied),
            },
            Err(Error::UndefinedCorrelation) => Value::Undefined,
            Err(e) => return Err(e),
        },
        other => {
            return Err(Error::MalformedInput(format!(
                "unknown observable `{other}`"
            )))
        }
    })
}

fn timed_value(params: &SystemParams, t: f64, name: &str) -> Result<Value, Error> {
    let time = Time::At(t);
    Ok(match name {
        "q" => Value::Number(displacement(params, time)?),
        "mean_photon" => soften(mean_photon(params, time))?,
        "photon_variance" => soften(photon_variance(params, time))?,
        other => {
            return Err(Error::MalformedInput(format!(
                "unknown observable `{other}`"
            )))
        }
    })
}

pub fn select(requested: Option<Vec<String>>, available: &[&str]) -> Result<Vec<String>, CliError> {
    let Some(list) = requested else {
        return Ok(available.iter().map(|s| s.to_string()).collect());
    };
    let list: Vec<String> = list
        .into_iter()
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    if list.is_empty() {
        return Err(CliError::Usage("empty observable list".into()));
    }
    for name in &list {
        if !available.contains(&name.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown observable `{name}`; expected one of {}",
                available.join(", ")
            )));
        }
    }
    Ok(list)
}

pub fn run(args: &StatsArgs, file: &FileConfig) -> Result<(), CliError> {
    let params = args.params.resolve(file)?;
    let t = if args.time.is_some() || args.steady {
        args.time
    } else {
        match (file.get::<f64>("time")?, file.switch(false, "steady")?) {
            (Some(_), true) => {
                return Err(CliError::Usage("config sets both time and steady".into()))
            }
            (Some(t), false) => Some(t),
            (None, true) => None,
            (None, false) => {
                return Err(CliError::Usage(
                    "one of --time T or --steady is required".into(),
                ))
            }
        }
    };

    let format = match args.format {
        Some(f) => f,
        None => match file.get::<String>("format")?.as_deref() {
            None | Some("text") => Format::Text,
            Some("csv") => Format::Csv,
            Some(other) => return Err(CliError::Usage(format!("unknown format `{other}`"))),
        },
    };
    let explicit = args.observables.is_some() || file.get::<String>("observables")?.is_some();
    let requested = match &args.observables {
        Some(list) => Some(list.clone()),
        None => file
            .get::<String>("observables")?
            .map(|s| s.split(',').map(str::to_string).collect()),
    };

    params.require_not_above()?;
    let names = select(
        requested,
        if t.is_some() {
            TIME_OBSERVABLES
        } else {
            STEADY_OBSERVABLES
        },
    )?;
    let mut values = Vec::with_capacity(names.len());
    for name in &names {
        let value = match t {
            Some(t) => timed_value(&params, t, name)?,
            None => steady_value(&params, name)?,
        };
        match value {
            Value::Divergent if explicit => {
                return Err(CliError::Domain(format!("{name} diverges at threshold")));
            }
            Value::Divergent => warn(&format!("{name} diverges at threshold; printed as inf")),
            Value::Undefined => warn(&format!("{name} is undefined for the vacuum")),
            _ => {}
        }
        values.push(value.render());
    }

    let text = match format {
        Format::Text => names
            .iter()
            .zip(&values)
            .map(|(n, v)| format!("{n} = {v}\n"))
            .collect::<String>(),
        Format::Csv => format!("{}\n{}\n", names.join(","), values.join(",")),
    };
    emit(None, &text)
}
