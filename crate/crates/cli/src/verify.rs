use clap::Args;

use cavityq_core::verify::{run_verification, VerifyOptions, DEFAULT_TOLERANCE};

use crate::config::FileConfig;
use crate::error::CliError;
use crate::output::emit;
use crate::ParamArgs;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Fock cutoff per mode for the parametric system; grown automatically if omitted.
    #[arg(long)]
    fock_dim: Option<usize>,
    /// Tolerance applied to every check.
    #[arg(long)]
    tol: Option<f64>,
}

pub fn run(args: &VerifyArgs, file: &FileConfig) -> Result<(), CliError> {
    let params = args.params.resolve(file)?;
    let tol = file.merge(args.tol, "tol")?.unwrap_or(DEFAULT_TOLERANCE);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    let fock_dim = file.merge(args.fock_dim, "fock_dim")?;
    if let Some(n) = fock_dim {
        if n < 2 {
            return Err(CliError::Usage(format!(
                "--fock-dim must be at least 2, got {n}"
            )));
        }
    }

    let report = run_verification(&params, &VerifyOptions { fock_dim, tol })?;
    let text: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
    emit(None, &text)?;
    eprintln!(
        "fock cutoffs: parametric {}, coherent {}",
        report.subharmonic_truncation, report.coherent_truncation
    );
    let failed = report.checks.iter().filter(|c| !c.passed()).count();
    if failed > 0 {
        return Err(CliError::VerifyFailed(failed));
    }
    Ok(())
}
