use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::CliError;

/// Shortest decimal that parses back to the same `f64`; `inf`, `-inf`, `nan`
/// for the non-finite values.
pub fn number(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{x}")
    }
}

pub fn warn(message: &str) {
    eprintln!("warning: {message}");
}

/// Writes to `path`, or to standard output when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(format!("cannot write to standard output: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for x in [0.1, 1.0 / 3.0, 3.3333333333333335, 1e-20, 12345.678] {
            assert_eq!(number(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(number(3.0), "3");
        assert_eq!(number(f64::INFINITY), "inf");
        assert_eq!(number(f64::NAN), "nan");
    }
}
