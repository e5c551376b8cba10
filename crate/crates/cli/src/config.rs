use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

const KNOWN_KEYS: &[&str] = &[
    "kappa",
    "gamma",
    "epsilon",
    "time",
    "steady",
    "format",
    "observables",
    "gamma_min",
    "gamma_max",
    "steps",
    "out",
    "grid",
    "marginal",
    "fock_dim",
    "tol",
];

/// `key = value` settings read from `--config`. Command-line flags win.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "config line {}: expected `key = value`",
                    lineno + 1
                ))
            })?;
            let key = key.trim().replace('-', "_");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key `{key}`",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| CliError::Usage(format!("config key `{key}`: cannot parse `{raw}`"))),
        }
    }

    /// Flag value if given, else the file value.
    pub fn merge<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.merge(flag, key)?
            .ok_or_else(|| CliError::Usage(format!("missing --{}", key.replace('_', "-"))))
    }

    /// Boolean switches: set by the flag or by `key = true` in the file.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        Ok(flag || self.get::<bool>(key)?.unwrap_or(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let cfg =
            FileConfig::parse("# comment\nkappa = 0.8\ngamma-min=0.1 # trailing\nsteady = true\n")
                .unwrap();
        assert_eq!(cfg.get::<f64>("kappa").unwrap(), Some(0.8));
        assert_eq!(cfg.get::<f64>("gamma_min").unwrap(), Some(0.1));
        assert_eq!(cfg.merge(Some(1.0), "kappa").unwrap(), Some(1.0));
        assert!(cfg.switch(false, "steady").unwrap());
        assert!(matches!(
            cfg.require::<f64>(None, "epsilon"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(FileConfig::parse("kappa 1").is_err());
        assert!(FileConfig::parse("colour = red").is_err());
        let cfg = FileConfig::parse("kappa = fast").unwrap();
        assert!(cfg.get::<f64>("kappa").is_err());
    }
}
