//! Key=value config files and flag/config/default resolution.
//!
//! Every tunable is settable from a config file; an explicit command-line
//! flag always wins. Resolution failures are usage errors (exit 1), while
//! broken numerical invariants surfacing from the library are compute
//! anomalies (exit 2).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ldpc_floor::error::Error;

/// CLI failure classes, mapped onto exit codes in `main`.
#[derive(Debug)]
pub enum CliError {
    /// Bad invocation or bad input data: exit 1.
    Usage(String),
    /// A numerical invariant broke mid-compute: exit 2.
    Compute(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Compute(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Anomaly(_) => CliError::Compute(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parsed config file: normalized keys mapped to raw value strings.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

/// Keys compare with `-` and `_` interchangeable.
fn normalize(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl FileConfig {
    /// Loads `path` if given. Lines are `key = value`; `#` starts a
    /// comment; blank lines are skipped.
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(usage(format!(
                    "config {}:{}: expected key=value, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            values.insert(normalize(key), value.trim().to_string());
        }
        Ok(FileConfig { values })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(&normalize(key)).map(String::as_str)
    }

    /// Flag value if given, else the parsed config value, if either.
    pub fn opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.raw(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| usage(format!("config key {key}: {e}"))),
        }
    }

    /// Like `opt`, falling back to `default`.
    pub fn get<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        Ok(self.opt(flag, key)?.unwrap_or(default))
    }

    /// Like `opt`, but the value is required.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        self.opt(flag, key)?.ok_or_else(|| {
            usage(format!(
                "missing --{} (or config key {key})",
                key.replace('_', "-")
            ))
        })
    }

    /// Presence-style booleans: the flag turns it on, else the config key.
    pub fn switch(&self, flag: bool, key: &str) -> CliResult<bool> {
        if flag {
            return Ok(true);
        }
        Ok(self.opt(None, key)?.unwrap_or(false))
    }

    /// Comma-separated float lists (`s2_list = 0.5,1,2`).
    pub fn float_list(&self, flag: Option<Vec<f64>>, key: &str) -> CliResult<Option<Vec<f64>>> {
        if let Some(v) = flag {
            if !v.is_empty() {
                return Ok(Some(v));
            }
        }
        match self.raw(key) {
            None => Ok(None),
            Some(raw) => raw
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<f64>()
                        .map_err(|e| usage(format!("config key {key}: {e}")))
                })
                .collect::<CliResult<Vec<f64>>>()
                .map(Some),
        }
    }
}
