//! Output plumbing: version string, reproducibility headers, file/stdout
//! writing, fixture resolution, and noise CSV parsing.
//!
//! Outputs deliberately carry no timestamps, so re-running a command with
//! an identical resolved config and a single worker reproduces every byte.

use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::{usage, CliResult};

/// Package version plus a git-describe suffix, embedded in every output.
pub const VERSION: &str = concat!(
    env!("CARGO_PKG_VERSION"),
    "+",
    env!("LDPC_FLOOR_GIT_DESCRIBE")
);

/// Environment variable naming a directory against which bare `--code`
/// names are resolved.
pub const FIXTURES_ENV: &str = "LDPC_FLOOR_FIXTURES";

/// Resolves a code path: as given if it exists, otherwise relative to
/// `$LDPC_FLOOR_FIXTURES`.
pub fn resolve_code_path(code: &str) -> CliResult<PathBuf> {
    let direct = PathBuf::from(code);
    if direct.exists() {
        return Ok(direct);
    }
    if let Ok(dir) = std::env::var(FIXTURES_ENV) {
        let candidate = Path::new(&dir).join(code);
        if candidate.exists() {
            return Ok(candidate);
        }
    }
    Err(usage(format!(
        "code file {code} not found (also tried ${FIXTURES_ENV})"
    )))
}

/// JSON envelope shared by all structured outputs.
#[derive(Serialize)]
pub struct Envelope<P: Serialize> {
    pub version: &'static str,
    pub config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub master_seed: Option<u64>,
    #[serde(flatten)]
    pub payload: P,
}

/// Serializes an envelope to pretty JSON with a trailing newline.
pub fn render_json<P: Serialize>(config: Value, master_seed: Option<u64>, payload: P) -> String {
    let envelope = Envelope {
        version: VERSION,
        config,
        master_seed,
        payload,
    };
    let mut text = serde_json::to_string_pretty(&envelope).expect("serializable output");
    text.push('\n');
    text
}

/// Comment header lines for CSV outputs.
pub fn csv_header(config: &Value, master_seed: Option<u64>) -> String {
    let mut out = format!("# ldpc-floor {VERSION}\n# config: {config}\n");
    if let Some(seed) = master_seed {
        out.push_str(&format!("# master_seed: {seed}\n"));
    }
    out
}

/// Writes to `--out` or stdout.
pub fn write_output(out: Option<&Path>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Reads a noise CSV: one frame per row of comma-separated floats, `#`
/// comments and blank lines skipped.
pub fn read_noise_csv(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read noise file {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row: Result<Vec<f64>, _> = line
            .split(',')
            .map(|cell| cell.trim().parse::<f64>())
            .collect();
        rows.push(
            row.map_err(|e| usage(format!("noise file {}:{}: {e}", path.display(), lineno + 1)))?,
        );
    }
    if rows.is_empty() {
        return Err(usage(format!(
            "noise file {} contains no data rows",
            path.display()
        )));
    }
    Ok(rows)
}
