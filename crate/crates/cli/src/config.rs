//! Optional key=value config file. Values become fallback arguments:
//! anything given explicitly on the command line wins; unknown keys are
//! rejected before any work starts.

use std::ffi::OsString;

use crate::error::CliError;

/// Flags a config file may provide (long names, without the dashes).
const KNOWN_KEYS: [&str; 19] = [
    "n", "c", "p", "theta", "a", "u", "r", "rho", "grid", "reps", "seed", "out", "tol", "fn",
    "s", "t", "w", "tau", "dt",
];

/// If `--config FILE` is present, append `--key value` for every file
/// entry whose key is absent from the explicit arguments.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(pos) = argv.iter().position(|a| a == "--config") else {
        return Ok(argv);
    };
    let path = argv
        .get(pos + 1)
        .ok_or_else(|| CliError::validation("--config needs a file argument"))?
        .clone();
    let text = std::fs::read_to_string(&path).map_err(|e| {
        CliError::validation(format!("cannot read config {}: {e}", path.to_string_lossy()))
    })?;
    let mut out = argv.clone();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::validation(format!(
                "config line {}: expected key=value, got `{line}`",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::validation(format!(
                "config line {}: unknown key `{key}`",
                lineno + 1
            )));
        }
        let flag = format!("--{key}");
        if !argv.iter().any(|a| *a == flag.as_str()) {
            out.push(flag.into());
            out.push(value.into());
        }
    }
    Ok(out)
}
