//! `key = value` configuration files.
//!
//! Keys are long flag names without the leading dashes (`budget-factor` and
//! `budget_factor` are equivalent). Blank lines and lines starting with `#`
//! are ignored.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub key: String,
    pub value: String,
}

pub fn parse_config(text: &str) -> Result<Vec<ConfigEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidParameter(format!("config line {}: expected key=value", lineno + 1))
        })?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "config line {}: empty key",
                lineno + 1
            )));
        }
        entries.push(ConfigEntry {
            key,
            value: value.trim().to_string(),
        });
    }
    Ok(entries)
}

/// Command-line tokens equivalent to `entries`.
pub fn config_args(entries: &[ConfigEntry]) -> Vec<String> {
    entries
        .iter()
        .map(|e| format!("--{}={}", e.key, e.value))
        .collect()
}
