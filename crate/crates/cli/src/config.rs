//! Flat `key = value` config files.
//!
//! Keys are long flag names without the leading dashes. Values are spliced
//! into the argument list right after the subcommand, so explicit flags that
//! follow win.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::ArgAction;

use crate::commands::CliError;

/// Parses `key = value` lines; `#` starts a comment line.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", lineno + 1)));
        }
        entries.push((key.to_string(), value.trim().to_string()));
    }
    Ok(entries)
}

pub fn load(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read config {}: {e}", path.display())))?;
    parse(&text)
}

/// Locates `--config` and the subcommand token in `argv`.
fn scan(argv: &[OsString]) -> (Option<PathBuf>, Option<usize>) {
    let mut config = None;
    let mut i = 1;
    while i < argv.len() {
        let tok = argv[i].to_string_lossy();
        if tok == "--config" {
            config = argv.get(i + 1).map(PathBuf::from);
            i += 2;
            continue;
        }
        if let Some(rest) = tok.strip_prefix("--config=") {
            config = Some(PathBuf::from(rest));
        } else if !tok.starts_with('-') {
            return (config, Some(i));
        }
        i += 1;
    }
    (config, None)
}

/// Returns `argv` with config values inserted after the subcommand. The
/// `--config` flag takes precedence over the environment default.
pub fn merge_config(argv: Vec<OsString>, env_config: Option<PathBuf>) -> Result<Vec<OsString>, CliError> {
    let (flag_config, sub_index) = scan(&argv);
    let Some(sub_index) = sub_index else {
        return Ok(argv);
    };
    let path = match flag_config.or(env_config.filter(|p| !p.as_os_str().is_empty())) {
        Some(p) => p,
        None => return Ok(argv),
    };
    let entries = load(&path)?;

    let root = crate::command();
    let name = argv[sub_index].to_string_lossy().into_owned();
    let Some(sub) = root.find_subcommand(&name) else {
        return Ok(argv);
    };

    let mut injected: Vec<OsString> = Vec::new();
    for (key, value) in entries {
        match sub.get_arguments().find(|a| a.get_long() == Some(key.as_str())) {
            Some(arg) => {
                if matches!(arg.get_action(), ArgAction::SetTrue) {
                    let on = value
                        .parse::<bool>()
                        .map_err(|_| CliError::Usage(format!("config key `{key}` expects true or false, got `{value}`")))?;
                    if on {
                        injected.push(format!("--{key}").into());
                    }
                } else {
                    injected.push(format!("--{key}").into());
                    injected.push(value.into());
                }
            }
            None => {
                let known_elsewhere = root
                    .get_subcommands()
                    .any(|s| s.get_arguments().any(|a| a.get_long() == Some(key.as_str())));
                if !known_elsewhere {
                    return Err(CliError::Usage(format!("unknown config key `{key}` in {}", path.display())));
                }
            }
        }
    }

    let mut merged = argv[..=sub_index].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&argv[sub_index + 1..]);
    Ok(merged)
}
