//! `key = value` configuration files. Each key names a long option of the
//! chosen subcommand; options given on the command line take precedence.

use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: expected key = value")]
    Syntax { path: String, line: usize },
    #[error("{path}:{line}: key `{key}` is not allowed in a config file")]
    Forbidden { path: String, line: usize, key: String },
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse(text: &str, path: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { path: path.into(), line: i + 1 })?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key.contains(char::is_whitespace) || key.starts_with('-') {
            return Err(ConfigError::Syntax { path: path.into(), line: i + 1 });
        }
        if key == "config" {
            return Err(ConfigError::Forbidden { path: path.into(), line: i + 1, key });
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: name.clone(), source })?;
    parse(&text, &name)
}

/// Location of `--config` in raw arguments, if any.
pub fn find_path(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--" {
            break;
        }
        if let Some(p) = a.strip_prefix("--config=") {
            return Some(p.to_string());
        }
        if a == "--config" {
            return it.next().cloned();
        }
    }
    None
}

/// Inserts the config entries as `--key=value` right after the subcommand,
/// so that later command-line occurrences override them.
pub fn inject(args: &[String], entries: &[(String, String)]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len() + entries.len());
    let mut inserted = false;
    let mut skip_value = false;
    for (i, a) in args.iter().enumerate() {
        out.push(a.clone());
        if i == 0 || inserted {
            continue;
        }
        if skip_value {
            skip_value = false;
            continue;
        }
        if a == "--config" {
            skip_value = true;
            continue;
        }
        if !a.starts_with('-') {
            out.extend(entries.iter().map(|(k, v)| format!("--{k}={v}")));
            inserted = true;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse("# c\n alpha = -1 \nn_max=5 # five\n\n", "f").unwrap();
        assert_eq!(e, vec![("alpha".into(), "-1".into()), ("n-max".into(), "5".into())]);
        assert!(matches!(parse("alpha", "f"), Err(ConfigError::Syntax { line: 1, .. })));
        assert!(matches!(parse("config = x", "f"), Err(ConfigError::Forbidden { .. })));
    }

    #[test]
    fn injects_after_subcommand() {
        let args = strings(&["flatband", "--config", "c.cfg", "scan", "--alpha-min=1"]);
        assert_eq!(find_path(&args).as_deref(), Some("c.cfg"));
        let out = inject(&args, &[("alpha-min".into(), "0.5".into())]);
        assert_eq!(out, strings(&["flatband", "--config", "c.cfg", "scan", "--alpha-min=0.5", "--alpha-min=1"]));
    }
}
