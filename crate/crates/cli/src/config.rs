//! `--config` support: a plain `key=value` file mapped onto flags.
//!
//! Each entry becomes `--key value` (or just `--key` when the value is
//! `true`; `false` drops it) and is spliced in right after the subcommand,
//! ahead of the user's own flags. The parser lets a later occurrence of a
//! flag override an earlier one, so the command line wins.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

const NESTED: [&str; 4] = ["gas", "file", "fiber", "ledger"];

pub fn parse_config(text: &str) -> Result<Vec<String>> {
    let mut flags = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!(
                "config line {}: expected key=value, got `{line}`",
                lineno + 1
            );
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            bail!("config line {}: empty key", lineno + 1);
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => {
                flags.push(format!("--{key}"));
                flags.push(value.to_string());
            }
        }
    }
    Ok(flags)
}

/// Removes `--config PATH` / `--config=PATH` from `argv` and splices the file's
/// flags in after the (sub)subcommand.
pub fn expand(argv: Vec<String>) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut iter = argv.into_iter();
    while let Some(arg) = iter.next() {
        if arg == "--config" {
            match iter.next() {
                Some(p) => path = Some(p),
                None => bail!("--config needs a path"),
            }
        } else if let Some(p) = arg.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .with_context(|| format!("reading config file {path}"))?;
    let flags = parse_config(&text)?;

    let positional: Vec<usize> = rest
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, a)| !a.starts_with('-'))
        .map(|(i, _)| i)
        .take(2)
        .collect();
    let at = match positional.as_slice() {
        [top, leaf, ..] if NESTED.contains(&rest[*top].as_str()) => leaf + 1,
        [top, ..] => top + 1,
        [] => rest.len(),
    };
    rest.splice(at..at, flags);
    Ok(rest)
}
