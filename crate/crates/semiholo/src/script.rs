//! Simulator command scripts: one command per line,
//! `superpose|bind|bind-inverse <chain> <chain>`. Blank lines and lines
//! starting with `#` are skipped.

use semiholo_core::copu::{OpCommand, OpKind};
use semiholo_core::SystemParams;
use serde_json::Value;

use crate::error::{CliError, Result};
use crate::literal::chain_from_value;

/// Parses a command kind label.
pub fn parse_kind(s: &str) -> Option<OpKind> {
    match s {
        "superpose" => Some(OpKind::Superpose),
        "bind" => Some(OpKind::Bind),
        "bind-inverse" => Some(OpKind::BindInverse),
        _ => None,
    }
}

/// Parses a whole script.
pub fn parse_script(params: &SystemParams, text: &str) -> Result<Vec<OpCommand>> {
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| CliError::Parse(format!("line {}: {msg}", n + 1));
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let kind = parse_kind(word).ok_or_else(|| at(format!("unknown command {word:?}")))?;
        let values: Vec<Value> = serde_json::Deserializer::from_str(rest)
            .into_iter::<Value>()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| at(e.to_string()))?;
        let [a, b] = values.as_slice() else {
            return Err(at(format!("expected two operands, found {}", values.len())));
        };
        let a = chain_from_value(params, a).map_err(|e| at(e.to_string()))?;
        let b = chain_from_value(params, b).map_err(|e| at(e.to_string()))?;
        out.push(OpCommand::new(kind, a, b));
    }
    Ok(out)
}
