//! Codebook documents.
//!
//! ```json
//! {
//!   "params": {
//!     "d": 4,
//!     "p": 4,
//!     "y": 2
//!   },
//!   "vocab": {
//!     "red": [0, 1]
//!   }
//! }
//! ```
//!
//! Reading keeps the file's entry order (it decides query ties). Writing
//! sorts keys, indents by two spaces and ends with a newline, so a written
//! document reads back and rewrites to the same bytes.

use std::fmt::Write as _;
use std::path::Path;

use semiholo_core::{BaseItem, Codebook, SystemParams};
use serde_json::{Map, Value};

use crate::error::{CliError, Result};

/// The red-car demo vocabulary.
pub const REDCAR: &str = include_str!("../data/redcar.json");

fn field<'a>(obj: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| CliError::Parse(format!("{ctx}: missing \"{key}\"")))
}

fn uint(v: &Value, what: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| CliError::Parse(format!("{what}: expected a non-negative integer, found {v}")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], ctx: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(CliError::Parse(format!("{ctx}: unknown key \"{k}\""))),
        None => Ok(()),
    }
}

pub(crate) fn params_from_value(v: &Value) -> Result<SystemParams> {
    let obj = v.as_object().ok_or_else(|| CliError::Parse("params: expected an object".into()))?;
    reject_unknown(obj, &["p", "y", "d"], "params")?;
    let p = uint(field(obj, "p", "params")?, "p")?;
    let y = uint(field(obj, "y", "params")?, "y")?;
    let d = uint(field(obj, "d", "params")?, "d")?;
    let p = u32::try_from(p).map_err(|_| CliError::Config(format!("p = {p} is too large")))?;
    SystemParams::new(p, y as usize, d as usize).map_err(|e| CliError::Config(e.to_string()))
}

/// Parses a codebook document.
pub fn parse_codebook(text: &str) -> Result<Codebook> {
    let doc: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("codebook: {e}")))?;
    let obj = doc.as_object().ok_or_else(|| CliError::Parse("codebook: expected an object".into()))?;
    reject_unknown(obj, &["params", "vocab"], "codebook")?;
    let params = params_from_value(field(obj, "params", "codebook")?)?;
    let vocab = field(obj, "vocab", "codebook")?
        .as_object()
        .ok_or_else(|| CliError::Parse("vocab: expected an object".into()))?;
    let mut cb = Codebook::new(params);
    for (name, elems) in vocab {
        let arr = elems
            .as_array()
            .ok_or_else(|| CliError::Parse(format!("vocab.{name}: expected an array")))?;
        let elems = arr
            .iter()
            .map(|x| {
                let n = uint(x, name)?;
                u32::try_from(n).map_err(|_| CliError::Parse(format!("vocab.{name}: {n} out of range")))
            })
            .collect::<Result<Vec<u32>>>()?;
        let item = BaseItem::new(&params, elems).map_err(|e| CliError::Parse(format!("vocab.{name}: {e}")))?;
        cb.insert(name.clone(), item).map_err(|e| CliError::Parse(e.to_string()))?;
    }
    Ok(cb)
}

/// Reads a codebook file.
pub fn read_codebook(path: &Path) -> Result<Codebook> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_codebook(&text)
}

/// Canonical text of a codebook.
pub fn write_codebook(cb: &Codebook) -> String {
    let p = cb.params();
    let mut out = String::new();
    let _ = write!(out, "{{\n  \"params\": {{\n    \"d\": {},\n    \"p\": {},\n    \"y\": {}\n  }},\n", p.d(), p.p(), p.y());
    let mut entries: Vec<(&str, &BaseItem)> = cb.iter().collect();
    entries.sort_by(|a, b| a.0.cmp(b.0));
    if entries.is_empty() {
        out.push_str("  \"vocab\": {}\n}\n");
        return out;
    }
    out.push_str("  \"vocab\": {\n");
    for (i, (name, item)) in entries.iter().enumerate() {
        let elems: Vec<String> = item.elems().iter().map(u32::to_string).collect();
        let sep = if i + 1 < entries.len() { "," } else { "" };
        let key = serde_json::to_string(name).expect("string keys serialize");
        let _ = writeln!(out, "    {key}: [{}]{sep}", elems.join(", "));
    }
    out.push_str("  }\n}\n");
    out
}

/// Loads the shipped red-car vocabulary.
pub fn redcar() -> Codebook {
    parse_codebook(REDCAR).expect("shipped codebook is valid")
}
