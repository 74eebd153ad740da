//! Item and chain literals: `[1,2]` is a single item, `[[1,2],[3,1]]` a
//! chain, `[]` the empty chain.

use semiholo_core::{BaseItem, Chain, SystemParams};
use serde_json::Value;

use crate::error::{CliError, Result};

fn residues(v: &[Value]) -> Result<Vec<u32>> {
    v.iter()
        .map(|x| {
            x.as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| CliError::Parse(format!("expected a non-negative integer, found {x}")))
        })
        .collect()
}

/// Parses a chain literal against `params`.
pub fn parse_chain(params: &SystemParams, text: &str) -> Result<Chain> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{text:?}: {e}")))?;
    chain_from_value(params, &v)
}

pub(crate) fn chain_from_value(params: &SystemParams, v: &Value) -> Result<Chain> {
    let Value::Array(outer) = v else {
        return Err(CliError::Parse(format!("expected an array, found {v}")));
    };
    let items = if outer.iter().all(Value::is_array) {
        outer
            .iter()
            .map(|x| BaseItem::new(params, residues(x.as_array().unwrap())?).map_err(CliError::from))
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![BaseItem::new(params, residues(outer)?)?]
    };
    Ok(Chain::new(*params, items)?)
}

/// Parses a single base item.
pub fn parse_item(params: &SystemParams, text: &str) -> Result<BaseItem> {
    let c = parse_chain(params, text)?;
    match c.items() {
        [one] => Ok(one.clone()),
        _ => Err(CliError::Parse(format!("{text:?}: expected a single item"))),
    }
}

/// Formats an item as `[a,b,..]`.
pub fn format_item(item: &BaseItem) -> String {
    let inner: Vec<String> = item.elems().iter().map(u32::to_string).collect();
    format!("[{}]", inner.join(","))
}

/// Formats a chain; a rank-1 chain prints as its item.
pub fn format_chain(c: &Chain) -> String {
    match c.items() {
        [one] => format_item(one),
        items => format!("[{}]", items.iter().map(format_item).collect::<Vec<_>>().join(",")),
    }
}

/// Chain as nested integer vectors, for reports.
pub fn chain_rows(c: &Chain) -> Vec<Vec<u32>> {
    c.items().iter().map(|i| i.elems().to_vec()).collect()
}
