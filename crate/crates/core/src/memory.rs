//! Cleanup memory: a named vocabulary answering nearest-entry queries.

use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::{bind, BaseItem, Chain, SystemParams};
use crate::metric::chain_dist;
use crate::{Error, Result};

/// Vocabulary of base items in insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    params: SystemParams,
    entries: Vec<(String, BaseItem)>,
}

/// Nearest entry to a probe, with the runner-up when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    /// Closest entry.
    pub name: String,
    /// Its distance to the probe.
    pub distance: u64,
    /// Second-closest entry and its distance.
    pub runner_up: Option<(String, u64)>,
    /// True when the runner-up is exactly as close as the winner.
    pub ambiguous: bool,
}

fn state_count_exceeds(params: &SystemParams, count: usize) -> bool {
    let mut total: u128 = 1;
    for _ in 0..params.y() {
        total = match total.checked_mul(u128::from(params.p())) {
            Some(t) => t,
            None => return false,
        };
        if total >= count as u128 {
            return false;
        }
    }
    total < count as u128
}

impl Codebook {
    /// An empty codebook.
    pub fn new(params: SystemParams) -> Self {
        Self {
            params,
            entries: Vec::new(),
        }
    }

    /// Builds a codebook from `(name, item)` pairs in order.
    pub fn from_entries<I, S>(params: SystemParams, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, BaseItem)>,
        S: Into<String>,
    {
        let mut cb = Self::new(params);
        for (name, item) in entries {
            cb.insert(name, item)?;
        }
        Ok(cb)
    }

    /// Appends an entry. Names must be unique and the vocabulary may not
    /// exceed `p^y` entries.
    pub fn insert(&mut self, name: impl Into<String>, item: BaseItem) -> Result<()> {
        let name = name.into();
        if !item.fits(&self.params) {
            return Err(Error::ParamsMismatch);
        }
        if self.get(&name).is_some() {
            return Err(Error::DuplicateName(name));
        }
        if state_count_exceeds(&self.params, self.entries.len() + 1) {
            return Err(Error::CodebookFull);
        }
        self.entries.push((name, item));
        Ok(())
    }

    /// Parameters of every entry.
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Item stored under `name`.
    pub fn get(&self, name: &str) -> Option<&BaseItem> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    /// Entry count.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when there are no entries.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BaseItem)> {
        self.entries.iter().map(|(n, i)| (n.as_str(), i))
    }

    /// Rank-1 chain holding the entry `name`.
    pub fn chain(&self, name: &str) -> Result<Chain> {
        let item = self
            .get(name)
            .ok_or_else(|| Error::UnknownName(name.into()))?;
        Chain::singleton(self.params, item.clone())
    }
}

/// Returns the entry closest to `probe` under item-to-chain distance.
///
/// Ties go to the earlier entry and set `ambiguous`.
pub fn cleanup_query(cb: &Codebook, probe: &Chain) -> Result<QueryResult> {
    if cb.is_empty() {
        return Err(Error::EmptyCodebook);
    }
    if probe.params() != cb.params() {
        return Err(Error::ParamsMismatch);
    }
    let mut best: Option<(usize, u64)> = None;
    let mut second: Option<(usize, u64)> = None;
    for (idx, (_, item)) in cb.entries.iter().enumerate() {
        let d = chain_dist(item, probe)?;
        match best {
            Some((_, bd)) if d >= bd => {
                if second.is_none_or(|(_, sd)| d < sd) {
                    second = Some((idx, d));
                }
            }
            _ => {
                second = best;
                best = Some((idx, d));
            }
        }
    }
    let (bi, bd) = best.expect("codebook is non-empty");
    let runner_up = second.map(|(i, d)| (cb.entries[i].0.clone(), d));
    Ok(QueryResult {
        name: cb.entries[bi].0.clone(),
        distance: bd,
        ambiguous: second.is_some_and(|(_, d)| d == bd),
        runner_up,
    })
}

/// Unbinds `role` from `s` and cleans the result up against the codebook.
pub fn unbind_query(cb: &Codebook, s: &Chain, role: &str) -> Result<QueryResult> {
    let role_item = cb
        .get(role)
        .ok_or_else(|| Error::UnknownName(role.into()))?;
    let key = Chain::singleton(cb.params, role_item.inverse())?;
    cleanup_query(cb, &bind(&key, s)?)
}
