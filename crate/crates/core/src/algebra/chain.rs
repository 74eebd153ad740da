use alloc::vec::Vec;

use super::{BaseItem, SystemParams};
use crate::{Error, Result};

/// An ordered sequence of at most `d` base items.
///
/// A chain may carry trailing zero padding (see [`pad_chain`]); the padding is
/// stored physically but [`Chain::rank`] and [`Chain::items`] only see the
/// original items.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    params: SystemParams,
    items: Vec<BaseItem>,
    rank: usize,
}

impl Chain {
    /// The rank-0 chain, identity for superposition.
    pub fn empty(params: SystemParams) -> Self {
        Self {
            params,
            items: Vec::new(),
            rank: 0,
        }
    }

    /// Builds a chain, validating every item and the rank bound.
    pub fn new(params: SystemParams, items: Vec<BaseItem>) -> Result<Self> {
        if items.len() > params.d() {
            return Err(Error::RankOverflow {
                requested: items.len(),
                capacity: params.d(),
            });
        }
        for item in &items {
            if !item.fits(&params) {
                return Err(Error::ParamsMismatch);
            }
        }
        let rank = items.len();
        Ok(Self { params, items, rank })
    }

    /// A rank-1 chain holding `item`.
    pub fn singleton(params: SystemParams, item: BaseItem) -> Result<Self> {
        Self::new(params, alloc::vec![item])
    }

    pub(crate) fn from_parts(params: SystemParams, items: Vec<BaseItem>) -> Self {
        debug_assert!(items.len() <= params.d());
        let rank = items.len();
        Self { params, items, rank }
    }

    /// Parameters the chain was built under.
    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    /// Number of items, excluding padding.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// True for the rank-0 chain.
    pub fn is_empty(&self) -> bool {
        self.rank == 0
    }

    /// The items, excluding padding.
    pub fn items(&self) -> &[BaseItem] {
        &self.items[..self.rank]
    }

    /// All stored items, including zero padding.
    pub fn physical_items(&self) -> &[BaseItem] {
        &self.items
    }

    /// True when zero padding follows the items.
    pub fn is_padded(&self) -> bool {
        self.items.len() > self.rank
    }

    /// Drops any padding.
    pub fn unpadded(&self) -> Self {
        Self::from_parts(self.params, self.items().to_vec())
    }

    fn check_same_params(&self, other: &Self) -> Result<()> {
        if self.params != other.params {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }
}

/// Identifier of an application-supplied overflow handler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HandlerId(pub u32);

/// What superposition does when the combined rank exceeds `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverflowPolicy {
    /// Refuse the operation with [`Error::RankOverflow`].
    #[default]
    Reject,
    /// Keep the first `d` items and raise a warning.
    TruncateWithWarning,
    /// Raise a flag and pass control to the named handler.
    HandlerFlag(HandlerId),
}

/// Outcome of [`superpose_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Superposition {
    /// The operands fit.
    Complete(Chain),
    /// Overflowing items were dropped; the warning flag is raised.
    Truncated {
        /// The first `d` items of the concatenation.
        chain: Chain,
        /// How many items were dropped.
        dropped: usize,
    },
    /// Overflow was flagged; the named handler must deal with the operands.
    Handoff {
        /// Handler to branch to.
        handler: HandlerId,
        /// Rank the concatenation would have had.
        requested: usize,
    },
}

impl Superposition {
    /// The resulting chain, unless control was handed off.
    pub fn chain(&self) -> Option<&Chain> {
        match self {
            Self::Complete(c) | Self::Truncated { chain: c, .. } => Some(c),
            Self::Handoff { .. } => None,
        }
    }

    /// Consumes the outcome, returning the chain if there is one.
    pub fn into_chain(self) -> Option<Chain> {
        match self {
            Self::Complete(c) | Self::Truncated { chain: c, .. } => Some(c),
            Self::Handoff { .. } => None,
        }
    }

    /// True when the overflow warning flag is raised.
    pub fn warning(&self) -> bool {
        !matches!(self, Self::Complete(_))
    }
}

/// Superposition under the default [`OverflowPolicy::Reject`].
pub fn superpose(a: &Chain, b: &Chain) -> Result<Chain> {
    match superpose_with(a, b, OverflowPolicy::Reject)? {
        Superposition::Complete(c) => Ok(c),
        _ => unreachable!("reject policy never truncates or hands off"),
    }
}

/// Concatenates `a` then `b`, resolving overflow with `policy`.
pub fn superpose_with(a: &Chain, b: &Chain, policy: OverflowPolicy) -> Result<Superposition> {
    a.check_same_params(b)?;
    let d = a.params.d();
    let requested = a.rank + b.rank;
    let joined = || a.items().iter().chain(b.items()).cloned();
    if requested <= d {
        return Ok(Superposition::Complete(Chain::from_parts(a.params, joined().collect())));
    }
    match policy {
        OverflowPolicy::Reject => Err(Error::RankOverflow {
            requested,
            capacity: d,
        }),
        OverflowPolicy::TruncateWithWarning => Ok(Superposition::Truncated {
            chain: Chain::from_parts(a.params, joined().take(d).collect()),
            dropped: requested - d,
        }),
        OverflowPolicy::HandlerFlag(handler) => Ok(Superposition::Handoff { handler, requested }),
    }
}

fn bind_by(a: &Chain, b: &Chain, combine: impl Fn(&BaseItem, &BaseItem) -> BaseItem) -> Result<Chain> {
    a.check_same_params(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let d = a.params.d();
    let requested = a.rank.saturating_mul(b.rank);
    if requested > d {
        return Err(Error::RankOverflow {
            requested,
            capacity: d,
        });
    }
    let mut out = Vec::with_capacity(requested);
    for bj in b.items() {
        for ai in a.items() {
            out.push(combine(ai, bj));
        }
    }
    Ok(Chain::from_parts(a.params, out))
}

/// Binds two chains.
///
/// The result holds `rank(a) * rank(b)` items; the index into `a` varies
/// fastest. Both operands must be non-empty.
pub fn bind(a: &Chain, b: &Chain) -> Result<Chain> {
    // Items of a validated chain always share its params.
    bind_by(a, b, |x, y| x.bind(y).expect("items share params"))
}

/// Binds `a` with the item-wise inverse of `b` (element-wise subtraction).
pub fn bind_inverse(a: &Chain, b: &Chain) -> Result<Chain> {
    bind_by(a, b, |x, y| x.unbind(y).expect("items share params"))
}

/// Appends zero items up to `d`, keeping the reported rank.
pub fn pad_chain(c: &Chain) -> Chain {
    let mut items = c.items.clone();
    items.resize(c.params.d(), BaseItem::zero(&c.params));
    Chain {
        params: c.params,
        items,
        rank: c.rank,
    }
}
