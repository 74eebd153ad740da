//! Circular distances and de-noising reducers.
//!
//! Distances are exact integers: the arc length on `Z/p`, summed over the
//! elements of an item, minimised over the items of a chain.

use alloc::vec::Vec;

use crate::algebra::{BaseItem, Chain, Residue};
use crate::{Error, Result};

fn check_residue(v: Residue, p: u32) -> Result<()> {
    if p < 2 {
        return Err(Error::InvalidArgument(alloc::format!("modulus {p} below 2")));
    }
    if v >= p {
        return Err(Error::ResidueOutOfRange {
            value: u64::from(v),
            modulus: p,
        });
    }
    Ok(())
}

#[inline]
fn arc(a: Residue, b: Residue, p: u32) -> u32 {
    let diff = a.abs_diff(b);
    diff.min(p - diff)
}

/// Circular distance `min(|b-a|, p-|b-a|)` on `Z/p`.
pub fn circ_dist(a: Residue, b: Residue, p: u32) -> Result<u32> {
    check_residue(a, p)?;
    check_residue(b, p)?;
    Ok(arc(a, b, p))
}

/// Sum of element-wise circular distances.
pub fn item_dist(a: &BaseItem, b: &BaseItem) -> Result<u64> {
    a.check_compatible(b)?;
    let p = a.modulus();
    Ok(a.elems()
        .iter()
        .zip(b.elems())
        .map(|(&x, &y)| u64::from(arc(x, y, p)))
        .sum())
}

/// Distance from an item to the closest item of a non-empty chain.
pub fn chain_dist(a: &BaseItem, b: &Chain) -> Result<u64> {
    let mut best: Option<u64> = None;
    for item in b.items() {
        let d = item_dist(a, item)?;
        if d == 0 {
            return Ok(0);
        }
        best = Some(best.map_or(d, |cur| cur.min(d)));
    }
    best.ok_or(Error::EmptyInput("chain distance"))
}

/// True when both chains hold the same multiset of items, ignoring order.
pub fn same_items_unordered(a: &Chain, b: &Chain) -> bool {
    if a.rank() != b.rank() || a.params() != b.params() {
        return false;
    }
    let mut x: Vec<&BaseItem> = a.items().iter().collect();
    let mut y: Vec<&BaseItem> = b.items().iter().collect();
    x.sort();
    y.sort();
    x == y
}

/// Midpoint of `a` and `b` along the shortest arc.
///
/// With `delta = ceil(circ_dist / 2)`: when `|b-a| <= p-|b-a|` the result is
/// `min(a, b) + delta`, otherwise `(max(a, b) + delta) mod p`. Antipodal pairs
/// take the first branch.
pub fn denoise_avg(a: Residue, b: Residue, p: u32) -> Result<Residue> {
    check_residue(a, p)?;
    check_residue(b, p)?;
    Ok(geodesic_mid(a, b, p))
}

fn geodesic_mid(a: Residue, b: Residue, p: u32) -> Residue {
    let diff = a.abs_diff(b);
    let delta = arc(a, b, p).div_ceil(2);
    if diff <= p - diff {
        a.min(b) + delta
    } else {
        ((u64::from(a.max(b)) + u64::from(delta)) % u64::from(p)) as Residue
    }
}

/// Element-wise reducer used by [`denoise_item`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DenoiseMethod {
    /// Geodesic midpoint; exactly two samples.
    GeodesicPairAvg,
    /// Element-wise mode, ties to the smallest residue.
    MajorityVote,
    /// Element-wise lower median of the residues.
    Median,
}

impl DenoiseMethod {
    fn label(self) -> &'static str {
        match self {
            Self::GeodesicPairAvg => "geodesic pair average",
            Self::MajorityVote => "majority vote",
            Self::Median => "median",
        }
    }
}

/// Reconciles several noisy copies of one item.
pub fn denoise_item(samples: &[BaseItem], method: DenoiseMethod) -> Result<BaseItem> {
    let (first, rest) = samples
        .split_first()
        .ok_or(Error::EmptyInput(method.label()))?;
    for s in rest {
        first.check_compatible(s)?;
    }
    let p = first.modulus();
    if method == DenoiseMethod::GeodesicPairAvg {
        if samples.len() != 2 {
            return Err(Error::SampleCount {
                method: method.label(),
                expected: 2,
                actual: samples.len(),
            });
        }
        let elems = first
            .elems()
            .iter()
            .zip(rest[0].elems())
            .map(|(&a, &b)| geodesic_mid(a, b, p))
            .collect();
        return Ok(BaseItem::from_raw(p, elems));
    }

    let mut column = Vec::with_capacity(samples.len());
    let elems = (0..first.len())
        .map(|i| {
            column.clear();
            column.extend(samples.iter().map(|s| s.elems()[i]));
            column.sort_unstable();
            match method {
                DenoiseMethod::Median => column[(column.len() - 1) / 2],
                _ => sorted_mode(&column),
            }
        })
        .collect();
    Ok(BaseItem::from_raw(p, elems))
}

fn sorted_mode(sorted: &[Residue]) -> Residue {
    let mut best = (sorted[0], 0usize);
    let mut run = (sorted[0], 0usize);
    for &v in sorted {
        if v == run.0 {
            run.1 += 1;
        } else {
            run = (v, 1);
        }
        if run.1 > best.1 {
            best = run;
        }
    }
    best.0
}
