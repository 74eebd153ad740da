use alloc::format;

use crate::{Error, Result};

/// The `(p, y, d)` configuration and its derived sizes.
///
/// `p` is the number of states per element, `y` the number of elements per
/// base item and `d` the maximum number of items in a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemParams {
    p: u32,
    y: usize,
    d: usize,
}

/// Builds validated parameters. See [`SystemParams::new`].
pub fn new_params(p: u32, y: usize, d: usize) -> Result<SystemParams> {
    SystemParams::new(p, y, d)
}

fn exact_log2(v: u64) -> Option<u32> {
    v.is_power_of_two().then(|| v.trailing_zeros())
}

impl SystemParams {
    /// Rejects `p < 2`, `y = 0`, `d = 0` and element counts that overflow `usize`.
    pub fn new(p: u32, y: usize, d: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParams(format!("p must be at least 2, got {p}")));
        }
        if y == 0 {
            return Err(Error::InvalidParams("y must be positive".into()));
        }
        if d == 0 {
            return Err(Error::InvalidParams("d must be positive".into()));
        }
        if d.checked_mul(y).is_none() || d.checked_add(1).is_none() {
            return Err(Error::InvalidParams("d * y overflows".into()));
        }
        Ok(Self { p, y, d })
    }

    /// States per element.
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Elements per base item.
    pub fn y(&self) -> usize {
        self.y
    }

    /// Maximum items per chain.
    pub fn d(&self) -> usize {
        self.d
    }

    /// Elements in a maximum-length chain, `d * y`.
    pub fn n(&self) -> usize {
        self.d * self.y
    }

    /// Bits per element, when `p` is a power of two.
    pub fn l(&self) -> Option<u32> {
        exact_log2(u64::from(self.p))
    }

    /// `log2(y)`, when `y` is a power of two.
    pub fn z(&self) -> Option<u32> {
        exact_log2(self.y as u64)
    }

    /// `log2(d)`, when `d` is a power of two.
    pub fn m(&self) -> Option<u32> {
        exact_log2(self.d as u64)
    }

    /// Flag width: the smallest `x` with `2^x >= d + 1`, enough to encode ranks `0..=d`.
    pub fn x(&self) -> u32 {
        (self.d as u64 + 1).next_power_of_two().trailing_zeros()
    }

    /// True when `p`, `y` and `d` are all powers of two.
    pub fn is_power_of_two(&self) -> bool {
        self.l().is_some() && self.z().is_some() && self.m().is_some()
    }
}
