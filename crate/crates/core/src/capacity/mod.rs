//! Memory capacity versus binding depth.
//!
//! `Q = p^y` is exact (arbitrary precision). Everything derived from it is
//! evaluated in the natural-log domain, since `p^y` overflows `f64` long
//! before it overflows a `BigUint`.

mod monte_carlo;

pub use monte_carlo::{mc_ambiguity, mc_vocabulary, wilson_interval, McAmbiguityResult};

use alloc::format;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::algebra::SystemParams;
use crate::{Error, Result};

/// Ratio `Q_s / Gamma` above which the dominant-term approximation is accepted.
pub const DOMINANT_TERM_RATIO: f64 = 10.0;

/// Exact `p^y`.
pub fn max_capacity(params: &SystemParams) -> BigUint {
    BigUint::from(params.p()).pow(params.y() as u32)
}

/// Natural log of an arbitrary-precision integer; `-inf` for zero.
pub fn ln_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 64 {
        return libm::log(v.to_u64().expect("fits in 64 bits") as f64);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("top 64 bits");
    libm::log(top as f64) + shift as f64 * core::f64::consts::LN_2
}

/// `ln(n!)` by direct summation.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| libm::log(f64::from(k))).sum()
}

fn check_sparsity(s: f64) -> Result<()> {
    if s.is_nan() || s < 1.0 {
        return Err(Error::InvalidArgument(format!("sparsity factor must be >= 1, got {s}")));
    }
    Ok(())
}

/// `ln(Q / s)`.
pub fn ln_sparse_capacity(q: &BigUint, s: f64) -> Result<f64> {
    check_sparsity(s)?;
    Ok(ln_biguint(q) - libm::log(s))
}

/// Safe vocabulary size `Q / s`. Overflows to infinity when the quotient
/// exceeds `f64`; use [`ln_sparse_capacity`] there.
pub fn sparse_capacity(q: &BigUint, s: f64) -> Result<f64> {
    Ok(libm::exp(ln_sparse_capacity(q, s)?))
}

/// Count of items reachable with up to `Gamma` bindings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedItems {
    /// `ln J`, with `J = sum_{i=0}^{Gamma} Q_s^i / i!`.
    pub ln_total: f64,
    /// `ln(Q_s^Gamma / Gamma!)`.
    pub ln_dominant: f64,
    /// Whether `Q_s / Gamma >= 10`, the regime where the dominant term stands in for `J`.
    pub dominant_valid: bool,
}

impl DerivedItems {
    /// `J`, possibly infinite.
    pub fn total(&self) -> f64 {
        libm::exp(self.ln_total)
    }

    /// The dominant term, possibly infinite.
    pub fn dominant(&self) -> f64 {
        libm::exp(self.ln_dominant)
    }
}

/// Evaluates `J` by log-sum-exp over its terms.
pub fn derived_items(q_s: f64, gamma: u32) -> Result<DerivedItems> {
    if q_s.is_nan() || q_s < 0.0 || q_s.is_infinite() {
        return Err(Error::InvalidArgument(format!("Q_s must be finite and >= 0, got {q_s}")));
    }
    if q_s == 0.0 {
        return Ok(DerivedItems {
            ln_total: 0.0,
            ln_dominant: if gamma == 0 { 0.0 } else { f64::NEG_INFINITY },
            dominant_valid: gamma == 0,
        });
    }
    derived_items_ln(libm::log(q_s), gamma)
}

/// [`derived_items`] taking `ln Q_s`, for vocabularies beyond `f64` range.
pub fn derived_items_ln(ln_q_s: f64, gamma: u32) -> Result<DerivedItems> {
    if ln_q_s.is_nan() || ln_q_s == f64::INFINITY {
        return Err(Error::InvalidArgument(format!("ln Q_s must be finite, got {ln_q_s}")));
    }
    if ln_q_s == f64::NEG_INFINITY {
        return derived_items(0.0, gamma);
    }
    let mut ln_fact = 0.0;
    let mut terms = alloc::vec::Vec::with_capacity(gamma as usize + 1);
    for i in 0..=gamma {
        if i > 1 {
            ln_fact += libm::log(f64::from(i));
        }
        terms.push(f64::from(i) * ln_q_s - ln_fact);
    }
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| libm::exp(t - peak)).sum();
    Ok(DerivedItems {
        ln_total: peak + libm::log(sum),
        ln_dominant: *terms.last().expect("at least one term"),
        dominant_valid: gamma == 0 || ln_q_s - libm::log(f64::from(gamma)) >= libm::log(DOMINANT_TERM_RATIO),
    })
}

/// `ln((Gamma!)^(1/Gamma) * p^(y/Gamma))`.
pub fn ln_capacity_bound(params: &SystemParams, gamma: u32) -> Result<f64> {
    if gamma == 0 {
        return Err(Error::InvalidArgument("Gamma must be at least 1".into()));
    }
    let g = f64::from(gamma);
    Ok(ln_factorial(gamma) / g + params.y() as f64 / g * libm::log(f64::from(params.p())))
}

/// Vocabulary size at which `Gamma`-deep bindings just fill all `p^y` states.
pub fn capacity_bound(params: &SystemParams, gamma: u32) -> Result<f64> {
    Ok(libm::exp(ln_capacity_bound(params, gamma)?))
}

/// Capacity figures for one `(params, Gamma)` pair, taking the bound as the
/// safe vocabulary size.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityReport {
    /// `p^y`.
    pub max_capacity: BigUint,
    /// Binding depth allowed.
    pub gamma: u32,
    /// `ln` of the bound on the safe vocabulary.
    pub ln_bound: f64,
    /// Sparsity factor implied by the bound, `Q / Q_s`; infinite when it
    /// exceeds `f64`.
    pub sparsity: f64,
    /// `ln Q_s`.
    pub ln_safe_vocab: f64,
    /// Derived items for `Q_s` at depth `Gamma`.
    pub derived: DerivedItems,
}

impl CapacityReport {
    /// Builds the report for `params` at depth `gamma`.
    pub fn new(params: &SystemParams, gamma: u32) -> Result<Self> {
        let q = max_capacity(params);
        let ln_bound = ln_capacity_bound(params, gamma)?;
        let ln_q = ln_biguint(&q);
        // For tiny p^y the bound exceeds Q; the safe vocabulary is then Q itself.
        let ln_sparsity = (ln_q - ln_bound).max(0.0);
        let sparsity = libm::exp(ln_sparsity);
        let ln_safe_vocab = ln_q - ln_sparsity;
        let derived = derived_items_ln(ln_safe_vocab, gamma)?;
        Ok(Self {
            max_capacity: q,
            gamma,
            ln_bound,
            sparsity,
            ln_safe_vocab,
            derived,
        })
    }

    /// Bound on the safe vocabulary, `Q_s`.
    pub fn bound(&self) -> f64 {
        libm::exp(self.ln_bound)
    }

    /// Safe vocabulary `Q / s`.
    pub fn safe_vocab(&self) -> f64 {
        libm::exp(self.ln_safe_vocab)
    }
}
