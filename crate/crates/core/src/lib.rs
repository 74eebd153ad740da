//! Semi-holographic hyperdimensional computing kernel.
//!
//! Semantic objects are *base items* (length-`y` vectors of residues mod `p`)
//! and *chains* (ordered concatenations of up to `d` base items). Superposition
//! concatenates chains; binding adds every item pair element-wise mod `p`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains no IO. It provides:
//!
//! - [`algebra`]: parameters, items, chains, superposition, binding, inversion,
//!   padding and pluggable chain compression.
//! - [`metric`]: circular distances and the de-noising reducers.
//! - [`memory`]: the cleanup memory ([`Codebook`]) and its queries.
//! - [`capacity`]: closed-form capacity figures and a Monte-Carlo ambiguity probe.
//! - [`copu`]: a cycle-accurate model of the cognitive processing unit with
//!   switching-activity counters and a transistor-count estimate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod algebra;
pub mod capacity;
pub mod copu;
mod error;
pub mod memory;
pub mod metric;
pub mod rng;

pub use algebra::{
    BaseItem, Chain, ChainCompressor, HandlerId, ModSumCompressor, OverflowPolicy, Residue,
    Superposition, SystemParams,
};
pub use error::{Error, Result};
pub use memory::{Codebook, QueryResult};
