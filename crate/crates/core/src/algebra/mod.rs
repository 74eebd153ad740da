//! Semantic objects and the two combining operations.
//!
//! Superposition is concatenation of chains; binding is the ordered tensor of
//! item pairs, each pair combined by element-wise addition mod `p`:
//!
//! ```text
//! (a1, .., ar) * (b1, .., bs) = (a1+b1, a2+b1, .., ar+b1, a1+b2, .., ar+bs)
//! ```

mod chain;
mod compress;
mod item;
mod params;

pub use chain::{bind, bind_inverse, pad_chain, superpose, superpose_with, Chain, HandlerId, OverflowPolicy, Superposition};
pub use compress::{compress_chain, ChainCompressor, CompressorRegistry, ModSumCompressor};
pub use item::{inverse, random_item, BaseItem, Residue};
pub use params::{new_params, SystemParams};
