use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::item::add_mod;
use super::{BaseItem, Chain};
use crate::{Error, Result};

/// Collapses a chain into a single base item.
pub trait ChainCompressor: Send + Sync {
    /// Registry key.
    fn name(&self) -> &str;

    /// Compresses a non-empty chain.
    fn compress(&self, chain: &Chain) -> Result<BaseItem>;
}

/// Element-wise mod-`p` sum of every item in the chain.
#[derive(Debug, Clone, Copy, Default)]
pub struct ModSumCompressor;

impl ChainCompressor for ModSumCompressor {
    fn name(&self) -> &str {
        "mod-sum"
    }

    fn compress(&self, chain: &Chain) -> Result<BaseItem> {
        let (first, rest) = chain
            .items()
            .split_first()
            .ok_or(Error::EmptyInput("chain compression"))?;
        let p = first.modulus();
        let mut acc = first.elems().to_vec();
        for item in rest {
            for (a, &e) in acc.iter_mut().zip(item.elems()) {
                *a = add_mod(*a, e, p);
            }
        }
        Ok(BaseItem::from_raw(p, acc))
    }
}

/// Compresses with the reference [`ModSumCompressor`].
pub fn compress_chain(c: &Chain) -> Result<BaseItem> {
    ModSumCompressor.compress(c)
}

/// Named compressors, looked up by [`ChainCompressor::name`].
pub struct CompressorRegistry {
    entries: Vec<Box<dyn ChainCompressor>>,
}

impl Default for CompressorRegistry {
    fn default() -> Self {
        Self {
            entries: alloc::vec![Box::new(ModSumCompressor) as Box<dyn ChainCompressor>],
        }
    }
}

impl CompressorRegistry {
    /// Adds a compressor; replaces one already registered under the same name.
    pub fn register(&mut self, compressor: Box<dyn ChainCompressor>) {
        self.entries.retain(|c| c.name() != compressor.name());
        self.entries.push(compressor);
    }

    /// Looks a compressor up by name.
    pub fn get(&self, name: &str) -> Option<&dyn ChainCompressor> {
        self.entries.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    /// Registered names in registration order.
    pub fn names(&self) -> Vec<String> {
        self.entries.iter().map(|c| c.name().to_string()).collect()
    }

    /// Compresses with the named compressor.
    pub fn compress(&self, name: &str, chain: &Chain) -> Result<BaseItem> {
        self.get(name)
            .ok_or_else(|| Error::InvalidArgument(alloc::format!("no compressor named '{name}'")))?
            .compress(chain)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SystemParams;

    fn chain(items: &[[u32; 2]]) -> Chain {
        let p = SystemParams::new(4, 2, 4).unwrap();
        Chain::new(p, items.iter().map(|v| BaseItem::new(&p, *v).unwrap()).collect()).unwrap()
    }

    #[test]
    fn mod_sum_examples() {
        assert_eq!(compress_chain(&chain(&[[1, 2], [3, 0]])).unwrap().elems(), &[0, 2]);
        assert_eq!(compress_chain(&chain(&[[3, 1]])).unwrap().elems(), &[3, 1]);
        let a = chain(&[[1, 3]]).items()[0].clone();
        let c = chain(&[[1, 3], [3, 1]]);
        assert_eq!(c.items()[1], a.inverse());
        assert!(compress_chain(&c).unwrap().is_zero());
        assert!(compress_chain(&chain(&[])).is_err());
    }

    struct First;
    impl ChainCompressor for First {
        fn name(&self) -> &str {
            "first"
        }
        fn compress(&self, chain: &Chain) -> Result<BaseItem> {
            chain.items().first().cloned().ok_or(Error::EmptyInput("first"))
        }
    }

    #[test]
    fn registry_plug_point() {
        let mut reg = CompressorRegistry::default();
        reg.register(Box::new(First));
        assert_eq!(reg.names(), ["mod-sum", "first"]);
        let c = chain(&[[1, 2], [3, 0]]);
        assert_eq!(reg.compress("first", &c).unwrap().elems(), &[1, 2]);
        assert_eq!(reg.compress("mod-sum", &c).unwrap().elems(), &[0, 2]);
        assert!(reg.compress("nope", &c).is_err());
    }
}
