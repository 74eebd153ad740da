use alloc::vec::Vec;

use rand::Rng;

use super::SystemParams;
use crate::{Error, Result};

/// One element of a base item, a residue in `[0, p-1]`.
pub type Residue = u32;

#[inline]
pub(crate) fn add_mod(a: Residue, b: Residue, p: u32) -> Residue {
    if p.is_power_of_two() {
        a.wrapping_add(b) & (p - 1)
    } else {
        ((u64::from(a) + u64::from(b)) % u64::from(p)) as Residue
    }
}

#[inline]
pub(crate) fn neg_mod(a: Residue, p: u32) -> Residue {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// A length-`y` vector of residues mod `p`; an element of `(Z/p)^y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseItem {
    modulus: u32,
    elems: Vec<Residue>,
}

impl BaseItem {
    /// Validates length and range against `params`.
    pub fn new(params: &SystemParams, elems: impl Into<Vec<Residue>>) -> Result<Self> {
        let elems = elems.into();
        if elems.len() != params.y() {
            return Err(Error::ItemLength {
                expected: params.y(),
                actual: elems.len(),
            });
        }
        if let Some(&bad) = elems.iter().find(|&&e| e >= params.p()) {
            return Err(Error::ResidueOutOfRange {
                value: u64::from(bad),
                modulus: params.p(),
            });
        }
        Ok(Self {
            modulus: params.p(),
            elems,
        })
    }

    /// The identity for binding.
    pub fn zero(params: &SystemParams) -> Self {
        Self {
            modulus: params.p(),
            elems: alloc::vec![0; params.y()],
        }
    }

    /// Modulus `p` the residues live in.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Element values in index order.
    pub fn elems(&self) -> &[Residue] {
        &self.elems
    }

    /// Number of elements, `y`.
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Always false for valid params (`y >= 1`).
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// True when every element is zero.
    pub fn is_zero(&self) -> bool {
        self.elems.iter().all(|&e| e == 0)
    }

    /// True when the item is valid under `params`.
    pub fn fits(&self, params: &SystemParams) -> bool {
        self.modulus == params.p() && self.elems.len() == params.y()
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.elems.len() != other.elems.len() {
            return Err(Error::ParamsMismatch);
        }
        Ok(())
    }

    /// Binds two base items: element-wise addition mod `p`.
    pub fn bind(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| add_mod(a, b, self.modulus)))
    }

    /// Element-wise subtraction mod `p`; equal to `self.bind(&other.inverse())`.
    pub fn unbind(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let p = self.modulus;
        Ok(self.zip_with(other, |a, b| add_mod(a, neg_mod(b, p), p)))
    }

    /// Element-wise `(p - e) mod p`.
    pub fn inverse(&self) -> Self {
        let p = self.modulus;
        Self {
            modulus: p,
            elems: self.elems.iter().map(|&e| neg_mod(e, p)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Residue, Residue) -> Residue) -> Self {
        Self {
            modulus: self.modulus,
            elems: self
                .elems
                .iter()
                .zip(&other.elems)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub(crate) fn from_raw(modulus: u32, elems: Vec<Residue>) -> Self {
        debug_assert!(elems.iter().all(|&e| e < modulus));
        Self { modulus, elems }
    }
}

/// Inverse of a base item under binding.
pub fn inverse(a: &BaseItem) -> BaseItem {
    a.inverse()
}

/// Draws every element independently and uniformly from `[0, p-1]`.
pub fn random_item<R: Rng + ?Sized>(params: &SystemParams, rng: &mut R) -> BaseItem {
    let p = params.p();
    BaseItem {
        modulus: p,
        elems: (0..params.y()).map(|_| rng.gen_range(0..p)).collect(),
    }
}
