//! Input sets and bitmask subsets.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Largest cardinality for which subsets are enumerated (and solvers run).
pub const MAX_ENUM_N: usize = 20;

/// Widest input set a mask can address.
pub const MAX_SET_N: usize = 63;

const SUM_LIMIT: i128 = 1 << 62;

/// An ordered tuple of distinct integers `(x_1, ..., x_n)`.
///
/// Construction guarantees every subset sum fits in an `i64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InputSet {
    elements: Vec<i64>,
}

impl InputSet {
    pub fn new(elements: Vec<i64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyInput);
        }
        if elements.len() > MAX_SET_N {
            return Err(Error::Capacity {
                what: "input set size",
                limit: MAX_SET_N as u64,
                got: elements.len() as u64,
            });
        }
        let mut seen = HashSet::with_capacity(elements.len());
        for &x in &elements {
            if !seen.insert(x) {
                return Err(Error::DuplicateElement(x));
            }
        }
        let max_abs = elements
            .iter()
            .map(|x| i128::from(*x).abs())
            .max()
            .unwrap_or(0);
        if max_abs * elements.len() as i128 >= SUM_LIMIT {
            return Err(Error::Overflow);
        }
        Ok(Self { elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    /// `x_i` for the 1-based index `i`.
    pub fn element(&self, i: usize) -> i64 {
        self.elements[i - 1]
    }

    /// Mask with every element set.
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Sum of the elements selected by `mask`. The zero mask sums to 0.
    pub fn subset_sum(&self, mask: SubsetMask) -> i64 {
        debug_assert!(mask.fits(self.len()), "mask {mask} wider than n");
        mask.indices().map(|i| self.elements[i]).sum()
    }

    /// Whether `mask` selects a non-empty subset summing to zero.
    pub fn is_solution(&self, mask: SubsetMask) -> Result<bool> {
        if mask.is_empty() {
            return Err(Error::InvalidSubset(
                "the empty set is not a candidate".into(),
            ));
        }
        if !mask.fits(self.len()) {
            return Err(Error::InvalidSubset(format!(
                "{mask} selects beyond n = {}",
                self.len()
            )));
        }
        Ok(self.subset_sum(mask) == 0)
    }

    /// Elements selected by `mask`, in index order.
    pub fn pick(&self, mask: SubsetMask) -> Vec<i64> {
        mask.indices().map(|i| self.elements[i]).collect()
    }

    pub fn max_abs(&self) -> u64 {
        self.elements
            .iter()
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

impl FromStr for InputSet {
    type Err = Error;

    /// Parses a comma-separated integer list such as `1,-3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let elements = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements)
    }
}

impl fmt::Display for InputSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.elements.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl Serialize for InputSet {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for InputSet {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<i64>::deserialize(de)?;
        InputSet::new(elements).map_err(serde::de::Error::custom)
    }
}

/// A subset of an input set: bit `i - 1` is set iff `x_i` is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        SubsetMask(bits)
    }

    /// `{x_i}` for the 1-based index `i`.
    pub const fn singleton(i: usize) -> Self {
        SubsetMask(1 << (i - 1))
    }

    /// All of `x_1..x_n`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1 << n) - 1)
        }
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub const fn is_disjoint(self, other: SubsetMask) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn contains_index(self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    /// True when no bit above `n` is set.
    pub const fn fits(self, n: usize) -> bool {
        n >= 64 || self.0 >> n == 0
    }

    /// 0-based positions of the set bits, ascending.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m:{:x}", self.0)
    }
}

impl FromStr for SubsetMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let hex = s
            .strip_prefix("m:")
            .ok_or_else(|| Error::Parse(format!("mask must start with \"m:\": {s:?}")))?;
        if hex.is_empty() || hex.bytes().any(|b| b.is_ascii_uppercase()) {
            return Err(Error::Parse(format!("bad mask {s:?}")));
        }
        u64::from_str_radix(hex, 16)
            .map(SubsetMask)
            .map_err(|_| Error::Parse(format!("bad mask {s:?}")))
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every non-empty mask over `n` elements in ascending numeric order.
///
/// This is the canonical enumeration order used throughout the crate.
pub fn enumerate_masks(n: usize) -> Result<impl Iterator<Item = SubsetMask>> {
    check_enum_n(n)?;
    Ok((1..=SubsetMask::full(n).bits()).map(SubsetMask))
}

pub(crate) fn check_enum_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > MAX_ENUM_N {
        return Err(Error::Capacity {
            what: "subset enumeration size",
            limit: MAX_ENUM_N as u64,
            got: n as u64,
        });
    }
    Ok(())
}
