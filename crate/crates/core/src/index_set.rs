use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported component count.
pub const MAX_COMPONENTS: usize = 63;

/// A set of 1-based component indices, stored as a bit mask.
///
/// Ordered by size first, then lexicographically by sorted indices, so
/// `{1,2} < {1,3} < {2,3} < {1,2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u64);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid index set {0:?}")]
pub struct IndexSetParseError(pub String);

impl IndexSet {
    pub fn empty() -> Self {
        Self(0)
    }

    /// `{1, ..., r}`.
    pub fn full(r: usize) -> Self {
        assert!(r <= MAX_COMPONENTS);
        Self(if r == 0 { 0 } else { u64::MAX >> (64 - r) })
    }

    pub fn singleton(i: usize) -> Self {
        Self::from_indices([i])
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut bits = 0u64;
        for i in iter {
            assert!((1..=MAX_COMPONENTS).contains(&i), "index {i} out of range");
            bits |= 1 << (i - 1);
        }
        Self(bits)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_COMPONENTS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        Self(self.0 | other.0)
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        Self(self.0 & !other.0)
    }

    pub fn insert(self, i: usize) -> IndexSet {
        self.union(Self::singleton(i))
    }

    pub fn remove(self, i: usize) -> IndexSet {
        self.difference(Self::singleton(i))
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (1..=64usize).filter(move |&i| bits & (1 << (i - 1)) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = IndexSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(IndexSet(cur))
        })
    }

    /// All subsets of `{1..r}` sorted by the set order.
    pub fn all_subsets(r: usize) -> Vec<IndexSet> {
        let mut v: Vec<_> = Self::full(r).subsets().collect();
        v.sort();
        v
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Comma-joined sorted indices, e.g. `1,3`.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for IndexSet {
    type Err = IndexSetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || IndexSetParseError(s.to_string());
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim().is_empty() {
            return Ok(IndexSet::empty());
        }
        let mut idx = Vec::new();
        for part in s.split(',') {
            let i: usize = part.trim().parse().map_err(|_| err())?;
            if !(1..=MAX_COMPONENTS).contains(&i) || idx.contains(&i) {
                return Err(err());
            }
            idx.push(i);
        }
        Ok(IndexSet::from_indices(idx))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
