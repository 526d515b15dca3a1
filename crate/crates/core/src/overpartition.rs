//! Canonical overpartitions and their elementary statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::part::{ExtPart, Part};

/// Parts stored weakly decreasing under the part order, with at most one
/// overlined part of each size.
///
/// Index-based accessors are 0-based; [`Band`](crate::bands::Band) carries
/// 1-based start indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawOverpartition")]
pub struct Overpartition {
    parts: Vec<Part>,
}

#[derive(Deserialize)]
struct RawOverpartition {
    parts: Vec<Part>,
}

impl TryFrom<RawOverpartition> for Overpartition {
    type Error = Error;

    fn try_from(raw: RawOverpartition) -> Result<Self> {
        Overpartition::from_sorted(raw.parts)
    }
}

/// Weight, length and the number of parts not exceeding `eta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measures {
    pub weight: u64,
    pub length: usize,
    pub f_le_eta: usize,
}

impl Overpartition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Accepts parts in any order and canonicalizes them.
    pub fn from_parts(mut parts: Vec<Part>) -> Result<Self> {
        parts.sort_by(|a, b| b.cmp(a));
        Self::from_sorted(parts)
    }

    /// Accepts parts that are already weakly decreasing.
    pub fn from_sorted(parts: Vec<Part>) -> Result<Self> {
        for p in &parts {
            if p.size() == 0 {
                return Err(Error::ZeroPart);
            }
        }
        for w in parts.windows(2) {
            if w[1] > w[0] {
                return Err(Error::OrderViolation {
                    prev: w[0].to_string(),
                    next: w[1].to_string(),
                });
            }
            if w[0] == w[1] && w[0].is_overlined() {
                return Err(Error::DuplicateOverline(w[0].size()));
            }
        }
        Ok(Overpartition { parts })
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<Part>) -> Self {
        debug_assert!(parts
            .windows(2)
            .all(|w| w[0] > w[1] || (w[0] == w[1] && !w[0].is_overlined())));
        Overpartition { parts }
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|p| p.size()).sum()
    }

    pub fn contains(&self, part: Part) -> bool {
        self.parts.binary_search_by(|q| part.cmp(q)).is_ok()
    }

    /// Number of parts `p <= eta` (non-overlined `eta`) in the part order.
    pub fn f_le(&self, eta: u64) -> usize {
        let bound = Part::plain(eta);
        self.parts.iter().filter(|&&p| p <= bound).count()
    }

    pub fn measures(&self, eta: u64) -> Measures {
        Measures {
            weight: self.weight(),
            length: self.len(),
            f_le_eta: self.f_le(eta),
        }
    }

    /// Overlined parts `p <= x` whose size is not divisible by `eta`.
    pub fn count_v(&self, x: Part, eta: u64) -> usize {
        self.parts
            .iter()
            .filter(|&&p| p.is_overlined() && p <= x && !p.divisible_by(eta))
            .count()
    }

    /// Overlined parts `p >= x` whose size is divisible by `eta`.
    pub fn count_o(&self, x: Part, eta: u64) -> usize {
        self.parts
            .iter()
            .filter(|&&p| p.is_overlined() && p >= x && p.divisible_by(eta))
            .count()
    }

    pub fn overlined_count(&self) -> usize {
        self.parts.iter().filter(|p| p.is_overlined()).count()
    }

    /// `s(pi)`: the smallest overlined part divisible by `eta`.
    pub fn smallest_overlined_multiple(&self, eta: u64) -> ExtPart {
        self.parts
            .iter()
            .rev()
            .find(|p| p.is_overlined() && p.divisible_by(eta))
            .map_or(ExtPart::Infinity, |&p| ExtPart::Finite(p))
    }

    /// Inserts at the canonical position.
    pub fn insert(&self, part: Part) -> Result<Self> {
        if part.size() == 0 {
            return Err(Error::ZeroPart);
        }
        if part.is_overlined() && self.contains(part) {
            return Err(Error::DuplicateOverline(part.size()));
        }
        let pos = self.parts.partition_point(|&q| q > part);
        let mut parts = self.parts.clone();
        parts.insert(pos, part);
        Ok(Overpartition { parts })
    }

    /// Removes one copy of `part`.
    pub fn remove(&self, part: Part) -> Result<Self> {
        let pos = self
            .parts
            .iter()
            .position(|&q| q == part)
            .ok_or(Error::MissingPart(part))?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Ok(Overpartition { parts })
    }

    /// Multiset union, or `None` if the result would repeat an overlined size.
    pub fn merge(&self, other: &Overpartition) -> Option<Self> {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Overpartition::from_parts(parts).ok()
    }

    /// Drops all overlines, giving the underlying ordinary partition.
    pub fn erase_overlines(&self) -> crate::Partition {
        crate::Partition::from_sorted_unchecked(self.parts.iter().map(|p| p.size()).collect())
    }
}

pub fn parse_overpartition(text: &str) -> Result<Overpartition> {
    text.parse()
}

impl FromStr for Overpartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Overpartition::empty());
        }
        let parts = s
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Part>>>()?;
        Overpartition::from_sorted(parts)
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}
