use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An ordered list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::parse("composition", &format!("{parts:?}"), "zero part"));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `set(α) = {α_1, α_1+α_2, ..., α_1+...+α_{k-1}}`.
    pub fn to_subset(&self) -> PositionSubset {
        let n = self.weight();
        let mut bits = 0u64;
        let mut acc = 0;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            bits |= 1 << acc;
        }
        PositionSubset { bits, ambient: n }
    }

    pub fn from_subset(set: &PositionSubset) -> Self {
        let mut parts = Vec::new();
        let mut last = 0;
        for e in set.elements() {
            parts.push(e - last);
            last = e;
        }
        if set.ambient > 0 {
            parts.push(set.ambient - last);
        }
        Composition(parts)
    }

    /// `α ≤ β`: α is finer than β, i.e. `set(β) ⊆ set(α)`.
    pub fn is_finer(&self, other: &Composition) -> Result<bool> {
        if self.weight() != other.weight() {
            return Err(Error::WeightMismatch(self.weight(), other.weight()));
        }
        let a = self.to_subset().bits;
        let b = other.to_subset().bits;
        Ok(b & !a == 0)
    }

    pub fn reversed(&self) -> Self {
        Composition(self.0.iter().rev().copied().collect())
    }

    pub fn sorted_partition(&self) -> crate::combinat::IntPartition {
        crate::combinat::IntPartition::from_multiset(self.0.clone())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse("composition", s, "expected (a|b|...)"))?;
        if inner.trim().is_empty() {
            return Ok(Composition(vec![]));
        }
        let parts = inner
            .split('|')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::parse("composition", s, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts).map_err(|_| Error::parse("composition", s, "zero part"))
    }
}

/// All compositions of `n`, ordered by their position subsets.
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition(vec![])];
    }
    (0..(1u64 << (n - 1)))
        .map(|mask| {
            Composition::from_subset(&PositionSubset {
                bits: mask << 1,
                ambient: n,
            })
        })
        .collect()
}

/// A subset `I ⊆ [n-1]` together with its ambient `n`. Bit `i` stands for element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PositionSubset {
    ambient: usize,
    bits: u64,
}

impl PositionSubset {
    pub fn new(elements: &[usize], ambient: usize) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e >= ambient {
                return Err(Error::OutOfRange {
                    element: e,
                    bound: ambient.saturating_sub(1),
                });
            }
            bits |= 1 << e;
        }
        Ok(PositionSubset { ambient, bits })
    }

    /// Builds from a raw bitmask (bit `i` = element `i`), validating the range.
    pub fn from_bits(bits: u64, ambient: usize) -> Result<Self> {
        let full = Self::full_bits(ambient);
        if bits & !full != 0 {
            let bad = (0..64).find(|i| (bits & !full) >> i & 1 == 1).unwrap_or(0);
            return Err(Error::OutOfRange {
                element: bad,
                bound: ambient.saturating_sub(1),
            });
        }
        Ok(PositionSubset { ambient, bits })
    }

    pub(crate) fn from_bits_unchecked(bits: u64, ambient: usize) -> Self {
        debug_assert_eq!(bits & !Self::full_bits(ambient), 0);
        PositionSubset { ambient, bits }
    }

    fn full_bits(ambient: usize) -> u64 {
        if ambient <= 1 {
            0
        } else {
            ((1u64 << ambient) - 1) & !1
        }
    }

    pub fn empty(ambient: usize) -> Self {
        PositionSubset { ambient, bits: 0 }
    }

    /// `[n-1]`.
    pub fn full(ambient: usize) -> Self {
        PositionSubset {
            ambient,
            bits: Self::full_bits(ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < 64 && self.bits >> e & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.ambient).filter(move |&i| self.bits >> i & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &PositionSubset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn complement(&self) -> Self {
        PositionSubset {
            ambient: self.ambient,
            bits: Self::full_bits(self.ambient) & !self.bits,
        }
    }

    /// `I^op = {n - i : i ∈ I}`.
    pub fn opposite(&self) -> Self {
        let mut bits = 0;
        for e in self.elements() {
            bits |= 1 << (self.ambient - e);
        }
        PositionSubset {
            ambient: self.ambient,
            bits,
        }
    }

    pub fn to_composition(&self) -> Composition {
        Composition::from_subset(self)
    }

    /// All subsets of `[n-1]` for the given ambient.
    pub fn all(ambient: usize) -> impl Iterator<Item = PositionSubset> {
        let count = if ambient <= 1 { 1u64 } else { 1u64 << (ambient - 1) };
        (0..count).map(move |m| PositionSubset {
            ambient,
            bits: m << 1,
        })
    }

    /// All supersets `J ⊇ self` inside `[n-1]`.
    pub fn supersets(&self) -> impl Iterator<Item = PositionSubset> + '_ {
        let free = self.complement().bits;
        // walk the submasks of `free`
        let mut sub = Some(free);
        std::iter::from_fn(move || {
            let s = sub?;
            sub = if s == 0 { None } else { Some((s - 1) & free) };
            Some(PositionSubset {
                ambient: self.ambient,
                bits: self.bits | s,
            })
        })
    }
}

impl fmt::Display for PositionSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}@n={}", elems.join(","), self.ambient)
    }
}

impl FromStr for PositionSubset {
    type Err = Error;

    /// Accepts `{2,3}@n=6`, or a composition such as `(2|1|3)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('(') {
            return Ok(t.parse::<Composition>()?.to_subset());
        }
        let (set, amb) = t
            .split_once("@n=")
            .ok_or_else(|| Error::parse("subset", s, "expected {..}@n=<ambient>"))?;
        let ambient = amb
            .trim()
            .parse::<usize>()
            .map_err(|e| Error::parse("subset", s, e.to_string()))?;
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::parse("subset", s, "expected braces"))?;
        let elems = inner
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::parse("subset", s, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        PositionSubset::new(&elems, ambient)
    }
}

impl TryFrom<String> for PositionSubset {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PositionSubset> for String {
    fn from(p: PositionSubset) -> String {
        p.to_string()
    }
}
