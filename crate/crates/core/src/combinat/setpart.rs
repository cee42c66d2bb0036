use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::combinat::IntPartition;
use crate::error::{Error, Result};

/// A set partition of `{0, .., n-1}` stored as its restricted growth string:
/// `rgs[i]` is the index of the block containing `i`, blocks numbered by
/// their minimum element. Text encodings are 1-based (`12/3/4`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SetPartition {
    rgs: Vec<u8>,
}

impl SetPartition {
    /// Canonicalizes an arbitrary labelling: `i` and `j` share a block iff `labels[i] == labels[j]`.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i as u8,
                None => {
                    seen.push(l);
                    (seen.len() - 1) as u8
                }
            })
            .collect();
        SetPartition { rgs }
    }

    /// Blocks given 0-based; must be disjoint, nonempty and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::parse("set partition", &format!("{blocks:?}"), "empty block"));
            }
            for &e in block {
                if e >= n {
                    return Err(Error::OutOfRange { element: e + 1, bound: n });
                }
                if labels[e] != usize::MAX {
                    return Err(Error::parse(
                        "set partition",
                        &format!("{blocks:?}"),
                        format!("element {} repeated", e + 1),
                    ));
                }
                labels[e] = b;
            }
        }
        if let Some(missing) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::parse(
                "set partition",
                &format!("{blocks:?}"),
                format!("element {} not covered", missing + 1),
            ));
        }
        Ok(Self::from_labels(&labels))
    }

    /// `0̂`: all singletons.
    pub fn bottom(n: usize) -> Self {
        SetPartition {
            rgs: (0..n as u8).collect(),
        }
    }

    /// `1̂ = [n]`: a single block.
    pub fn top(n: usize) -> Self {
        SetPartition { rgs: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn num_blocks(&self) -> usize {
        self.rgs.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Blocks, 0-based, ordered by minimum element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize].push(i);
        }
        out
    }

    /// Bitmask of every block.
    pub fn block_masks(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.num_blocks()];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b as usize] |= 1 << i;
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.num_blocks()];
        for &b in &self.rgs {
            out[b as usize] += 1;
        }
        out
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.rgs[i] == self.rgs[j]
    }

    /// `|B_{π,i}|` for a 0-based element `i`.
    pub fn block_size_of(&self, i: usize) -> usize {
        let b = self.rgs[i];
        self.rgs.iter().filter(|&&x| x == b).count()
    }

    /// `λ(π)`.
    pub fn type_partition(&self) -> IntPartition {
        IntPartition::from_multiset(self.block_sizes())
    }

    /// `|π| = r_1! r_2! ...` for `λ(π) = (1^{r_1} 2^{r_2} ...)`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.type_partition().multiplicity_factorial()
    }

    /// `π! = ∏ |B|!`.
    pub fn block_factorial(&self) -> BigInt {
        self.block_sizes().into_iter().map(factorial).product()
    }

    fn check_ambient(&self, other: &SetPartition) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::AmbientMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    /// Refinement: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &SetPartition) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SetPartition) -> bool {
        let mut image = vec![u8::MAX; self.num_blocks()];
        for (a, b) in self.rgs.iter().zip(&other.rgs) {
            let slot = &mut image[*a as usize];
            if *slot == u8::MAX {
                *slot = *b;
            } else if *slot != *b {
                return false;
            }
        }
        true
    }

    pub fn meet(&self, other: &SetPartition) -> Result<SetPartition> {
        self.check_ambient(other)?;
        Ok(self.meet_unchecked(other))
    }

    pub(crate) fn meet_unchecked(&self, other: &SetPartition) -> SetPartition {
        let pairs: Vec<(u8, u8)> = self.rgs.iter().copied().zip(other.rgs.iter().copied()).collect();
        Self::from_labels(&pairs)
    }

    pub fn join(&self, other: &SetPartition) -> Result<SetPartition> {
        self.check_ambient(other)?;
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        for part in [self, other] {
            let mut first = vec![usize::MAX; part.num_blocks()];
            for (i, &b) in part.rgs.iter().enumerate() {
                let f = &mut first[b as usize];
                if *f == usize::MAX {
                    *f = i;
                } else {
                    let (ra, rb) = (find(&mut parent, *f), find(&mut parent, i));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let labels: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
        Ok(Self::from_labels(&labels))
    }

    /// Möbius function `μ(self, upper)` of the partition lattice, via the
    /// product `∏_B (-1)^{b_B - 1} (b_B - 1)!` over blocks `B` of `upper`,
    /// `b_B` counting the blocks of `self` inside `B`.
    pub fn mobius(&self, upper: &SetPartition) -> Result<BigInt> {
        if !self.leq(upper)? {
            return Err(Error::NotRefinement {
                lower: self.to_string(),
                upper: upper.to_string(),
            });
        }
        Ok(self.mobius_unchecked(upper))
    }

    pub(crate) fn mobius_unchecked(&self, upper: &SetPartition) -> BigInt {
        let mut inner = vec![0usize; upper.num_blocks()];
        let mut counted = vec![false; self.num_blocks()];
        for (a, b) in self.rgs.iter().zip(&upper.rgs) {
            if !counted[*a as usize] {
                counted[*a as usize] = true;
                inner[*b as usize] += 1;
            }
        }
        inner
            .into_iter()
            .map(|b| {
                let f = factorial(b - 1);
                if (b - 1) % 2 == 1 {
                    -f
                } else {
                    f
                }
            })
            .product()
    }

    /// `|μ(0̂, π)| = ∏_B (|B| - 1)!`.
    pub fn mobius_from_bottom_abs(&self) -> BigInt {
        self.block_sizes().into_iter().map(|s| factorial(s - 1)).product()
    }

    /// `π + (n+1)`: the new element joins the block of the last one.
    pub fn plus_next(&self) -> SetPartition {
        let mut rgs = self.rgs.clone();
        match rgs.last() {
            Some(&b) => rgs.push(b),
            None => rgs.push(0),
        }
        SetPartition { rgs }
    }

    /// `π / n+1`: the new element forms a singleton block.
    pub fn slash_next(&self) -> SetPartition {
        let mut rgs = self.rgs.clone();
        rgs.push(self.num_blocks() as u8);
        SetPartition { rgs }
    }

    /// Relabel elements: `i` goes to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> SetPartition {
        let mut labels = vec![0u8; self.n()];
        for (i, &b) in self.rgs.iter().enumerate() {
            labels[perm[i]] = b;
        }
        Self::from_labels(&labels)
    }

    /// Restriction to a contiguous range of elements, renumbered from 0.
    pub fn restrict_range(&self, range: std::ops::Range<usize>) -> SetPartition {
        Self::from_labels(&self.rgs[range])
    }

    /// Juxtaposition: `self` on the first elements, `other` shifted after it.
    pub fn concat(&self, other: &SetPartition) -> SetPartition {
        let k = self.num_blocks() as u8;
        let mut rgs = self.rgs.clone();
        rgs.extend(other.rgs.iter().map(|b| b + k));
        SetPartition { rgs }
    }

    pub fn is_bottom(&self) -> bool {
        self.num_blocks() == self.n()
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.n() >= 10;
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| (e + 1).to_string()).collect();
                items.join(if wide { "," } else { "" })
            })
            .collect();
        write!(f, "{}", blocks.join("/"))
    }
}

impl FromStr for SetPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "∅" {
            return Ok(SetPartition { rgs: vec![] });
        }
        let wide = t.contains(',');
        let mut blocks = Vec::new();
        for raw in t.split('/') {
            let raw = raw.trim();
            let items: Vec<usize> = if wide {
                raw.split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::parse("set partition", s, e.to_string()))
                    })
                    .collect::<Result<_>>()?
            } else {
                raw.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| Error::parse("set partition", s, "bad digit"))
                    })
                    .collect::<Result<_>>()?
            };
            if items.contains(&0) {
                return Err(Error::parse("set partition", s, "elements are 1-based"));
            }
            blocks.push(items.into_iter().map(|e| e - 1).collect::<Vec<_>>());
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(n, &blocks)
            .map_err(|e| Error::parse("set partition", s, e.to_string()))
    }
}

impl TryFrom<String> for SetPartition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SetPartition> for String {
    fn from(p: SetPartition) -> String {
        p.to_string()
    }
}

/// Iterator over `Π_n` in lexicographic order of restricted growth strings.
pub struct SetPartitions {
    rgs: Vec<u8>,
    max: Vec<u8>,
    done: bool,
}

pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        rgs: vec![0; n],
        max: vec![0; n],
        done: false,
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;
    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition {
            rgs: self.rgs.clone(),
        };
        // max[i] = largest label among rgs[0..i]
        let n = self.rgs.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.rgs[i] <= self.max[i] {
                self.rgs[i] += 1;
                let top = self.max[i].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.max[j] = top;
                }
                break;
            }
        }
        Some(out)
    }
}
