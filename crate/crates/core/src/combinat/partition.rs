use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::factorial;
use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IntPartition(Vec<usize>);

impl IntPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::parse("partition", &format!("{parts:?}"), "zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::parse(
                "partition",
                &format!("{parts:?}"),
                "parts must be weakly decreasing",
            ));
        }
        Ok(IntPartition(parts))
    }

    /// Sorts an arbitrary multiset of positive parts; zeros are dropped.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn empty() -> Self {
        IntPartition(Vec::new())
    }

    /// `(1^n)`.
    pub fn ones(n: usize) -> Self {
        IntPartition(vec![1; n])
    }

    /// `(n)`, or the empty partition for n = 0.
    pub fn row(n: usize) -> Self {
        IntPartition(if n == 0 { vec![] } else { vec![n] })
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

    pub fn conjugate(&self) -> Self {
        let first = self.0.first().copied().unwrap_or(0);
        IntPartition((1..=first).map(|i| self.0.iter().filter(|&&p| p >= i).count()).collect())
    }

    /// Multiplicities `r_i`: how many parts equal `i`, indexed from 1.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut r = vec![0; self.weight() + 1];
        for &p in &self.0 {
            r[p] += 1;
        }
        r
    }

    /// `r_1! r_2! ...`, the factor relating `m̃_λ` to `m_λ`.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|&r| factorial(r))
            .product()
    }

    /// `λ_1! λ_2! ...`.
    pub fn part_factorial(&self) -> BigInt {
        self.0.iter().map(|&p| factorial(p)).product()
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for IntPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(IntPartition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::parse("partition", s, e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        IntPartition::new(parts).map_err(|_| Error::parse("partition", s, "not a partition"))
    }
}

impl TryFrom<String> for IntPartition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<IntPartition> for String {
    fn from(p: IntPartition) -> String {
        p.to_string()
    }
}

/// All partitions of `n`, lexicographically increasing on their part lists.
pub fn int_partitions(n: usize) -> Vec<IntPartition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
        if rest == 0 {
            out.push(IntPartition(cur.clone()));
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..9).map(|n| int_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn conjugate_and_statistics() {
        let lam: IntPartition = "3,1,1".parse().unwrap();
        assert_eq!(lam.conjugate().to_string(), "3,1,1");
        let mu: IntPartition = "2,1,1".parse().unwrap();
        assert_eq!(mu.conjugate().to_string(), "3,1");
        assert_eq!(mu.weight(), 4);
        assert_eq!(mu.len(), 3);
        assert_eq!(mu.multiplicity_factorial(), BigInt::from(2));
        assert_eq!(mu.part_factorial(), BigInt::from(2));
        for n in 0..8 {
            for p in int_partitions(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn parse_rejects_increasing() {
        assert!("1,2".parse::<IntPartition>().is_err());
        assert!("2,0".parse::<IntPartition>().is_err());
        assert_eq!("".parse::<IntPartition>().unwrap(), IntPartition::empty());
    }
}
