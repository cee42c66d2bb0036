use std::fmt;

use crate::error::{Error, Result};
use crate::structures::{check_permutation, check_vertex, Digraph, Graph, MAX_VERTICES};

/// A finite poset on `0..n`; `above[i]` is the set of `j` with `i <_P j`.
/// Every constructor verifies irreflexivity, antisymmetry and transitivity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poset {
    n: usize,
    above: Vec<u32>,
}

impl Poset {
    /// From the full strict relation, 0-based pairs `(a, b)` meaning `a < b`.
    pub fn new(n: usize, strict: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange {
                element: n,
                bound: MAX_VERTICES,
            });
        }
        let mut above = vec![0u32; n];
        for &(a, b) in strict {
            check_vertex(a, n)?;
            check_vertex(b, n)?;
            above[a] |= 1 << b;
        }
        Self::from_above(n, above)
    }

    /// Takes the transitive closure of the given relation first.
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let base = Self::new_unverified(n, covers)?;
        let mut above = base.above;
        loop {
            let mut changed = false;
            for a in 0..n {
                let mut reach = above[a];
                let mut m = above[a];
                while m != 0 {
                    let b = m.trailing_zeros() as usize;
                    m &= m - 1;
                    reach |= above[b];
                }
                if reach != above[a] {
                    above[a] = reach;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Self::from_above(n, above)
    }

    fn new_unverified(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut above = vec![0u32; n];
        for &(a, b) in pairs {
            check_vertex(a, n)?;
            check_vertex(b, n)?;
            above[a] |= 1 << b;
        }
        Ok(Poset { n, above })
    }

    pub(crate) fn from_above(n: usize, above: Vec<u32>) -> Result<Self> {
        for a in 0..n {
            if above[a] >> a & 1 == 1 {
                return Err(Error::NotPoset(format!("{} < {} (reflexive pair)", a + 1, a + 1)));
            }
            let mut m = above[a];
            while m != 0 {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                if above[b] >> a & 1 == 1 {
                    return Err(Error::NotPoset(format!(
                        "{} < {} and {} < {}",
                        a + 1,
                        b + 1,
                        b + 1,
                        a + 1
                    )));
                }
                if above[b] & !above[a] != 0 {
                    let c = (above[b] & !above[a]).trailing_zeros() as usize;
                    return Err(Error::NotPoset(format!(
                        "{} < {} < {} but not {} < {}",
                        a + 1,
                        b + 1,
                        c + 1,
                        a + 1,
                        c + 1
                    )));
                }
            }
        }
        Ok(Poset { n, above })
    }

    pub(crate) fn from_above_unchecked(n: usize, above: Vec<u32>) -> Self {
        Poset { n, above }
    }

    /// From a digraph read as the strict relation.
    pub fn from_digraph(x: &Digraph) -> Result<Self> {
        Self::from_above(x.n(), (0..x.n()).map(|v| x.out_neighbors(v)).collect())
    }

    pub fn chain(n: usize) -> Self {
        Poset::from_digraph(&Digraph::transitive_tournament(n)).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Poset {
            n,
            above: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn above(&self, a: usize) -> u32 {
        self.above[a]
    }

    pub fn below(&self, a: usize) -> u32 {
        (0..self.n)
            .filter(|&b| self.above[b] >> a & 1 == 1)
            .fold(0, |acc, b| acc | 1 << b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.above[a] >> b & 1 == 1
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// All strict pairs in lexicographic order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if self.lt(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_covering(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && self.above[a] & self.below(b) == 0
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.relations()
            .into_iter()
            .filter(|&(a, b)| self.is_covering(a, b))
            .collect()
    }

    /// `inc(P)`: edges between incomparable elements.
    pub fn inc(&self) -> Graph {
        let mut edges = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !self.comparable(a, b) {
                    edges.push((a, b));
                }
            }
        }
        Graph::new(self.n, &edges).expect("valid vertices")
    }

    /// `D_P`: arcs `(a, b)` for `a <_P b`.
    pub fn digraph(&self) -> Digraph {
        Digraph::new(self.n, &self.relations()).expect("valid vertices")
    }

    /// `P*`.
    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            above: (0..self.n).map(|a| self.below(a)).collect(),
        }
    }

    /// `P ⊕ Q`: `Q` placed above `P`, its elements shifted by `|P|`.
    pub fn ordinal_sum(&self, other: &Poset) -> Result<Poset> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange {
                element: n,
                bound: MAX_VERTICES,
            });
        }
        let top: u32 = ((1u64 << n) - (1u64 << self.n)) as u32;
        let mut above: Vec<u32> = self.above.iter().map(|a| a | top).collect();
        above.extend(other.above.iter().map(|a| a << self.n));
        Ok(Poset { n, above })
    }

    /// Disjoint union, `other` shifted by `|P|`.
    pub fn disjoint_sum(&self, other: &Poset) -> Result<Poset> {
        let mut pairs = self.relations();
        pairs.extend(other.relations().into_iter().map(|(a, b)| (a + self.n, b + self.n)));
        Poset::new(self.n + other.n, &pairs)
    }

    /// `P ∖ e` for a covering pair.
    pub fn delete_covering(&self, a: usize, b: usize) -> Result<Poset> {
        if !self.is_covering(a, b) {
            return Err(Error::pre(format!("({},{}) is not a covering pair", a + 1, b + 1)));
        }
        let mut above = self.above.clone();
        above[a] &= !(1 << b);
        Self::from_above(self.n, above)
    }

    /// `P / e` for a covering pair: the poset whose digraph is `D_P / e`.
    pub fn contract_covering(&self, a: usize, b: usize) -> Result<Poset> {
        if !self.is_covering(a, b) {
            return Err(Error::pre(format!("({},{}) is not a covering pair", a + 1, b + 1)));
        }
        Poset::from_digraph(&self.digraph().contract_arc(a, b)?)
    }

    /// Induced subposet on `elements`, renumbered in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Result<Poset> {
        let x = self.digraph().restrict(elements)?;
        Poset::from_digraph(&x)
    }

    /// Element `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Poset> {
        check_permutation(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Poset {
        let mut above = vec![0u32; self.n];
        for (a, b) in self.relations() {
            above[perm[a]] |= 1 << perm[b];
        }
        Poset { n: self.n, above }
    }

    /// `a <_P b ⟹ a < b`.
    pub fn is_naturally_labeled(&self) -> bool {
        (0..self.n).all(|a| self.above[a] & ((1u32 << a) | ((1u32 << a) - 1)) == 0)
    }

    /// Elements below everything outside a proper nonempty down-set witness an ordinal sum.
    pub fn is_irreducible(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let full: u32 = ((1u64 << self.n) - 1) as u32;
        for a_set in 1..full {
            let rest = full & !a_set;
            let mut m = a_set;
            let mut split = true;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                if self.above[a] & rest != rest {
                    split = false;
                    break;
                }
            }
            if split {
                return false;
            }
        }
        true
    }

    /// Linear extensions as listings (`σ_j ≤ σ_i` never holds for `i < j`).
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_linear_extension(|l| out.push(l.to_vec()));
        out
    }

    pub(crate) fn for_each_linear_extension(&self, mut visit: impl FnMut(&[usize])) {
        let below: Vec<u32> = (0..self.n).map(|a| self.below(a)).collect();
        fn rec(n: usize, below: &[u32], placed: u32, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
            if cur.len() == n {
                visit(cur);
                return;
            }
            for v in 0..n {
                if placed >> v & 1 == 0 && below[v] & !placed == 0 {
                    cur.push(v);
                    rec(n, below, placed | 1 << v, cur, visit);
                    cur.pop();
                }
            }
        }
        rec(self.n, &below, 0, &mut Vec::with_capacity(self.n), &mut visit);
    }

    pub fn count_linear_extensions(&self) -> u64 {
        let below: Vec<u32> = (0..self.n).map(|a| self.below(a)).collect();
        let full = (1usize << self.n) - 1;
        let mut dp = vec![0u64; full + 1];
        dp[0] = 1;
        for mask in 0..=full {
            if dp[mask] == 0 {
                continue;
            }
            for v in 0..self.n {
                if mask >> v & 1 == 0 && below[v] as usize & !mask == 0 {
                    dp[mask | 1 << v] += dp[mask];
                }
            }
        }
        dp[full]
    }

    /// Listings with `σ_{i+1} ≰_P σ_i` for every `i`.
    pub fn count_quasi_linear_extensions(&self) -> u64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let full = (1usize << n) - 1;
        let mut dp = vec![0u64; (full + 1) * n];
        for v in 0..n {
            dp[(1 << v) * n + v] = 1;
        }
        for mask in 1..=full {
            for last in 0..n {
                let c = dp[mask * n + last];
                if c == 0 {
                    continue;
                }
                for w in 0..n {
                    if mask >> w & 1 == 0 && !self.lt(w, last) {
                        dp[(mask | 1 << w) * n + w] += c;
                    }
                }
            }
        }
        (0..n).map(|v| dp[full * n + v]).sum()
    }

    /// `i(P)`: size of a largest antichain.
    pub fn incomparability_number(&self) -> usize {
        self.inc().clique_number()
    }

    /// `c(P)`: size of a longest chain.
    pub fn chain_number(&self) -> usize {
        let mut order = Vec::new();
        self.for_each_linear_extension(|l| {
            if order.is_empty() {
                order = l.to_vec();
            }
        });
        let mut best = vec![1usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            for &u in &order[..i] {
                if self.lt(u, v) {
                    best[v] = best[v].max(best[u] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// No 3-chain together with an element incomparable to all of it.
    pub fn is_free_3_1(&self) -> bool {
        let n = self.n;
        for a in 0..n {
            for b in (0..n).filter(|&b| self.lt(a, b)) {
                for c in (0..n).filter(|&c| self.lt(b, c)) {
                    if (0..n).any(|d| ![a, b, c].iter().any(|&x| self.comparable(x, d))) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No two 2-chains with every cross pair incomparable.
    pub fn is_free_2_2(&self) -> bool {
        let rel = self.relations();
        for &(a, b) in &rel {
            for &(c, d) in &rel {
                if [a, b].iter().all(|&x| !self.comparable(x, c) && !self.comparable(x, d)) {
                    return false;
                }
            }
        }
        true
    }

    /// Bit `k` records the `k`-th pair `(a < b)` of labels in lexicographic order.
    /// Faithful only for naturally labeled posets.
    pub fn natural_code(&self) -> u64 {
        let mut code = 0u64;
        let mut k = 0;
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.lt(a, b) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    pub(crate) fn from_natural_code(n: usize, code: u64) -> Poset {
        let mut above = vec![0u32; n];
        let mut k = 0;
        for (a, row) in above.iter_mut().enumerate() {
            for b in a + 1..n {
                if code >> k & 1 == 1 {
                    *row |= 1 << b;
                }
                k += 1;
            }
        }
        Poset { n, above }
    }

    /// Smallest natural code over the relabelings given by linear extensions.
    pub fn canonical_code(&self) -> Result<u64> {
        if self.n > 11 {
            return Err(Error::pre("canonical codes are limited to 11 elements"));
        }
        let mut best = u64::MAX;
        let mut perm = vec![0usize; self.n];
        let relations = self.relations();
        self.for_each_linear_extension(|l| {
            for (pos, &v) in l.iter().enumerate() {
                perm[v] = pos;
            }
            let mut code = 0u64;
            for &(a, b) in &relations {
                let (x, y) = (perm[a], perm[b]);
                let k = x * (2 * self.n - x - 1) / 2 + (y - x - 1);
                code |= 1 << k;
            }
            best = best.min(code);
        });
        Ok(if self.n == 0 { 0 } else { best })
    }

    /// The isomorphic, naturally labeled poset with the smallest code.
    pub fn canonical_form(&self) -> Result<Poset> {
        Ok(Poset::from_natural_code(self.n, self.canonical_code()?))
    }

    pub fn is_isomorphic(&self, other: &Poset) -> Result<bool> {
        Ok(self.n == other.n && self.canonical_code()? == other.canonical_code()?)
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .iter()
            .map(|(a, b)| format!("{}<{}", a + 1, b + 1))
            .collect();
        write!(f, "P[n={}; {}]", self.n, covers.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vee() -> Poset {
        Poset::new(3, &[(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn verification_on_construction() {
        assert!(Poset::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(Poset::new(3, &[(0, 1), (1, 2)]).is_err());
        assert!(Poset::new(1, &[(0, 0)]).is_err());
        let c = Poset::from_covers(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(c, Poset::chain(3));
        assert!(Poset::from_covers(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn inc_and_digraph() {
        let c2 = Poset::chain(2);
        assert_eq!(c2.inc(), Graph::empty(2));
        assert_eq!(c2.digraph().arcs(), vec![(0, 1)]);
        assert_eq!(Poset::antichain(3).inc(), Graph::complete(3));
        assert_eq!(vee().inc().edges(), vec![(0, 1)]);
        assert!(vee().digraph().is_acyclic());
    }

    #[test]
    fn ordinal_sum_and_dual() {
        let one = Poset::chain(1);
        assert_eq!(one.ordinal_sum(&one).unwrap(), Poset::chain(2));
        assert_eq!(vee().dual().digraph(), vee().digraph().opposite());
        let v = Poset::antichain(2).ordinal_sum(&Poset::chain(1)).unwrap();
        assert_eq!(v, vee());
    }

    #[test]
    fn covering_operations() {
        let c3 = Poset::chain(3);
        let d = c3.delete_covering(0, 1).unwrap();
        assert_eq!(d.relations(), vec![(0, 2), (1, 2)]);
        assert!(c3.delete_covering(0, 2).is_err());
        let k = c3.contract_covering(1, 2).unwrap();
        assert_eq!(k, Poset::chain(2));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(Poset::antichain(3).count_linear_extensions(), 6);
        assert_eq!(Poset::antichain(3).count_quasi_linear_extensions(), 6);
        assert_eq!(Poset::chain(4).count_linear_extensions(), 1);
        assert_eq!(Poset::chain(4).count_quasi_linear_extensions(), 1);
        assert_eq!(vee().count_linear_extensions(), 2);
        // 1,3,2 / 2,3,1 / 3,x,y all step down from 3
        assert_eq!(vee().count_quasi_linear_extensions(), 2);
        let n_shape = Poset::new(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!(n_shape.count_quasi_linear_extensions() % 2, 0);
        assert_eq!(vee().linear_extensions(), vec![vec![0, 1, 2], vec![1, 0, 2]]);
    }

    #[test]
    fn irreducibility() {
        assert!(!Poset::chain(2).is_irreducible());
        assert!(!vee().is_irreducible());
        assert!(Poset::antichain(2).is_irreducible());
        assert!(Poset::chain(1).is_irreducible());
        let n_shape = Poset::new(4, &[(0, 2), (1, 2), (1, 3)]).unwrap();
        assert!(n_shape.is_irreducible());
    }

    #[test]
    fn statistics() {
        assert_eq!(Poset::chain(4).incomparability_number(), 1);
        assert_eq!(Poset::chain(4).chain_number(), 4);
        assert_eq!(Poset::antichain(4).incomparability_number(), 4);
        assert_eq!(Poset::antichain(4).chain_number(), 1);
    }

    #[test]
    fn forbidden_patterns() {
        let three_one = Poset::chain(3).disjoint_sum(&Poset::chain(1)).unwrap();
        assert!(!three_one.is_free_3_1());
        assert!(three_one.is_free_2_2());
        let two_two = Poset::chain(2).disjoint_sum(&Poset::chain(2)).unwrap();
        assert!(!two_two.is_free_2_2());
        assert!(two_two.is_free_3_1());
    }

    #[test]
    fn canonical_codes() {
        let a = Poset::new(3, &[(0, 2), (1, 2)]).unwrap();
        let b = Poset::new(3, &[(2, 0), (1, 0)]).unwrap();
        let c = Poset::new(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!a.is_isomorphic(&c).unwrap());
        assert!(a.canonical_form().unwrap().is_naturally_labeled());
    }
}
