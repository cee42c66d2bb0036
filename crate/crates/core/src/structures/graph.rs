use std::collections::BTreeMap;
use std::fmt;

use crate::combinat::{for_each_permutation, IntPartition, SetPartition};
use crate::error::{Error, Result};
use crate::structures::{check_permutation, check_vertex, UnionFind, MAX_CANONICAL, MAX_VERTICES};

/// A simple undirected graph; `adj[v]` is the neighbourhood of `v` as a bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

/// One face of the broken-cycle complex together with its component type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrokenCycleFace {
    pub edges: Vec<(usize, usize)>,
    pub lambda: IntPartition,
}

impl Graph {
    /// Edges are 0-based unordered pairs; duplicates are merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange {
                element: n,
                bound: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            if u == v {
                return Err(Error::parse("graph", &format!("{{{},{}}}", u + 1, v + 1), "self-pair"));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let full = if n == 0 { 0 } else { (u64::MAX >> (64 - n)) as u32 };
        Graph {
            n,
            adj: (0..n).map(|v| full & !(1 << v)).collect(),
        }
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((0, n - 1));
        }
        Graph::new(n, &edges).expect("valid cycle")
    }

    /// `K_{λ_1, λ_2, ...}` with parts on consecutive vertices.
    pub fn complete_multipartite(lambda: &IntPartition) -> Self {
        let n = lambda.weight();
        let mut part = Vec::with_capacity(n);
        for (i, &p) in lambda.parts().iter().enumerate() {
            part.extend(std::iter::repeat_n(i, p));
        }
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if part[u] != part[v] {
                    g.adj[u] |= 1 << v;
                    g.adj[v] |= 1 << u;
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// `G ∪ e`.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::new(self.n, &edges)
    }

    /// `G ∖ e`; the edge must be present.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::pre(format!("{{{},{}}} is not an edge", u + 1, v + 1)));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1 << v);
        g.adj[v] &= !(1 << u);
        Ok(g)
    }

    /// `G / e`: the endpoints merge into the smaller label, later labels shift down by one,
    /// and parallel edges collapse.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return Err(Error::pre(format!("{{{},{}}} is not an edge", u + 1, v + 1)));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let new = |w: usize| if w > gone { w - 1 } else if w == gone { keep } else { w };
        let mut edges = Vec::new();
        for (a, b) in self.edges() {
            let (x, y) = (new(a), new(b));
            if x != y {
                edges.push((x, y));
            }
        }
        Graph::new(self.n - 1, &edges)
    }

    pub fn complement(&self) -> Graph {
        let full = Graph::complete(self.n);
        Graph {
            n: self.n,
            adj: (0..self.n).map(|v| full.adj[v] & !self.adj[v]).collect(),
        }
    }

    /// Induced subgraph on `vertices` (sorted), renumbered in that order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            check_vertex(v, self.n)?;
        }
        let mut edges = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(vertices.len(), &edges)
    }

    /// Vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        check_permutation(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            let (a, b) = (perm[u], perm[v]);
            g.adj[a] |= 1 << b;
            g.adj[b] |= 1 << a;
        }
        g
    }

    /// Bit `k` of the code records the `k`-th pair `(u < v)` in lexicographic order.
    pub fn encode(&self) -> u64 {
        let mut code = 0u64;
        let mut k = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    code |= 1 << k;
                }
                k += 1;
            }
        }
        code
    }

    /// The relabeling with the smallest code.
    pub fn canonical_form(&self) -> Result<Graph> {
        if self.n > MAX_CANONICAL {
            return Err(Error::pre(format!(
                "canonical forms are brute force and limited to {MAX_CANONICAL} vertices"
            )));
        }
        let mut best: Option<(u64, Vec<usize>)> = None;
        for_each_permutation(self.n, |perm| {
            let code = self.relabel_unchecked(perm).encode();
            if best.as_ref().is_none_or(|(b, _)| code < *b) {
                best = Some((code, perm.to_vec()));
            }
        });
        let perm = best.map(|(_, p)| p).unwrap_or_default();
        Ok(self.relabel_unchecked(&perm))
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        Ok(self.n == other.n
            && self.num_edges() == other.num_edges()
            && self.canonical_form()? == other.canonical_form()?)
    }

    pub fn is_stable(&self, mask: u32) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if self.adj[v] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    pub fn is_clique(&self, mask: u32) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if (self.adj[v] | 1 << v) & mask != mask {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    /// All set partitions of the vertex set whose blocks are stable, in RGS order.
    pub fn stable_partitions(&self) -> Vec<SetPartition> {
        fn rec(g: &Graph, v: usize, blocks: &mut Vec<u32>, rgs: &mut Vec<u8>, out: &mut Vec<SetPartition>) {
            if v == g.n {
                out.push(SetPartition::from_labels(rgs));
                return;
            }
            for b in 0..blocks.len() {
                if g.adj[v] & blocks[b] == 0 {
                    blocks[b] |= 1 << v;
                    rgs.push(b as u8);
                    rec(g, v + 1, blocks, rgs, out);
                    rgs.pop();
                    blocks[b] &= !(1 << v);
                }
            }
            blocks.push(1 << v);
            rgs.push((blocks.len() - 1) as u8);
            rec(g, v + 1, blocks, rgs, out);
            rgs.pop();
            blocks.pop();
        }
        let mut out = Vec::new();
        rec(self, 0, &mut Vec::new(), &mut Vec::new(), &mut out);
        out
    }

    /// Number of stable partitions of each type.
    pub fn stable_partition_counts(&self) -> BTreeMap<IntPartition, u64> {
        let mut counts = BTreeMap::new();
        for p in self.stable_partitions() {
            *counts.entry(p.type_partition()).or_insert(0) += 1;
        }
        counts
    }

    /// Proper colorings with `m` colors, by backtracking.
    pub fn count_proper_colorings(&self, m: usize) -> u64 {
        fn rec(g: &Graph, v: usize, m: usize, colors: &mut Vec<usize>) -> u64 {
            if v == g.n {
                return 1;
            }
            let mut total = 0;
            for c in 0..m {
                if (0..v).all(|u| !g.has_edge(u, v) || colors[u] != c) {
                    colors.push(c);
                    total += rec(g, v + 1, m, colors);
                    colors.pop();
                }
            }
            total
        }
        rec(self, 0, m, &mut Vec::with_capacity(self.n))
    }

    /// `ω(G)`.
    pub fn clique_number(&self) -> usize {
        self.max_subset(|g, m| g.is_clique(m))
    }

    /// `α(G)`.
    pub fn independence_number(&self) -> usize {
        self.max_subset(|g, m| g.is_stable(m))
    }

    fn max_subset(&self, pred: impl Fn(&Graph, u32) -> bool) -> usize {
        (0..1u64 << self.n)
            .map(|m| m as u32)
            .filter(|&m| pred(self, m))
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `χ(G)`: least `m` admitting a proper coloring.
    pub fn chromatic_number(&self) -> usize {
        (0..=self.n)
            .find(|&m| self.count_proper_colorings(m) > 0)
            .unwrap_or(self.n)
    }

    /// Component type of the spanning subgraph `(V, S)`.
    pub fn component_type(&self, edges: &[(usize, usize)]) -> IntPartition {
        let mut uf = UnionFind::new(self.n);
        for &(u, v) in edges {
            uf.union(u, v);
        }
        uf.component_type()
    }

    /// The faces of the broken-cycle complex. `labels[k]` is the 1-based label of the
    /// `k`-th edge in lexicographic order; `None` labels edges in that order.
    pub fn broken_cycle_complex(&self, labels: Option<&[usize]>) -> Result<Vec<BrokenCycleFace>> {
        let edges = self.edges();
        let m = edges.len();
        if m > 24 {
            return Err(Error::pre(format!("{m} edges is beyond exhaustive subset search")));
        }
        let alpha: Vec<usize> = match labels {
            None => (1..=m).collect(),
            Some(l) => {
                let mut sorted = l.to_vec();
                sorted.sort_unstable();
                if sorted != (1..=m).collect::<Vec<_>>() {
                    return Err(Error::pre(format!(
                        "edge labeling {l:?} is not a bijection onto 1..{m}"
                    )));
                }
                l.to_vec()
            }
        };
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&k| alpha[k]);
        let mut faces = Vec::new();
        'subsets: for mask in 0..1u64 << m {
            // S has a broken cycle iff some edge's endpoints are joined by smaller-labeled S-edges
            let mut uf = UnionFind::new(self.n);
            for &k in &order {
                let (u, v) = edges[k];
                if uf.find(u) == uf.find(v) {
                    continue 'subsets;
                }
                if mask >> k & 1 == 1 {
                    uf.union(u, v);
                }
            }
            let chosen: Vec<(usize, usize)> =
                (0..m).filter(|k| mask >> k & 1 == 1).map(|k| edges[k]).collect();
            faces.push(BrokenCycleFace {
                lambda: uf.component_type(),
                edges: chosen,
            });
        }
        Ok(faces)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        write!(f, "G[n={}; {}]", self.n, edges.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert!(Graph::new(3, &[(0, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]).unwrap().num_edges(), 1);
    }

    #[test]
    fn stable_partition_examples() {
        let k3 = Graph::complete(3);
        let sp: Vec<String> = k3.stable_partitions().iter().map(|s| s.to_string()).collect();
        assert_eq!(sp, vec!["1/2/3"]);
        assert_eq!(Graph::empty(3).stable_partitions().len(), 5);
        let counts = Graph::path(3).stable_partition_counts();
        assert_eq!(counts, BTreeMap::from([(p("1,1,1"), 1), (p("2,1"), 1)]));
    }

    #[test]
    fn stable_partitions_match_filter() {
        let g = Graph::cycle(5);
        let filtered: Vec<SetPartition> = crate::combinat::set_partitions(5)
            .filter(|s| s.block_masks().iter().all(|&b| g.is_stable(b)))
            .collect();
        assert_eq!(g.stable_partitions(), filtered);
    }

    #[test]
    fn statistics_examples() {
        let k3 = Graph::complete(3);
        assert_eq!(k3.chromatic_number(), 3);
        assert_eq!(k3.clique_number(), 3);
        assert_eq!(k3.independence_number(), 1);
        assert_eq!(Graph::cycle(5).chromatic_number(), 3);
        assert_eq!(Graph::empty(4).chromatic_number(), 1);
        assert_eq!(Graph::empty(0).chromatic_number(), 0);
        assert_eq!(k3.count_proper_colorings(3), 6);
    }

    #[test]
    fn contraction_and_deletion() {
        let k3 = Graph::complete(3);
        let c = k3.contract_edge(1, 2).unwrap();
        assert_eq!(c, Graph::complete(2));
        let d = k3.delete_edge(0, 2).unwrap();
        assert_eq!(d, Graph::path(3));
        assert!(d.delete_edge(0, 2).is_err());
        let c = Graph::path(4).contract_edge(0, 1).unwrap();
        assert_eq!(c, Graph::path(3));
    }

    #[test]
    fn connectivity_and_canonical_form() {
        assert!(Graph::path(4).is_connected());
        assert!(!Graph::empty(2).is_connected());
        let a = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(!a.is_isomorphic(&Graph::cycle(4)).unwrap());
    }

    #[test]
    fn broken_cycle_examples() {
        let faces = Graph::complete(3).broken_cycle_complex(None).unwrap();
        assert_eq!(faces.len(), 6);
        assert!(faces.iter().all(|f| f.edges != vec![(0, 1), (0, 2)]));
        for f in &faces {
            assert_eq!(f.edges.len(), 3 - f.lambda.len());
        }
        let tree = Graph::path(4);
        assert_eq!(tree.broken_cycle_complex(None).unwrap().len(), 8);
        assert!(tree.broken_cycle_complex(Some(&[1, 1, 2])).is_err());
        assert_eq!(
            Graph::complete(3).broken_cycle_complex(Some(&[3, 1, 2])).unwrap().len(),
            6
        );
    }

    #[test]
    fn complete_multipartite_shape() {
        let g = Graph::complete_multipartite(&p("2,1"));
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
    }
}
