//! Graphs, digraphs and posets on vertex sets `0..n`, with the constructions the
//! invariants need and brute-force enumeration at desk scale.

mod digraph;
mod enumerate;
mod graph;
mod poset;

pub use digraph::{Cover, Digraph};
pub use enumerate::{
    all_nuio, enumerate_irreducible_nuio, enumerate_labeled_posets, enumerate_natural_posets,
    enumerate_posets_iso, loopless_digraphs, nuio_functions, simple_graphs, tournaments,
    unit_interval_order,
};
pub use graph::{BrokenCycleFace, Graph};
pub use poset::Poset;

use crate::combinat::IntPartition;

/// Largest vertex count representable by the bitset adjacency.
pub const MAX_VERTICES: usize = 32;

/// Largest vertex count accepted by brute-force canonical forms.
pub const MAX_CANONICAL: usize = 8;

/// Union-find over `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Returns false if already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub(crate) fn component_type(&mut self) -> IntPartition {
        let n = self.parent.len();
        let mut sizes = Vec::new();
        for i in 0..n {
            if self.find(i) == i {
                sizes.push(self.size[i]);
            }
        }
        IntPartition::from_multiset(sizes)
    }
}

pub(crate) fn check_vertex(v: usize, n: usize) -> crate::Result<()> {
    if v >= n {
        return Err(crate::Error::OutOfRange {
            element: v + 1,
            bound: n,
        });
    }
    Ok(())
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> crate::Result<()> {
    let mut seen = 0u64;
    if perm.len() != n {
        return Err(crate::Error::pre(format!("relabeling has length {} for {n} vertices", perm.len())));
    }
    for &p in perm {
        if p >= n || seen >> p & 1 == 1 {
            return Err(crate::Error::pre(format!("{perm:?} is not a permutation")));
        }
        seen |= 1 << p;
    }
    Ok(())
}
