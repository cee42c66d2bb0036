use std::fmt;

use crate::combinat::{for_each_permutation, IntPartition, PositionSubset};
use crate::error::{Error, Result};
use crate::structures::{check_permutation, check_vertex, MAX_CANONICAL, MAX_VERTICES};

/// A digraph on `0..n`; loops allowed. `out[v]` is the out-neighbourhood bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digraph {
    n: usize,
    out: Vec<u32>,
}

/// A spanning subset of arcs forming disjoint directed paths (and, for
/// path-cycle covers, directed cycles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub arcs: Vec<(usize, usize)>,
    /// Vertex counts of the paths (isolated vertices are paths of size 1).
    pub paths: IntPartition,
    /// Lengths of the cycles.
    pub cycles: IntPartition,
}

impl Digraph {
    /// Arcs are 0-based ordered pairs; duplicates are merged.
    pub fn new(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::OutOfRange {
                element: n,
                bound: MAX_VERTICES,
            });
        }
        let mut x = Digraph::discrete(n);
        for &(u, v) in arcs {
            check_vertex(u, n)?;
            check_vertex(v, n)?;
            x.out[u] |= 1 << v;
        }
        Ok(x)
    }

    /// `T_n`: no arcs.
    pub fn discrete(n: usize) -> Self {
        Digraph { n, out: vec![0; n] }
    }

    /// Arcs `(i, j)` for all `i < j`.
    pub fn transitive_tournament(n: usize) -> Self {
        let mut x = Digraph::discrete(n);
        for i in 0..n {
            for j in i + 1..n {
                x.out[i] |= 1 << j;
            }
        }
        x
    }

    pub fn directed_path(n: usize) -> Self {
        let arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Digraph::new(n, &arcs).expect("valid path")
    }

    pub fn directed_cycle(n: usize) -> Self {
        let mut arcs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 1 {
            arcs.push((n - 1, 0));
        }
        Digraph::new(n, &arcs).expect("valid cycle")
    }

    /// `P_λ`: directed paths on consecutive vertices with `λ_1, λ_2, …` vertices.
    pub fn bag_of_sticks(lambda: &IntPartition) -> Self {
        let mut arcs = Vec::new();
        let mut start = 0;
        for &p in lambda.parts() {
            for i in start + 1..start + p {
                arcs.push((i - 1, i));
            }
            start += p;
        }
        Digraph::new(start, &arcs).expect("valid bag")
    }

    /// The spanning subdigraph keeping the arcs whose index (in `arcs()` order) is set in `mask`.
    pub fn arc_subset(&self, mask: u64) -> Digraph {
        let arcs: Vec<_> = self
            .arcs()
            .into_iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, a)| a)
            .collect();
        Digraph::new(self.n, &arcs).expect("subset of valid arcs")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn out_neighbors(&self, v: usize) -> u32 {
        self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> u32 {
        (0..self.n)
            .filter(|&u| self.out[u] >> v & 1 == 1)
            .fold(0, |acc, u| acc | 1 << u)
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.out[u] >> v & 1 == 1
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_arc(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(|a| a.count_ones() as usize).sum()
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|v| !self.has_arc(v, v))
    }

    /// `X̄ = (V, V×V ∖ E)`, loops included.
    pub fn complement(&self) -> Digraph {
        let full = if self.n == 0 { 0 } else { (u64::MAX >> (64 - self.n)) as u32 };
        Digraph {
            n: self.n,
            out: self.out.iter().map(|o| full & !o).collect(),
        }
    }

    /// `X^op`: every arc reversed.
    pub fn opposite(&self) -> Digraph {
        let arcs: Vec<_> = self.arcs().into_iter().map(|(u, v)| (v, u)).collect();
        Digraph::new(self.n, &arcs).expect("same vertex set")
    }

    /// Induced subdigraph on `vertices`, renumbered in the given order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Digraph> {
        for &v in vertices {
            check_vertex(v, self.n)?;
        }
        let mut arcs = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate() {
                if self.has_arc(a, b) {
                    arcs.push((i, j));
                }
            }
        }
        Digraph::new(vertices.len(), &arcs)
    }

    /// `X·Y`: disjoint union with `Y` shifted by `|X|`, plus every arc from `X` to `Y`.
    pub fn product(&self, other: &Digraph) -> Result<Digraph> {
        let n = self.n + other.n;
        let mut arcs = self.arcs();
        arcs.extend(other.arcs().into_iter().map(|(u, v)| (u + self.n, v + self.n)));
        for u in 0..self.n {
            for v in 0..other.n {
                arcs.push((u, v + self.n));
            }
        }
        Digraph::new(n, &arcs)
    }

    pub fn with_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        check_vertex(u, self.n)?;
        check_vertex(v, self.n)?;
        let mut x = self.clone();
        x.out[u] |= 1 << v;
        Ok(x)
    }

    /// `X ∖ e`; the arc must be present.
    pub fn delete_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        if !self.has_arc(u, v) {
            return Err(Error::pre(format!("({},{}) is not an arc", u + 1, v + 1)));
        }
        let mut x = self.clone();
        x.out[u] &= !(1 << v);
        Ok(x)
    }

    /// `X / e` for `e = (u, v)`: the merged vertex takes the smaller label and later labels
    /// shift down. For other `w`, `(w, e)` is an arc iff `(w, u)` was, and `(e, w)` iff
    /// `(v, w)` was. A reverse arc `(v, u)` becomes a loop at the merged vertex.
    pub fn contract_arc(&self, u: usize, v: usize) -> Result<Digraph> {
        if u == v {
            return Err(Error::pre("cannot contract a loop"));
        }
        if !self.has_arc(u, v) {
            return Err(Error::pre(format!("({},{}) is not an arc", u + 1, v + 1)));
        }
        let (keep, gone) = (u.min(v), u.max(v));
        let new = |w: usize| if w > gone { w - 1 } else { w };
        let mut arcs = Vec::new();
        for (a, b) in self.arcs() {
            if a != u && a != v && b != u && b != v {
                arcs.push((new(a), new(b)));
            }
        }
        for w in (0..self.n).filter(|&w| w != u && w != v) {
            if self.has_arc(w, u) {
                arcs.push((new(w), keep));
            }
            if self.has_arc(v, w) {
                arcs.push((keep, new(w)));
            }
        }
        if self.has_arc(v, u) {
            arcs.push((keep, keep));
        }
        Digraph::new(self.n - 1, &arcs)
    }

    /// Vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        check_permutation(perm, self.n)?;
        Ok(self.relabel_unchecked(perm))
    }

    pub(crate) fn relabel_unchecked(&self, perm: &[usize]) -> Digraph {
        let mut x = Digraph::discrete(self.n);
        for (u, v) in self.arcs() {
            x.out[perm[u]] |= 1 << perm[v];
        }
        x
    }

    /// `XDes(σ)`: 1-based positions `i` with `(σ_i, σ_{i+1})` an arc.
    pub fn descent_set(&self, listing: &[usize]) -> PositionSubset {
        let bits = (1..listing.len())
            .filter(|&i| self.has_arc(listing[i - 1], listing[i]))
            .fold(0u64, |acc, i| acc | 1 << i);
        PositionSubset::from_bits_unchecked(bits, listing.len())
    }

    /// Bit `u·n + v` records the arc `(u, v)`.
    pub fn encode(&self) -> u64 {
        let mut code = 0u64;
        for (u, v) in self.arcs() {
            code |= 1 << (u * self.n + v);
        }
        code
    }

    pub fn canonical_form(&self) -> Result<Digraph> {
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

    pub fn is_isomorphic(&self, other: &Digraph) -> Result<bool> {
        Ok(self.n == other.n
            && self.num_arcs() == other.num_arcs()
            && self.canonical_form()? == other.canonical_form()?)
    }

    /// Loopless with exactly one of `(u, v)`, `(v, u)` for every pair.
    pub fn is_tournament(&self) -> bool {
        self.is_loopless()
            && (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) != self.has_arc(v, u)))
    }

    /// No directed cycles (a loop counts as one).
    pub fn is_acyclic(&self) -> bool {
        let mut remaining: u32 = if self.n == 0 { 0 } else { (u64::MAX >> (64 - self.n)) as u32 };
        loop {
            // remove a vertex with no out-arcs inside the remaining set
            let sink = (0..self.n).find(|&v| remaining >> v & 1 == 1 && self.out[v] & remaining == 0);
            match sink {
                Some(v) => remaining &= !(1 << v),
                None => return remaining == 0,
            }
        }
    }

    /// Number of listings whose consecutive pairs are all arcs.
    pub fn hamiltonian_paths(&self) -> u64 {
        let n = self.n;
        if n == 0 {
            return 1;
        }
        let full = (1usize << n) - 1;
        let mut dp = vec![0u64; (1 << n) * n];
        for v in 0..n {
            dp[(1 << v) * n + v] = 1;
        }
        for mask in 1..=full {
            for last in 0..n {
                let c = dp[mask * n + last];
                if c == 0 {
                    continue;
                }
                let mut next = self.out[last] as usize & !mask;
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(mask | 1 << w) * n + w] += c;
                }
            }
        }
        (0..n).map(|v| dp[full * n + v]).sum()
    }

    /// Directed Hamiltonian cycles, each counted once up to rotation.
    pub fn hamiltonian_cycles(&self) -> u64 {
        let n = self.n;
        match n {
            0 => return 0,
            1 => return u64::from(self.has_arc(0, 0)),
            _ => {}
        }
        let full = (1usize << n) - 1;
        let mut dp = vec![0u64; (1 << n) * n];
        dp[n] = 1; // mask {0}, last 0
        for mask in (1..=full).filter(|m| m & 1 == 1) {
            for last in 0..n {
                let c = dp[mask * n + last];
                if c == 0 {
                    continue;
                }
                let mut next = self.out[last] as usize & !mask;
                while next != 0 {
                    let w = next.trailing_zeros() as usize;
                    next &= next - 1;
                    dp[(mask | 1 << w) * n + w] += c;
                }
            }
        }
        (1..n)
            .filter(|&v| self.has_arc(v, 0))
            .map(|v| dp[full * n + v])
            .sum()
    }

    /// A disjoint union of directed paths (isolated vertices allowed).
    pub fn is_bag_of_sticks(&self) -> bool {
        (0..self.n).all(|v| self.out[v].count_ones() <= 1 && self.in_neighbors(v).count_ones() <= 1)
            && self.is_acyclic()
    }

    /// Path sizes of a bag of sticks.
    pub fn stick_type(&self) -> Result<IntPartition> {
        if !self.is_bag_of_sticks() {
            return Err(Error::pre(format!("{self} is not a bag of sticks")));
        }
        let mut sizes = Vec::new();
        for v in (0..self.n).filter(|&v| self.in_neighbors(v) == 0) {
            let (mut len, mut cur) = (1, v);
            while self.out[cur] != 0 {
                cur = self.out[cur].trailing_zeros() as usize;
                len += 1;
            }
            sizes.push(len);
        }
        Ok(IntPartition::from_multiset(sizes))
    }

    /// Every choice of at most one out-arc per vertex with distinct heads, reported
    /// with its path and cycle types.
    fn covers(&self, allow_cycles: bool) -> Vec<Cover> {
        let n = self.n;
        let mut out = Vec::new();
        let mut succ: Vec<Option<usize>> = vec![None; n];
        fn rec(x: &Digraph, v: usize, used: u32, allow: bool, succ: &mut Vec<Option<usize>>, out: &mut Vec<Cover>) {
            if v == x.n {
                if let Some(c) = classify(x.n, succ, allow) {
                    out.push(c);
                }
                return;
            }
            succ[v] = None;
            rec(x, v + 1, used, allow, succ, out);
            let mut cand = x.out[v] & !used;
            while cand != 0 {
                let w = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                succ[v] = Some(w);
                rec(x, v + 1, used | 1 << w, allow, succ, out);
            }
            succ[v] = None;
        }
        rec(self, 0, 0, allow_cycles, &mut succ, &mut out);
        out.sort_by(|a, b| a.arcs.cmp(&b.arcs));
        let _ = n;
        out
    }

    /// All `S ⊆ E` with `(V, S)` a bag of sticks.
    pub fn path_covers(&self) -> Vec<Cover> {
        self.covers(false)
    }

    /// All `S ⊆ E` with `(V, S)` a disjoint union of directed paths and cycles; loopless only.
    pub fn path_cycle_covers(&self) -> Result<Vec<Cover>> {
        if !self.is_loopless() {
            return Err(Error::pre("path-cycle covers are defined for loopless digraphs"));
        }
        Ok(self.covers(true))
    }

    /// Loopless, every arc goes upward, and `(j,k) ∈ E ⟹ (i,l) ∈ E` for all `i ≤ j < k ≤ l`.
    pub fn is_natural_unit_interval(&self) -> bool {
        let n = self.n;
        if (0..n).any(|u| (0..=u).any(|v| self.has_arc(u, v))) {
            return false;
        }
        self.arcs().into_iter().all(|(j, k)| (0..=j).all(|i| (k..n).all(|l| self.has_arc(i, l))))
    }
}

fn classify(n: usize, succ: &[Option<usize>], allow_cycles: bool) -> Option<Cover> {
    let mut has_pred = vec![false; n];
    for s in succ.iter().flatten() {
        has_pred[*s] = true;
    }
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for v in (0..n).filter(|&v| !has_pred[v]) {
        let (mut len, mut cur) = (1, v);
        seen[v] = true;
        while let Some(w) = succ[cur] {
            seen[w] = true;
            cur = w;
            len += 1;
        }
        paths.push(len);
    }
    let mut cycles = Vec::new();
    for v in 0..n {
        if seen[v] {
            continue;
        }
        if !allow_cycles {
            return None;
        }
        let (mut len, mut cur) = (0, v);
        while !seen[cur] {
            seen[cur] = true;
            cur = succ[cur].expect("every cycle vertex has a successor");
            len += 1;
        }
        cycles.push(len);
    }
    let arcs = succ
        .iter()
        .enumerate()
        .filter_map(|(v, s)| s.map(|w| (v, w)))
        .collect();
    Some(Cover {
        arcs,
        paths: IntPartition::from_multiset(paths),
        cycles: IntPartition::from_multiset(cycles),
    })
}

impl fmt::Display for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .iter()
            .map(|(u, v)| format!("{}>{}", u + 1, v + 1))
            .collect();
        write!(f, "D[n={}; {}]", self.n, arcs.join(" "))
    }
}
