use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::par::Exec;
use crate::structures::{Digraph, Graph, Poset};

/// Largest size accepted by labeled poset enumeration.
pub const MAX_LABELED_POSETS: usize = 6;
/// Largest size accepted by iso-reduced poset enumeration.
pub const MAX_ISO_POSETS: usize = 8;

fn check_bound(n: usize, bound: usize, what: &str) -> Result<()> {
    if n > bound {
        return Err(Error::pre(format!("{what} enumeration is limited to n ≤ {bound}")));
    }
    Ok(())
}

fn downsets(p: &Poset, k: usize) -> Vec<u32> {
    let below: Vec<u32> = (0..k).map(|a| p.below(a)).collect();
    (0..1u32 << k)
        .filter(|&d| {
            let mut m = d;
            while m != 0 {
                let a = m.trailing_zeros() as usize;
                m &= m - 1;
                if below[a] & !d != 0 {
                    return false;
                }
            }
            true
        })
        .collect()
}

/// All posets on `0..n` (every labeling), each exactly once.
///
/// Element `k` is added below an up-set `U` and above a down-set `D` of the poset on
/// `0..k`, subject to `D × U ⊆ <`.
pub fn enumerate_labeled_posets(n: usize) -> Result<Vec<Poset>> {
    check_bound(n, MAX_LABELED_POSETS, "labeled poset")?;
    let mut layer = vec![Poset::antichain(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            let downs = downsets(p, k);
            let full = (1u32 << k) - 1;
            let ups: Vec<u32> = downs.iter().map(|d| full & !d).collect();
            for &d in &downs {
                for &u in &ups {
                    if d & u != 0 {
                        continue;
                    }
                    let mut ok = true;
                    let mut m = d;
                    while m != 0 {
                        let a = m.trailing_zeros() as usize;
                        m &= m - 1;
                        if p.above(a) & u != u {
                            ok = false;
                            break;
                        }
                    }
                    if !ok {
                        continue;
                    }
                    let mut above: Vec<u32> = (0..k)
                        .map(|a| p.above(a) | if d >> a & 1 == 1 { 1 << k } else { 0 })
                        .collect();
                    above.push(u);
                    next.push(Poset::from_above_unchecked(k + 1, above));
                }
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// Naturally labeled posets on `0..n` (`a <_P b ⟹ a < b`), each exactly once.
pub fn enumerate_natural_posets(n: usize) -> Result<Vec<Poset>> {
    check_bound(n, MAX_ISO_POSETS, "naturally labeled poset")?;
    let mut layer = vec![Poset::antichain(0)];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            for d in downsets(p, k) {
                let mut above: Vec<u32> = (0..k)
                    .map(|a| p.above(a) | if d >> a & 1 == 1 { 1 << k } else { 0 })
                    .collect();
                above.push(0);
                next.push(Poset::from_above_unchecked(k + 1, above));
            }
        }
        layer = next;
    }
    Ok(layer)
}

/// One canonical representative per isomorphism class, sorted by canonical code.
pub fn enumerate_posets_iso(n: usize, exec: Exec) -> Result<Vec<Poset>> {
    check_bound(n, MAX_ISO_POSETS, "iso-reduced poset")?;
    let natural = enumerate_natural_posets(n)?;
    let codes = exec.map(&natural, |p| p.canonical_code().expect("n within bound"));
    let classes: BTreeMap<u64, ()> = codes.into_iter().map(|c| (c, ())).collect();
    Ok(classes
        .into_keys()
        .map(|c| Poset::from_natural_code(n, c))
        .collect())
}

/// All tournaments on `0..n`.
pub fn tournaments(n: usize) -> Result<Vec<Digraph>> {
    check_bound(n, 7, "tournament")?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok((0..1u64 << pairs.len())
        .map(|mask| {
            let arcs: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| if mask >> k & 1 == 1 { (v, u) } else { (u, v) })
                .collect();
            Digraph::new(n, &arcs).expect("valid vertices")
        })
        .collect())
}

/// All loopless digraphs on `0..n`, in order of their arc bitmask.
pub fn loopless_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    check_bound(n, 5, "loopless digraph")?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    Ok((0..1u64 << pairs.len()).map(move |mask| {
        let arcs: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        Digraph::new(n, &arcs).expect("valid vertices")
    }))
}

/// All simple graphs on `0..n`, in order of their edge bitmask.
pub fn simple_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_bound(n, 7, "graph")?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok((0..1u64 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).expect("valid vertices")
    }))
}

/// The poset of a non-decreasing `f: [n-2] → [n-1]` with `f(i) ≥ i` (1-based values):
/// `i < j` iff `j ≥ f(i) + 2`.
pub fn unit_interval_order(n: usize, f: &[usize]) -> Result<Poset> {
    let len = n.saturating_sub(2);
    if f.len() != len {
        return Err(Error::pre(format!("f must have {len} values for n = {n}, got {}", f.len())));
    }
    for (i0, &v) in f.iter().enumerate() {
        let i = i0 + 1;
        if v < i || v > n - 1 {
            return Err(Error::pre(format!("f({i}) = {v} outside [{i}, {}]", n - 1)));
        }
        if i0 > 0 && f[i0 - 1] > v {
            return Err(Error::pre(format!("f decreases at {i}")));
        }
    }
    let mut above = vec![0u32; n];
    for (i0, &v) in f.iter().enumerate() {
        let g = v + 2; // 1-based smallest element above i
        for j in g..=n {
            above[i0] |= 1 << (j - 1);
        }
    }
    Poset::from_above(n, above)
}

/// Every admissible `f` for `n`, as 1-based value lists in lexicographic order.
pub fn nuio_functions(n: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, len: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i > len {
            out.push(cur.clone());
            return;
        }
        for v in lo.max(i)..n {
            cur.push(v);
            rec(i + 1, len, n, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n.saturating_sub(2), n, 1, &mut Vec::new(), &mut out);
    out
}

/// Irreducible natural unit interval orders on `[n]`, one per admissible `f`.
pub fn enumerate_irreducible_nuio(n: usize) -> Result<Vec<Poset>> {
    check_bound(n, 16, "unit interval order")?;
    nuio_functions(n)
        .iter()
        .map(|f| unit_interval_order(n, f))
        .collect()
}

/// All natural unit interval orders on `[n]`: `N(i) = {g(i), …, n}` for non-decreasing
/// `g(i) ∈ [i+1, n+1]`.
pub fn all_nuio(n: usize) -> Result<Vec<Poset>> {
    check_bound(n, 16, "unit interval order")?;
    fn rec(i: usize, n: usize, lo: usize, above: &mut Vec<u32>, out: &mut Vec<Poset>) {
        if i == n {
            out.push(Poset::from_above(n, above.clone()).expect("unit interval orders are posets"));
            return;
        }
        // 0-based: successors of i start at g ∈ [i+1, n]
        for g in lo.max(i + 1)..=n {
            above[i] = (g..n).fold(0, |acc, j| acc | 1 << j);
            rec(i + 1, n, g, above, out);
        }
        above[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, n, 0, &mut vec![0; n], &mut out);
    Ok(out)
}
