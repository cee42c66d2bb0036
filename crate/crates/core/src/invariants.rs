//! The invariants `X_G`, `U_X`, `Y_G`, `W_X`, their specializations, the power-sum
//! expansions and both deletion-contraction recursions.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::arith::{rat, Rational, UniPolynomial};
use crate::combinat::{for_each_permutation, set_partitions, IntPartition, PositionSubset, SetPartition};
use crate::error::{Error, Result};
use crate::ncsym::{NCSymBasis, NCSymElement};
use crate::structures::{Digraph, Graph, Poset};
use crate::symfn::{Positivity, QSymBasis, QSymElement, SymBasis, SymElement};

/// The first key at which two expansions disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {} vs {}", self.key, self.lhs, self.rhs)
    }
}

fn first_difference<K: Ord + Clone + fmt::Display>(
    a: &BTreeMap<K, Rational>,
    b: &BTreeMap<K, Rational>,
) -> Option<Mismatch> {
    let keys: BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    for k in keys {
        let x = a.get(k).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(k).cloned().unwrap_or_else(Rational::zero);
        if x != y {
            return Some(Mismatch {
                key: k.to_string(),
                lhs: x,
                rhs: y,
            });
        }
    }
    None
}

/// Compares in `m`; `None` when equal.
pub fn diff_sym(a: &SymElement, b: &SymElement) -> Option<Mismatch> {
    if a.degree() != b.degree() && !(a.is_zero() && b.is_zero()) {
        return Some(Mismatch {
            key: format!("degree {} vs {}", a.degree(), b.degree()),
            lhs: rat(0),
            rhs: rat(0),
        });
    }
    first_difference(a.to_m().terms(), b.to_m().terms())
}

/// Compares in `m`; `None` when equal.
pub fn diff_ncsym(a: &NCSymElement, b: &NCSymElement) -> Option<Mismatch> {
    if a.degree() != b.degree() && !(a.is_zero() && b.is_zero()) {
        return Some(Mismatch {
            key: format!("degree {} vs {}", a.degree(), b.degree()),
            lhs: rat(0),
            rhs: rat(0),
        });
    }
    first_difference(a.to_m().terms(), b.to_m().terms())
}

/// Compares polynomial coefficients; `None` when equal.
pub fn diff_poly(a: &UniPolynomial, b: &UniPolynomial) -> Option<Mismatch> {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).find(|&i| a.coeff(i) != b.coeff(i)).map(|i| Mismatch {
        key: format!("m^{i}"),
        lhs: a.coeff(i),
        rhs: b.coeff(i),
    })
}

/// `X_G = Σ_μ a_μ m̃_μ` where `a_μ` counts stable partitions of type `μ`.
pub fn chromatic_sym(g: &Graph) -> SymElement {
    let terms = g.stable_partition_counts().into_iter().map(|(mu, a)| {
        let c = Rational::from_integer(mu.multiplicity_factorial()) * rat(a as i64);
        (mu, c)
    });
    SymElement::from_terms(g.n(), SymBasis::Monomial, terms).expect("types partition n")
}

/// `U_X = Σ_σ F_{XDes(σ)}` over all listings.
pub fn redei_berge_qsym(x: &Digraph) -> QSymElement {
    let n = x.n();
    let mut counts: BTreeMap<PositionSubset, i64> = BTreeMap::new();
    for_each_permutation(n, |sigma| {
        *counts.entry(x.descent_set(sigma)).or_insert(0) += 1;
    });
    QSymElement::from_terms(
        n,
        QSymBasis::Fundamental,
        counts.into_iter().map(|(k, c)| (k, rat(c))),
    )
    .expect("ambient is n")
}

/// `U_X` in `m`.
///
/// # Panics
/// If the quasisymmetric sum fails to be symmetric, which would be a bug.
pub fn redei_berge(x: &Digraph) -> SymElement {
    redei_berge_qsym(x)
        .project_to_sym()
        .expect("Redei-Berge functions are symmetric")
}

/// `U_X = Σ_{π ∈ S_V(X, X̄)} (-1)^{φ(π)} p_{type(π)}`: permutations each of whose cycles
/// lies in `X` or in `X̄`; `φ` sums `ℓ(γ) - 1` over cycles lying in `X`.
pub fn redei_berge_p_expansion(x: &Digraph) -> SymElement {
    let n = x.n();
    let mut terms: BTreeMap<IntPartition, i64> = BTreeMap::new();
    for_each_permutation(n, |pi| {
        if let Some((lambda, phi)) = cycle_census(x, pi) {
            *terms.entry(lambda).or_insert(0) += if phi % 2 == 0 { 1 } else { -1 };
        }
    });
    SymElement::from_terms(
        n,
        SymBasis::PowerSum,
        terms.into_iter().map(|(k, c)| (k, rat(c))),
    )
    .expect("cycle types partition n")
}

/// Cycle type and `φ` of `π` when every cycle lies in `X` or in `X̄`.
fn cycle_census(x: &Digraph, pi: &[usize]) -> Option<(IntPartition, usize)> {
    let n = pi.len();
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    let mut phi = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let (mut len, mut in_x, mut in_bar, mut v) = (0, true, true, start);
        while !seen[v] {
            seen[v] = true;
            let w = pi[v];
            if x.has_arc(v, w) {
                in_bar = false;
            } else {
                in_x = false;
            }
            v = w;
            len += 1;
        }
        if in_x {
            phi += len - 1;
        } else if !in_bar {
            return None;
        }
        sizes.push(len);
    }
    Some((IntPartition::from_multiset(sizes), phi))
}

/// Number of permutations of each cycle type whose cycles all lie in `X` (cycle covers
/// of `X` with loops as fixed points).
pub fn permutation_census_in(x: &Digraph) -> BTreeMap<IntPartition, u64> {
    let mut out = BTreeMap::new();
    for_each_permutation(x.n(), |pi| {
        if (0..pi.len()).all(|v| x.has_arc(v, pi[v])) {
            let mut seen = vec![false; pi.len()];
            let mut sizes = Vec::new();
            for s in 0..pi.len() {
                let (mut len, mut v) = (0, s);
                while !seen[v] {
                    seen[v] = true;
                    v = pi[v];
                    len += 1;
                }
                if len > 0 {
                    sizes.push(len);
                }
            }
            *out.entry(IntPartition::from_multiset(sizes)).or_insert(0) += 1;
        }
    });
    out
}

/// `X_G = Σ_{S ∈ B_G} (-1)^{|S|} p_{λ(S)}`.
pub fn chromatic_broken_cycle(g: &Graph, labels: Option<&[usize]>) -> Result<SymElement> {
    let mut terms: BTreeMap<IntPartition, i64> = BTreeMap::new();
    for face in g.broken_cycle_complex(labels)? {
        let sign = if face.edges.len() % 2 == 0 { 1 } else { -1 };
        *terms.entry(face.lambda).or_insert(0) += sign;
    }
    SymElement::from_terms(
        g.n(),
        SymBasis::PowerSum,
        terms.into_iter().map(|(k, c)| (k, rat(c))),
    )
}

/// `χ_G(m) = ps¹(X_G)(m)`.
pub fn chromatic_poly(g: &Graph) -> UniPolynomial {
    chromatic_sym(g).principal_specialization()
}

/// `u_X(m) = ps¹(U_X)(m)`.
pub fn redei_berge_poly(x: &Digraph) -> UniPolynomial {
    redei_berge_qsym(x).principal_specialization()
}

/// `Σ_σ F_{A_P(σ)}` with `A_P(σ) = {i : σ_i ≰_P σ_{i+1}}`, which equals `X_{inc(P)}`.
pub fn inc_fundamental_expansion(p: &Poset) -> QSymElement {
    let n = p.n();
    let mut counts: BTreeMap<PositionSubset, i64> = BTreeMap::new();
    for_each_permutation(n, |sigma| {
        let bits = (1..n)
            .filter(|&i| !p.le(sigma[i - 1], sigma[i]))
            .fold(0u64, |acc, i| acc | 1 << i);
        *counts
            .entry(PositionSubset::from_bits(bits, n).expect("positions in [n-1]"))
            .or_insert(0) += 1;
    });
    QSymElement::from_terms(
        n,
        QSymBasis::Fundamental,
        counts.into_iter().map(|(k, c)| (k, rat(c))),
    )
    .expect("ambient is n")
}

/// `Y_G = Σ m_π` over set partitions whose blocks are stable.
pub fn y_chromatic(g: &Graph) -> NCSymElement {
    NCSymElement::from_terms(
        g.n(),
        NCSymBasis::Monomial,
        g.stable_partitions().into_iter().map(|p| (p, rat(1))),
    )
    .expect("partitions of n")
}

/// For every vertex subset, the number of its listings with no arc between consecutive entries.
fn descent_free_listings(x: &Digraph) -> Vec<u64> {
    let n = x.n();
    let size = 1usize << n;
    let mut dp = vec![0u64; size * n.max(1)];
    let mut total = vec![0u64; size];
    total[0] = 1;
    for v in 0..n {
        dp[(1 << v) * n + v] = 1;
    }
    for mask in 1..size {
        for last in 0..n {
            let c = dp[mask * n + last];
            if c == 0 {
                continue;
            }
            total[mask] += c;
            for w in 0..n {
                if mask >> w & 1 == 0 && !x.has_arc(last, w) {
                    dp[(mask | 1 << w) * n + w] += c;
                }
            }
        }
    }
    total
}

/// `W_X`: the coefficient of `m_π` counts listings friendly with a coloring injective on
/// blocks, which factors as a product over blocks of descent-free listings of the block.
pub fn w_redei(x: &Digraph) -> NCSymElement {
    let counts = descent_free_listings(x);
    let terms = set_partitions(x.n()).filter_map(|pi| {
        let c: u64 = pi.block_masks().iter().map(|&b| counts[b as usize]).product();
        (c != 0).then(|| (pi, rat(c as i64)))
    });
    NCSymElement::from_terms(x.n(), NCSymBasis::Monomial, terms).expect("partitions of n")
}

/// Colorings `f: V → [n]` (as words) with the number of `(f, X)`-friendly listings.
fn friendly_counts(x: &Digraph) -> Vec<(Vec<usize>, u64)> {
    let n = x.n();
    let mut out = Vec::new();
    for w in 0..n.pow(n as u32) {
        let f: Vec<usize> = (0..n).map(|i| w / n.pow(i as u32) % n).collect();
        let mut count = 0;
        for_each_permutation(n, |sigma| {
            let ok = sigma.windows(2).all(|p| {
                let (a, b) = (f[p[0]], f[p[1]]);
                a < b || (a == b && !x.has_arc(p[0], p[1]))
            });
            if ok {
                count += 1;
            }
        });
        out.push((f, count));
    }
    out
}

/// Definitional `W_X`, truncated to `n` color values (test oracle, `n^n · n!` work).
pub fn w_redei_by_words(x: &Digraph) -> NCSymElement {
    let n = x.n();
    let mut sums: BTreeMap<SetPartition, u64> = BTreeMap::new();
    for (f, c) in friendly_counts(x) {
        *sums.entry(SetPartition::from_labels(&f)).or_insert(0) += c;
    }
    words_to_m(n, sums)
}

/// Definitional `Y_G` over proper colorings with `n` colors (test oracle).
pub fn y_chromatic_by_words(g: &Graph) -> NCSymElement {
    let n = g.n();
    let mut sums: BTreeMap<SetPartition, u64> = BTreeMap::new();
    for w in 0..n.pow(n as u32) {
        let f: Vec<usize> = (0..n).map(|i| w / n.pow(i as u32) % n).collect();
        if g.edges().iter().all(|&(u, v)| f[u] != f[v]) {
            *sums.entry(SetPartition::from_labels(&f)).or_insert(0) += 1;
        }
    }
    words_to_m(n, sums)
}

/// Each kernel with `l` blocks is hit by `n(n-1)⋯(n-l+1)` colorings with `n` colors.
fn words_to_m(n: usize, sums: BTreeMap<SetPartition, u64>) -> NCSymElement {
    let terms = sums.into_iter().map(|(pi, c)| {
        let per: u64 = (0..pi.num_blocks()).map(|i| (n - i) as u64).product();
        (pi, Rational::new((c as i64).into(), (per as i64).into()))
    });
    NCSymElement::from_terms(n, NCSymBasis::Monomial, terms).expect("partitions of n")
}

/// The relabeling sending `a ↦ n-2`, `b ↦ n-1` and the rest, in order, to `0..n-2`.
pub fn distinguished_relabeling(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut perm = vec![0; n];
    let mut next = 0;
    for (v, slot) in perm.iter_mut().enumerate() {
        *slot = if v == a {
            n - 2
        } else if v == b {
            n - 1
        } else {
            next += 1;
            next - 1
        };
    }
    perm
}

/// Checks `W_X = W_{X∖e} − W_{X/e}↑` for the arc `e = (a, b)` after moving it to
/// `(v_{n-1}, v_n)`; also checks `δ∘W_X = W_{δ(X)}` for that relabeling.
pub fn deletion_contraction_w(x: &Digraph, a: usize, b: usize) -> Result<std::result::Result<(), Mismatch>> {
    if a == b || !x.has_arc(a, b) {
        return Err(Error::pre(format!("({},{}) is not a non-loop arc", a + 1, b + 1)));
    }
    let n = x.n();
    let delta = distinguished_relabeling(n, a, b);
    let y = x.relabel(&delta)?;
    let w = w_redei(&y);
    if let Some(m) = diff_ncsym(&w_redei(x).sn_action(&delta)?, &w) {
        return Ok(Err(m));
    }
    let del = w_redei(&y.delete_arc(n - 2, n - 1)?);
    let con = w_redei(&y.contract_arc(n - 2, n - 1)?).induct()?;
    Ok(match diff_ncsym(&w, &del.sub(&con)?) {
        Some(m) => Err(m),
        None => Ok(()),
    })
}

/// Checks `Y_G = Y_{G∖e} − Y_{G/e}↑` for the edge `{a, b}` moved to `{v_{n-1}, v_n}`.
pub fn deletion_contraction_y(g: &Graph, a: usize, b: usize) -> Result<std::result::Result<(), Mismatch>> {
    if !g.has_edge(a, b) {
        return Err(Error::pre(format!("{{{},{}}} is not an edge", a + 1, b + 1)));
    }
    let n = g.n();
    let delta = distinguished_relabeling(n, a, b);
    let h = g.relabel(&delta)?;
    let y = y_chromatic(&h);
    if let Some(m) = diff_ncsym(&y_chromatic(g).sn_action(&delta)?, &y) {
        return Ok(Err(m));
    }
    let del = y_chromatic(&h.delete_edge(n - 2, n - 1)?);
    let con = y_chromatic(&h.contract_edge(n - 2, n - 1)?).induct()?;
    Ok(match diff_ncsym(&y, &del.sub(&con)?) {
        Some(m) => Err(m),
        None => Ok(()),
    })
}

/// `(X·T_1) ∖ (v_n, v_{n+1})` for `X` whose last vertex has no arcs to the others.
pub fn h_positivity_step(x: &Digraph) -> Result<Digraph> {
    let n = x.n();
    if n == 0 {
        return Err(Error::pre("the construction needs at least one vertex"));
    }
    let last = n - 1;
    if (0..last).any(|i| x.has_arc(last, i)) {
        return Err(Error::pre(format!("vertex {n} has an arc to an earlier vertex")));
    }
    x.product(&Digraph::discrete(1))?.delete_arc(last, n)
}

/// Applies [`h_positivity_step`] `steps` times, returning every intermediate digraph.
pub fn h_positivity_chain(start: &Digraph, steps: usize) -> Result<Vec<Digraph>> {
    let mut out = vec![start.clone()];
    for _ in 0..steps {
        let next = h_positivity_step(out.last().expect("nonempty"))?;
        out.push(next);
    }
    Ok(out)
}

/// `h`-positivity of `W_X` up to congruence modulo the last vertex: every class
/// `(λ, |B_n|)` must carry a nonnegative total coefficient. Termwise positivity is
/// too strong; already the three-vertex path seed has negative `h_π` terms.
pub fn w_h_positivity(x: &Digraph) -> Positivity<(IntPartition, usize)> {
    if x.n() == 0 {
        return Positivity::Positive;
    }
    let classes = w_redei(x)
        .congruence_collapse(x.n() - 1)
        .expect("last vertex is in range");
    match classes.into_iter().find(|(_, c)| c < &Rational::zero()) {
        Some((key, coeff)) => Positivity::Negative { key, coeff },
        None => Positivity::Positive,
    }
}
