//! Bags-of-sticks decomposition: the edge poset and ξ, the linear breakdown, bag
//! coefficients, `N(λ, μ)`, path-cycle specializations and generalized triple deletion.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::arith::{binomial, rat, BiPolynomial, Rational, UniPolynomial};
use crate::combinat::{for_each_permutation, int_partitions, Composition, IntPartition};
use crate::error::{Error, Result};
use crate::invariants::{chromatic_sym, diff_ncsym, diff_sym, redei_berge, y_chromatic};
use crate::structures::{Digraph, Graph, Poset};
use crate::symfn::{SymBasis, SymElement};

/// Largest arc count accepted by the edge-poset routines (`3^|E|` work).
pub const MAX_BREAKDOWN_ARCS: usize = 14;

fn check_arcs(x: &Digraph) -> Result<usize> {
    let e = x.num_arcs();
    if e > MAX_BREAKDOWN_ARCS {
        return Err(Error::pre(format!(
            "{e} arcs exceed the edge-poset bound {MAX_BREAKDOWN_ARCS}"
        )));
    }
    Ok(e)
}

/// Bag-of-sticks flags for every arc subset, indexed by mask over `arcs()`.
fn bag_table(x: &Digraph) -> Vec<bool> {
    (0..1u64 << x.num_arcs())
        .map(|mask| x.arc_subset(mask).is_bag_of_sticks())
        .collect()
}

fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

/// Iterates the proper supersets of `a` inside `full`.
fn proper_supersets(a: u64, full: u64) -> impl Iterator<Item = u64> {
    let free = full & !a;
    let mut sub = free;
    let mut done = free == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = a | sub;
        if sub == 0 {
            done = true;
            return None;
        }
        sub = (sub - 1) & free;
        Some(out)
    })
}

/// `g(A) = ξ([A, E])` for all `A ⊇ s`; entries outside the up-set stay zero.
fn xi_table(bags: &[bool], e: usize, s: u64) -> Vec<i64> {
    let full = (1u64 << e) - 1;
    let mut g = vec![0i64; 1 << e];
    let mut masks: Vec<u64> = (0..=full).filter(|m| m & s == s).collect();
    masks.sort_by_key(|&m| std::cmp::Reverse(popcount(m)));
    for a in masks {
        g[a as usize] = if a == full {
            1
        } else {
            -proper_supersets(a, full)
                .filter(|&b| !bags[b as usize])
                .map(|b| g[b as usize])
                .sum::<i64>()
        };
    }
    g
}

/// `ξ([S, E])` in the edge poset of `X`; `s` is a mask over `X.arcs()`.
pub fn xi(x: &Digraph, s: u64) -> Result<i64> {
    let e = check_arcs(x)?;
    if s >> e != 0 {
        return Err(Error::pre(format!("mask {s:#b} is not a subset of the {e} arcs")));
    }
    if x.is_bag_of_sticks() {
        return Err(Error::pre(format!("{x} is a bag of sticks")));
    }
    Ok(xi_table(&bag_table(x), e, s)[s as usize])
}

/// `ξ` by explicit chain enumeration (test oracle).
pub fn xi_by_chains(x: &Digraph, s: u64) -> Result<i64> {
    let e = check_arcs(x)?;
    if x.is_bag_of_sticks() {
        return Err(Error::pre(format!("{x} is a bag of sticks")));
    }
    let bags = bag_table(x);
    let full = (1u64 << e) - 1;
    fn walk(a: u64, full: u64, bags: &[bool], len: usize) -> i64 {
        if a == full {
            return if len.is_multiple_of(2) { 1 } else { -1 };
        }
        proper_supersets(a, full)
            .filter(|&b| !bags[b as usize])
            .map(|b| walk(b, full, bags, len + 1))
            .sum()
    }
    Ok(walk(s, full, &bags, 0))
}

/// One bag-of-sticks subdigraph `(V, S)` with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakdownTerm {
    pub arcs: Vec<(usize, usize)>,
    pub lambda: IntPartition,
    pub coeff: i64,
}

/// `U_X = Σ coeff · U_{P_λ(S)}` over the raw terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Breakdown {
    pub n: usize,
    pub terms: Vec<BreakdownTerm>,
}

impl Breakdown {
    /// Coefficients merged by isomorphism type `λ(S)`, zeros dropped.
    pub fn grouped(&self) -> BTreeMap<IntPartition, i64> {
        let mut out = BTreeMap::new();
        for t in &self.terms {
            *out.entry(t.lambda.clone()).or_insert(0) += t.coeff;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// `Σ coeff · U_{P_λ}` in `m`.
    pub fn reassemble(&self) -> SymElement {
        self.grouped()
            .into_iter()
            .fold(SymElement::zero(self.n, SymBasis::Monomial), |acc, (lambda, c)| {
                let u = redei_berge(&Digraph::bag_of_sticks(&lambda)).scale(&rat(c));
                acc.add(&u).expect("same degree")
            })
    }
}

fn mask_arcs(arcs: &[(usize, usize)], mask: u64) -> Vec<(usize, usize)> {
    arcs.iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, &a)| a)
        .collect()
}

fn breakdown_from(x: &Digraph, coeffs: impl IntoIterator<Item = (u64, i64)>) -> Breakdown {
    let arcs = x.arcs();
    let terms = coeffs
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(mask, coeff)| BreakdownTerm {
            arcs: mask_arcs(&arcs, mask),
            lambda: x.arc_subset(mask).stick_type().expect("bag"),
            coeff,
        })
        .collect();
    Breakdown { n: x.n(), terms }
}

/// Coefficients of the linear breakdown, `(-1)^{|E|-|S|} ξ([S, E])` for each bag `S`.
/// A bag of sticks is its own breakdown.
fn breakdown_any(x: &Digraph) -> Result<Breakdown> {
    let e = check_arcs(x)?;
    let full = (1u64 << e) - 1;
    if x.is_bag_of_sticks() {
        return Ok(breakdown_from(x, [(full, 1)]));
    }
    let bags = bag_table(x);
    let g = xi_table(&bags, e, 0);
    let coeffs = (0..=full).filter(|&s| bags[s as usize]).map(|s| {
        let sign = if (e - popcount(s)).is_multiple_of(2) { 1 } else { -1 };
        (s, sign * g[s as usize])
    });
    Ok(breakdown_from(x, coeffs))
}

/// The linear breakdown of a digraph that is not a bag of sticks.
pub fn linear_breakdown(x: &Digraph) -> Result<Breakdown> {
    if x.is_bag_of_sticks() {
        return Err(Error::pre(format!("{x} is already a bag of sticks")));
    }
    breakdown_any(x)
}

/// Breakdown by repeated subset deletion `W_X = Σ_{∅≠S⊆F} (-1)^{|S|-1} W_{X∖S}`, with
/// `F` the whole arc set below the top level (test oracle). `top` overrides `F` once and
/// must itself not span a bag of sticks.
pub fn breakdown_by_deletion(x: &Digraph, top: Option<u64>) -> Result<Breakdown> {
    let e = check_arcs(x)?;
    let full = (1u64 << e) - 1;
    let bags = bag_table(x);
    let f = top.unwrap_or(full);
    if f & !full != 0 {
        return Err(Error::pre(format!("mask {f:#b} is not a subset of the {e} arcs")));
    }
    if bags[f as usize] {
        return Err(Error::pre("the deletion set spans a bag of sticks"));
    }
    fn expand(mask: u64, f: u64, bags: &[bool], memo: &mut HashMap<u64, BTreeMap<u64, i64>>) -> BTreeMap<u64, i64> {
        if bags[mask as usize] {
            return BTreeMap::from([(mask, 1)]);
        }
        if let Some(r) = memo.get(&mask) {
            return r.clone();
        }
        let mut out = BTreeMap::new();
        let mut s = f;
        while s != 0 {
            let sign = if popcount(s) % 2 == 1 { 1 } else { -1 };
            for (k, c) in expand(mask & !s, mask & !s, bags, memo) {
                *out.entry(k).or_insert(0) += sign * c;
            }
            s = (s - 1) & f;
        }
        memo.insert(mask, out.clone());
        out
    }
    let mut memo = HashMap::new();
    let mut res = BTreeMap::new();
    let mut s = f;
    while s != 0 {
        let sign = if popcount(s) % 2 == 1 { 1 } else { -1 };
        for (k, c) in expand(full & !s, full & !s, &bags, &mut memo) {
            *res.entry(k).or_insert(0) += sign * c;
        }
        s = (s - 1) & f;
    }
    Ok(breakdown_from(x, res))
}

/// `[U_{P_λ}] U_X = (-1)^{|E|+l(λ)-|V|} Σ_{S bag, λ(S)=λ} ξ([S, E])`.
pub fn bag_coefficient(x: &Digraph, lambda: &IntPartition) -> Result<Rational> {
    if lambda.weight() != x.n() {
        return Err(Error::WeightMismatch(lambda.weight(), x.n()));
    }
    let e = check_arcs(x)?;
    if x.is_bag_of_sticks() {
        return Err(Error::pre(format!("{x} is a bag of sticks")));
    }
    let bags = bag_table(x);
    let g = xi_table(&bags, e, 0);
    let sum: i64 = (0..1u64 << e)
        .filter(|&s| bags[s as usize] && x.arc_subset(s).stick_type().as_ref() == Ok(lambda))
        .map(|s| g[s as usize])
        .sum();
    let exp = e + lambda.len() - x.n();
    Ok(rat(if exp.is_multiple_of(2) { sum } else { -sum }))
}

/// `N(λ, μ)`: orderings of the parts of `μ` (as positions) that refine `λ` read as a composition.
pub fn n_count(lambda: &IntPartition, mu: &IntPartition) -> Result<u64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch(lambda.weight(), mu.weight()));
    }
    let target = Composition::new(lambda.parts().to_vec())?;
    let parts = mu.parts();
    let mut count = 0;
    for_each_permutation(parts.len(), |tau| {
        let alpha = Composition::new(tau.iter().map(|&i| parts[i]).collect()).expect("positive parts");
        if alpha.is_finer(&target).expect("equal weights") {
            count += 1;
        }
    });
    Ok(count)
}

/// `ω(U_{P_λ}) = Σ_μ N(λ, μ) m_μ`.
pub fn omega_u_bag(lambda: &IntPartition) -> SymElement {
    let terms = int_partitions(lambda.weight()).into_iter().map(|mu| {
        let c = n_count(lambda, &mu).expect("same weight");
        (mu, rat(c as i64))
    });
    SymElement::from_terms(lambda.weight(), SymBasis::Monomial, terms).expect("partitions of n")
}

fn require_loopless(x: &Digraph) -> Result<()> {
    if x.is_loopless() {
        Ok(())
    } else {
        Err(Error::pre(format!("{x} has loops")))
    }
}

/// `n_μ(X)`: spanning subdigraphs isomorphic to `P_μ`.
pub fn n_mu(x: &Digraph) -> Result<BTreeMap<IntPartition, u64>> {
    require_loopless(x)?;
    let mut out = BTreeMap::new();
    for c in x.path_covers() {
        *out.entry(c.paths).or_insert(0) += 1;
    }
    Ok(out)
}

/// `Ξ_X(x, 0) = Σ_μ n_μ(X) m̃_μ`, in `m`.
pub fn path_cycle_x0(x: &Digraph) -> Result<SymElement> {
    let terms = n_mu(x)?.into_iter().map(|(mu, c)| {
        let f = Rational::from_integer(mu.multiplicity_factorial());
        (mu, f * rat(c as i64))
    });
    SymElement::from_terms(x.n(), SymBasis::Monomial, terms)
}

/// `C_X(m, n) = Σ_S m(m-1)⋯(m-l(π(S))+1) n^{l(σ(S))}` over path-cycle covers.
pub fn cover_polynomial(x: &Digraph) -> Result<BiPolynomial> {
    let mut out = BiPolynomial::zero();
    for c in x.path_cycle_covers()? {
        out.add_uni(&UniPolynomial::falling(c.paths.len()), c.cycles.len());
    }
    Ok(out)
}

/// `C_X(m, 0) = Σ_i n_i(X) m(m-1)⋯(m-i+1)`.
pub fn cover_at_zero(x: &Digraph) -> Result<UniPolynomial> {
    let mut out = UniPolynomial::zero();
    for (mu, c) in n_mu(x)? {
        out = &out + &UniPolynomial::falling(mu.len()).scale(&rat(c as i64));
    }
    Ok(out)
}

/// `u_X(m) = Σ_i (-1)^{|V|-i} n_i(X) m(m+1)⋯(m+i-1)`.
pub fn u_from_path_counts(x: &Digraph) -> Result<UniPolynomial> {
    let n = x.n();
    let mut out = UniPolynomial::zero();
    for (mu, c) in n_mu(x)? {
        let i = mu.len();
        let sign = if (n - i).is_multiple_of(2) { 1 } else { -1 };
        out = &out + &UniPolynomial::rising(i).scale(&rat(sign * c as i64));
    }
    Ok(out)
}

/// `u_{P_λ}(m) = Σ_{i=l}^{|λ|} (-1)^{|λ|-i} C(|λ|-l, i-l) m(m+1)⋯(m+i-1)`.
pub fn u_bag_closed_form(lambda: &IntPartition) -> UniPolynomial {
    let (n, l) = (lambda.weight(), lambda.len());
    (l..=n).fold(UniPolynomial::zero(), |acc, i| {
        let c = Rational::from_integer(binomial(n - l, i - l));
        let c = if (n - i) % 2 == 0 { c } else { -c };
        &acc + &UniPolynomial::rising(i).scale(&c)
    })
}

/// For each type `μ`, `(1/r(μ)!) Σ_S (-1)^{|E|-|S|} ξ([S, E]) N(λ(S), μ)` over `D_P`,
/// which counts stable partitions of type `μ` in `inc(P)`.
pub fn stable_counts_via_breakdown(p: &Poset) -> Result<BTreeMap<IntPartition, Rational>> {
    let b = breakdown_any(&p.digraph())?;
    let grouped = b.grouped();
    let mut out = BTreeMap::new();
    for mu in int_partitions(p.n()) {
        let mut sum = Rational::zero();
        for (lambda, c) in &grouped {
            sum += rat(c * n_count(lambda, &mu)? as i64);
        }
        let v = sum / Rational::from_integer(mu.multiplicity_factorial());
        if !v.is_zero() {
            out.insert(mu, v);
        }
    }
    Ok(out)
}

/// Outcome of the generalized triple deletion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleDeletionReport {
    /// `Y_{inc(P)} = Σ_{∅≠S⊆F} (-1)^{|S|-1} Y_{inc(P)∪S}`.
    pub holds_ncsym: bool,
    /// The same identity for `X`.
    pub holds_sym: bool,
    /// Whether the sum including `S = ∅` also balances (it cannot unless `Y = 0`).
    pub empty_term_balances: bool,
    /// For `k = 2`, the classical triple deletion on the triangle `u₁, u₂, v`.
    pub classical: Option<bool>,
}

/// Checks generalized triple deletion for `v` covering (or covered by) each of `us`.
pub fn generalized_triple_deletion(p: &Poset, v: usize, us: &[usize]) -> Result<TripleDeletionReport> {
    let n = p.n();
    if us.len() < 2 {
        return Err(Error::pre("need at least two covered elements"));
    }
    for &u in us.iter().chain([&v]) {
        if u >= n {
            return Err(Error::OutOfRange { element: u + 1, bound: n });
        }
    }
    let mut sorted = us.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != us.len() {
        return Err(Error::pre("covered elements must be distinct"));
    }
    let below = us.iter().all(|&u| p.is_covering(u, v));
    let above = us.iter().all(|&u| p.is_covering(v, u));
    if !below && !above {
        return Err(Error::pre(format!(
            "{} neither covers nor is covered by every listed element",
            v + 1
        )));
    }
    let g = p.inc();
    let k = us.len();
    let with = |s: u64| -> Graph {
        us.iter()
            .enumerate()
            .filter(|(i, _)| s >> i & 1 == 1)
            .fold(g.clone(), |h, (_, &u)| h.with_edge(u, v).expect("valid vertices"))
    };
    let y = y_chromatic(&g);
    let x = chromatic_sym(&g);
    let mut rhs_y = y.scale(&Rational::zero());
    let mut rhs_x = x.scale(&Rational::zero());
    for s in 1..1u64 << k {
        let c = if popcount(s) % 2 == 1 { Rational::one() } else { -Rational::one() };
        let h = with(s);
        rhs_y = rhs_y.add(&y_chromatic(&h).scale(&c))?;
        rhs_x = rhs_x.add(&chromatic_sym(&h).scale(&c))?;
    }
    let holds_ncsym = diff_ncsym(&y, &rhs_y).is_none();
    let holds_sym = diff_sym(&x, &rhs_x).is_none();
    let empty_term_balances = diff_ncsym(&y, &rhs_y.sub(&y)?).is_none();
    let classical = (k == 2).then(|| {
        let (e1, e2) = ((us[0], v), (us[1], v));
        let full = with(0b11);
        let d1 = full.delete_edge(e1.0, e1.1).expect("edge present");
        let d2 = full.delete_edge(e2.0, e2.1).expect("edge present");
        let rhs = chromatic_sym(&d1)
            .add(&chromatic_sym(&d2))
            .and_then(|s| s.sub(&chromatic_sym(&g)))
            .expect("same degree");
        diff_sym(&chromatic_sym(&full), &rhs).is_none()
    });
    Ok(TripleDeletionReport {
        holds_ncsym,
        holds_sym,
        empty_term_balances,
        classical,
    })
}
