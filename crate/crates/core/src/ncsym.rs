//! Symmetric functions in noncommuting variables, indexed by set partitions.
//!
//! `m` is the canonical form. `p` and `h` are reached through the partition-lattice
//! formulas, `e` through `p` (`e_π = Σ_{σ≤π} μ(0̂,σ) p_σ`, i.e. `ω(h_π)`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Rational};
use crate::combinat::{compositions, set_partitions, Composition, IntPartition, SetPartition};
use crate::error::{Error, Result};
use crate::symfn::{Positivity, SymBasis, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NCSymBasis {
    Monomial,
    Elementary,
    PowerSum,
    Complete,
}

impl NCSymBasis {
    pub const ALL: [NCSymBasis; 4] = [
        NCSymBasis::Monomial,
        NCSymBasis::Elementary,
        NCSymBasis::PowerSum,
        NCSymBasis::Complete,
    ];

    pub fn letter(self) -> &'static str {
        match self {
            NCSymBasis::Monomial => "m",
            NCSymBasis::Elementary => "e",
            NCSymBasis::PowerSum => "p",
            NCSymBasis::Complete => "h",
        }
    }

    fn commutative(self) -> SymBasis {
        match self {
            NCSymBasis::Monomial => SymBasis::Monomial,
            NCSymBasis::Elementary => SymBasis::Elementary,
            NCSymBasis::PowerSum => SymBasis::PowerSum,
            NCSymBasis::Complete => SymBasis::Complete,
        }
    }
}

impl fmt::Display for NCSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for NCSymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "m" => Ok(NCSymBasis::Monomial),
            "e" => Ok(NCSymBasis::Elementary),
            "p" => Ok(NCSymBasis::PowerSum),
            "h" => Ok(NCSymBasis::Complete),
            other => Err(Error::parse("NCSym basis", other, "expected one of m, e, p, h")),
        }
    }
}

type NTerms = BTreeMap<SetPartition, Rational>;
type Row = Arc<Vec<(SetPartition, Rational)>>;

fn add_n(terms: &mut NTerms, key: SetPartition, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(key.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&key);
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum RowKind {
    /// `b_π` in `m`.
    ToM(NCSymBasis),
    /// `m_π` in `p`.
    MToP,
    /// `p_π` in `h` or `e`.
    PTo(NCSymBasis),
    /// `h_π` or `e_π` in `p`.
    ToP(NCSymBasis),
}

fn row_cache() -> &'static RwLock<HashMap<(RowKind, SetPartition), Row>> {
    static CACHE: OnceLock<RwLock<HashMap<(RowKind, SetPartition), Row>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn row(kind: RowKind, pi: &SetPartition) -> Row {
    let key = (kind, pi.clone());
    if let Some(r) = row_cache().read().expect("cache poisoned").get(&key) {
        return r.clone();
    }
    let r = Arc::new(compute_row(kind, pi));
    row_cache()
        .write()
        .expect("cache poisoned")
        .entry(key)
        .or_insert(r)
        .clone()
}

fn compute_row(kind: RowKind, pi: &SetPartition) -> Vec<(SetPartition, Rational)> {
    let n = pi.n();
    let all = || set_partitions(n);
    let bigr = |x: num_bigint::BigInt| Rational::from_integer(x);
    match kind {
        RowKind::ToM(NCSymBasis::Monomial) => vec![(pi.clone(), rat(1))],
        RowKind::ToM(NCSymBasis::PowerSum) => all()
            .filter(|s| pi.leq_unchecked(s))
            .map(|s| (s, rat(1)))
            .collect(),
        RowKind::ToM(NCSymBasis::Complete) => all()
            .map(|s| {
                let c = bigr(s.meet_unchecked(pi).block_factorial());
                (s, c)
            })
            .collect(),
        RowKind::ToM(NCSymBasis::Elementary) => all()
            .filter(|s| s.meet_unchecked(pi).is_bottom())
            .map(|s| (s, rat(1)))
            .collect(),
        RowKind::MToP => all()
            .filter(|s| pi.leq_unchecked(s))
            .map(|s| {
                let mu = bigr(pi.mobius_unchecked(&s));
                (s, mu)
            })
            .collect(),
        RowKind::ToP(b) => all()
            .filter(|s| s.leq_unchecked(pi))
            .map(|s| {
                let c = bigr(s.mobius_from_bottom_abs());
                let signed = if b == NCSymBasis::Elementary && (n - s.num_blocks()) % 2 == 1 {
                    -c
                } else {
                    c
                };
                (s, signed)
            })
            .collect(),
        RowKind::PTo(b) => {
            let denom = bigr(pi.mobius_from_bottom_abs());
            let denom = if b == NCSymBasis::Elementary && (n - pi.num_blocks()) % 2 == 1 {
                -denom
            } else {
                denom
            };
            all()
                .filter(|s| s.leq_unchecked(pi))
                .map(|s| {
                    let mu = bigr(s.mobius_unchecked(pi));
                    (s, mu / &denom)
                })
                .collect()
        }
    }
}

/// A homogeneous element of `NCSym` of fixed degree.
#[derive(Clone, Debug)]
pub struct NCSymElement {
    degree: usize,
    basis: NCSymBasis,
    terms: NTerms,
}

impl NCSymElement {
    pub fn zero(degree: usize, basis: NCSymBasis) -> Self {
        NCSymElement {
            degree,
            basis,
            terms: NTerms::new(),
        }
    }

    pub fn basis_element(basis: NCSymBasis, pi: SetPartition) -> Self {
        let mut f = Self::zero(pi.n(), basis);
        f.terms.insert(pi, rat(1));
        f
    }

    pub fn from_terms(
        degree: usize,
        basis: NCSymBasis,
        terms: impl IntoIterator<Item = (SetPartition, Rational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, basis);
        for (k, c) in terms {
            f.add_term(k, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, key: SetPartition, c: Rational) -> Result<()> {
        if key.n() != self.degree {
            return Err(Error::WeightMismatch(key.n(), self.degree));
        }
        add_n(&mut self.terms, key, c);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> NCSymBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<SetPartition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: &SetPartition) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (k, v) in &self.terms {
            add_n(&mut out.terms, k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &NCSymElement) -> Result<NCSymElement> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::WeightMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (k, v) in other.to_basis(self.basis).terms {
            add_n(&mut out.terms, k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NCSymElement) -> Result<NCSymElement> {
        self.add(&other.scale(&rat(-1)))
    }

    fn apply(&self, kind: RowKind, target: NCSymBasis) -> NCSymElement {
        let mut out = Self::zero(self.degree, target);
        for (k, c) in &self.terms {
            for (s, x) in row(kind, k).iter() {
                add_n(&mut out.terms, s.clone(), c * x);
            }
        }
        out
    }

    /// `p_π = Σ_{σ≥π} m_σ`, `h_π = Σ_σ (σ∧π)! m_σ`, `e_π = Σ_{σ∧π=0̂} m_σ`.
    pub fn to_m(&self) -> NCSymElement {
        self.apply(RowKind::ToM(self.basis), NCSymBasis::Monomial)
    }

    fn to_p(&self) -> NCSymElement {
        match self.basis {
            NCSymBasis::PowerSum => self.clone(),
            NCSymBasis::Monomial => self.apply(RowKind::MToP, NCSymBasis::PowerSum),
            b => self.apply(RowKind::ToP(b), NCSymBasis::PowerSum),
        }
    }

    pub fn to_basis(&self, target: NCSymBasis) -> NCSymElement {
        if target == self.basis {
            return self.clone();
        }
        if target == NCSymBasis::Monomial {
            return self.to_m();
        }
        let p = self.to_p();
        match target {
            NCSymBasis::PowerSum => p,
            b => p.apply(RowKind::PTo(b), b),
        }
    }

    /// `ω(p_π) = (-1)^{n-l(π)} p_π`; result expressed in `self`'s basis.
    pub fn omega(&self) -> NCSymElement {
        let p = self.to_p();
        let mut out = Self::zero(self.degree, NCSymBasis::PowerSum);
        for (k, c) in p.terms {
            let v = if (self.degree - k.num_blocks()) % 2 == 1 { -c } else { c };
            add_n(&mut out.terms, k, v);
        }
        out.to_basis(self.basis)
    }

    /// Induction `↑`: `m_π ↦ m_{π+(n+1)}` and `p_π ↦ p_{π+(n+1)}`; `e`, `h` go through `p`.
    pub fn induct(&self) -> Result<NCSymElement> {
        if self.degree == 0 {
            return Err(Error::pre("induction needs degree at least 1"));
        }
        let (src, basis) = match self.basis {
            NCSymBasis::Monomial => (self.clone(), NCSymBasis::Monomial),
            _ => (self.to_p(), NCSymBasis::PowerSum),
        };
        let mut out = Self::zero(self.degree + 1, basis);
        for (k, c) in src.terms {
            add_n(&mut out.terms, k.plus_next(), c);
        }
        Ok(out.to_basis(self.basis))
    }

    /// Letting the variables commute.
    pub fn rho(&self) -> SymElement {
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let factor = match self.basis {
                NCSymBasis::Monomial => k.multiplicity_factorial(),
                NCSymBasis::PowerSum => 1.into(),
                NCSymBasis::Elementary | NCSymBasis::Complete => k.block_factorial(),
            };
            let v = c * Rational::from_integer(factor);
            let lambda = k.type_partition();
            let e = terms.entry(lambda).or_insert_with(Rational::zero);
            *e += v;
        }
        SymElement::from_terms(self.degree, self.basis.commutative(), terms)
            .expect("types have the right weight")
    }

    /// Position action: every key `π` becomes `δ(π)`. `delta[i]` is the image of `i`.
    pub fn sn_action(&self, delta: &[usize]) -> Result<NCSymElement> {
        let n = self.degree;
        let mut seen = vec![false; n];
        if delta.len() != n || delta.iter().any(|&d| d >= n || std::mem::replace(&mut seen[d], true)) {
            return Err(Error::pre(format!("{delta:?} is not a permutation of {n} elements")));
        }
        let mut out = Self::zero(n, self.basis);
        for (k, c) in &self.terms {
            add_n(&mut out.terms, k.permute(delta), c.clone());
        }
        Ok(out)
    }

    /// Product, expressed in `self`'s basis. In `m`, `m_π m_σ` sums `m_τ` over all
    /// `τ` restricting to `π` on the first `a` elements and to `σ` on the rest.
    pub fn multiply(&self, other: &NCSymElement) -> NCSymElement {
        let a = self.to_m();
        let b = other.to_m();
        let mut out = Self::zero(self.degree + other.degree, NCSymBasis::Monomial);
        for (pi, x) in &a.terms {
            for (sigma, y) in &b.terms {
                let xy = x * y;
                for tau in merges(pi, sigma) {
                    add_n(&mut out.terms, tau, xy.clone());
                }
            }
        }
        out.to_basis(self.basis)
    }

    /// Sums the `h`-coefficients over each `≡_i` class, keyed by `(λ(τ), |B_{τ,i}|)`.
    /// `i` is 0-based.
    pub fn congruence_collapse(&self, i: usize) -> Result<BTreeMap<(IntPartition, usize), Rational>> {
        if i >= self.degree {
            return Err(Error::OutOfRange {
                element: i + 1,
                bound: self.degree,
            });
        }
        let h = self.to_basis(NCSymBasis::Complete);
        let mut out: BTreeMap<(IntPartition, usize), Rational> = BTreeMap::new();
        for (k, c) in h.terms {
            let e = out
                .entry((k.type_partition(), k.block_size_of(i)))
                .or_insert_with(Rational::zero);
            *e += c;
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn positivity(&self, basis: NCSymBasis) -> Positivity<SetPartition> {
        let f = self.to_basis(basis);
        for (k, c) in &f.terms {
            if c.is_negative() {
                return Positivity::Negative {
                    key: k.clone(),
                    coeff: c.clone(),
                };
            }
        }
        Positivity::Positive
    }
}

/// All `τ` of `[a+b]` restricting to `π` on `[a]` and to `σ` (shifted) on the rest:
/// each block of `σ` either stays alone or merges with a distinct block of `π`.
fn merges(pi: &SetPartition, sigma: &SetPartition) -> Vec<SetPartition> {
    let k = pi.num_blocks();
    let mut out = Vec::new();
    let mut assign = vec![0usize; sigma.num_blocks()];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        k: usize,
        used: u64,
        fresh: usize,
        assign: &mut Vec<usize>,
        pi: &SetPartition,
        sigma: &SetPartition,
        out: &mut Vec<SetPartition>,
    ) {
        if j == assign.len() {
            let labels: Vec<usize> = pi
                .rgs()
                .iter()
                .map(|&b| b as usize)
                .chain(sigma.rgs().iter().map(|&b| assign[b as usize]))
                .collect();
            out.push(SetPartition::from_labels(&labels));
            return;
        }
        for t in 0..k {
            if used >> t & 1 == 0 {
                assign[j] = t;
                rec(j + 1, k, used | 1 << t, fresh, assign, pi, sigma, out);
            }
        }
        assign[j] = fresh;
        rec(j + 1, k, used, fresh + 1, assign, pi, sigma, out);
    }
    rec(0, k, 0, k, &mut assign, pi, sigma, &mut out);
    out
}

/// Equality in `NCSym`, regardless of storage basis.
impl PartialEq for NCSymElement {
    fn eq(&self, other: &NCSymElement) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.degree != other.degree {
            return false;
        }
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        self.to_m().terms == other.to_m().terms
    }
}

impl fmt::Display for NCSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}[{}]", self.basis, k)?;
        }
        Ok(())
    }
}

/// A failed instance of the grouped-coefficient rule for `h_π↑`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionViolation {
    pub pi: SetPartition,
    pub alpha: Option<Composition>,
    pub detail: String,
}

impl fmt::Display for InductionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.alpha {
            Some(a) => write!(f, "π={} α={}: {}", self.pi, a, self.detail),
            None => write!(f, "π={}: {}", self.pi, self.detail),
        }
    }
}

/// `P(α)`: partitions `τ ≤ π+(n+1)` whose blocks can be listed as `B_1/…/B_l`
/// with `|B_j| = α_j` and the new element in `B_1`.
fn in_p_alpha(tau: &SetPartition, alpha: &Composition) -> bool {
    let last = tau.n() - 1;
    let first = tau.block_size_of(last);
    if alpha.parts()[0] != first {
        return false;
    }
    let mut rest: Vec<usize> = tau.block_sizes();
    let pos = rest.iter().position(|&s| s == first).expect("own block present");
    rest.remove(pos);
    rest.sort_unstable();
    let mut want = alpha.parts()[1..].to_vec();
    want.sort_unstable();
    rest == want
}

/// Checks the support and the grouped sums of `h_π↑` in the `h` basis.
pub fn check_induction_theorem(pi: &SetPartition) -> std::result::Result<(), InductionViolation> {
    let violation = |alpha: Option<Composition>, detail: String| InductionViolation {
        pi: pi.clone(),
        alpha,
        detail,
    };
    let n = pi.n();
    if n == 0 {
        return Err(violation(None, "degree 0".into()));
    }
    let up = NCSymElement::basis_element(NCSymBasis::Complete, pi.clone())
        .induct()
        .expect("degree ≥ 1")
        .to_basis(NCSymBasis::Complete);
    let plus = pi.plus_next();
    let slash = pi.slash_next();
    for tau in up.terms.keys() {
        if !tau.leq_unchecked(&plus) {
            return Err(violation(None, format!("coefficient at {tau} outside [0̂, {plus}]")));
        }
    }
    let inv = Rational::new(1.into(), pi.block_size_of(n - 1).into());
    let below: Vec<SetPartition> = set_partitions(n + 1).filter(|t| t.leq_unchecked(&plus)).collect();
    for alpha in compositions(n + 1) {
        let members: Vec<&SetPartition> = below.iter().filter(|t| in_p_alpha(t, &alpha)).collect();
        let sum: Rational = members.iter().map(|t| up.coeff(t)).sum();
        let expected = if members.len() == 1 && *members[0] == slash {
            -inv.clone()
        } else if members.len() == 1 && *members[0] == plus {
            inv.clone()
        } else {
            Rational::zero()
        };
        if sum != expected {
            return Err(violation(
                Some(alpha),
                format!("grouped sum {sum}, expected {expected}"),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn el(b: NCSymBasis, s: &str) -> NCSymElement {
        NCSymElement::basis_element(b, sp(s))
    }

    fn terms(f: &NCSymElement) -> Vec<(String, Rational)> {
        f.terms().iter().map(|(k, c)| (k.to_string(), c.clone())).collect()
    }

    #[test]
    fn to_m_examples() {
        assert_eq!(
            terms(&el(NCSymBasis::PowerSum, "1/2").to_m()),
            vec![("12".into(), rat(1)), ("1/2".into(), rat(1))]
        );
        assert_eq!(
            terms(&el(NCSymBasis::Complete, "12").to_m()),
            vec![("12".into(), rat(2)), ("1/2".into(), rat(1))]
        );
        assert_eq!(
            terms(&el(NCSymBasis::Elementary, "12").to_m()),
            vec![("1/2".into(), rat(1))]
        );
    }

    #[test]
    fn from_m_examples() {
        assert_eq!(
            terms(&el(NCSymBasis::Monomial, "12").to_basis(NCSymBasis::PowerSum)),
            vec![("12".into(), rat(1))]
        );
        assert_eq!(
            terms(&el(NCSymBasis::Monomial, "1/2").to_basis(NCSymBasis::PowerSum)),
            vec![("12".into(), rat(-1)), ("1/2".into(), rat(1))]
        );
        assert_eq!(
            terms(&el(NCSymBasis::Complete, "12").to_basis(NCSymBasis::PowerSum)),
            vec![("12".into(), rat(1)), ("1/2".into(), rat(1))]
        );
    }

    #[test]
    fn round_trips_degree_four() {
        for n in 0..=4 {
            for pi in set_partitions(n) {
                for a in NCSymBasis::ALL {
                    let f = NCSymElement::basis_element(a, pi.clone());
                    for b in NCSymBasis::ALL {
                        assert_eq!(f.to_basis(b).to_basis(a).terms(), f.terms(), "{a}->{b} {pi}");
                    }
                }
            }
        }
    }

    #[test]
    fn e_matches_matrix_inverse() {
        // the e-row route through p agrees with inverting the e->m matrix
        for n in 1..=4 {
            let parts: Vec<SetPartition> = set_partitions(n).collect();
            let mat: Vec<Vec<Rational>> = parts
                .iter()
                .map(|pi| {
                    let m = el(NCSymBasis::Elementary, &pi.to_string()).to_m();
                    parts.iter().map(|s| m.coeff(s)).collect()
                })
                .collect();
            let inv = crate::arith::invert(&mat).expect("basis");
            for (i, pi) in parts.iter().enumerate() {
                let e = el(NCSymBasis::Monomial, &pi.to_string()).to_basis(NCSymBasis::Elementary);
                for (j, s) in parts.iter().enumerate() {
                    assert_eq!(e.coeff(s), inv[i][j]);
                }
            }
        }
    }

    #[test]
    fn e_matches_word_definition() {
        // e_π counts words avoiding equal letters inside blocks; compare kernel counts over 4 letters
        for n in 1..=4 {
            for pi in set_partitions(n) {
                let m = el(NCSymBasis::Elementary, &pi.to_string()).to_m();
                let mut counts: BTreeMap<SetPartition, usize> = BTreeMap::new();
                for w in 0..n.pow(n as u32) {
                    let word: Vec<usize> = (0..n).map(|i| w / n.pow(i as u32) % n).collect();
                    let ok = (0..n).all(|j| (0..j).all(|k| !pi.same_block(j, k) || word[j] != word[k]));
                    if ok {
                        *counts.entry(SetPartition::from_labels(&word)).or_default() += 1;
                    }
                }
                for (kernel, c) in counts {
                    // each kernel with l blocks arises from n(n-1)...(n-l+1) words
                    let l = kernel.num_blocks();
                    let per: usize = (0..l).map(|i| n - i).product();
                    assert_eq!(Rational::from_integer((c / per).into()), m.coeff(&kernel));
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let w = el(NCSymBasis::Complete, "12").omega();
        assert_eq!(w, el(NCSymBasis::Elementary, "12"));
        assert_eq!(
            terms(&w.to_basis(NCSymBasis::PowerSum)),
            vec![("12".into(), rat(-1)), ("1/2".into(), rat(1))]
        );
        assert_eq!(el(NCSymBasis::PowerSum, "1/2/3").omega(), el(NCSymBasis::PowerSum, "1/2/3"));
        for n in 1..=4 {
            for pi in set_partitions(n) {
                let e = NCSymElement::basis_element(NCSymBasis::Elementary, pi.clone());
                let h = NCSymElement::basis_element(NCSymBasis::Complete, pi.clone());
                assert_eq!(e.omega(), h);
                assert_eq!(h.omega().omega(), h);
            }
        }
    }

    #[test]
    fn induction_examples() {
        assert_eq!(
            el(NCSymBasis::Monomial, "1/2").induct().unwrap(),
            el(NCSymBasis::Monomial, "1/23")
        );
        assert_eq!(
            el(NCSymBasis::PowerSum, "12").induct().unwrap(),
            el(NCSymBasis::PowerSum, "123")
        );
        assert!(NCSymElement::zero(0, NCSymBasis::Monomial).induct().is_err());
    }

    #[test]
    fn induction_of_h_matches_closed_expansion() {
        for n in 1..=4 {
            for pi in set_partitions(n) {
                let got = el(NCSymBasis::Complete, &pi.to_string()).induct().unwrap();
                assert_eq!(got.basis(), NCSymBasis::Complete);
                let mut want = NCSymElement::zero(n + 1, NCSymBasis::Complete);
                for sigma in set_partitions(n).filter(|s| s.leq_unchecked(&pi)) {
                    let up = sigma.plus_next();
                    let ratio_c = Rational::new(
                        sigma.mobius_from_bottom_abs(),
                        up.mobius_from_bottom_abs(),
                    );
                    for tau in set_partitions(n + 1).filter(|t| t.leq_unchecked(&up)) {
                        let mu = Rational::from_integer(tau.mobius_unchecked(&up));
                        want.add_term(tau, &ratio_c * mu).unwrap();
                    }
                }
                assert_eq!(got.terms(), want.terms(), "h_{pi}↑");
            }
        }
    }

    #[test]
    fn omega_anticommutes_with_induction() {
        for n in 1..=4 {
            for pi in set_partitions(n) {
                for b in NCSymBasis::ALL {
                    let f = NCSymElement::basis_element(b, pi.clone());
                    let lhs = f.induct().unwrap().omega();
                    let rhs = f.omega().induct().unwrap().scale(&rat(-1));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rho_examples() {
        let r = el(NCSymBasis::Monomial, "12/3").rho();
        assert_eq!(r, SymElement::basis_element(SymBasis::Monomial, "2,1".parse().unwrap()));
        let r = el(NCSymBasis::Monomial, "1/2").rho();
        assert_eq!(r.coeff(&"1,1".parse().unwrap()), rat(2));
        assert_eq!(
            el(NCSymBasis::PowerSum, "1/23").rho(),
            SymElement::basis_element(SymBasis::PowerSum, "2,1".parse().unwrap())
        );
        let r = el(NCSymBasis::Complete, "123").rho();
        assert_eq!(r.coeff(&"3".parse().unwrap()), rat(6));
    }

    #[test]
    fn rho_commutes_with_omega() {
        for n in 0..=4 {
            for pi in set_partitions(n) {
                for b in NCSymBasis::ALL {
                    let f = NCSymElement::basis_element(b, pi.clone());
                    assert_eq!(f.omega().rho(), f.rho().omega());
                    assert_eq!(f.to_m().rho(), f.rho());
                }
            }
        }
    }

    #[test]
    fn sn_action_examples() {
        let f = el(NCSymBasis::Monomial, "1/23");
        let g = f.sn_action(&[1, 0, 2]).unwrap();
        assert_eq!(terms(&g), vec![("13/2".into(), rat(1))]);
        assert_eq!(f.sn_action(&[0, 1, 2]).unwrap(), f);
        assert!(f.sn_action(&[0, 0, 1]).is_err());
        // group action on a mixed element
        let h = el(NCSymBasis::Complete, "12/3").add(&el(NCSymBasis::Complete, "1/2/3")).unwrap();
        let d1 = [1, 2, 0];
        let d2 = [0, 2, 1];
        let composed: Vec<usize> = (0..3).map(|i| d1[d2[i]]).collect();
        assert_eq!(
            h.sn_action(&d2).unwrap().sn_action(&d1).unwrap(),
            h.sn_action(&composed).unwrap()
        );
        // relabeling in h agrees with relabeling in m
        assert_eq!(h.to_m().sn_action(&d1).unwrap(), h.sn_action(&d1).unwrap());
    }

    #[test]
    fn multiply_examples() {
        let m1 = el(NCSymBasis::Monomial, "1");
        assert_eq!(
            terms(&m1.multiply(&m1)),
            vec![("12".into(), rat(1)), ("1/2".into(), rat(1))]
        );
        let h = el(NCSymBasis::Complete, "12");
        let prod = h.multiply(&h);
        assert_eq!(terms(&prod), vec![("12/34".into(), rat(1))]);
        let unit = el(NCSymBasis::Monomial, "");
        assert_eq!(h.multiply(&unit), h);
        assert_eq!(unit.multiply(&h), h);
    }

    #[test]
    fn multiply_matches_word_convolution() {
        // coefficient of m_τ in m_π m_σ = [kernel(uv) = τ] summed over words u, v with kernels π, σ
        for a in 1..=2 {
            for b in 1..=2 {
                let letters = a + b;
                for pi in set_partitions(a) {
                    for sigma in set_partitions(b) {
                        let prod = el(NCSymBasis::Monomial, &pi.to_string())
                            .multiply(&el(NCSymBasis::Monomial, &sigma.to_string()));
                        let mut seen: BTreeMap<SetPartition, usize> = BTreeMap::new();
                        for w in 0..letters.pow(letters as u32) {
                            let word: Vec<usize> =
                                (0..letters).map(|i| w / letters.pow(i as u32) % letters).collect();
                            if SetPartition::from_labels(&word[..a]) == pi
                                && SetPartition::from_labels(&word[a..]) == sigma
                            {
                                *seen.entry(SetPartition::from_labels(&word)).or_default() += 1;
                            }
                        }
                        let got: Vec<SetPartition> = prod.terms().keys().cloned().collect();
                        let want: Vec<SetPartition> = seen.keys().cloned().collect();
                        assert_eq!(got, want);
                        assert!(prod.terms().values().all(|c| *c == rat(1)));
                    }
                }
            }
        }
    }

    #[test]
    fn congruence_examples() {
        let f = el(NCSymBasis::Complete, "12/3").add(&el(NCSymBasis::Complete, "13/2")).unwrap();
        let c = f.congruence_collapse(2).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[&("2,1".parse().unwrap(), 1)], rat(1));
        assert_eq!(c[&("2,1".parse().unwrap(), 2)], rat(1));
        assert!(NCSymElement::zero(3, NCSymBasis::Complete)
            .congruence_collapse(0)
            .unwrap()
            .is_empty());
        assert!(f.congruence_collapse(3).is_err());
    }

    #[test]
    fn collapse_of_induced_h() {
        for n in 1..=4 {
            for pi in set_partitions(n) {
                let up = el(NCSymBasis::Complete, &pi.to_string()).induct().unwrap();
                let c = up.congruence_collapse(n).unwrap();
                let b = pi.block_size_of(n - 1);
                let inv = ratio(1, b as i64);
                let plus = pi.plus_next();
                let slash = pi.slash_next();
                let kp = (plus.type_partition(), plus.block_size_of(n));
                let ks = (slash.type_partition(), 1);
                let want = BTreeMap::from([(kp, inv.clone()), (ks, -inv)]);
                assert_eq!(c, want, "{pi}");
            }
        }
    }

    #[test]
    fn induction_theorem_holds() {
        assert!(check_induction_theorem(&sp("12")).is_ok());
        assert!(check_induction_theorem(&sp("1/2")).is_ok());
        for n in 1..=4 {
            for pi in set_partitions(n) {
                if let Err(v) = check_induction_theorem(&pi) {
                    panic!("{v}");
                }
            }
        }
    }

    #[test]
    fn positivity_certificate() {
        let w = el(NCSymBasis::Monomial, "1/2");
        match w.positivity(NCSymBasis::PowerSum) {
            Positivity::Negative { key, coeff } => {
                assert_eq!(key, sp("12"));
                assert_eq!(coeff, rat(-1));
            }
            Positivity::Positive => panic!(),
        }
        assert!(el(NCSymBasis::Complete, "12").positivity(NCSymBasis::PowerSum).is_positive());
    }
}
