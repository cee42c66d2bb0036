use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::arith::{rat, Rational, UniPolynomial};
use crate::combinat::{Composition, IntPartition, PositionSubset};
use crate::error::{Error, Result};
use crate::symfn::{Positivity, SymBasis, SymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QSymBasis {
    Monomial,
    Fundamental,
}

impl QSymBasis {
    pub fn letter(self) -> &'static str {
        match self {
            QSymBasis::Monomial => "M",
            QSymBasis::Fundamental => "F",
        }
    }
}

impl fmt::Display for QSymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for QSymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" => Ok(QSymBasis::Monomial),
            "F" => Ok(QSymBasis::Fundamental),
            other => Err(Error::parse("QSym basis", other, "expected M or F")),
        }
    }
}

type QTerms = BTreeMap<PositionSubset, Rational>;

fn add_q(terms: &mut QTerms, key: PositionSubset, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = terms.entry(key).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        terms.remove(&key);
    }
}

/// A homogeneous quasisymmetric function of fixed degree `n`, keyed by subsets of `[n-1]`.
#[derive(Clone, Debug)]
pub struct QSymElement {
    degree: usize,
    basis: QSymBasis,
    terms: QTerms,
}

impl QSymElement {
    pub fn zero(degree: usize, basis: QSymBasis) -> Self {
        QSymElement {
            degree,
            basis,
            terms: QTerms::new(),
        }
    }

    pub fn basis_element(basis: QSymBasis, key: PositionSubset) -> Self {
        let mut f = Self::zero(key.ambient(), basis);
        f.terms.insert(key, rat(1));
        f
    }

    pub fn from_terms(
        degree: usize,
        basis: QSymBasis,
        terms: impl IntoIterator<Item = (PositionSubset, Rational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, basis);
        for (k, c) in terms {
            f.add_term(k, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, key: PositionSubset, c: Rational) -> Result<()> {
        if key.ambient() != self.degree {
            return Err(Error::AmbientMismatch(key.ambient(), self.degree));
        }
        add_q(&mut self.terms, key, c);
        Ok(())
    }

    /// Adds `c` to the coefficient of the key `set(α)`.
    pub fn add_composition(&mut self, alpha: &Composition, c: Rational) -> Result<()> {
        if alpha.weight() != self.degree {
            return Err(Error::WeightMismatch(alpha.weight(), self.degree));
        }
        add_q(&mut self.terms, alpha.to_subset(), c);
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> QSymBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<PositionSubset, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: &PositionSubset) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (k, v) in &self.terms {
            add_q(&mut out.terms, *k, v * c);
        }
        out
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::WeightMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (k, v) in other.to_basis(self.basis).terms {
            add_q(&mut out.terms, k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSymElement) -> Result<QSymElement> {
        self.add(&other.scale(&rat(-1)))
    }

    /// `F_I = Σ_{J ⊇ I} M_J`, and its Möbius inverse `M_I = Σ_{J ⊇ I} (-1)^{|J∖I|} F_J`.
    pub fn to_basis(&self, target: QSymBasis) -> QSymElement {
        if target == self.basis {
            return self.clone();
        }
        let mut out = Self::zero(self.degree, target);
        for (i, c) in &self.terms {
            for j in i.supersets() {
                let v = if target == QSymBasis::Fundamental && (j.len() - i.len()) % 2 == 1 {
                    -c
                } else {
                    c.clone()
                };
                add_q(&mut out.terms, j, v);
            }
        }
        out
    }

    /// `ω(F_I) = F_{I^c}`; the result stays in `F`.
    pub fn omega(&self) -> QSymElement {
        let f = self.to_basis(QSymBasis::Fundamental);
        let mut out = Self::zero(self.degree, QSymBasis::Fundamental);
        for (k, c) in f.terms {
            add_q(&mut out.terms, k.complement(), c);
        }
        out
    }

    /// Product via the monomial expansion truncated to `deg f + deg g` variables:
    /// the coefficient of `M_γ` is read off the monomial `x_1^{γ_1} ⋯ x_l^{γ_l}`.
    pub fn multiply(&self, other: &QSymElement) -> QSymElement {
        let a = self.to_basis(QSymBasis::Monomial);
        let b = other.to_basis(QSymBasis::Monomial);
        let n = self.degree + other.degree;
        let mut out = Self::zero(n, QSymBasis::Monomial);
        if a.is_zero() || b.is_zero() {
            return out.to_basis(self.basis);
        }
        for gamma in crate::combinat::compositions(n) {
            let g = gamma.parts();
            let mut left = vec![0usize; g.len()];
            let mut acc = Rational::zero();
            split(g, 0, self.degree, &mut left, &a, &b, &mut acc);
            add_q(&mut out.terms, gamma.to_subset(), acc);
        }
        out.to_basis(self.basis)
    }

    /// `ps¹`: `M_α ↦ C(m, l(α))` and `F_I ↦ C(m + n - 1 - |I|, n)`.
    pub fn principal_specialization(&self) -> UniPolynomial {
        let n = self.degree;
        let mut out = UniPolynomial::zero();
        for (k, c) in &self.terms {
            let poly = match self.basis {
                QSymBasis::Monomial => {
                    let len = if n == 0 { 0 } else { k.len() + 1 };
                    UniPolynomial::binomial_shifted(0, len)
                }
                QSymBasis::Fundamental => {
                    UniPolynomial::binomial_shifted(n as i64 - 1 - k.len() as i64, n)
                }
            };
            out = &out + &poly.scale(c);
        }
        out
    }

    /// Inverse of the embedding `m_λ = Σ_{α ∼ λ} M_α`; rejects input whose
    /// `M`-coefficients differ within a rearrangement class.
    pub fn project_to_sym(&self) -> Result<SymElement> {
        let m = self.to_basis(QSymBasis::Monomial);
        let mut seen: BTreeMap<IntPartition, (Composition, Rational)> = BTreeMap::new();
        for alpha in crate::combinat::compositions(self.degree) {
            let c = m.coeff(&alpha.to_subset());
            let lambda = alpha.sorted_partition();
            match seen.get(&lambda) {
                None => {
                    seen.insert(lambda, (alpha, c));
                }
                Some((first, c0)) => {
                    if *c0 != c {
                        return Err(Error::NotSymmetric(first.to_string(), alpha.to_string()));
                    }
                }
            }
        }
        SymElement::from_terms(
            self.degree,
            SymBasis::Monomial,
            seen.into_iter().map(|(k, (_, c))| (k, c)),
        )
    }

    pub fn positivity(&self, basis: QSymBasis) -> Positivity<PositionSubset> {
        let f = self.to_basis(basis);
        for (k, c) in &f.terms {
            if c.is_negative() {
                return Positivity::Negative {
                    key: *k,
                    coeff: c.clone(),
                };
            }
        }
        Positivity::Positive
    }
}

/// Coefficient of `x^γ` in the product: split each exponent `γ_i = l_i + r_i`
/// and look up the packed (zero-free) left and right exponent vectors.
fn split(
    gamma: &[usize],
    i: usize,
    remaining: usize,
    left: &mut Vec<usize>,
    a: &QSymElement,
    b: &QSymElement,
    acc: &mut Rational,
) {
    if i == gamma.len() {
        if remaining != 0 {
            return;
        }
        let pack = |v: Vec<usize>| {
            let c = Composition::new(v.into_iter().filter(|&x| x > 0).collect())
                .expect("zeros removed");
            c.to_subset()
        };
        let l = pack(left.clone());
        let r = pack(gamma.iter().zip(left.iter()).map(|(g, l)| g - l).collect());
        if let (Some(x), Some(y)) = (a.terms.get(&l), b.terms.get(&r)) {
            *acc += x * y;
        }
        return;
    }
    let rest: usize = gamma[i + 1..].iter().sum();
    let lo = remaining.saturating_sub(rest);
    for li in lo..=gamma[i].min(remaining) {
        left[i] = li;
        split(gamma, i + 1, remaining - li, left, a, b, acc);
    }
    left[i] = 0;
}

/// Equality as quasisymmetric functions, regardless of storage basis.
impl PartialEq for QSymElement {
    fn eq(&self, other: &QSymElement) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.degree == other.degree
            && self.to_basis(QSymBasis::Monomial).terms == other.to_basis(QSymBasis::Monomial).terms
    }
}

impl fmt::Display for QSymElement {
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
            if abs != rat(1) {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}[{}]", self.basis, k.to_composition())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn set(e: &[usize], n: usize) -> PositionSubset {
        PositionSubset::new(e, n).unwrap()
    }

    fn f_el(e: &[usize], n: usize) -> QSymElement {
        QSymElement::basis_element(QSymBasis::Fundamental, set(e, n))
    }

    fn m_el(e: &[usize], n: usize) -> QSymElement {
        QSymElement::basis_element(QSymBasis::Monomial, set(e, n))
    }

    #[test]
    fn conversion_examples() {
        let m = f_el(&[], 2).to_basis(QSymBasis::Monomial);
        assert_eq!(m.terms().len(), 2);
        assert_eq!(m.coeff(&set(&[], 2)), rat(1));
        assert_eq!(m.coeff(&set(&[1], 2)), rat(1));
        let m = f_el(&[1], 2).to_basis(QSymBasis::Monomial);
        assert_eq!(m.terms().len(), 1);
        let f = m_el(&[], 2).to_basis(QSymBasis::Fundamental);
        assert_eq!(f.coeff(&set(&[], 2)), rat(1));
        assert_eq!(f.coeff(&set(&[1], 2)), rat(-1));
    }

    #[test]
    fn round_trip_and_omega_involution() {
        for n in 0..=6 {
            for i in PositionSubset::all(n) {
                for b in [QSymBasis::Monomial, QSymBasis::Fundamental] {
                    let x = QSymElement::basis_element(b, i);
                    let other = match b {
                        QSymBasis::Monomial => QSymBasis::Fundamental,
                        QSymBasis::Fundamental => QSymBasis::Monomial,
                    };
                    assert_eq!(x.to_basis(other).to_basis(b).terms(), x.terms());
                    assert_eq!(x.omega().omega().to_basis(b).terms(), x.terms());
                }
            }
        }
    }

    #[test]
    fn omega_examples() {
        let w = f_el(&[1], 3).omega();
        assert_eq!(w.terms().keys().copied().collect::<Vec<_>>(), vec![set(&[2], 3)]);
        let w = f_el(&[], 4).omega();
        assert_eq!(w.terms().keys().copied().collect::<Vec<_>>(), vec![PositionSubset::full(4)]);
    }

    #[test]
    fn multiply_examples() {
        let f1 = f_el(&[], 1);
        let prod = f1.multiply(&f1);
        assert_eq!(prod.basis(), QSymBasis::Fundamental);
        assert_eq!(prod.terms().len(), 2);
        assert_eq!(prod.coeff(&set(&[], 2)), rat(1));
        assert_eq!(prod.coeff(&set(&[1], 2)), rat(1));
        // quasi-shuffle: M_(1) M_(1) = 2 M_(1,1) + M_(2)
        let m1 = m_el(&[], 1);
        let prod = m1.multiply(&m1);
        assert_eq!(prod.coeff(&set(&[1], 2)), rat(2));
        assert_eq!(prod.coeff(&set(&[], 2)), rat(1));
        // M_(1) M_(2) = M_(1,2) + M_(2,1) + M_(3)
        let prod = m1.multiply(&m_el(&[], 2));
        assert_eq!(prod.terms().len(), 3);
        assert!(prod.terms().values().all(|c| *c == rat(1)));
    }

    #[test]
    fn ps1_examples() {
        let ps = m_el(&[2], 3).principal_specialization();
        assert_eq!(ps.coeff(2), ratio(1, 2));
        assert_eq!(ps.coeff(1), ratio(-1, 2));
        let ps = f_el(&[], 2).principal_specialization();
        assert_eq!(ps.eval_int(2), rat(3));
        for n in 1..=5 {
            let ps = QSymElement::basis_element(QSymBasis::Fundamental, PositionSubset::full(n))
                .principal_specialization();
            assert_eq!(ps, UniPolynomial::binomial_shifted(0, n));
        }
        assert_eq!(m_el(&[], 0).principal_specialization(), UniPolynomial::constant(rat(1)));
    }

    #[test]
    fn ps1_of_f_matches_direct_count() {
        // F_I(1^m) counts weakly increasing words i_1 ≤ .. ≤ i_n in [m], strict at positions of I
        fn count(n: usize, set: &PositionSubset, m: usize) -> i64 {
            fn rec(pos: usize, prev: usize, n: usize, set: &PositionSubset, m: usize) -> i64 {
                if pos > n {
                    return 1;
                }
                let lo = if pos > 1 && set.contains(pos - 1) { prev + 1 } else { prev.max(1) };
                (lo..=m).map(|v| rec(pos + 1, v, n, set, m)).sum()
            }
            rec(1, 1, n, set, m)
        }
        for n in 1..=5 {
            for i in PositionSubset::all(n) {
                let ps = QSymElement::basis_element(QSymBasis::Fundamental, i).principal_specialization();
                for m in 0..=4 {
                    assert_eq!(ps.eval_int(m as i64), rat(count(n, &i, m)), "F_{i} at m={m}");
                }
            }
        }
    }

    #[test]
    fn project_rejects_asymmetric() {
        let x = m_el(&[2], 3);
        assert_eq!(
            x.project_to_sym(),
            Err(Error::NotSymmetric("(1|2)".into(), "(2|1)".into()))
        );
        let y = x.add(&m_el(&[1], 3)).unwrap();
        let s = y.project_to_sym().unwrap();
        assert_eq!(s.coeff(&"2,1".parse().unwrap()), rat(1));
    }
}
