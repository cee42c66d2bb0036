use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::arith::{rat, Rational, UniPolynomial};
use crate::combinat::{Composition, IntPartition};
use crate::error::{Error, Result};
use crate::symfn::transition::{add_into, multiply_m, transition, Terms};
use crate::symfn::{Positivity, QSymBasis, QSymElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymBasis {
    Monomial,
    Elementary,
    PowerSum,
    Complete,
    Schur,
}

impl SymBasis {
    pub const ALL: [SymBasis; 5] = [
        SymBasis::Monomial,
        SymBasis::Elementary,
        SymBasis::PowerSum,
        SymBasis::Complete,
        SymBasis::Schur,
    ];

    pub fn letter(self) -> &'static str {
        match self {
            SymBasis::Monomial => "m",
            SymBasis::Elementary => "e",
            SymBasis::PowerSum => "p",
            SymBasis::Complete => "h",
            SymBasis::Schur => "s",
        }
    }
}

impl fmt::Display for SymBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

impl FromStr for SymBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "m" => Ok(SymBasis::Monomial),
            "e" => Ok(SymBasis::Elementary),
            "p" => Ok(SymBasis::PowerSum),
            "h" => Ok(SymBasis::Complete),
            "s" => Ok(SymBasis::Schur),
            other => Err(Error::parse("Sym basis", other, "expected one of m, e, p, h, s")),
        }
    }
}

/// A homogeneous symmetric function of fixed degree, expanded in one basis.
#[derive(Clone, Debug)]
pub struct SymElement {
    degree: usize,
    basis: SymBasis,
    terms: Terms,
}

impl SymElement {
    pub fn zero(degree: usize, basis: SymBasis) -> Self {
        SymElement {
            degree,
            basis,
            terms: Terms::new(),
        }
    }

    /// The single basis element `b_λ`.
    pub fn basis_element(basis: SymBasis, lambda: IntPartition) -> Self {
        let mut f = Self::zero(lambda.weight(), basis);
        f.terms.insert(lambda, rat(1));
        f
    }

    pub fn from_terms(
        degree: usize,
        basis: SymBasis,
        terms: impl IntoIterator<Item = (IntPartition, Rational)>,
    ) -> Result<Self> {
        let mut f = Self::zero(degree, basis);
        for (k, c) in terms {
            f.add_term(k, c)?;
        }
        Ok(f)
    }

    pub fn add_term(&mut self, key: IntPartition, c: Rational) -> Result<()> {
        if key.weight() != self.degree {
            return Err(Error::WeightMismatch(key.weight(), self.degree));
        }
        add_into(&mut self.terms, key, c);
        Ok(())
    }

    pub(crate) fn from_terms_unchecked(degree: usize, basis: SymBasis, terms: Terms) -> Self {
        SymElement {
            degree,
            basis,
            terms,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> SymBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<IntPartition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, key: &IntPartition) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.degree, self.basis);
        for (k, v) in &self.terms {
            add_into(&mut out.terms, k.clone(), v * c);
        }
        out
    }

    /// Sum, expressed in `self`'s basis.
    pub fn add(&self, other: &SymElement) -> Result<SymElement> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(Error::WeightMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (k, v) in other.to_basis(self.basis).terms {
            add_into(&mut out.terms, k, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymElement) -> Result<SymElement> {
        self.add(&other.scale(&rat(-1)))
    }

    /// Expansion in the monomial basis.
    pub fn to_m(&self) -> SymElement {
        if self.basis == SymBasis::Monomial {
            return self.clone();
        }
        let t = transition(self.basis, self.degree);
        let mut dense = vec![Rational::zero(); t.parts.len()];
        for (k, c) in &self.terms {
            let row = &t.to_m[t.index[k]];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    dense[j] += c * x;
                }
            }
        }
        let mut terms = Terms::new();
        for (j, c) in dense.into_iter().enumerate() {
            add_into(&mut terms, t.parts[j].clone(), c);
        }
        Self::from_terms_unchecked(self.degree, SymBasis::Monomial, terms)
    }

    /// Expansion in `target`, through `m` and the cached inverse transition matrix.
    ///
    /// # Panics
    /// If a transition matrix turns out singular, which would be a bug.
    pub fn to_basis(&self, target: SymBasis) -> SymElement {
        if target == self.basis {
            return self.clone();
        }
        let m = self.to_m();
        if target == SymBasis::Monomial {
            return m;
        }
        let t = transition(target, self.degree);
        let mut dense = vec![Rational::zero(); t.parts.len()];
        for (k, c) in &m.terms {
            let row = &t.from_m[t.index[k]];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    dense[j] += c * x;
                }
            }
        }
        let mut terms = Terms::new();
        for (j, c) in dense.into_iter().enumerate() {
            add_into(&mut terms, t.parts[j].clone(), c);
        }
        Self::from_terms_unchecked(self.degree, target, terms)
    }

    /// The involution `ω`, applied basis-natively: `e ↔ h` exchange keys,
    /// `p_λ` picks up `(-1)^{|λ|-l(λ)}`, `s_λ ↦ s_{λ'}`, and `m` goes through `p`.
    pub fn omega(&self) -> SymElement {
        match self.basis {
            SymBasis::Elementary => {
                Self::from_terms_unchecked(self.degree, SymBasis::Complete, self.terms.clone())
            }
            SymBasis::Complete => {
                Self::from_terms_unchecked(self.degree, SymBasis::Elementary, self.terms.clone())
            }
            SymBasis::PowerSum => {
                let mut terms = Terms::new();
                for (k, c) in &self.terms {
                    let v = if (k.weight() - k.len()) % 2 == 1 { -c } else { c.clone() };
                    add_into(&mut terms, k.clone(), v);
                }
                Self::from_terms_unchecked(self.degree, SymBasis::PowerSum, terms)
            }
            SymBasis::Schur => {
                let mut terms = Terms::new();
                for (k, c) in &self.terms {
                    add_into(&mut terms, k.conjugate(), c.clone());
                }
                Self::from_terms_unchecked(self.degree, SymBasis::Schur, terms)
            }
            SymBasis::Monomial => self
                .to_basis(SymBasis::PowerSum)
                .omega()
                .to_basis(SymBasis::Monomial),
        }
    }

    /// Product, expressed in `self`'s basis.
    pub fn multiply(&self, other: &SymElement) -> SymElement {
        let a = self.to_m();
        let b = other.to_m();
        let terms = multiply_m(&a.terms, self.degree, &b.terms, other.degree);
        Self::from_terms_unchecked(self.degree + other.degree, SymBasis::Monomial, terms)
            .to_basis(self.basis)
    }

    /// `m_λ = Σ_{α ∼ λ} M_α`.
    pub fn embed_in_qsym(&self) -> QSymElement {
        let m = self.to_m();
        let mut out = QSymElement::zero(self.degree, QSymBasis::Monomial);
        for (lambda, c) in &m.terms {
            let rearrangements = lambda
                .parts()
                .iter()
                .copied()
                .permutations(lambda.len())
                .unique();
            for alpha in rearrangements {
                let comp = Composition::new(alpha).expect("positive parts");
                out.add_composition(&comp, c.clone())
                    .expect("weight matches degree");
            }
        }
        out
    }

    /// `ps¹(f)(m) = f(1, .., 1, 0, ..)` with `m` ones.
    pub fn principal_specialization(&self) -> UniPolynomial {
        self.embed_in_qsym().principal_specialization()
    }

    /// Checks the coefficients in `basis`.
    pub fn positivity(&self, basis: SymBasis) -> Positivity<IntPartition> {
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

    /// True when every coefficient in the current basis is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficient vector over all partitions of the degree, in `m`.
    pub fn dense_m(&self) -> Vec<Rational> {
        let m = self.to_m();
        crate::combinat::int_partitions(self.degree)
            .iter()
            .map(|k| m.coeff(k))
            .collect()
    }
}

/// Equality as symmetric functions, regardless of the basis each side is stored in.
impl PartialEq for SymElement {
    fn eq(&self, other: &SymElement) -> bool {
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

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let abs = c.abs();
            if abs != rat(1) {
                write!(f, "{abs}*")?;
            }
            write!(f, "{}[{}]", self.basis, k)?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::combinat::int_partitions;

    fn p(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    fn el(b: SymBasis, s: &str) -> SymElement {
        SymElement::basis_element(b, p(s))
    }

    #[test]
    fn to_m_examples() {
        assert_eq!(el(SymBasis::PowerSum, "2").to_m(), el(SymBasis::Monomial, "2"));
        assert_eq!(el(SymBasis::Elementary, "2").to_m(), el(SymBasis::Monomial, "1,1"));
        let p11 = el(SymBasis::PowerSum, "1,1").to_m();
        assert_eq!(p11.coeff(&p("2")), rat(1));
        assert_eq!(p11.coeff(&p("1,1")), rat(2));
    }

    #[test]
    fn m_to_basis_examples() {
        let f = SymElement::from_terms(
            2,
            SymBasis::Monomial,
            [(p("2"), rat(1)), (p("1,1"), rat(2))],
        )
        .unwrap();
        let in_p = f.to_basis(SymBasis::PowerSum);
        assert_eq!(in_p.terms().len(), 1);
        assert_eq!(in_p.coeff(&p("1,1")), rat(1));
        for n in 1..=5 {
            let e = el(SymBasis::Elementary, &IntPartition::row(n).to_string());
            let s = e.to_basis(SymBasis::Schur);
            assert_eq!(s.terms().len(), 1);
            assert_eq!(s.coeff(&IntPartition::ones(n)), rat(1));
        }
        let h = el(SymBasis::Complete, "2,1");
        assert_eq!(h.to_m().to_basis(SymBasis::Complete).terms(), h.terms());
    }

    #[test]
    fn omega_examples() {
        let w = el(SymBasis::Complete, "2,1").omega();
        assert_eq!(w.basis(), SymBasis::Elementary);
        assert_eq!(w.coeff(&p("2,1")), rat(1));
        assert_eq!(el(SymBasis::PowerSum, "2").omega(), el(SymBasis::PowerSum, "2").scale(&rat(-1)));
        assert_eq!(el(SymBasis::PowerSum, "3").omega(), el(SymBasis::PowerSum, "3"));
        assert_eq!(el(SymBasis::Schur, "2,1").omega(), el(SymBasis::Schur, "2,1"));
        assert_eq!(el(SymBasis::Schur, "3").omega(), el(SymBasis::Schur, "1,1,1"));
    }

    #[test]
    fn round_trips_all_bases() {
        for n in 0..=6 {
            for lambda in int_partitions(n) {
                for from in SymBasis::ALL {
                    let f = SymElement::basis_element(from, lambda.clone());
                    for to in SymBasis::ALL {
                        let back = f.to_basis(to).to_basis(from);
                        assert_eq!(back.terms(), f.terms(), "{from}->{to}->{from} on {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn omega_commutes_with_conversion() {
        for n in 1..=5 {
            for lambda in int_partitions(n) {
                for b in SymBasis::ALL {
                    let f = SymElement::basis_element(b, lambda.clone());
                    let direct = f.omega();
                    for t in SymBasis::ALL {
                        assert_eq!(f.to_basis(t).omega(), direct);
                    }
                    assert_eq!(direct.omega(), f);
                }
            }
        }
    }

    #[test]
    fn multiply_examples() {
        let p1 = el(SymBasis::PowerSum, "1");
        assert_eq!(p1.multiply(&p1), el(SymBasis::PowerSum, "1,1"));
        let prod = el(SymBasis::Elementary, "1").multiply(&el(SymBasis::Elementary, "2"));
        assert_eq!(prod.basis(), SymBasis::Elementary);
        assert_eq!(prod.terms().len(), 1);
        assert_eq!(prod.coeff(&p("2,1")), rat(1));
        let one = el(SymBasis::Monomial, "");
        assert_eq!(p1.multiply(&one), p1);
    }

    #[test]
    fn embedding_and_projection() {
        let q = el(SymBasis::Monomial, "2,1").embed_in_qsym();
        assert_eq!(q.terms().len(), 2);
        assert_eq!(q.project_to_sym().unwrap(), el(SymBasis::Monomial, "2,1"));
        for n in 0..=6 {
            for lambda in int_partitions(n) {
                let f = el(SymBasis::Schur, &lambda.to_string());
                assert_eq!(f.embed_in_qsym().project_to_sym().unwrap(), f);
            }
        }
    }

    #[test]
    fn positivity_examples() {
        assert!(el(SymBasis::PowerSum, "1,1").positivity(SymBasis::Elementary).is_positive());
        let neg = el(SymBasis::Monomial, "1").scale(&rat(-1));
        assert_eq!(
            neg.positivity(SymBasis::Monomial),
            Positivity::Negative {
                key: p("1"),
                coeff: rat(-1)
            }
        );
        // p_2 = e_1^2 - 2 e_2
        match el(SymBasis::PowerSum, "2").positivity(SymBasis::Elementary) {
            Positivity::Negative { key, coeff } => {
                assert_eq!(key, p("2"));
                assert_eq!(coeff, rat(-2));
            }
            Positivity::Positive => panic!("p_2 is not e-positive"),
        }
    }

    #[test]
    fn principal_specialization_of_sym() {
        // m_{(2,1)} -> 2 C(m,2) = m^2 - m
        let ps = el(SymBasis::Monomial, "2,1").principal_specialization();
        assert_eq!(ps.eval_int(3), rat(6));
        // p_1^2 -> m^2
        let ps = el(SymBasis::PowerSum, "1,1").principal_specialization();
        assert_eq!(ps.to_string(), "m^2");
        let e2 = el(SymBasis::Elementary, "2").principal_specialization();
        assert_eq!(e2.eval_int(4), rat(6));
        assert_eq!(e2.coeff(2), ratio(1, 2));
    }
}
