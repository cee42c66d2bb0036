//! Exact rationals, univariate/bivariate polynomials and small dense
//! linear algebra over the rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::parse("rational", s, e.to_string()))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Dense polynomial in one formal variable `m`; `coeffs[i]` multiplies `m^i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPolynomial {
    coeffs: Vec<Rational>,
}

impl UniPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UniPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `m`.
    pub fn var() -> Self {
        Self::new(vec![rat(0), rat(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, m: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * m + c)
    }

    pub fn eval_int(&self, m: i64) -> Rational {
        self.eval(&rat(m))
    }

    /// `p(m) -> p(-m)`.
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `m (m-1) ... (m-k+1)`.
    pub fn falling(k: usize) -> Self {
        (0..k).fold(Self::constant(rat(1)), |acc, j| {
            &acc * &Self::new(vec![rat(-(j as i64)), rat(1)])
        })
    }

    /// `m (m+1) ... (m+k-1)`.
    pub fn rising(k: usize) -> Self {
        (0..k).fold(Self::constant(rat(1)), |acc, j| {
            &acc * &Self::new(vec![rat(j as i64), rat(1)])
        })
    }

    /// `C(m + shift, k)` as a polynomial in `m`.
    pub fn binomial_shifted(shift: i64, k: usize) -> Self {
        let num = (0..k).fold(Self::constant(rat(1)), |acc, j| {
            &acc * &Self::new(vec![rat(shift - j as i64), rat(1)])
        });
        num.scale(&Rational::new(BigInt::one(), factorial(k)))
    }
}

impl Add for &UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, rhs: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPolynomial {
    type Output = UniPolynomial;
    fn sub(self, rhs: &UniPolynomial) -> UniPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPolynomial {
    type Output = UniPolynomial;
    fn neg(self) -> UniPolynomial {
        UniPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, rhs: &UniPolynomial) -> UniPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UniPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolynomial::new(out)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    c: &Rational,
    monomial: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if *first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    *first = false;
    if monomial.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{abs}*{monomial}")
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if !c.is_zero() {
                write_term(f, &mut first, c, &power("m", i))?;
            }
        }
        Ok(())
    }
}

/// Polynomial in two formal variables `m` and `n`, keyed by `(deg_m, deg_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPolynomial {
    terms: BTreeMap<(usize, usize), Rational>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, deg_m: usize, deg_n: usize, c: Rational) {
        let slot = self.terms.entry((deg_m, deg_n)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(deg_m, deg_n));
        }
    }

    /// Adds `p(m) * n^deg_n`.
    pub fn add_uni(&mut self, p: &UniPolynomial, deg_n: usize) {
        for (i, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                self.add_term(i, deg_n, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.terms
    }

    /// Specialize `n` to zero.
    pub fn at_n_zero(&self) -> UniPolynomial {
        let deg = self.terms.keys().map(|k| k.0).max().map_or(0, |d| d + 1);
        let mut coeffs = vec![Rational::zero(); deg];
        for ((i, j), c) in &self.terms {
            if *j == 0 {
                coeffs[*i] += c;
            }
        }
        UniPolynomial::new(coeffs)
    }

    pub fn eval(&self, m: &Rational, n: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j), c) in &self.terms {
            acc += c * num_traits::pow(m.clone(), *i) * num_traits::pow(n.clone(), *j);
        }
        acc
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((i, j), c) in self.terms.iter().rev() {
            let mono = match (power("m", *i), power("n", *j)) {
                (a, b) if a.is_empty() => b,
                (a, b) if b.is_empty() => a,
                (a, b) => format!("{a}*{b}"),
            };
            write_term(f, &mut first, c, &mono)?;
        }
        Ok(())
    }
}

pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { rat(1) } else { rat(0) }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner)
                        .filter(|&k| !row[k].is_zero())
                        .map(|k| &row[k] * &b[k][j])
                        .fold(Rational::zero(), |acc, x| acc + x)
                })
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut left = a.clone();
    let mut right = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !left[r][col].is_zero())?;
        left.swap(col, pivot);
        right.swap(col, pivot);
        let inv = left[col][col].recip();
        for j in 0..n {
            left[col][j] *= &inv;
            right[col][j] *= &inv;
        }
        for r in 0..n {
            if r != col && !left[r][col].is_zero() {
                let factor = left[r][col].clone();
                for j in 0..n {
                    let dl = &factor * &left[col][j];
                    left[r][j] -= dl;
                    let dr = &factor * &right[col][j];
                    right[r][j] -= dr;
                }
            }
        }
    }
    Some(right)
}

pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..rows {
            if !m[i][col].is_zero() {
                let factor = &m[i][col] / &m[r][col];
                let (upper, lower) = m.split_at_mut(i);
                for (x, p) in lower[0][col..].iter_mut().zip(&upper[r][col..]) {
                    *x -= &factor * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
