use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::arith::{invert, rat, Matrix, Rational};
use crate::combinat::{for_each_permutation, int_partitions, permutation_sign, IntPartition};
use crate::symfn::SymBasis;

pub(crate) type Terms = BTreeMap<IntPartition, Rational>;

pub(crate) fn add_into(terms: &mut Terms, key: IntPartition, c: Rational) {
    if c.is_zero() {
        return;
    }
    let slot = terms.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        terms.remove(&key);
    }
}

/// Product of two `m`-expansions of degrees `a` and `b`.
///
/// A degree `a + b` symmetric function is determined by its monomials in
/// `a + b` variables, and `[x^ν] m_λ = 1` exactly when `ν` sorts to `λ`, so
/// the coefficient of `m_ν` is the coefficient of `x^ν` in the product of the
/// two truncated polynomials.
pub(crate) fn multiply_m(f: &Terms, a: usize, g: &Terms, b: usize) -> Terms {
    let mut out = Terms::new();
    if f.is_empty() || g.is_empty() {
        return out;
    }
    for nu in int_partitions(a + b) {
        let parts = nu.parts();
        let mut x = vec![0usize; parts.len()];
        let mut acc = Rational::zero();
        split_rec(parts, 0, a, &mut x, &mut |x| {
            let left = IntPartition::from_multiset(x.to_vec());
            let Some(cf) = f.get(&left) else { return };
            let rest: Vec<usize> = parts.iter().zip(x).map(|(p, q)| p - q).collect();
            if let Some(cg) = g.get(&IntPartition::from_multiset(rest)) {
                acc += cf * cg;
            }
        });
        add_into(&mut out, nu, acc);
    }
    out
}

/// Visits every vector `x` with `0 <= x_i <= bound_i` summing to `target`.
pub(crate) fn split_rec(
    bound: &[usize],
    i: usize,
    target: usize,
    x: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if i == bound.len() {
        if target == 0 {
            visit(x);
        }
        return;
    }
    let remaining: usize = bound[i + 1..].iter().sum();
    let lo = target.saturating_sub(remaining);
    for v in lo..=bound[i].min(target) {
        x[i] = v;
        split_rec(bound, i + 1, target - v, x, visit);
    }
    x[i] = 0;
}

fn product_of(factors: &[(Terms, usize)]) -> Terms {
    let mut acc = Terms::new();
    acc.insert(IntPartition::empty(), rat(1));
    let mut deg = 0;
    for (t, d) in factors {
        acc = multiply_m(&acc, deg, t, *d);
        deg += d;
    }
    acc
}

fn generator_m(basis: SymBasis, k: usize) -> Terms {
    let mut t = Terms::new();
    match basis {
        SymBasis::PowerSum => {
            t.insert(IntPartition::row(k), rat(1));
        }
        SymBasis::Elementary => {
            t.insert(IntPartition::ones(k), rat(1));
        }
        SymBasis::Complete => {
            for mu in int_partitions(k) {
                t.insert(mu, rat(1));
            }
        }
        SymBasis::Monomial | SymBasis::Schur => unreachable!("not multiplicative"),
    }
    t
}

/// Jacobi-Trudi: `s_λ = det(h_{λ_i - i + j})` expanded over the `h` basis.
pub(crate) fn jacobi_trudi(lambda: &IntPartition) -> Terms {
    let parts = lambda.parts();
    let k = parts.len();
    let mut out = Terms::new();
    for_each_permutation(k, |perm| {
        let mut idx = Vec::with_capacity(k);
        for (i, &p) in parts.iter().enumerate() {
            let v = p as i64 - i as i64 + perm[i] as i64;
            if v < 0 {
                return;
            }
            idx.push(v as usize);
        }
        add_into(
            &mut out,
            IntPartition::from_multiset(idx),
            rat(permutation_sign(perm)),
        );
    });
    out
}

/// Transition data between a basis and `m` in one degree.
pub(crate) struct Transition {
    pub parts: Vec<IntPartition>,
    pub index: HashMap<IntPartition, usize>,
    /// Row `i` is the `m`-expansion of the basis element `parts[i]`.
    pub to_m: Matrix,
    pub from_m: Matrix,
}

type Cache = RwLock<HashMap<(SymBasis, usize), Arc<Transition>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn row_of(basis: SymBasis, lambda: &IntPartition, n: usize) -> Terms {
    match basis {
        SymBasis::Schur => {
            let h = transition(SymBasis::Complete, n);
            let mut out = Terms::new();
            for (mu, c) in jacobi_trudi(lambda) {
                let row = &h.to_m[h.index[&mu]];
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        add_into(&mut out, h.parts[j].clone(), &c * x);
                    }
                }
            }
            out
        }
        SymBasis::Monomial => {
            let mut t = Terms::new();
            t.insert(lambda.clone(), rat(1));
            t
        }
        _ => {
            let factors: Vec<(Terms, usize)> = lambda
                .parts()
                .iter()
                .map(|&k| (generator_m(basis, k), k))
                .collect();
            product_of(&factors)
        }
    }
}

pub(crate) fn transition(basis: SymBasis, n: usize) -> Arc<Transition> {
    if let Some(t) = cache().read().expect("cache poisoned").get(&(basis, n)) {
        return t.clone();
    }
    // computed outside the lock; concurrent fills produce identical data
    let parts = int_partitions(n);
    let index: HashMap<IntPartition, usize> =
        parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let to_m: Matrix = parts
        .iter()
        .map(|lambda| {
            let row = row_of(basis, lambda, n);
            let mut dense = vec![Rational::zero(); parts.len()];
            for (mu, c) in row {
                dense[index[&mu]] = c;
            }
            dense
        })
        .collect();
    let from_m = invert(&to_m)
        .unwrap_or_else(|| panic!("singular transition matrix for {basis:?} in degree {n}"));
    let t = Arc::new(Transition {
        parts,
        index,
        to_m,
        from_m,
    });
    cache()
        .write()
        .expect("cache poisoned")
        .entry((basis, n))
        .or_insert(t)
        .clone()
}

/// The matrix whose row `i` is the `m`-expansion of `basis[parts[i]]`, together with the row labels.
pub fn transition_matrix(basis: SymBasis, n: usize) -> (Vec<IntPartition>, Matrix) {
    let t = transition(basis, n);
    (t.parts.clone(), t.to_m.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{identity, mat_mul};

    fn p(s: &str) -> IntPartition {
        s.parse().unwrap()
    }

    #[test]
    fn jacobi_trudi_small() {
        // s_{(1,1)} = h_1^2 - h_2
        let jt = jacobi_trudi(&p("1,1"));
        assert_eq!(jt.get(&p("1,1")), Some(&rat(1)));
        assert_eq!(jt.get(&p("2")), Some(&rat(-1)));
        assert_eq!(jt.len(), 2);
    }

    #[test]
    fn transition_times_inverse_is_identity() {
        for n in 0..=6 {
            for b in [
                SymBasis::Elementary,
                SymBasis::PowerSum,
                SymBasis::Complete,
                SymBasis::Schur,
            ] {
                let t = transition(b, n);
                let k = t.parts.len();
                assert_eq!(mat_mul(&t.to_m, &t.from_m), identity(k), "{b:?} n={n}");
            }
        }
    }

    #[test]
    fn p11_in_two_variables() {
        // (x1 + x2)^2 = m_2 + 2 m_11
        let t = transition(SymBasis::PowerSum, 2);
        let row = &t.to_m[t.index[&p("1,1")]];
        assert_eq!(row[t.index[&p("2")]], rat(1));
        assert_eq!(row[t.index[&p("1,1")]], rat(2));
    }
}
