use std::fmt;

use itertools::Itertools;

/// A listing of `{0, .., n-1}`: a bijection from positions to elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Listing(pub Vec<usize>);

impl Listing {
    pub fn reversed(&self) -> Listing {
        Listing(self.0.iter().rev().copied().collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Listing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(|e| (e + 1).to_string()).collect();
        write!(f, "{}", items.join(" "))
    }
}

/// All listings of `n` elements in lexicographic order.
pub fn listings(n: usize) -> impl Iterator<Item = Listing> {
    (0..n).permutations(n).map(Listing)
}

/// Visits every permutation of `0..n` in place (Heap's algorithm, no allocation per item).
pub fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// +1 or -1.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn heap_visits_every_permutation_once() {
        for n in 0..7 {
            let mut seen = BTreeSet::new();
            for_each_permutation(n, |p| {
                seen.insert(p.to_vec());
            });
            assert_eq!(seen.len(), (1..=n).product::<usize>().max(1));
        }
    }

    #[test]
    fn listings_lexicographic() {
        let ls: Vec<Listing> = listings(3).collect();
        assert_eq!(ls.len(), 6);
        assert_eq!(ls[0].to_string(), "1 2 3");
        assert_eq!(ls[5].to_string(), "3 2 1");
        assert_eq!(ls[0].reversed(), ls[5]);
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
