//! Partitions, compositions, position subsets, set partitions and listings.

mod composition;
mod listing;
mod partition;
mod setpart;

pub use composition::{compositions, Composition, PositionSubset};
pub use listing::{for_each_permutation, listings, permutation_sign, Listing};
pub use partition::{int_partitions, IntPartition};
pub use setpart::{set_partitions, SetPartition};

/// All subsets of `{0, .., n-1}` as bitmasks, in increasing numeric order.
pub fn subsets(n: usize) -> impl Iterator<Item = u64> {
    0..(1u64 << n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumKind {
    SetPartitions,
    IntPartitions,
    Compositions,
    Listings,
    Subsets,
}

/// Canonical text encodings of every object of the given kind and size.
pub fn enumerate(kind: EnumKind, n: usize) -> Vec<String> {
    match kind {
        EnumKind::SetPartitions => set_partitions(n).map(|p| p.to_string()).collect(),
        EnumKind::IntPartitions => int_partitions(n).iter().map(|p| p.to_string()).collect(),
        EnumKind::Compositions => compositions(n).iter().map(|c| c.to_string()).collect(),
        EnumKind::Listings => listings(n).map(|l| l.to_string()).collect(),
        EnumKind::Subsets => subsets(n)
            .map(|mask| {
                let elems: Vec<String> = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| (i + 1).to_string())
                    .collect();
                format!("{{{}}}", elems.join(","))
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(EnumKind::SetPartitions, 3).len(), 5);
        assert_eq!(enumerate(EnumKind::IntPartitions, 5).len(), 7);
        assert_eq!(enumerate(EnumKind::Listings, 3).len(), 6);
        assert_eq!(enumerate(EnumKind::Compositions, 4).len(), 8);
        assert_eq!(enumerate(EnumKind::Subsets, 3).len(), 8);
        assert_eq!(enumerate(EnumKind::SetPartitions, 0), vec![String::new()]);
    }

    #[test]
    fn enumeration_is_duplicate_free_and_sorted() {
        let rgs: Vec<Vec<u8>> = set_partitions(5).map(|p| p.rgs().to_vec()).collect();
        let mut sorted = rgs.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(rgs, sorted);
        let xs = enumerate(EnumKind::Listings, 4);
        let mut ys = xs.clone();
        ys.sort();
        ys.dedup();
        assert_eq!(xs, ys);
    }
}
