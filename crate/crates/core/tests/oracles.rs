//! Fast routines against their definitional (slow) counterparts.

use chromberge::combinat::{for_each_permutation, set_partitions};
use chromberge::decomp::{breakdown_by_deletion, linear_breakdown, xi, xi_by_chains};
use chromberge::invariants::{
    chromatic_poly, chromatic_sym, redei_berge, redei_berge_p_expansion, w_redei, w_redei_by_words,
    y_chromatic, y_chromatic_by_words,
};
use chromberge::structures::{loopless_digraphs, simple_graphs};
use chromberge::verify::all_digraphs;
use chromberge::{Digraph, Graph, Poset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_digraph(n: usize, rng: &mut impl Rng) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.4))
        .collect::<Vec<_>>();
    Digraph::new(n, &arcs).unwrap()
}

#[test]
fn w_matches_friendly_listing_words() {
    for n in 1..=3 {
        for x in all_digraphs(n).unwrap() {
            assert_eq!(w_redei(&x), w_redei_by_words(&x), "{x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_digraph(4, &mut rng);
        assert_eq!(w_redei(&x), w_redei_by_words(&x), "{x}");
    }
}

#[test]
fn y_matches_proper_coloring_words() {
    for n in 1..=4 {
        for g in simple_graphs(n).unwrap() {
            assert_eq!(y_chromatic(&g), y_chromatic_by_words(&g), "{g}");
        }
    }
}

#[test]
fn chromatic_polynomial_counts_colorings() {
    for n in 1..=5 {
        for g in simple_graphs(n).unwrap() {
            let chi = chromatic_poly(&g);
            for m in 0..=4 {
                assert_eq!(chi.eval_int(m), chromberge::arith::rat(g.count_proper_colorings(m as usize) as i64));
            }
        }
    }
}

#[test]
fn stable_partitions_by_filtering_all_partitions() {
    for g in simple_graphs(4).unwrap() {
        let brute: Vec<_> = set_partitions(4)
            .filter(|pi| pi.block_masks().iter().all(|&b| g.is_stable(b)))
            .collect();
        assert_eq!(g.stable_partitions(), brute, "{g}");
    }
}

#[test]
fn hamiltonian_paths_by_listing_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let x = random_digraph(n, &mut rng);
        let mut count = 0;
        for_each_permutation(n, |s| {
            if s.windows(2).all(|w| x.has_arc(w[0], w[1])) {
                count += 1;
            }
        });
        assert_eq!(x.hamiltonian_paths(), count, "{x}");
    }
}

#[test]
fn linear_extensions_by_permutation_filter() {
    for p in chromberge::structures::enumerate_labeled_posets(4).unwrap() {
        let mut count = 0;
        for_each_permutation(4, |s| {
            if (0..4).all(|i| (i + 1..4).all(|j| !p.lt(s[j], s[i]))) {
                count += 1;
            }
        });
        assert_eq!(p.count_linear_extensions(), count, "{p}");
    }
}

#[test]
fn cycle_census_matches_listing_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let n = rng.gen_range(1..=5);
        let x = random_digraph(n, &mut rng);
        assert_eq!(redei_berge_p_expansion(&x), redei_berge(&x), "{x}");
    }
}

#[test]
fn xi_recursion_matches_chain_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 30 {
        let x = random_digraph(4, &mut rng);
        if x.is_bag_of_sticks() || x.num_arcs() > 7 {
            continue;
        }
        for s in 0..1u64 << x.num_arcs() {
            assert_eq!(xi(&x, s).unwrap(), xi_by_chains(&x, s).unwrap());
        }
        assert_eq!(linear_breakdown(&x).unwrap(), breakdown_by_deletion(&x, None).unwrap());
        checked += 1;
    }
}

#[test]
fn incomparability_graph_is_complement_of_comparability() {
    for p in chromberge::structures::enumerate_labeled_posets(4).unwrap() {
        let comparable: Vec<_> = (0..4)
            .flat_map(|a| (a + 1..4).map(move |b| (a, b)))
            .filter(|&(a, b)| p.comparable(a, b))
            .collect();
        assert_eq!(p.inc(), Graph::new(4, &comparable).unwrap().complement());
    }
}

#[test]
fn loopless_enumeration_matches_masks() {
    assert_eq!(loopless_digraphs(3).unwrap().count(), 64);
    let p = Poset::new(3, &[(0, 1)]).unwrap();
    assert_eq!(chromatic_sym(&p.inc()), redei_berge(&p.digraph()).omega());
}
