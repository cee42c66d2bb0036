//! Randomized algebraic laws.

use chromberge::arith::rat;
use chromberge::combinat::{int_partitions, set_partitions};
use chromberge::invariants::{redei_berge, redei_berge_qsym, w_redei};
use chromberge::json::{digraph_from_json, digraph_to_json};
use chromberge::{Digraph, NCSymBasis, NCSymElement, QSymBasis, SymBasis, SymElement};
use proptest::prelude::*;

fn digraph() -> impl Strategy<Value = Digraph> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let arcs: Vec<_> = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n)).collect();
            Digraph::new(n, &arcs).unwrap()
        })
    })
}

fn sym_element() -> impl Strategy<Value = SymElement> {
    (1usize..=5, 0usize..5).prop_flat_map(|(n, b)| {
        let keys = int_partitions(n);
        proptest::collection::vec(-4i64..=4, keys.len()).prop_map(move |cs| {
            let basis = SymBasis::ALL[b];
            SymElement::from_terms(n, basis, keys.iter().cloned().zip(cs.into_iter().map(rat))).unwrap()
        })
    })
}

fn ncsym_element() -> impl Strategy<Value = NCSymElement> {
    (1usize..=4, 0usize..4).prop_flat_map(|(n, b)| {
        let keys: Vec<_> = set_partitions(n).collect();
        proptest::collection::vec(-3i64..=3, keys.len()).prop_map(move |cs| {
            let basis = NCSymBasis::ALL[b];
            NCSymElement::from_terms(n, basis, keys.iter().cloned().zip(cs.into_iter().map(rat))).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sym_basis_round_trips(f in sym_element(), t in 0usize..5) {
        let g = f.to_basis(SymBasis::ALL[t]);
        prop_assert_eq!(&g, &f);
        let back = g.to_basis(f.basis());
        prop_assert_eq!(back.terms(), f.terms());
    }

    #[test]
    fn sym_omega_is_an_involution(f in sym_element()) {
        prop_assert_eq!(f.omega().omega(), f);
    }

    #[test]
    fn sym_embeds_into_qsym(f in sym_element(), g in sym_element()) {
        let q = f.embed_in_qsym();
        prop_assert_eq!(q.project_to_sym().unwrap(), f.clone());
        prop_assert_eq!(q.to_basis(QSymBasis::Fundamental).to_basis(QSymBasis::Monomial), q.clone());
        prop_assert_eq!(q.omega().project_to_sym().unwrap(), f.omega());
        let prod = q.multiply(&g.embed_in_qsym());
        prop_assert_eq!(prod.project_to_sym().unwrap(), f.multiply(&g));
    }

    #[test]
    fn ncsym_round_trips_and_rho(f in ncsym_element(), t in 0usize..4) {
        let g = f.to_basis(NCSymBasis::ALL[t]);
        let back = g.to_basis(f.basis());
        prop_assert_eq!(back.terms(), f.terms());
        prop_assert_eq!(f.omega().omega(), f.clone());
        prop_assert_eq!(f.omega().rho(), f.rho().omega());
    }

    #[test]
    fn redei_berge_laws(x in digraph(), y in digraph()) {
        let u = redei_berge(&x);
        prop_assert_eq!(u.omega(), redei_berge(&x.complement()));
        prop_assert_eq!(redei_berge(&x.opposite()), u.clone());
        prop_assert_eq!(w_redei(&x).rho(), u);
        prop_assert!(redei_berge_qsym(&x).project_to_sym().is_ok());
        if x.n() + y.n() <= 5 {
            let xy = x.product(&y).unwrap();
            prop_assert_eq!(w_redei(&xy), w_redei(&x).multiply(&w_redei(&y)));
        }
    }

    #[test]
    fn digraph_json_round_trips(x in digraph()) {
        prop_assert_eq!(digraph_from_json(&digraph_to_json(&x)).unwrap(), x);
    }
}
