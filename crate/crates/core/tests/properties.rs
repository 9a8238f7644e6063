mod common;

use std::collections::HashSet;

use common::Small;
use prsat_core::graph::{add_edge, complement, disjoint_union, complete};
use prsat_core::independence::{clique_number, independence_number};
use prsat_core::named::parse_named;
use prsat_core::search::{find_rainbow_free_colouring, Budget, Status};
use prsat_core::subgraph::subgraph_copies;
use prsat_core::{canonical_form, graph6, Graph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let edges: Vec<_> = common::pairs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(p, _)| p).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn pattern() -> impl Strategy<Value = Graph> {
    prop_oneof![
        Just("P3"),
        Just("P4"),
        Just("2K2"),
        Just("K3"),
        Just("K1,3"),
        Just("C4")
    ]
    .prop_map(|s| parse_named(s).unwrap())
}

fn oracle_copy_count(g: &Graph, h: &Graph) -> usize {
    let mut sets = HashSet::new();
    common::for_each_copy(&Small::of(g), &Small::of(h), |ids| {
        let mut ids = ids.to_vec();
        ids.sort();
        sets.insert(ids);
        true
    });
    sets.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm(9)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
    }

    #[test]
    fn canonical_form_separates_classes(a in graph(5), b in graph(5)) {
        let same = common::isomorphic(&Small::of(&a), &Small::of(&b));
        prop_assert_eq!(canonical_form(&a) == canonical_form(&b), same);
    }

    #[test]
    fn graph6_round_trip(g in graph(12)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn independence_is_complement_clique(g in graph(10)) {
        prop_assert_eq!(independence_number(&g), clique_number(&complement(&g)));
    }

    #[test]
    fn copy_count_matches_oracle_and_labels((g, perm) in graph_and_perm(6), h in pattern()) {
        let count = subgraph_copies(&g, &h).unwrap().len();
        prop_assert_eq!(count, oracle_copy_count(&g, &h));
        prop_assert_eq!(count, subgraph_copies(&g.relabel(&perm), &h).unwrap().len());
    }

    #[test]
    fn verdicts_match_oracle_with_valid_certificates((g, perm) in graph_and_perm(6), h in pattern()) {
        prop_assume!(g.m() <= 9);
        let v = find_rainbow_free_colouring(&g, &h, &Budget::default());
        let small = Small::of(&g);
        prop_assert_eq!(v.status == Status::Member, common::member(&small, &Small::of(&h)));
        if let Some(phi) = &v.certificate {
            prop_assert!(common::is_proper(&small, phi.colours()));
            prop_assert!(!common::has_rainbow(&small, phi.colours(), &Small::of(&h)));
        }
        let w = find_rainbow_free_colouring(&g.relabel(&perm), &h, &Budget::default());
        prop_assert_eq!(v.status, w.status);
    }

    #[test]
    fn membership_is_upward_closed(g in graph(6), h in pattern(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() <= 9);
        let v = find_rainbow_free_colouring(&g, &h, &Budget::default());
        if v.status == Status::Member {
            let non = g.non_edges();
            let bigger = if non.is_empty() {
                disjoint_union(&g, &complete(1).unwrap()).unwrap()
            } else {
                let (a, b) = non[pick.index(non.len())];
                add_edge(&g, a, b).unwrap()
            };
            prop_assert_eq!(find_rainbow_free_colouring(&bigger, &h, &Budget::default()).status, Status::Member);
        }
    }
}
