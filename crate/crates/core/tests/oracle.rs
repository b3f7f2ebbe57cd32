mod common;

use common::{
    brute_count_rainbow, brute_max_matching, brute_max_rainbow, population, small_instance,
};
use proptest::prelude::*;
use rainbow_core::solver::{count_rainbow_matchings, max_matching};
use rainbow_core::{
    is_rainbow_matching, max_rainbow_matching, rainbow_matching_at_least, SolverOptions,
};

#[test]
fn exact_solver_matches_enumeration() {
    for (i, g) in population(1000, 7).iter().enumerate() {
        let expected = brute_max_rainbow(g);
        let got = max_rainbow_matching(g, SolverOptions::default());
        assert_eq!(got.size, expected, "instance {i}");
        assert!(got.optimal);
        assert_eq!(got.best.len(), got.size);
        assert!(is_rainbow_matching(g, &got.best).unwrap(), "instance {i}");
    }
}

#[test]
fn decision_form_agrees() {
    for g in population(300, 11) {
        let opt = brute_max_rainbow(&g);
        for k in 0..=opt + 1 {
            let found = rainbow_matching_at_least(&g, k, SolverOptions::default()).unwrap();
            assert_eq!(found.is_some(), k <= opt);
            if let Some(m) = found {
                assert!(m.len() >= k && is_rainbow_matching(&g, &m).unwrap());
            }
        }
    }
}

#[test]
fn counting_matches_enumeration() {
    for g in population(300, 13) {
        for k in 0..=4 {
            assert_eq!(count_rainbow_matchings(&g, k), brute_count_rainbow(&g, k));
        }
    }
}

#[test]
fn uncoloured_matching_matches_enumeration() {
    for g in population(300, 17) {
        let m = max_matching(&g);
        assert_eq!(m.len(), brute_max_matching(&g));
        assert!(m.is_matching(&g).unwrap());
    }
}

proptest! {
    #[test]
    fn matching_bounds_rainbow(seed in any::<u64>()) {
        let g = small_instance(seed, 12);
        let rainbow = max_rainbow_matching(&g, SolverOptions::default()).size;
        prop_assert!(max_matching(&g).len() >= rainbow);
        prop_assert!(rainbow <= g.palette_len());
        prop_assert_eq!(max_rainbow_matching(&g.with_distinct_colours(), SolverOptions::default()).size, max_matching(&g).len());
    }

    #[test]
    fn edge_deletion_costs_at_most_one(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = small_instance(seed, 12);
        prop_assume!(g.edge_count() > 0);
        let drop = pick.index(g.edge_count());
        let rest: Vec<_> = g.triples().into_iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, t)| t).collect();
        let h = rainbow_core::EdgeColoredGraph::new(g.vertex_count(), rest).unwrap();
        let (before, after) = (
            max_rainbow_matching(&g, SolverOptions::default()).size,
            max_rainbow_matching(&h, SolverOptions::default()).size,
        );
        prop_assert!(after <= before && before <= after + 1);
    }

    #[test]
    fn vertex_deletion_costs_at_most_one(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = small_instance(seed, 12);
        let v = pick.index(g.vertex_count());
        let h = g.without_vertex(v);
        let (before, after) = (
            max_rainbow_matching(&g, SolverOptions::default()).size,
            max_rainbow_matching(&h, SolverOptions::default()).size,
        );
        prop_assert!(after <= before && before <= after + 1);
    }

    #[test]
    fn budget_never_overstates(seed in any::<u64>(), budget in 1u64..50) {
        let g = small_instance(seed, 12);
        let r = max_rainbow_matching(&g, SolverOptions::with_budget(budget));
        prop_assert!(is_rainbow_matching(&g, &r.best).unwrap());
        prop_assert!(r.size <= brute_max_rainbow(&g));
        if r.optimal {
            prop_assert_eq!(r.size, brute_max_rainbow(&g));
        }
    }
}
