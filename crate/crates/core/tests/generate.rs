use proptest::prelude::*;
use rainbow_core::generate::{
    derive_seed, greedy_proper_coloring, one_factorization, random_graph_min_degree_with,
};
use rainbow_core::io::graph_to_text;

/// Properness checked from the raw edge list.
fn proper(g: &rainbow_core::EdgeColoredGraph) -> bool {
    let edges = g.edges();
    edges.iter().enumerate().all(|(i, e)| {
        edges[i + 1..]
            .iter()
            .all(|f| !(e.shares_vertex(f) && e.colour == f.colour))
    })
}

#[test]
fn ten_thousand_instances_meet_contracts() {
    for i in 0..10_000u64 {
        let n = 3 + (i % 14) as usize;
        let delta = 1 + (i % (n as u64 - 1)) as usize;
        let p = [0.0, 0.1, 0.3][(i % 3) as usize];
        let seed = derive_seed(42, n as u64, i);
        let s = random_graph_min_degree_with(n, delta, p, seed).unwrap();
        assert!(s.min_degree() >= delta, "instance {i}");
        let g = greedy_proper_coloring(&s, seed);
        assert!(proper(&g), "instance {i}");
        assert!(g.palette_len() <= (2 * g.max_degree()).saturating_sub(1).max(1));
        assert_eq!(g.edge_count(), s.edges.len());
        assert_eq!(g.min_degree(), s.min_degree());
    }
}

#[test]
fn one_factorizations_are_proper() {
    for k in 1..=8 {
        let g = one_factorization(k);
        assert!(proper(&g));
        assert!(g.is_complete());
        assert_eq!(g.palette_len(), 2 * k - 1);
        assert!(g.color_profile().counts.values().all(|&c| c == k));
    }
}

proptest! {
    #[test]
    fn generation_is_a_function_of_the_seed(n in 3usize..20, d in 1usize..19, p in 0.0f64..0.5, seed in any::<u64>()) {
        prop_assume!(d < n);
        let a = greedy_proper_coloring(&random_graph_min_degree_with(n, d, p, seed).unwrap(), seed);
        let b = greedy_proper_coloring(&random_graph_min_degree_with(n, d, p, seed).unwrap(), seed);
        prop_assert_eq!(graph_to_text(&a), graph_to_text(&b));
    }
}
