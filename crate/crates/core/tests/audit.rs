use proptest::prelude::*;
use rainbow_core::audit::{audit_state, audit_stuck, select_mono, AuditError, CheckKind, ClaimId};
use rainbow_core::generate::{greedy_proper_coloring, SimpleGraph};
use rainbow_core::{max_rainbow_matching, EdgeColoredGraph, EngineOptions, RuleId, SolverOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sparse random graph plus a few hubs of varying density, so that matched
/// vertices with many good edges are common.
fn hub_graph(seed: u64) -> EdgeColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(12..=20);
    let hubs = rng.gen_range(1..=4);
    let q = rng.gen_range(0.0..0.1);
    let mut edges = Vec::new();
    for u in hubs..n {
        for v in u + 1..n {
            if rng.gen_bool(q) {
                edges.push((u, v));
            }
        }
    }
    for h in 0..hubs {
        let p = rng.gen_range(0.2..0.95);
        for v in h + 1..n {
            if rng.gen_bool(p) {
                edges.push((h, v));
            }
        }
    }
    greedy_proper_coloring(&SimpleGraph { n, edges }, seed ^ 0x5eed)
}

#[test]
fn maximum_matchings_satisfy_every_local_claim() {
    let opts = EngineOptions::default();
    let (mut with_good, mut with_t, mut with_nice) = (0, 0, 0);
    for seed in 0..400 {
        let g = hub_graph(seed);
        let best = max_rainbow_matching(&g, SolverOptions::default());
        assert!(best.optimal);
        if best.size == 0 {
            continue;
        }
        let m0 = select_mono(&g, &best.best);
        let report = audit_state(&g, &best.best, &m0, &opts).unwrap();
        for c in report.checks.iter().filter(|c| c.kind == CheckKind::Local) {
            assert!(c.holds, "seed {seed}: {c:?}");
        }
        assert!(
            report.applicable_rules.is_empty(),
            "seed {seed}: {:?}",
            report.applicable_rules
        );
        with_good += usize::from(report.r > 0);
        with_nice += usize::from(report.s > 0);
        with_t += usize::from(report.t > 0);
    }
    assert!(with_good >= 20, "only {with_good} states had a good pair");
    assert!(with_t >= 20, "only {with_t} states had t > 0");
    assert!(with_nice >= 1, "no state had a nice pair");
    eprintln!("good pairs in {with_good}, nice pairs in {with_nice}, t > 0 in {with_t} of 400");
}

#[test]
fn planted_mono_violation_is_repairable() {
    let g = EdgeColoredGraph::new(7, [(0, 1, 1), (0, 2, 2), (3, 4, 1), (5, 6, 1)]).unwrap();
    let m = rainbow_core::Matching::from_pairs(&g, &[(0, 1)]).unwrap();
    let m0 = select_mono(&g, &m);
    let report = audit_state(&g, &m, &m0, &EngineOptions::default()).unwrap();
    assert!(!report.check(ClaimId::MonoColourInW).unwrap().holds);
    assert!(report.applicable_rules.contains(&RuleId::Mono));
    // The engine repairs it: a local failure implies a rule fires.
    assert!(matches!(
        audit_stuck(&g, 2, &EngineOptions::default()),
        Err(AuditError::NotStuck { size: 2, target: 2 })
    ));
}

#[test]
fn local_failures_on_stuck_states_mean_not_maximum() {
    // A weak engine stalls below the optimum often enough to exercise this.
    let weak = EngineOptions {
        max_exchange_depth: 1,
        recursion_limit: 0,
        ..EngineOptions::default()
    };
    let (mut below, mut failing) = (0, 0);
    for seed in 0..300 {
        let g = hub_graph(1000 + seed);
        let opt = max_rainbow_matching(&g, SolverOptions::default()).size;
        let Ok(report) = audit_stuck(&g, g.vertex_count(), &weak) else {
            continue;
        };
        let size = report.delta - 1;
        below += usize::from(size < opt);
        if report.failed().any(|c| c.kind == CheckKind::Local) {
            failing += 1;
            assert!(
                size < opt,
                "seed {seed}: a local claim failed on a maximum matching"
            );
        }
    }
    eprintln!("{below} stuck states below the optimum, {failing} with a failed local claim");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_sizes_and_pair_budget(seed in any::<u64>()) {
        let g = hub_graph(seed);
        let best = max_rainbow_matching(&g, SolverOptions::default());
        prop_assume!(best.size > 0);
        let m0 = select_mono(&g, &best.best);
        let r = audit_state(&g, &best.best, &m0, &EngineOptions::default()).unwrap();
        prop_assert_eq!(r.w.len(), g.vertex_count() - 2 * best.size);
        prop_assert_eq!(r.w_prime.len(), r.w.len() + r.r);
        prop_assert!(r.r + r.s + r.t < r.delta);
        prop_assert_eq!(r.pairs.len(), r.delta - 1);
    }
}
