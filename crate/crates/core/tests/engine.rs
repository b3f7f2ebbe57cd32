mod common;

use common::{brute_max_rainbow, population, small_instance};
use proptest::prelude::*;
use rainbow_core::result::replay_trace;
use rainbow_core::{is_rainbow_matching, run_engine, EngineOptions, TraceEvent};

#[test]
fn engine_is_sound_and_dominated() {
    let opts = EngineOptions::default();
    for (i, g) in population(1000, 7).iter().enumerate() {
        let opt = brute_max_rainbow(g);
        let run = run_engine(g, g.vertex_count(), &opts);
        assert!(is_rainbow_matching(g, &run.best).unwrap(), "instance {i}");
        assert!(run.size <= opt, "instance {i}");
        assert!(!run.optimal);

        let Some(TraceEvent::Seed { edges }) = run.trace.first() else {
            panic!("instance {i}: trace must open with the seed");
        };
        let mut size = edges.len();
        for app in run.rule_applications() {
            assert_eq!(
                app.added.len(),
                app.removed.len() + 1,
                "instance {i}: {app:?}"
            );
            assert_eq!(app.size_after, size + 1, "instance {i}");
            size = app.size_after;
        }
        assert_eq!(size, run.size);
        assert_eq!(
            replay_trace(g, &run.trace).unwrap(),
            run.best,
            "instance {i}"
        );
    }
}

#[test]
fn engine_reaches_optimum_on_most_small_instances() {
    let pop = population(1000, 7);
    let hits = pop
        .iter()
        .filter(|g| {
            run_engine(g, g.vertex_count(), &EngineOptions::default()).size == brute_max_rainbow(g)
        })
        .count();
    assert!(hits >= 900, "engine matched the optimum on {hits} / 1000");
}

proptest! {
    #[test]
    fn target_is_respected(seed in any::<u64>(), target in 0usize..5) {
        let g = small_instance(seed, 12);
        let run = run_engine(&g, target, &EngineOptions::default());
        let seeded = match run.trace.first() {
            Some(TraceEvent::Seed { edges }) => edges.len(),
            _ => 0,
        };
        prop_assert!(run.size <= target.max(seeded));
        if run.size < target {
            let stuck = matches!(run.trace.last(), Some(TraceEvent::Stuck { .. }));
            prop_assert!(stuck);
        }
    }

    #[test]
    fn trace_round_trips_through_jsonl(seed in any::<u64>()) {
        let g = small_instance(seed, 12);
        let run = run_engine(&g, g.vertex_count(), &EngineOptions::default());
        let events: Vec<TraceEvent> = run.trace_jsonl().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        prop_assert_eq!(&events, &run.trace);
        prop_assert_eq!(replay_trace(&g, &events).unwrap(), run.best);
    }
}
