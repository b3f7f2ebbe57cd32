//! Shared instance population and brute-force oracles. The oracles only read
//! the edge list; they share no search code with the library.

#![allow(dead_code)]

use rainbow_core::{Colour, EdgeColoredGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random properly coloured graph with at most `max_edges` edges. Colours are
/// drawn from a small palette so that classes collide often.
pub fn small_instance(seed: u64, max_edges: usize) -> EdgeColoredGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=8);
    let want = rng.gen_range(0..=max_edges);
    let palette = rng.gen_range(1..=6u32);
    let mut at: Vec<Vec<Colour>> = vec![Vec::new(); n];
    let mut edges: Vec<(usize, usize, Colour)> = Vec::new();
    for _ in 0..want * 4 {
        if edges.len() == want {
            break;
        }
        let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if u == v
            || edges
                .iter()
                .any(|&(a, b, _)| (a, b) == (u.min(v), u.max(v)))
        {
            continue;
        }
        let first = rng.gen_range(1..=palette);
        let colour = (first..)
            .find(|c| !at[u].contains(c) && !at[v].contains(c))
            .unwrap();
        at[u].push(colour);
        at[v].push(colour);
        edges.push((u.min(v), u.max(v), colour));
    }
    EdgeColoredGraph::new(n, edges).unwrap()
}

pub fn population(count: u64, seed: u64) -> Vec<EdgeColoredGraph> {
    (0..count)
        .map(|i| small_instance(seed.wrapping_mul(1_000_003).wrapping_add(i), 12))
        .collect()
}

/// Every edge subset, filtered by `keep`, reduced to sizes.
fn subsets(g: &EdgeColoredGraph, rainbow: bool) -> impl Iterator<Item = usize> + '_ {
    let edges = g.edges();
    assert!(edges.len() <= 16, "brute force is exponential");
    (0u32..1 << edges.len()).filter_map(move |mask| {
        let chosen: Vec<_> = (0..edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| edges[i])
            .collect();
        let mut seen_v = std::collections::HashSet::new();
        let mut seen_c = std::collections::HashSet::new();
        for e in &chosen {
            if !seen_v.insert(e.u) || !seen_v.insert(e.v) {
                return None;
            }
            if rainbow && !seen_c.insert(e.colour) {
                return None;
            }
        }
        Some(chosen.len())
    })
}

pub fn brute_max_rainbow(g: &EdgeColoredGraph) -> usize {
    subsets(g, true).max().unwrap_or(0)
}

pub fn brute_max_matching(g: &EdgeColoredGraph) -> usize {
    subsets(g, false).max().unwrap_or(0)
}

pub fn brute_count_rainbow(g: &EdgeColoredGraph, k: usize) -> u64 {
    subsets(g, true).filter(|&s| s == k).count() as u64
}
