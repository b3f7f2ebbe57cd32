//! Local augmentation of rainbow matchings.
//!
//! Each rule turns a rainbow matching `M` into a rainbow matching with
//! exactly one more edge, or reports that it does not apply:
//!
//! * `R-direct`: add an edge with both ends unmatched and an unused colour.
//! * `R-mono`: for a matched edge `xy` of colour `i`, an unmatched edge `uv`
//!   of the same colour, and an edge `xw` (or `yw`) to an unmatched
//!   `w ∉ {u, v}` with an unused colour, take `M - xy + uv + xw`.
//! * `R-exchange-k`: remove `k` matched edges and insert `k + 1`.
//! * `R-vertex-reduce`: if `deg(v) > 3|M|`, find `|M|` rainbow edges avoiding
//!   `v` and attach `v` through an edge whose other end is unmatched and whose
//!   colour is unused. At most `3|M|` edges at `v` can be blocked, so the last
//!   step always succeeds.
//!
//! The engine is sound but incomplete; the exact solver is the reference.

use thiserror::Error;

use crate::graph::{EdgeColoredGraph, EdgeId, Matching, VertexId};
use crate::result::{RuleApplication, RuleId, SolveResult, TraceEvent};
use crate::solver::{rainbow_matching_at_least, SolverOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("exchange search exceeded its cap of {cap} candidate nodes")]
    BudgetExceeded { cap: u64 },
    #[error("vertex reduction exceeded its recursion limit of {limit}")]
    RecursionBudget { limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub max_exchange_depth: usize,
    /// Candidate nodes a single exchange search may visit.
    pub exchange_cap: u64,
    pub recursion_limit: usize,
    /// Budget for the exact fallback inside vertex reduction.
    pub fallback: SolverOptions,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            max_exchange_depth: 3,
            exchange_cap: 2_000_000,
            recursion_limit: 32,
            fallback: SolverOptions::with_budget(10_000_000),
        }
    }
}

/// A successful rule firing: `result = (before - removed) + added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub rule: RuleId,
    pub removed: Vec<EdgeId>,
    pub added: Vec<EdgeId>,
    pub result: Matching,
}

impl Move {
    fn new(rule: RuleId, before: &Matching, removed: Vec<EdgeId>, added: Vec<EdgeId>) -> Self {
        let mut result = before.clone();
        for &id in &removed {
            result.remove(id);
        }
        for &id in &added {
            result.insert(id);
        }
        Self {
            rule,
            removed,
            added,
            result,
        }
    }

    fn application(&self, g: &EdgeColoredGraph) -> RuleApplication {
        RuleApplication {
            rule: self.rule,
            removed: self.removed.iter().map(|&id| *g.edge(id)).collect(),
            added: self.added.iter().map(|&id| *g.edge(id)).collect(),
            size_after: self.result.len(),
        }
    }
}

/// Vertex and colour occupancy of a matching.
struct Occupancy {
    covered: Vec<bool>,
    used: Vec<bool>,
}

impl Occupancy {
    fn of<'a>(g: &EdgeColoredGraph, edges: impl IntoIterator<Item = &'a EdgeId>) -> Self {
        let mut occ = Self {
            covered: vec![false; g.vertex_count()],
            used: vec![false; g.palette_len()],
        };
        for &id in edges {
            occ.take(g, id);
        }
        occ
    }

    fn take(&mut self, g: &EdgeColoredGraph, id: EdgeId) {
        let e = g.edge(id);
        self.covered[e.u] = true;
        self.covered[e.v] = true;
        self.used[g.colour_index(id)] = true;
    }

    fn release(&mut self, g: &EdgeColoredGraph, id: EdgeId) {
        let e = g.edge(id);
        self.covered[e.u] = false;
        self.covered[e.v] = false;
        self.used[g.colour_index(id)] = false;
    }

    fn fits(&self, g: &EdgeColoredGraph, id: EdgeId) -> bool {
        let e = g.edge(id);
        !self.covered[e.u] && !self.covered[e.v] && !self.used[g.colour_index(id)]
    }
}

/// Scans edges in id order and keeps each one that is vertex- and
/// colour-disjoint from those already kept.
pub fn greedy_rainbow(g: &EdgeColoredGraph) -> Matching {
    let mut occ = Occupancy::of(g, &[]);
    let mut kept = Vec::new();
    for id in 0..g.edge_count() {
        if occ.fits(g, id) {
            occ.take(g, id);
            kept.push(id);
        }
    }
    Matching::new(kept)
}

fn find_direct(g: &EdgeColoredGraph, m: &Matching) -> Option<EdgeId> {
    let occ = Occupancy::of(g, m.edges());
    (0..g.edge_count()).find(|&id| occ.fits(g, id))
}

pub fn rule_direct(g: &EdgeColoredGraph, m: &Matching) -> Option<Move> {
    find_direct(g, m).map(|id| Move::new(RuleId::Direct, m, vec![], vec![id]))
}

pub fn rule_mono(g: &EdgeColoredGraph, m: &Matching) -> Option<Move> {
    let occ = Occupancy::of(g, m.edges());
    for &mid in m.edges() {
        let matched = *g.edge(mid);
        for uv in g.colour_class(matched.colour) {
            let free = *g.edge(uv);
            if occ.covered[free.u] || occ.covered[free.v] {
                continue;
            }
            for x in [matched.u, matched.v] {
                for &xw in g.incident(x) {
                    let w = g.edge(xw).other(x);
                    if occ.covered[w] || w == free.u || w == free.v || occ.used[g.colour_index(xw)]
                    {
                        continue;
                    }
                    return Some(Move::new(RuleId::Mono, m, vec![mid], vec![uv, xw]));
                }
            }
        }
    }
    None
}

/// Searches `|D| = 1..=k` in turn; see [`exchange_at_depth`].
pub fn rule_exchange(
    g: &EdgeColoredGraph,
    m: &Matching,
    k: usize,
    cap: u64,
) -> Result<Option<Move>, EngineError> {
    let mut spent = 0;
    for depth in 1..=k {
        if let Some(mv) = exchange_with_spent(g, m, depth, cap, &mut spent)? {
            return Ok(Some(mv));
        }
    }
    Ok(None)
}

/// Looks for `D ⊆ M` with `|D| = depth` and `depth + 1` edges `A` such that
/// `(M - D) + A` is a rainbow matching. `D` is enumerated as index
/// combinations of `M` in lexicographic order and `A` in edge-id order.
///
/// When no direct extension exists, every edge of `A` must touch `V(D)` or
/// carry a colour of `D`, which is the only candidate set searched. If a
/// direct extension `e` does exist the first matched edge `d` is returned
/// with `A = {d, e}`.
pub fn exchange_at_depth(
    g: &EdgeColoredGraph,
    m: &Matching,
    depth: usize,
    cap: u64,
) -> Result<Option<Move>, EngineError> {
    let mut spent = 0;
    exchange_with_spent(g, m, depth, cap, &mut spent)
}

fn exchange_with_spent(
    g: &EdgeColoredGraph,
    m: &Matching,
    depth: usize,
    cap: u64,
    spent: &mut u64,
) -> Result<Option<Move>, EngineError> {
    let matched = m.edges();
    if depth == 0 || matched.len() < depth {
        return Ok(None);
    }
    if let Some(e) = find_direct(g, m) {
        let d = matched[0];
        return Ok(Some(Move::new(RuleId::Exchange(1), m, vec![d], vec![d, e])));
    }

    let mut combo: Vec<usize> = (0..depth).collect();
    loop {
        let removed: Vec<EdgeId> = combo.iter().map(|&i| matched[i]).collect();
        let kept = matched.iter().filter(|id| !removed.contains(id));
        let mut occ = Occupancy::of(g, kept);
        let mut freed_v = vec![false; g.vertex_count()];
        let mut freed_c = vec![false; g.palette_len()];
        for &id in &removed {
            freed_v[g.edge(id).u] = true;
            freed_v[g.edge(id).v] = true;
            freed_c[g.colour_index(id)] = true;
        }
        let candidates: Vec<EdgeId> = (0..g.edge_count())
            .filter(|&id| {
                let e = g.edge(id);
                occ.fits(g, id) && (freed_v[e.u] || freed_v[e.v] || freed_c[g.colour_index(id)])
            })
            .collect();
        let mut chosen = Vec::with_capacity(depth + 1);
        if pick(
            g,
            &candidates,
            0,
            depth + 1,
            &mut occ,
            &mut chosen,
            cap,
            spent,
        )? {
            return Ok(Some(Move::new(RuleId::Exchange(depth), m, removed, chosen)));
        }

        // next combination
        let mut i = depth;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if combo[i] < matched.len() - depth + i {
                break;
            }
        }
        combo[i] += 1;
        for j in i + 1..depth {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn pick(
    g: &EdgeColoredGraph,
    candidates: &[EdgeId],
    from: usize,
    needed: usize,
    occ: &mut Occupancy,
    chosen: &mut Vec<EdgeId>,
    cap: u64,
    spent: &mut u64,
) -> Result<bool, EngineError> {
    if needed == 0 {
        return Ok(true);
    }
    for p in from..candidates.len() {
        if candidates.len() - p < needed {
            break;
        }
        *spent += 1;
        if *spent > cap {
            return Err(EngineError::BudgetExceeded { cap });
        }
        let id = candidates[p];
        if !occ.fits(g, id) {
            continue;
        }
        occ.take(g, id);
        chosen.push(id);
        if pick(g, candidates, p + 1, needed - 1, occ, chosen, cap, spent)? {
            return Ok(true);
        }
        chosen.pop();
        occ.release(g, id);
    }
    Ok(false)
}

/// Vertex reduction for a rainbow matching of size `target`: picks the vertex
/// of highest degree above `3 (target - 1)` (lowest id on ties), solves the
/// rest of the graph for `target - 1` edges (engine first, exact search as a
/// fallback), then attaches the vertex.
pub fn rule_vertex_reduce(
    g: &EdgeColoredGraph,
    target: usize,
    opts: &EngineOptions,
) -> Result<Option<Matching>, EngineError> {
    vertex_reduce(g, target, opts, opts.recursion_limit)
}

fn vertex_reduce(
    g: &EdgeColoredGraph,
    target: usize,
    opts: &EngineOptions,
    levels: usize,
) -> Result<Option<Matching>, EngineError> {
    if target == 0 {
        return Ok(None);
    }
    let threshold = 3 * (target - 1);
    let Some(v) = (0..g.vertex_count())
        .filter(|&v| g.degree(v) > threshold)
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
    else {
        return Ok(None);
    };
    if levels == 0 {
        return Err(EngineError::RecursionBudget {
            limit: opts.recursion_limit,
        });
    }

    let sub = g.without_vertex(v);
    let Some(partial) = solve_sub(&sub, target - 1, opts, levels - 1) else {
        return Ok(None);
    };
    let partial = partial
        .transfer(&sub, g)
        .expect("subgraph edges exist in the host");
    Ok(attach(g, &partial, v))
}

fn solve_sub(
    sub: &EdgeColoredGraph,
    size: usize,
    opts: &EngineOptions,
    levels: usize,
) -> Option<Matching> {
    if size == 0 {
        return Some(Matching::empty());
    }
    let run = run_engine_inner(sub, size, opts, levels);
    let found = if run.size >= size {
        Some(run.best)
    } else {
        rainbow_matching_at_least(sub, size, opts.fallback)
            .ok()
            .flatten()
    };
    // any sub-matching of a rainbow matching is rainbow
    found.map(|m| Matching::new(m.edges()[..size].to_vec()))
}

fn attach(g: &EdgeColoredGraph, m: &Matching, v: VertexId) -> Option<Matching> {
    let occ = Occupancy::of(g, m.edges());
    g.incident(v)
        .iter()
        .copied()
        .find(|&id| occ.fits(g, id))
        .map(|id| {
            let mut out = m.clone();
            out.insert(id);
            out
        })
}

/// Grows a rainbow matching towards `target` by applying rules in the fixed
/// order direct, mono, exchange (depth 1 up to the configured maximum),
/// vertex reduction. `optimal` is always false.
pub fn run_engine(g: &EdgeColoredGraph, target: usize, opts: &EngineOptions) -> SolveResult {
    run_engine_inner(g, target, opts, opts.recursion_limit)
}

fn run_engine_inner(
    g: &EdgeColoredGraph,
    target: usize,
    opts: &EngineOptions,
    levels: usize,
) -> SolveResult {
    let mut trace = Vec::new();
    let mut current = if target == 0 {
        Matching::empty()
    } else {
        greedy_rainbow(g)
    };
    trace.push(TraceEvent::Seed {
        edges: current.edges().iter().map(|&id| *g.edge(id)).collect(),
    });
    let mut nodes = 0u64;

    while current.len() < target {
        let mut fired = rule_direct(g, &current).or_else(|| rule_mono(g, &current));
        if fired.is_none() {
            let mut spent = 0;
            for depth in 1..=opts.max_exchange_depth {
                match exchange_with_spent(g, &current, depth, opts.exchange_cap, &mut spent) {
                    Ok(Some(mv)) => {
                        fired = Some(mv);
                        break;
                    }
                    Ok(None) => {}
                    Err(_) => {
                        trace.push(TraceEvent::RuleBudget {
                            rule: RuleId::Exchange(depth),
                        });
                        break;
                    }
                }
            }
            nodes += spent;
        }
        if fired.is_none() {
            match vertex_reduce(g, current.len() + 1, opts, levels) {
                Ok(Some(next)) => {
                    let removed = current
                        .edges()
                        .iter()
                        .copied()
                        .filter(|&id| !next.contains(id))
                        .collect();
                    let added = next
                        .edges()
                        .iter()
                        .copied()
                        .filter(|&id| !current.contains(id))
                        .collect();
                    fired = Some(Move::new(RuleId::VertexReduce, &current, removed, added));
                }
                Ok(None) => {}
                Err(_) => {
                    trace.push(TraceEvent::RuleBudget {
                        rule: RuleId::VertexReduce,
                    });
                }
            }
        }
        match fired {
            Some(mv) => {
                debug_assert_eq!(mv.result.len(), current.len() + 1);
                trace.push(TraceEvent::Rule(mv.application(g)));
                current = mv.result;
            }
            None => {
                trace.push(TraceEvent::Stuck {
                    size: current.len(),
                });
                break;
            }
        }
    }

    SolveResult {
        size: current.len(),
        best: current,
        optimal: false,
        nodes_explored: nodes,
        trace,
    }
}
