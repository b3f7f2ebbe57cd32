//! Exact maximum rainbow matching by include/exclude branch-and-bound.
//!
//! Edges are branched on in a fixed order (degree sum descending, then edge
//! id). A node is pruned when
//!
//! ```text
//! current + min(floor(V_free / 2), C_free) <= incumbent
//! ```
//!
//! where `V_free` and `C_free` count the distinct vertices and colours of the
//! undecided edges that are still compatible with the partial matching.

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::graph::{EdgeColoredGraph, EdgeId, Matching, VertexId};
use crate::result::{SolveResult, TraceEvent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("node budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverOptions {
    /// Maximum number of search nodes; `None` is unlimited.
    pub node_budget: Option<u64>,
}

impl SolverOptions {
    pub fn with_budget(budget: u64) -> Self {
        Self {
            node_budget: Some(budget),
        }
    }
}

/// Branching order: degree sum descending, ties by edge id.
pub fn branch_order(g: &EdgeColoredGraph) -> Vec<EdgeId> {
    let mut order: Vec<EdgeId> = (0..g.edge_count()).collect();
    order.sort_by_key(|&id| {
        let e = g.edge(id);
        (std::cmp::Reverse(g.degree(e.u) + g.degree(e.v)), id)
    });
    order
}

struct Search<'g> {
    g: &'g EdgeColoredGraph,
    order: Vec<EdgeId>,
    used_v: FixedBitSet,
    used_c: FixedBitSet,
    scratch_v: FixedBitSet,
    scratch_c: FixedBitSet,
    current: Vec<EdgeId>,
    best: Vec<EdgeId>,
    /// Sizes at or below this are not worth reaching.
    floor: usize,
    stop_at: Option<usize>,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
    done: bool,
    trace: Vec<TraceEvent>,
}

impl<'g> Search<'g> {
    fn new(g: &'g EdgeColoredGraph, opts: SolverOptions) -> Self {
        Self {
            g,
            order: branch_order(g),
            used_v: FixedBitSet::with_capacity(g.vertex_count()),
            used_c: FixedBitSet::with_capacity(g.palette_len()),
            scratch_v: FixedBitSet::with_capacity(g.vertex_count()),
            scratch_c: FixedBitSet::with_capacity(g.palette_len()),
            current: Vec::new(),
            best: Vec::new(),
            floor: 0,
            stop_at: None,
            nodes: 0,
            budget: opts.node_budget,
            exhausted: false,
            done: false,
            trace: Vec::new(),
        }
    }

    fn compatible(&self, id: EdgeId) -> bool {
        let e = self.g.edge(id);
        !self.used_v[e.u] && !self.used_v[e.v] && !self.used_c[self.g.colour_index(id)]
    }

    /// Returns the position of the next compatible edge and the optimistic
    /// number of edges still addable from `pos` on.
    fn scan(&mut self, pos: usize) -> (Option<usize>, usize) {
        self.scratch_v.clear();
        self.scratch_c.clear();
        let mut first = None;
        let (mut nv, mut nc) = (0usize, 0usize);
        for p in pos..self.order.len() {
            let id = self.order[p];
            if !self.compatible(id) {
                continue;
            }
            first.get_or_insert(p);
            let e = self.g.edge(id);
            for x in [e.u, e.v] {
                if !self.scratch_v.put(x) {
                    nv += 1;
                }
            }
            if !self.scratch_c.put(self.g.colour_index(id)) {
                nc += 1;
            }
        }
        (first, (nv / 2).min(nc))
    }

    fn dfs(&mut self, pos: usize) {
        self.nodes += 1;
        if let Some(budget) = self.budget {
            if self.nodes > budget {
                self.exhausted = true;
                return;
            }
        }
        let (next, optimistic) = self.scan(pos);
        if self.current.len() + optimistic <= self.floor {
            return;
        }
        let Some(p) = next else { return };
        let id = self.order[p];
        let e = *self.g.edge(id);
        let c = self.g.colour_index(id);

        self.used_v.insert(e.u);
        self.used_v.insert(e.v);
        self.used_c.insert(c);
        self.current.push(id);
        if self.current.len() > self.floor {
            self.best = self.current.clone();
            self.floor = self.current.len();
            self.trace.push(TraceEvent::Incumbent {
                size: self.floor,
                nodes: self.nodes,
            });
            if self.stop_at.is_some_and(|k| self.floor >= k) {
                self.done = true;
            }
        }
        if !self.done {
            self.dfs(p + 1);
        }
        self.current.pop();
        self.used_c.set(c, false);
        self.used_v.set(e.u, false);
        self.used_v.set(e.v, false);

        if self.done || self.exhausted {
            return;
        }
        self.dfs(p + 1);
    }

    fn finish(mut self) -> SolveResult {
        if self.exhausted {
            self.trace
                .push(TraceEvent::BudgetExhausted { nodes: self.nodes });
        }
        let best = Matching::new(self.best);
        SolveResult {
            size: best.len(),
            best,
            optimal: !self.exhausted,
            nodes_explored: self.nodes,
            trace: self.trace,
        }
    }
}

/// Maximum rainbow matching. With a node budget the result may be
/// non-optimal, which is reported through `optimal = false` and a
/// `BudgetExhausted` trace event.
pub fn max_rainbow_matching(g: &EdgeColoredGraph, opts: SolverOptions) -> SolveResult {
    let mut search = Search::new(g, opts);
    search.dfs(0);
    search.finish()
}

/// A rainbow matching with at least `k` edges, or `None` if there is none.
/// Stops at the first witness.
pub fn rainbow_matching_at_least(
    g: &EdgeColoredGraph,
    k: usize,
    opts: SolverOptions,
) -> Result<Option<Matching>, SolveError> {
    if k == 0 {
        return Ok(Some(Matching::empty()));
    }
    let mut search = Search::new(g, opts);
    search.floor = k - 1;
    search.stop_at = Some(k);
    search.dfs(0);
    if search.done {
        return Ok(Some(Matching::new(search.best)));
    }
    if search.exhausted {
        return Err(SolveError::BudgetExceeded {
            budget: opts.node_budget.unwrap_or(u64::MAX),
        });
    }
    Ok(None)
}

/// Maximum cardinality matching ignoring colours: every edge gets a private
/// colour, after which every matching is rainbow.
pub fn max_matching(g: &EdgeColoredGraph) -> Matching {
    let recoloured = g.with_distinct_colours();
    // same vertex pairs in the same order, so edge ids carry over
    max_rainbow_matching(&recoloured, SolverOptions::default()).best
}

/// Number of rainbow matchings with exactly `k` edges.
///
/// Vertices are decided in increasing order: each free vertex is either left
/// unmatched (at most `n - 2k` times overall) or matched to a higher free
/// neighbour through an edge of an unused colour, so every matching is
/// produced exactly once.
pub fn count_rainbow_matchings(g: &EdgeColoredGraph, k: usize) -> u64 {
    let n = g.vertex_count();
    if 2 * k > n {
        return 0;
    }
    let mut matched = FixedBitSet::with_capacity(n);
    let mut used_c = FixedBitSet::with_capacity(g.palette_len());
    count_from(g, 0, n - 2 * k, k, &mut matched, &mut used_c)
}

fn count_from(
    g: &EdgeColoredGraph,
    from: VertexId,
    skips: usize,
    needed: usize,
    matched: &mut FixedBitSet,
    used_c: &mut FixedBitSet,
) -> u64 {
    if needed == 0 {
        return 1;
    }
    let Some(v) = (from..g.vertex_count()).find(|&v| !matched[v]) else {
        return 0;
    };
    let mut total = 0;
    if skips > 0 {
        total += count_from(g, v + 1, skips - 1, needed, matched, used_c);
    }
    matched.insert(v);
    for &id in g.incident(v) {
        let w = g.edge(id).other(v);
        let c = g.colour_index(id);
        if w < v || matched[w] || used_c[c] {
            continue;
        }
        matched.insert(w);
        used_c.insert(c);
        total += count_from(g, v + 1, skips, needed - 1, matched, used_c);
        used_c.set(c, false);
        matched.set(w, false);
    }
    matched.set(v, false);
    total
}

/// One uncoloured augmentation step on a maximal matching: either a free
/// edge between two unmatched vertices, or a matched edge `xy` with
/// unmatched neighbours `v != v'` of `x` and `y`, replaced by `xv, yv'`.
/// Colours are ignored.
pub fn augment_uncoloured(g: &EdgeColoredGraph, m: &Matching) -> Option<Matching> {
    let mut covered = vec![false; g.vertex_count()];
    for &id in m.edges() {
        covered[g.edge(id).u] = true;
        covered[g.edge(id).v] = true;
    }
    if let Some(id) =
        (0..g.edge_count()).find(|&id| !covered[g.edge(id).u] && !covered[g.edge(id).v])
    {
        let mut out = m.clone();
        out.insert(id);
        return Some(out);
    }
    for &mid in m.edges() {
        let e = *g.edge(mid);
        let free_nbrs = |x: VertexId| -> Vec<EdgeId> {
            g.incident(x)
                .iter()
                .copied()
                .filter(|&id| !covered[g.edge(id).other(x)])
                .collect()
        };
        let (xs, ys) = (free_nbrs(e.u), free_nbrs(e.v));
        for &a in &xs {
            for &b in &ys {
                if g.edge(a).other(e.u) != g.edge(b).other(e.v) {
                    let mut out = m.clone();
                    out.remove(mid);
                    out.insert(a);
                    out.insert(b);
                    return Some(out);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_rainbow_matching;

    fn k4() -> EdgeColoredGraph {
        EdgeColoredGraph::new(
            4,
            [
                (0, 1, 1),
                (2, 3, 1),
                (0, 2, 2),
                (1, 3, 2),
                (0, 3, 3),
                (1, 2, 3),
            ],
        )
        .unwrap()
    }

    fn c4(colours: [u32; 4]) -> EdgeColoredGraph {
        EdgeColoredGraph::new(
            4,
            [
                (0, 1, colours[0]),
                (1, 2, colours[1]),
                (2, 3, colours[2]),
                (3, 0, colours[3]),
            ],
        )
        .unwrap()
    }

    fn k33_cyclic() -> EdgeColoredGraph {
        EdgeColoredGraph::new(
            6,
            (0..3).flat_map(|i| (0..3).map(move |j| (i, 3 + j, ((i + j) % 3) as u32 + 1))),
        )
        .unwrap()
    }

    #[test]
    fn known_optima() {
        let r = max_rainbow_matching(&k4(), SolverOptions::default());
        assert_eq!(r.size, 1);
        assert!(r.optimal);
        assert_eq!(
            max_rainbow_matching(&c4([1, 2, 1, 2]), SolverOptions::default()).size,
            1
        );
        assert_eq!(
            max_rainbow_matching(&c4([1, 2, 3, 2]), SolverOptions::default()).size,
            2
        );
        let r = max_rainbow_matching(&k33_cyclic(), SolverOptions::default());
        assert_eq!(r.size, 3);
        assert!(is_rainbow_matching(&k33_cyclic(), &r.best).unwrap());
    }

    #[test]
    fn decision_form() {
        let g = k4();
        assert_eq!(
            rainbow_matching_at_least(&g, 0, SolverOptions::default()),
            Ok(Some(Matching::empty()))
        );
        assert_eq!(
            rainbow_matching_at_least(&g, 2, SolverOptions::default()),
            Ok(None)
        );
        let g = k33_cyclic();
        let m = rainbow_matching_at_least(&g, 3, SolverOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(m.len(), 3);
        assert!(is_rainbow_matching(&g, &m).unwrap());
    }

    #[test]
    fn budget_is_reported() {
        let g = k33_cyclic();
        let r = max_rainbow_matching(&g, SolverOptions::with_budget(2));
        assert!(!r.optimal);
        assert!(matches!(
            r.trace.last(),
            Some(TraceEvent::BudgetExhausted { .. })
        ));
        assert!(is_rainbow_matching(&g, &r.best).unwrap());
        // K4 needs more than one node to refute size 2
        assert_eq!(
            rainbow_matching_at_least(&k4(), 2, SolverOptions::with_budget(1)),
            Err(SolveError::BudgetExceeded { budget: 1 })
        );
    }

    #[test]
    fn plain_maximum_matching() {
        let path = EdgeColoredGraph::new(3, [(0, 1, 1), (1, 2, 2)]).unwrap();
        assert_eq!(max_matching(&path).len(), 1);
        assert_eq!(max_matching(&c4([1, 2, 1, 2])).len(), 2);
        let m = max_matching(&k4());
        assert_eq!(m.len(), 2);
        assert!(m.is_matching(&k4()).unwrap());
    }

    #[test]
    fn counting() {
        assert_eq!(count_rainbow_matchings(&k4(), 0), 1);
        assert_eq!(count_rainbow_matchings(&k4(), 1), 6);
        assert_eq!(count_rainbow_matchings(&k4(), 2), 0);
        assert_eq!(count_rainbow_matchings(&k33_cyclic(), 3), 3);
        // C4 coloured 1,2,3,2: only {ab, cd}
        assert_eq!(count_rainbow_matchings(&c4([1, 2, 3, 2]), 2), 1);
        assert_eq!(count_rainbow_matchings(&k4(), 3), 0);
    }

    #[test]
    fn uncoloured_augmentation() {
        // path 3-0-1-2 with matching {01}: augment to {03, 12}
        let g = EdgeColoredGraph::new(4, [(0, 1, 1), (1, 2, 2), (0, 3, 2)]).unwrap();
        let m = Matching::from_pairs(&g, &[(0, 1)]).unwrap();
        let out = augment_uncoloured(&g, &m).unwrap();
        assert_eq!(out, Matching::from_pairs(&g, &[(0, 3), (1, 2)]).unwrap());
        // triangle: nothing to gain
        let tri = EdgeColoredGraph::new(3, [(0, 1, 1), (1, 2, 2), (0, 2, 3)]).unwrap();
        let m = Matching::from_pairs(&tri, &[(0, 1)]).unwrap();
        assert_eq!(augment_uncoloured(&tri, &m), None);
    }
}
