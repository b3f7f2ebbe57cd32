//! Properly edge-coloured simple graphs, matchings and the threshold formulas
//! they are measured against.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
/// Colour label as supplied by the caller. Only distinctness matters.
pub type Colour = u32;

/// An undirected coloured edge, normalised so that `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub colour: Colour,
}

impl Edge {
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`. `x` must be an endpoint.
    pub fn other(&self, x: VertexId) -> VertexId {
        debug_assert!(self.touches(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: VertexId, v: VertexId, n: usize },
    #[error("loop at vertex {vertex}")]
    LoopEdge { vertex: VertexId },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("edge ({u}, {v}) has colour 0; colours must be positive")]
    ZeroColour { u: VertexId, v: VertexId },
    #[error(
        "improper colouring: edges ({}, {}) and ({}, {}) share a vertex and colour {}",
        first.u, first.v, second.u, second.v, first.colour
    )]
    ImproperColoring { first: Edge, second: Edge },
    #[error("edge id {0} is not an edge of the host graph")]
    UnknownEdge(EdgeId),
    #[error("vertex pair ({0}, {1}) is not an edge of the host graph")]
    UnknownPair(VertexId, VertexId),
}

/// Immutable simple graph with a proper edge colouring.
///
/// Edges are stored sorted by `(u, v)`, so the edge id of a pair does not
/// depend on input order. Colour labels are kept verbatim for output and
/// additionally remapped to a dense palette `0..palette_len()` for the
/// bitset-based searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    dense_colour: Vec<usize>,
    palette: Vec<Colour>,
    incidence: Vec<Vec<EdgeId>>,
}

impl EdgeColoredGraph {
    /// Validates and builds a graph on vertices `0..n`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Colour)>,
    {
        let mut normalised = Vec::new();
        for (a, b, colour) in edges {
            if a >= n || b >= n {
                return Err(GraphError::VertexOutOfRange { u: a, v: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge { vertex: a });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if colour == 0 {
                return Err(GraphError::ZeroColour { u, v });
            }
            normalised.push(Edge { u, v, colour });
        }
        normalised.sort_unstable();
        for pair in normalised.windows(2) {
            if pair[0].u == pair[1].u && pair[0].v == pair[1].v {
                return Err(GraphError::DuplicateEdge {
                    u: pair[0].u,
                    v: pair[0].v,
                });
            }
        }

        let mut incidence = vec![Vec::new(); n];
        for (id, e) in normalised.iter().enumerate() {
            incidence[e.u].push(id);
            incidence[e.v].push(id);
        }
        for ids in &incidence {
            let mut seen: BTreeMap<Colour, EdgeId> = BTreeMap::new();
            for &id in ids {
                let colour = normalised[id].colour;
                if let Some(&prev) = seen.get(&colour) {
                    return Err(GraphError::ImproperColoring {
                        first: normalised[prev],
                        second: normalised[id],
                    });
                }
                seen.insert(colour, id);
            }
        }

        let mut palette: Vec<Colour> = normalised.iter().map(|e| e.colour).collect();
        palette.sort_unstable();
        palette.dedup();
        let dense_colour = normalised
            .iter()
            .map(|e| palette.binary_search(&e.colour).expect("colour in palette"))
            .collect();

        Ok(Self {
            n,
            edges: normalised,
            dense_colour,
            palette,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Dense colour index of an edge, in `0..palette_len()`.
    pub fn colour_index(&self, id: EdgeId) -> usize {
        self.dense_colour[id]
    }

    /// Distinct colour labels in ascending order; position is the dense index.
    pub fn palette(&self) -> &[Colour] {
        &self.palette
    }

    pub fn palette_len(&self) -> usize {
        self.palette.len()
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Minimum degree; 0 for the edgeless graph (and for `n = 0`).
    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let (u, v) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(u, v)))
            .ok()
    }

    /// Edge of colour `colour` at vertex `v`, if any (unique by properness).
    pub fn edge_with_colour_at(&self, v: VertexId, colour: Colour) -> Option<EdgeId> {
        self.incidence[v]
            .iter()
            .copied()
            .find(|&id| self.edges[id].colour == colour)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn color_profile(&self) -> ColorProfile {
        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.colour).or_insert(0usize) += 1;
        }
        let a = counts.values().copied().max().unwrap_or(0);
        ColorProfile { counts, a }
    }

    /// Edge ids of one colour class, in id order.
    pub fn colour_class(&self, colour: Colour) -> Vec<EdgeId> {
        (0..self.edges.len())
            .filter(|&id| self.edges[id].colour == colour)
            .collect()
    }

    /// Same vertex set with every edge at `v` removed; `v` stays as an
    /// isolated vertex so ids are unchanged.
    pub fn without_vertex(&self, v: VertexId) -> Self {
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.touches(v))
            .map(|e| (e.u, e.v, e.colour));
        Self::new(self.n, edges).expect("subgraph of a valid graph is valid")
    }

    /// Same edges, each given its own colour `1..=m` in id order.
    pub fn with_distinct_colours(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.u, e.v, i as Colour + 1));
        Self::new(self.n, edges).expect("distinct colours are always proper")
    }

    /// Edge triples in canonical order, suitable for rebuilding the graph.
    pub fn triples(&self) -> Vec<(VertexId, VertexId, Colour)> {
        self.edges.iter().map(|e| (e.u, e.v, e.colour)).collect()
    }
}

/// Colour class sizes. In a proper colouring each class is a matching, so
/// `a` is the size of a largest monochromatic matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorProfile {
    pub counts: BTreeMap<Colour, usize>,
    pub a: usize,
}

impl ColorProfile {
    /// Smallest colour label among the largest classes.
    pub fn largest_class(&self) -> Option<Colour> {
        self.counts
            .iter()
            .find(|&(_, &c)| c == self.a)
            .map(|(&colour, _)| colour)
    }
}

/// A set of edges of some host graph, identified by edge id and kept sorted.
///
/// Construction does not check disjointness; use [`is_rainbow_matching`] or
/// [`Matching::is_matching`] against the host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matching {
    edges: Vec<EdgeId>,
}

impl Matching {
    pub fn new(mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self { edges }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        g: &EdgeColoredGraph,
        pairs: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        let ids = pairs
            .iter()
            .map(|&(a, b)| g.edge_id(a, b).ok_or(GraphError::UnknownPair(a, b)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ids))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edges.binary_search(&id).is_ok()
    }

    pub fn insert(&mut self, id: EdgeId) {
        if let Err(pos) = self.edges.binary_search(&id) {
            self.edges.insert(pos, id);
        }
    }

    pub fn remove(&mut self, id: EdgeId) -> bool {
        match self.edges.binary_search(&id) {
            Ok(pos) => {
                self.edges.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Covered vertices, ascending.
    pub fn vertices(&self, g: &EdgeColoredGraph) -> Vec<VertexId> {
        let mut vs: Vec<_> = self
            .edges
            .iter()
            .flat_map(|&id| [g.edge(id).u, g.edge(id).v])
            .collect();
        vs.sort_unstable();
        vs
    }

    /// Colour labels used, ascending.
    pub fn colours(&self, g: &EdgeColoredGraph) -> Vec<Colour> {
        let mut cs: Vec<_> = self.edges.iter().map(|&id| g.edge(id).colour).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    pub fn pairs(&self, g: &EdgeColoredGraph) -> Vec<(VertexId, VertexId, Colour)> {
        self.edges
            .iter()
            .map(|&id| {
                let e = g.edge(id);
                (e.u, e.v, e.colour)
            })
            .collect()
    }

    /// Re-identifies the same vertex pairs in another graph.
    pub fn transfer(
        &self,
        from: &EdgeColoredGraph,
        to: &EdgeColoredGraph,
    ) -> Result<Self, GraphError> {
        let pairs: Vec<_> = self
            .edges
            .iter()
            .map(|&id| (from.edge(id).u, from.edge(id).v))
            .collect();
        Self::from_pairs(to, &pairs)
    }

    pub fn is_matching(&self, g: &EdgeColoredGraph) -> Result<bool, GraphError> {
        check_ids(g, self)?;
        let mut covered = vec![false; g.vertex_count()];
        for &id in &self.edges {
            let e = g.edge(id);
            if covered[e.u] || covered[e.v] {
                return Ok(false);
            }
            covered[e.u] = true;
            covered[e.v] = true;
        }
        Ok(true)
    }
}

fn check_ids(g: &EdgeColoredGraph, m: &Matching) -> Result<(), GraphError> {
    match m.edges.iter().find(|&&id| id >= g.edge_count()) {
        Some(&id) => Err(GraphError::UnknownEdge(id)),
        None => Ok(()),
    }
}

/// True iff the edges of `m` are pairwise vertex-disjoint and have pairwise
/// distinct colours. The empty matching is rainbow.
pub fn is_rainbow_matching(g: &EdgeColoredGraph, m: &Matching) -> Result<bool, GraphError> {
    if !m.is_matching(g)? {
        return Ok(false);
    }
    let mut used = vec![false; g.palette_len()];
    for &id in m.edges() {
        let c = g.colour_index(id);
        if used[c] {
            return Ok(false);
        }
        used[c] = true;
    }
    Ok(true)
}

/// Smallest order `n` with `n >= (9 delta - 5) / 2`.
pub fn bound_n(delta: usize) -> usize {
    assert!(delta >= 1, "delta must be positive");
    (9 * delta - 5).div_ceil(2)
}

/// `floor(13d/2 - 23/2 + 41/(8d)) + 1`, the earlier sufficient order.
pub fn earlier_order_bound(delta: usize) -> usize {
    assert!(delta >= 1, "delta must be positive");
    // 13d/2 - 23/2 + 41/(8d) = (52 d^2 - 92 d + 41) / (8 d)
    let d = delta as i64;
    let num = 52 * d * d - 92 * d + 41;
    let den = 8 * d;
    (num.div_euclid(den) + 1) as usize
}

/// `ceil(delta / 2)`: guaranteed rainbow matching size for graphs other than K4.
pub fn half_degree_size(delta: usize) -> usize {
    delta.div_ceil(2)
}

/// `floor(3 delta / 5)`: guaranteed size once `|G| >= 8 delta / 5`.
pub fn three_fifths_size(delta: usize) -> usize {
    3 * delta / 5
}

/// `5 |G| >= 8 delta`.
pub fn three_fifths_applies(n: usize, delta: usize) -> bool {
    5 * n >= 8 * delta
}
