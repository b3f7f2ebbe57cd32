//! Seeded instance generators. Every output is a pure function of its
//! parameters and seed (ChaCha8 streams).

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Colour, EdgeColoredGraph, VertexId};
use crate::latin::{LatinError, LatinSquare, MAX_ENUMERATION_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("minimum degree {delta} is impossible on {n} vertices")]
    InfeasibleDegree { n: usize, delta: usize },
    #[error(transparent)]
    Latin(#[from] LatinError),
}

/// Uncoloured simple graph; edges sorted with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl SimpleGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a master seed with a cell and an instance index (SplitMix64
/// finaliser on each step), so instances can be generated independently and
/// in any order.
pub fn derive_seed(master: u64, cell: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(mix(master) ^ cell) ^ index)
}

/// Random simple graph with minimum degree at least `delta`; see
/// [`random_graph_min_degree_with`] with no extra edges.
pub fn random_graph_min_degree(
    n: usize,
    delta: usize,
    seed: u64,
) -> Result<SimpleGraph, GenerateError> {
    random_graph_min_degree_with(n, delta, 0.0, seed)
}

/// Vertices are visited in random order; each one still below `delta`
/// proposes enough distinct random non-neighbours to reach it. Any vertex
/// still short afterwards is joined to its lowest-degree non-neighbours.
/// Finally every remaining pair is added independently with probability
/// `extra_p`.
pub fn random_graph_min_degree_with(
    n: usize,
    delta: usize,
    extra_p: f64,
    seed: u64,
) -> Result<SimpleGraph, GenerateError> {
    if delta >= n {
        return Err(GenerateError::InfeasibleDegree { n, delta });
    }
    let mut rng = rng_from_seed(seed);
    let mut adj = vec![vec![false; n]; n];
    let mut deg = vec![0usize; n];
    let link = |adj: &mut Vec<Vec<bool>>, deg: &mut Vec<usize>, a: usize, b: usize| {
        adj[a][b] = true;
        adj[b][a] = true;
        deg[a] += 1;
        deg[b] += 1;
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    for &v in &order {
        if deg[v] >= delta {
            continue;
        }
        let candidates: Vec<usize> = (0..n).filter(|&w| w != v && !adj[v][w]).collect();
        let wanted = delta - deg[v];
        let picks: Vec<usize> = candidates
            .choose_multiple(&mut rng, wanted)
            .copied()
            .collect();
        for w in picks {
            link(&mut adj, &mut deg, v, w);
        }
    }
    for v in 0..n {
        while deg[v] < delta {
            let w = (0..n)
                .filter(|&w| w != v && !adj[v][w])
                .min_by_key(|&w| (deg[w], w))
                .expect("delta < n leaves a non-neighbour");
            link(&mut adj, &mut deg, v, w);
        }
    }
    if extra_p > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if !adj[u][v] && rng.gen_bool(extra_p.min(1.0)) {
                    link(&mut adj, &mut deg, u, v);
                }
            }
        }
    }

    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| adj[u][v])
        .collect();
    Ok(SimpleGraph { n, edges })
}

/// Scans edges in seeded random order and gives each the least colour
/// missing at both endpoints, so at most `2 Delta - 1` colours are used.
pub fn greedy_proper_coloring(g: &SimpleGraph, seed: u64) -> EdgeColoredGraph {
    let mut rng = rng_from_seed(seed);
    let mut order = g.edges.clone();
    order.shuffle(&mut rng);
    let mut at: Vec<Vec<Colour>> = vec![Vec::new(); g.n];
    let mut coloured = Vec::with_capacity(order.len());
    for (u, v) in order {
        let colour = (1..)
            .find(|c| !at[u].contains(c) && !at[v].contains(c))
            .expect("unbounded range");
        at[u].push(colour);
        at[v].push(colour);
        coloured.push((u, v, colour));
    }
    EdgeColoredGraph::new(g.n, coloured).expect("greedy colouring is proper")
}

/// `K_{2k}` with the round-robin 1-factorization: `2k - 1` colours, each a
/// perfect matching. Vertex `2k - 1` is the fixed hub.
pub fn one_factorization(k: usize) -> EdgeColoredGraph {
    assert!(k >= 1, "k must be positive");
    let m = 2 * k - 1;
    let mut edges = Vec::with_capacity(k * m);
    for round in 0..m {
        let colour = round as Colour + 1;
        edges.push((round, m, colour));
        for i in 1..k {
            edges.push(((round + i) % m, (round + m - i) % m, colour));
        }
    }
    EdgeColoredGraph::new(2 * k, edges).expect("round-robin schedule is a 1-factorization")
}

/// Random Latin square by cell-by-cell backtracking with a shuffled symbol
/// order at every cell. The distribution is not uniform.
pub fn random_latin(n: usize, seed: u64) -> Result<LatinSquare, GenerateError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(LatinError::OrderTooLarge {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        }
        .into());
    }
    assert!(n >= 1, "order must be at least 1");
    let mut rng = rng_from_seed(seed);
    let mut cells = vec![0u32; n * n];
    let mut row_used = vec![0u32; n];
    let mut col_used = vec![0u32; n];
    let filled = fill(0, n, &mut cells, &mut row_used, &mut col_used, &mut rng);
    debug_assert!(filled, "a Latin square of every order exists");
    Ok(LatinSquare::from_rows(
        &cells.chunks(n).map(<[u32]>::to_vec).collect::<Vec<_>>(),
    )?)
}

fn fill(
    pos: usize,
    n: usize,
    cells: &mut [u32],
    row_used: &mut [u32],
    col_used: &mut [u32],
    rng: &mut ChaCha8Rng,
) -> bool {
    if pos == n * n {
        return true;
    }
    let (r, c) = (pos / n, pos % n);
    let mut symbols: Vec<u32> = (1..=n as u32)
        .filter(|&s| (row_used[r] | col_used[c]) & (1 << s) == 0)
        .collect();
    symbols.shuffle(rng);
    for s in symbols {
        cells[pos] = s;
        row_used[r] |= 1 << s;
        col_used[c] |= 1 << s;
        if fill(pos + 1, n, cells, row_used, col_used, rng) {
            return true;
        }
        row_used[r] &= !(1 << s);
        col_used[c] &= !(1 << s);
    }
    false
}
