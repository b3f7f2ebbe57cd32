//! Latin squares as properly edge-coloured complete bipartite graphs.
//!
//! Row `i` becomes vertex `i`, column `j` becomes vertex `n + j`, and cell
//! `(i, j)` becomes the edge `(i, n + j)` coloured by its symbol. A Latin
//! transversal is then exactly a rainbow perfect matching.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Colour, EdgeColoredGraph};
use crate::solver::count_rainbow_matchings;

/// Largest order for which transversals are counted by permutation search.
pub const MAX_ENUMERATION_ORDER: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("order {order} exceeds the supported maximum of {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("graph is not a complete bipartite graph K_{{n,n}}")]
    NotCompleteBipartite,
    #[error("expected {expected} colours, found {found}")]
    WrongColourCount { expected: usize, found: usize },
}

/// An `n x n` Latin square over the symbols `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u32>,
}

impl LatinSquare {
    /// Builds a square from rows over an arbitrary alphabet. The distinct
    /// symbols are relabelled `1..=n` in ascending order.
    pub fn from_rows<T: Ord + Copy>(rows: &[Vec<T>]) -> Result<Self, LatinError> {
        let n = rows.len();
        if n == 0 {
            return Err(LatinError::NotLatin("order must be at least 1".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(LatinError::NotLatin(format!(
                "row {i} does not have {n} entries"
            )));
        }
        let mut alphabet: Vec<T> = rows.iter().flatten().copied().collect();
        alphabet.sort_unstable();
        alphabet.dedup();
        if alphabet.len() != n {
            return Err(LatinError::NotLatin(format!(
                "expected {n} distinct symbols, found {}",
                alphabet.len()
            )));
        }
        let cells = rows
            .iter()
            .flatten()
            .map(|s| alphabet.binary_search(s).expect("symbol in alphabet") as u32 + 1)
            .collect();
        let square = Self { n, cells };
        square.validate()?;
        Ok(square)
    }

    /// `L[i][j] = ((i + j) mod n) + 1`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "order must be at least 1");
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32 + 1))
            .collect();
        Self { n, cells }
    }

    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        Self { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.cells[row * self.n + col]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.n).map(<[u32]>::to_vec).collect()
    }

    fn validate(&self) -> Result<(), LatinError> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        for i in 0..n {
            seen.fill(false);
            for j in 0..n {
                let s = self.get(i, j) as usize;
                if s == 0 || s > n || std::mem::replace(&mut seen[s], true) {
                    return Err(LatinError::NotLatin(format!("row {i} repeats symbol {s}")));
                }
            }
        }
        for j in 0..n {
            seen.fill(false);
            for i in 0..n {
                let s = self.get(i, j) as usize;
                if std::mem::replace(&mut seen[s], true) {
                    return Err(LatinError::NotLatin(format!(
                        "column {j} repeats symbol {s}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_latin(&self) -> bool {
        self.validate().is_ok()
    }
}

pub fn latin_to_graph(l: &LatinSquare) -> EdgeColoredGraph {
    let n = l.order();
    let edges = (0..n).flat_map(|i| (0..n).map(move |j| (i, n + j, l.get(i, j) as Colour)));
    EdgeColoredGraph::new(2 * n, edges).expect("a Latin square colours K_{n,n} properly")
}

/// Inverse of [`latin_to_graph`]. The bipartition is recovered from the
/// graph: rows are the side containing vertex 0, both sides in ascending
/// vertex order. Colours are relabelled `1..=n` in ascending order.
pub fn graph_to_latin(g: &EdgeColoredGraph) -> Result<LatinSquare, LatinError> {
    let total = g.vertex_count();
    if total == 0 || !total.is_multiple_of(2) {
        return Err(LatinError::NotCompleteBipartite);
    }
    let n = total / 2;
    if g.edge_count() != n * n {
        return Err(LatinError::NotCompleteBipartite);
    }
    let mut side: Vec<Option<bool>> = vec![None; total];
    for start in 0..total {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].expect("visited");
            for &id in g.incident(x) {
                let y = g.edge(id).other(x);
                match side[y] {
                    None => {
                        side[y] = Some(!sx);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => return Err(LatinError::NotCompleteBipartite),
                    Some(_) => {}
                }
            }
        }
    }
    let rows: Vec<usize> = (0..total).filter(|&v| side[v] == Some(false)).collect();
    let cols: Vec<usize> = (0..total).filter(|&v| side[v] == Some(true)).collect();
    if rows.len() != n || cols.len() != n {
        return Err(LatinError::NotCompleteBipartite);
    }
    if g.palette_len() != n {
        return Err(LatinError::WrongColourCount {
            expected: n,
            found: g.palette_len(),
        });
    }
    let mut cells = Vec::with_capacity(n * n);
    for &r in &rows {
        for &c in &cols {
            let id = g.edge_id(r, c).ok_or(LatinError::NotCompleteBipartite)?;
            cells.push(g.colour_index(id) as u32 + 1);
        }
    }
    // proper colouring with n colours on n-regular sides makes rows and
    // columns permutations
    Ok(LatinSquare::from_cells_unchecked(n, cells))
}

/// Number of transversals, by depth-first search over rows with used
/// column and symbol masks. The first row's choices are counted in
/// parallel and summed.
pub fn count_transversals(l: &LatinSquare) -> Result<u64, LatinError> {
    let n = l.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(LatinError::OrderTooLarge {
            order: n,
            max: MAX_ENUMERATION_ORDER,
        });
    }
    Ok((0..n)
        .into_par_iter()
        .map(|c0| count_rows(l, 1, 1 << c0, 1 << l.get(0, c0)))
        .sum())
}

fn count_rows(l: &LatinSquare, row: usize, cols: u32, syms: u32) -> u64 {
    let n = l.order();
    if row == n {
        return 1;
    }
    (0..n)
        .filter(|&c| cols & (1 << c) == 0 && syms & (1 << l.get(row, c)) == 0)
        .map(|c| count_rows(l, row + 1, cols | 1 << c, syms | 1 << l.get(row, c)))
        .sum()
}

/// Counts rainbow perfect matchings of the bridged graph. Independent of
/// [`count_transversals`] and not limited in order, though exponential.
pub fn count_transversals_via_graph(l: &LatinSquare) -> u64 {
    count_rainbow_matchings(&latin_to_graph(l), l.order())
}

/// One transversal as a permutation `row -> column`, if any.
pub fn find_transversal(l: &LatinSquare) -> Option<Vec<usize>> {
    fn go(l: &LatinSquare, row: usize, cols: u64, syms: u64, perm: &mut Vec<usize>) -> bool {
        if row == l.order() {
            return true;
        }
        for c in 0..l.order() {
            let s = l.get(row, c);
            if cols & (1 << c) == 0 && syms & (1 << s) == 0 {
                perm.push(c);
                if go(l, row + 1, cols | 1 << c, syms | 1 << s, perm) {
                    return true;
                }
                perm.pop();
            }
        }
        false
    }
    assert!(l.order() < 64, "order too large for the mask search");
    let mut perm = Vec::with_capacity(l.order());
    go(l, 0, 0, 0, &mut perm).then_some(perm)
}
