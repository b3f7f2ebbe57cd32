//! Graph and Latin square file formats.
//!
//! Graph text format, one record per line:
//!
//! ```text
//! # comment
//! g 4
//! e 0 1 1
//! e 2 3 1
//! ```
//!
//! The JSON form is `{"n": 4, "edges": [[0, 1, 1], [2, 3, 1]]}`.
//! Latin squares are written as the order on the first line followed by
//! `n` whitespace-separated rows.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Colour, EdgeColoredGraph, GraphError, VertexId};
use crate::latin::{LatinError, LatinSquare};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Latin(#[from] LatinError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(VertexId, VertexId, Colour)>,
}

pub fn parse_graph_text(input: &str) -> Result<EdgeColoredGraph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().expect("non-empty line has a field");
        let nums = fields
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("not a non-negative integer: {f:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match (tag, nums.as_slice()) {
            ("g", [count]) => {
                if n.is_some() {
                    return Err(parse_err(line_no, "duplicate header"));
                }
                n = Some(*count as usize);
            }
            ("g", _) => return Err(parse_err(line_no, "expected `g <n>`")),
            ("e", [u, v, c]) => {
                if n.is_none() {
                    return Err(parse_err(line_no, "edge before `g <n>` header"));
                }
                let colour =
                    Colour::try_from(*c).map_err(|_| parse_err(line_no, "colour out of range"))?;
                edges.push((*u as VertexId, *v as VertexId, colour));
            }
            ("e", _) => return Err(parse_err(line_no, "expected `e <u> <v> <colour>`")),
            (other, _) => return Err(parse_err(line_no, format!("unknown record {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `g <n>` header"))?;
    Ok(EdgeColoredGraph::new(n, edges)?)
}

pub fn graph_to_text(g: &EdgeColoredGraph) -> String {
    let mut out = format!("g {}\n", g.vertex_count());
    for e in g.edges() {
        out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.colour));
    }
    out
}

pub fn parse_graph_json(input: &str) -> Result<EdgeColoredGraph, FormatError> {
    let raw: GraphJson = serde_json::from_str(input)?;
    Ok(EdgeColoredGraph::new(raw.n, raw.edges)?)
}

pub fn graph_to_json(g: &EdgeColoredGraph) -> String {
    let raw = GraphJson {
        n: g.vertex_count(),
        edges: g.triples(),
    };
    serde_json::to_string(&raw).expect("plain data serialises")
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_graph(input: &str) -> Result<EdgeColoredGraph, FormatError> {
    if input.trim_start().starts_with('{') {
        parse_graph_json(input)
    } else {
        parse_graph_text(input)
    }
}

pub fn parse_latin(input: &str) -> Result<LatinSquare, FormatError> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_no, first) = lines.next().ok_or_else(|| parse_err(0, "empty input"))?;
    let n: usize = first
        .parse()
        .map_err(|_| parse_err(first_no, format!("expected order, got {first:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (line_no, line) in lines {
        let row = line
            .split_whitespace()
            .map(|f| {
                f.parse::<u64>()
                    .map_err(|_| parse_err(line_no, format!("bad symbol {f:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(parse_err(
                line_no,
                format!("expected {n} symbols, got {}", row.len()),
            ));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(parse_err(
            0,
            format!("expected {n} rows, got {}", rows.len()),
        ));
    }
    Ok(LatinSquare::from_rows(&rows)?)
}

pub fn latin_to_text(l: &LatinSquare) -> String {
    let mut out = format!("{}\n", l.order());
    for i in 0..l.order() {
        let row: Vec<String> = (0..l.order()).map(|j| l.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_text_with_comments() {
        let g = parse_graph_text("# path\ng 3\ne 0 1 1 # first\n\ne 2 1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(graph_to_text(&g), "g 3\ne 0 1 1\ne 1 2 2\n");
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_graph_text("g 3\ne 0 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 2, .. }), "{err}");
        let err = parse_graph_text("g 3\ne 0 x 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 2, .. }));
        let err = parse_graph_text("e 0 1 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 1, .. }));
        let err = parse_graph_text("g 3\nq 1\n").unwrap_err();
        assert!(matches!(err, FormatError::Parse { line: 2, .. }));
    }

    #[test]
    fn validation_errors_pass_through() {
        let err = parse_graph_text("g 3\ne 0 1 4\ne 1 2 4\n").unwrap_err();
        assert!(matches!(
            err,
            FormatError::Graph(GraphError::ImproperColoring { .. })
        ));
    }

    #[test]
    fn json_and_auto_detection() {
        let g = parse_graph(r#" {"n": 3, "edges": [[1, 0, 1], [1, 2, 2]]}"#).unwrap();
        assert_eq!(graph_to_json(&g), r#"{"n":3,"edges":[[0,1,1],[1,2,2]]}"#);
        assert_eq!(parse_graph(&graph_to_text(&g)).unwrap(), g);
    }

    #[test]
    fn latin_text() {
        let l = parse_latin("3\n1 2 3\n2 3 1\n3 1 2\n").unwrap();
        assert_eq!(latin_to_text(&l), "3\n1 2 3\n2 3 1\n3 1 2\n");
        assert!(parse_latin("2\n1 2\n").is_err());
        assert!(parse_latin("2\n1 2\n1 2\n").is_err());
    }

    fn arb_graph() -> impl Strategy<Value = EdgeColoredGraph> {
        (
            1usize..10,
            prop::collection::vec((0usize..10, 0usize..10, 1u32..8), 0..25),
        )
            .prop_map(|(n, raw)| {
                // keep only edges that extend a proper simple graph
                let mut kept: Vec<(usize, usize, u32)> = Vec::new();
                for (u, v, c) in raw {
                    let (u, v) = (u % n, v % n);
                    if u == v {
                        continue;
                    }
                    let mut candidate = kept.clone();
                    candidate.push((u, v, c));
                    if EdgeColoredGraph::new(n, candidate.iter().copied()).is_ok() {
                        kept = candidate;
                    }
                }
                EdgeColoredGraph::new(n, kept).unwrap()
            })
    }

    proptest! {
        #[test]
        fn text_round_trip_is_bit_exact(g in arb_graph()) {
            let text = graph_to_text(&g);
            let back = parse_graph_text(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(graph_to_text(&back), text);
            let json = graph_to_json(&g);
            prop_assert_eq!(graph_to_json(&parse_graph_json(&json).unwrap()), json);
        }
    }
}
