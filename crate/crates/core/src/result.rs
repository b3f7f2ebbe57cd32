//! Solve results and the event trace shared by the exact search and the
//! augmentation engine.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, EdgeColoredGraph, GraphError, Matching};

/// Which local move produced a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RuleId {
    /// Add a free edge with an unused colour.
    Direct,
    /// Remove `k` matched edges and insert `k + 1`.
    Exchange(usize),
    /// Reuse the colour of a matched edge on a free edge of that colour.
    Mono,
    /// Solve around a high-degree vertex and attach it last.
    VertexReduce,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::Direct => f.write_str("R-direct"),
            RuleId::Exchange(k) => write!(f, "R-exchange-{k}"),
            RuleId::Mono => f.write_str("R-mono"),
            RuleId::VertexReduce => f.write_str("R-vertex-reduce"),
        }
    }
}

impl FromStr for RuleId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R-direct" => Ok(RuleId::Direct),
            "R-mono" => Ok(RuleId::Mono),
            "R-vertex-reduce" => Ok(RuleId::VertexReduce),
            _ => s
                .strip_prefix("R-exchange-")
                .and_then(|k| k.parse().ok())
                .map(RuleId::Exchange)
                .ok_or_else(|| format!("unknown rule id {s:?}")),
        }
    }
}

impl From<RuleId> for String {
    fn from(r: RuleId) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for RuleId {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// One successful rule firing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
    pub size_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    /// Starting matching of an engine run.
    Seed {
        edges: Vec<Edge>,
    },
    Rule(RuleApplication),
    /// A rule gave up after hitting its candidate cap.
    RuleBudget {
        rule: RuleId,
    },
    /// The exact search improved its incumbent.
    Incumbent {
        size: usize,
        nodes: u64,
    },
    /// The exact search stopped at its node budget.
    BudgetExhausted {
        nodes: u64,
    },
    /// The engine found no applicable rule.
    Stuck {
        size: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub best: Matching,
    pub size: usize,
    /// True only when the exact search finished without hitting its budget.
    pub optimal: bool,
    pub nodes_explored: u64,
    pub trace: Vec<TraceEvent>,
}

impl SolveResult {
    pub fn rule_applications(&self) -> impl Iterator<Item = &RuleApplication> {
        self.trace.iter().filter_map(|ev| match ev {
            TraceEvent::Rule(app) => Some(app),
            _ => None,
        })
    }

    /// Trace as JSON lines, one event per line.
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for ev in &self.trace {
            out.push_str(&serde_json::to_string(ev).expect("trace events serialise"));
            out.push('\n');
        }
        out
    }
}

/// Rebuilds the final matching from the `Seed` event and the rule
/// applications that follow it. Fails if an edge is missing from `g`, or if a
/// step removes an edge that is not currently matched.
pub fn replay_trace(g: &EdgeColoredGraph, trace: &[TraceEvent]) -> Result<Matching, GraphError> {
    let lookup = |e: &Edge| g.edge_id(e.u, e.v).ok_or(GraphError::UnknownPair(e.u, e.v));
    let mut current = Matching::empty();
    for ev in trace {
        match ev {
            TraceEvent::Seed { edges } => {
                current = Matching::new(edges.iter().map(lookup).collect::<Result<_, _>>()?);
            }
            TraceEvent::Rule(app) => {
                for e in &app.removed {
                    let id = lookup(e)?;
                    if !current.remove(id) {
                        return Err(GraphError::UnknownEdge(id));
                    }
                }
                for e in &app.added {
                    current.insert(lookup(e)?);
                }
            }
            _ => {}
        }
    }
    Ok(current)
}
