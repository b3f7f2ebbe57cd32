//! Verification and threshold-scan campaigns. The exact solver decides every
//! verdict; the engine's result is recorded alongside as a metric.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rainbow_core::generate::{
    derive_seed, greedy_proper_coloring, one_factorization, random_graph_min_degree_with,
};
use rainbow_core::graph::{bound_n, half_degree_size, three_fifths_applies, three_fifths_size};
use rainbow_core::io::graph_to_text;
use rainbow_core::solver::{max_rainbow_matching, rainbow_matching_at_least, SolverOptions};
use rainbow_core::{run_engine, EdgeColoredGraph, EngineOptions};

use crate::config::CampaignConfig;

const COLOUR_STREAM: u64 = 0xC0_10_0B;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Holds,
    NotApplicable,
    /// Below the bound on `K_4`.
    ExceptionK4,
    /// Below the bound with `n = delta + 2`.
    ExceptionOrder,
    Inconclusive,
    Violation,
}

impl Check {
    fn from_size(found: usize, optimal: bool, needed: usize) -> Check {
        if found >= needed {
            Check::Holds
        } else if optimal {
            Check::Violation
        } else {
            Check::Inconclusive
        }
    }
}

/// `ceil(delta / 2)` with the flagged exceptions.
pub fn half_degree_check(g: &EdgeColoredGraph, found: usize, optimal: bool) -> Check {
    let delta = g.min_degree();
    match Check::from_size(found, optimal, half_degree_size(delta)) {
        Check::Violation if g.vertex_count() == 4 && g.is_complete() => Check::ExceptionK4,
        Check::Violation if g.vertex_count() == delta + 2 => Check::ExceptionOrder,
        other => other,
    }
}

/// `floor(3 delta / 5)` when `5n >= 8 delta`.
pub fn three_fifths_check(g: &EdgeColoredGraph, found: usize, optimal: bool) -> Check {
    let delta = g.min_degree();
    if !three_fifths_applies(g.vertex_count(), delta) {
        return Check::NotApplicable;
    }
    Check::from_size(found, optimal, three_fifths_size(delta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Random,
    Extremal,
}

/// One coloured instance of a verification campaign.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceRow {
    pub config_hash: String,
    pub family: Family,
    pub delta: usize,
    pub n: usize,
    pub index: usize,
    pub colouring: usize,
    pub graph_seed: u64,
    pub colour_seed: u64,
    pub min_degree: usize,
    pub edges: usize,
    pub colours: usize,
    pub a: usize,
    /// Largest rainbow matching found by the exact search.
    pub rainbow: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub full_size: Check,
    pub engine_size: usize,
    pub engine_trace_len: usize,
    pub half_degree: Check,
    pub three_fifths: Check,
}

impl InstanceRow {
    pub fn has_violation(&self) -> bool {
        [self.full_size, self.half_degree, self.three_fifths].contains(&Check::Violation)
    }

    pub fn has_exception(&self) -> bool {
        [Check::ExceptionK4, Check::ExceptionOrder].contains(&self.half_degree)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub config_hash: String,
    pub delta: usize,
    pub n: usize,
    pub bound_applies: bool,
    pub instances: usize,
    pub reached: usize,
    pub inconclusive: usize,
    /// `reached / (instances - inconclusive)`; empty without conclusive rows.
    pub success_fraction: Option<f64>,
    pub engine_reached: usize,
    pub full_size_violations: usize,
    pub half_degree_exceptions: usize,
    pub half_degree_violations: usize,
    pub three_fifths_checked: usize,
    pub three_fifths_violations: usize,
    pub max_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub file_name: String,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub config: CampaignConfig,
    pub config_hash: String,
    pub rows: Vec<InstanceRow>,
    pub cells: Vec<CellSummary>,
    pub witnesses: Vec<Witness>,
}

impl VerifyOutput {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| r.has_violation()).count()
    }
}

struct Instance {
    family: Family,
    delta: usize,
    n: usize,
    index: usize,
    colouring: usize,
    graph_seed: u64,
    colour_seed: u64,
    graph: EdgeColoredGraph,
}

fn cell_key(delta: usize, n: usize) -> u64 {
    ((delta as u64) << 32) | n as u64
}

/// The coloured instances of one random graph: the first colouring and
/// `recolourings` more.
fn random_instances(
    config: &CampaignConfig,
    delta: usize,
    n: usize,
    index: usize,
) -> Vec<Instance> {
    let graph_seed = derive_seed(config.seed, cell_key(delta, n), index as u64);
    let Ok(simple) = random_graph_min_degree_with(n, delta, config.extra_p, graph_seed) else {
        return Vec::new();
    };
    (0..=config.recolourings)
        .map(|colouring| {
            let colour_seed = derive_seed(graph_seed, COLOUR_STREAM, colouring as u64);
            Instance {
                family: Family::Random,
                delta,
                n,
                index,
                colouring,
                graph_seed,
                colour_seed,
                graph: greedy_proper_coloring(&simple, colour_seed),
            }
        })
        .collect()
}

fn evaluate(config: &CampaignConfig, hash: &str, inst: &Instance) -> InstanceRow {
    let g = &inst.graph;
    let solve = max_rainbow_matching(g, SolverOptions::with_budget(config.budget));
    let engine_opts = EngineOptions {
        max_exchange_depth: config.depth,
        ..EngineOptions::default()
    };
    let engine = run_engine(g, inst.delta, &engine_opts);
    let full_size = if inst.n >= bound_n(inst.delta) {
        Check::from_size(solve.size, solve.optimal, inst.delta)
    } else {
        Check::NotApplicable
    };
    InstanceRow {
        config_hash: hash.to_string(),
        family: inst.family,
        delta: inst.delta,
        n: inst.n,
        index: inst.index,
        colouring: inst.colouring,
        graph_seed: inst.graph_seed,
        colour_seed: inst.colour_seed,
        min_degree: g.min_degree(),
        edges: g.edge_count(),
        colours: g.palette_len(),
        a: g.color_profile().a,
        rainbow: solve.size,
        optimal: solve.optimal,
        nodes: solve.nodes_explored,
        full_size,
        engine_size: engine.size,
        engine_trace_len: engine.trace.len(),
        half_degree: half_degree_check(g, solve.size, solve.optimal),
        three_fifths: three_fifths_check(g, solve.size, solve.optimal),
    }
}

fn summarise(hash: &str, delta: usize, n: usize, rows: &[&InstanceRow]) -> CellSummary {
    let count = |f: &dyn Fn(&InstanceRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let reached = count(&|r| r.rainbow >= delta);
    let inconclusive = count(&|r| r.rainbow < delta && !r.optimal);
    let conclusive = rows.len() - inconclusive;
    CellSummary {
        config_hash: hash.to_string(),
        delta,
        n,
        bound_applies: n >= bound_n(delta),
        instances: rows.len(),
        reached,
        inconclusive,
        success_fraction: (conclusive > 0).then(|| reached as f64 / conclusive as f64),
        engine_reached: count(&|r| r.engine_size >= delta),
        full_size_violations: count(&|r| r.full_size == Check::Violation),
        half_degree_exceptions: count(&|r| r.has_exception()),
        half_degree_violations: count(&|r| r.half_degree == Check::Violation),
        three_fifths_checked: count(&|r| r.three_fifths != Check::NotApplicable),
        three_fifths_violations: count(&|r| r.three_fifths == Check::Violation),
        max_nodes: rows.iter().map(|r| r.nodes).max().unwrap_or(0),
    }
}

pub fn verify(config: &CampaignConfig) -> VerifyOutput {
    let hash = config.hash();
    let mut jobs: Vec<(usize, usize, usize)> = Vec::new();
    for &delta in &config.deltas {
        let n = config.n_rule.n_for(delta);
        jobs.extend((0..config.samples).map(|i| (delta, n, i)));
    }
    let mut instances: Vec<Instance> = jobs
        .par_iter()
        .flat_map_iter(|&(delta, n, i)| random_instances(config, delta, n, i))
        .collect();
    if config.extremal {
        for &delta in config.deltas.iter().filter(|&&d| d % 2 == 1) {
            instances.push(Instance {
                family: Family::Extremal,
                delta,
                n: delta + 1,
                index: 0,
                colouring: 0,
                graph_seed: 0,
                colour_seed: 0,
                graph: one_factorization(delta.div_ceil(2)),
            });
        }
    }

    let mut rows: Vec<InstanceRow> = instances
        .par_iter()
        .map(|inst| evaluate(config, &hash, inst))
        .collect();
    rows.sort_by_key(|r| {
        (
            r.delta,
            r.family == Family::Extremal,
            r.n,
            r.index,
            r.colouring,
        )
    });

    let mut keys: Vec<(usize, usize)> = rows.iter().map(|r| (r.delta, r.n)).collect();
    keys.dedup();
    let cells = keys
        .iter()
        .map(|&(d, n)| {
            let cell: Vec<&InstanceRow> =
                rows.iter().filter(|r| (r.delta, r.n) == (d, n)).collect();
            summarise(&hash, d, n, &cell)
        })
        .collect();

    let witnesses = rows
        .iter()
        .filter(|r| r.has_violation())
        .map(|r| {
            let inst = instances
                .iter()
                .find(|i| {
                    (i.family, i.delta, i.n, i.index, i.colouring)
                        == (r.family, r.delta, r.n, r.index, r.colouring)
                })
                .expect("every row comes from an instance");
            Witness {
                file_name: format!(
                    "witness-d{}-n{}-i{}-c{}.txt",
                    r.delta, r.n, r.index, r.colouring
                ),
                graph: graph_to_text(&inst.graph),
            }
        })
        .collect();

    VerifyOutput {
        config: config.clone(),
        config_hash: hash,
        rows,
        cells,
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub delta: usize,
    pub ns: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub budget: u64,
    pub extra_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub delta: usize,
    pub n: usize,
    pub samples: usize,
    pub failures: usize,
    pub inconclusive: usize,
    /// Empty when no sample was conclusive.
    pub failure_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Reached,
    Failed,
    Inconclusive,
}

/// Per `n`, how often a random instance lacks a rainbow matching of size
/// `delta`. Values of `n` at most `delta` have no instances.
pub fn scan(config: &ScanConfig) -> Vec<ScanRow> {
    let jobs: Vec<(usize, usize)> = config
        .ns
        .iter()
        .filter(|&&n| n > config.delta)
        .flat_map(|&n| (0..config.samples).map(move |i| (n, i)))
        .collect();
    let outcomes: Vec<(usize, Outcome)> = jobs
        .par_iter()
        .map(|&(n, i)| {
            let seed = derive_seed(config.seed, cell_key(config.delta, n), i as u64);
            let simple = random_graph_min_degree_with(n, config.delta, config.extra_p, seed)
                .expect("n > delta");
            let g = greedy_proper_coloring(&simple, derive_seed(seed, COLOUR_STREAM, 0));
            let outcome = match rainbow_matching_at_least(
                &g,
                config.delta,
                SolverOptions::with_budget(config.budget),
            ) {
                Ok(Some(_)) => Outcome::Reached,
                Ok(None) => Outcome::Failed,
                Err(_) => Outcome::Inconclusive,
            };
            (n, outcome)
        })
        .collect();
    config
        .ns
        .iter()
        .map(|&n| {
            let of_n: Vec<Outcome> = outcomes
                .iter()
                .filter(|(m, _)| *m == n)
                .map(|&(_, o)| o)
                .collect();
            let failures = of_n.iter().filter(|&&o| o == Outcome::Failed).count();
            let inconclusive = of_n.iter().filter(|&&o| o == Outcome::Inconclusive).count();
            let conclusive = of_n.len() - inconclusive;
            ScanRow {
                delta: config.delta,
                n,
                samples: of_n.len(),
                failures,
                inconclusive,
                failure_rate: (conclusive > 0).then(|| failures as f64 / conclusive as f64),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NRule;

    fn small(deltas: Vec<usize>, samples: usize) -> CampaignConfig {
        CampaignConfig {
            deltas,
            samples,
            recolourings: 1,
            ..CampaignConfig::default()
        }
    }

    #[test]
    fn k4_is_a_flagged_exception() {
        let k4 = one_factorization(2);
        assert_eq!(half_degree_check(&k4, 1, true), Check::ExceptionK4);
        assert_eq!(half_degree_check(&k4, 1, false), Check::Inconclusive);
        assert_eq!(three_fifths_check(&k4, 1, true), Check::NotApplicable);
        let k6 = one_factorization(3);
        assert_eq!(half_degree_check(&k6, 3, true), Check::Holds);
    }

    #[test]
    fn verify_small_cells() {
        let out = verify(&small(vec![2, 3], 20));
        assert_eq!(out.rows.len(), 80);
        assert_eq!(out.cells.len(), 2);
        for c in &out.cells {
            assert!(c.bound_applies);
            assert_eq!(c.success_fraction, Some(1.0));
        }
        assert_eq!(out.violations(), 0);
        assert!(out.witnesses.is_empty());
    }

    #[test]
    fn extremal_rows_are_flagged() {
        let mut config = small(vec![3], 2);
        config.extremal = true;
        let out = verify(&config);
        let k4 = out
            .rows
            .iter()
            .find(|r| r.family == Family::Extremal)
            .unwrap();
        assert_eq!(
            (k4.n, k4.rainbow, k4.half_degree),
            (4, 1, Check::ExceptionK4)
        );
        assert_eq!(k4.full_size, Check::NotApplicable);
        assert_eq!(out.violations(), 0);
    }

    #[test]
    fn empty_range_gives_no_rows() {
        let out = verify(&small(vec![], 10));
        assert!(out.rows.is_empty() && out.cells.is_empty());
    }

    #[test]
    fn below_bound_is_not_a_violation() {
        let mut config = small(vec![2], 30);
        config.n_rule = NRule::Fixed(3);
        let out = verify(&config);
        assert!(out.rows.iter().all(|r| r.full_size == Check::NotApplicable));
        assert_eq!(out.violations(), 0);
    }

    #[test]
    fn scan_examples() {
        let rows = scan(&ScanConfig {
            delta: 2,
            ns: (3..=7).collect(),
            samples: 40,
            seed: 5,
            budget: 1_000_000,
            extra_p: 0.0,
        });
        assert_eq!(rows.len(), 5);
        assert_eq!(rows[4].failure_rate, Some(0.0));
        assert!(rows[0].failure_rate.unwrap() > 0.0);
        let empty = scan(&ScanConfig {
            delta: 2,
            ns: vec![5],
            samples: 0,
            seed: 5,
            budget: 10,
            extra_p: 0.0,
        });
        assert_eq!((empty[0].samples, empty[0].failure_rate), (0, None));
    }
}
