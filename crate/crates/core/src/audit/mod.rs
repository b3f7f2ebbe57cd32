//! Structural audit of a stuck rainbow matching.
//!
//! Given a rainbow matching `M` of size `delta - 1` and a monochromatic
//! matching `M0` whose colour is not used by `M`, the audit computes
//!
//! * `W = V(G) \ V(M)`;
//! * good edges: colour not in `M`, at least one end in `W`;
//! * good vertices: matched vertices with at least [`GOOD_THRESHOLD`] good
//!   edges, labelled `x_1..x_r` with partners `y_1..y_r`;
//! * `W' = W ∪ {y_1..y_r}`;
//! * nice edges: colour not among the non-good pairs, at least one end in
//!   `W'`; nice vertices: unlabelled matched vertices with at least
//!   [`GOOD_THRESHOLD`] nice edges (`s` pairs);
//! * `t`: remaining pairs with an `M0`-coloured edge into `W`;
//!
//! and evaluates each structural claim on that state as a predicate, with a
//! witness when it fails. Pairs are relabelled good, nice, `t`-range, rest.

mod certify;

pub use certify::{
    analytic_case_bounds, certify_counting_bound, certify_range, counting_rhs_printed_twice,
    counting_rhs_rederived_twice, CertError, CertResult, WorstTuple, DEFAULT_A_CAP_FACTOR,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{
    exchange_at_depth, rule_direct, rule_mono, rule_vertex_reduce, run_engine, EngineOptions,
};
use crate::graph::{is_rainbow_matching, Colour, Edge, EdgeColoredGraph, Matching, VertexId};
use crate::result::RuleId;

/// Good/nice vertex threshold.
pub const GOOD_THRESHOLD: usize = 7;
/// Edge count above which a pair endpoint forbids good/nice edges at its partner.
pub const DICHOTOMY_THRESHOLD: usize = 3;

const MAX_WITNESS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("invalid audit state: {0}")]
    InvalidState(String),
    #[error("not stuck: the engine reached {size} >= {target}")]
    NotStuck { size: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimId {
    /// No good edge inside `G[W]`.
    GoodEdgesTouchM,
    /// Every `M0` edge meets `V(M)`.
    MonoMeetsM,
    /// `Delta(G) <= 3 (delta - 1)`.
    MaxDegree,
    /// Good-edge dichotomy inside a matched pair.
    GoodVertexDichotomy,
    /// No edge in `G[W']` with a good-pair colour.
    GoodColoursAvoidWPrime,
    /// Good edges are nice.
    GoodEdgesAreNice,
    /// No nice edge inside `G[W']`.
    NiceEdgesCross,
    /// Nice-edge dichotomy inside a non-good pair.
    NiceVertexDichotomy,
    /// No edge in `G[W']` with a good- or nice-pair colour.
    NiceColoursAvoidWPrime,
    /// `#nice <= (3 delta - 9 + s) r + 6 (delta - 1)`.
    NiceEdgeCount,
    /// `t >= a - delta + 1 - (r + s) / 2` and `r + s + t <= delta - 1`.
    TBounds,
    /// At most one edge of each `t`-range colour in `G[W]`.
    MonoColourInW,
    /// `delta n <= (3 delta - 10 - r) r - (a - 2) t + 2 (delta + 3)(delta - 1) + (a - 1)(2 delta - 2 - 2r - s)`.
    CountingInequality,
    /// `5r + 3s < 2 (delta + 1)`.
    RBound,
}

impl ClaimId {
    pub fn name(self) -> &'static str {
        match self {
            ClaimId::GoodEdgesTouchM => "good-edges-touch-m",
            ClaimId::MonoMeetsM => "mono-meets-m",
            ClaimId::MaxDegree => "max-degree",
            ClaimId::GoodVertexDichotomy => "good-vertex-dichotomy",
            ClaimId::GoodColoursAvoidWPrime => "good-colours-avoid-w-prime",
            ClaimId::GoodEdgesAreNice => "good-edges-are-nice",
            ClaimId::NiceEdgesCross => "nice-edges-cross",
            ClaimId::NiceVertexDichotomy => "nice-vertex-dichotomy",
            ClaimId::NiceColoursAvoidWPrime => "nice-colours-avoid-w-prime",
            ClaimId::NiceEdgeCount => "nice-edge-count",
            ClaimId::TBounds => "t-bounds",
            ClaimId::MonoColourInW => "mono-colour-in-w",
            ClaimId::CountingInequality => "counting-inequality",
            ClaimId::RBound => "r-bound",
        }
    }
}

/// How a check relates to the state it is evaluated on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Must hold whenever no rainbow matching of size `delta` exists.
    Local,
    /// Relies on the degree bound, which is only guaranteed for a minimal
    /// counterexample.
    Conditional,
    /// Reported for inspection only.
    Diagnostic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub claim: ClaimId,
    pub kind: CheckKind,
    pub holds: bool,
    pub detail: String,
    pub witness: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    Good,
    Nice,
    /// Has an `M0`-coloured edge into `W`.
    MonoReach,
    Plain,
}

/// One edge of `M`, oriented so that `x` is the endpoint that earned the
/// class (when there is one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInfo {
    pub x: VertexId,
    pub y: VertexId,
    pub colour: Colour,
    pub class: PairClass,
    /// False when neither endpoint reached the threshold.
    pub oriented: bool,
    pub good_x: usize,
    pub good_y: usize,
    pub nice_x: usize,
    pub nice_y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub delta: usize,
    pub n: usize,
    pub matching: Vec<Edge>,
    pub mono: Vec<Edge>,
    pub mono_colour: Option<Colour>,
    /// `|M0|`.
    pub a: usize,
    /// Largest colour class of the whole graph.
    pub a_global: usize,
    /// Relabelled: good pairs, nice pairs, `t`-range pairs, the rest.
    pub pairs: Vec<PairInfo>,
    pub w: Vec<VertexId>,
    pub w_prime: Vec<VertexId>,
    pub good_edges: Vec<Edge>,
    pub nice_edges: Vec<Edge>,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    pub checks: Vec<ClaimCheck>,
    /// Engine rules that fire on `M`.
    pub applicable_rules: Vec<RuleId>,
}

impl AuditReport {
    pub fn check(&self, claim: ClaimId) -> Option<&ClaimCheck> {
        self.checks.iter().find(|c| c.claim == claim)
    }

    pub fn failed(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }

    fn colours_of(&self, class: &[PairClass]) -> BTreeSet<Colour> {
        self.pairs
            .iter()
            .filter(|p| class.contains(&p.class))
            .map(|p| p.colour)
            .collect()
    }

    fn in_set(set: &[VertexId], n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in set {
            mask[v] = true;
        }
        mask
    }

    fn push(
        &mut self,
        claim: ClaimId,
        kind: CheckKind,
        holds: bool,
        detail: String,
        witness: Vec<Edge>,
    ) {
        self.checks.retain(|c| c.claim != claim);
        self.checks.push(ClaimCheck {
            claim,
            kind,
            holds,
            detail,
            witness,
        });
    }
}

fn count_at(edges: &[Edge], v: VertexId) -> usize {
    edges.iter().filter(|e| e.touches(v)).count()
}

/// Orients a pair by per-endpoint counts; `None` if neither endpoint
/// reaches the threshold. Ties go to the larger count, then the lower id.
fn orient(a: VertexId, b: VertexId, ca: usize, cb: usize) -> Option<(VertexId, VertexId)> {
    match (ca >= GOOD_THRESHOLD, cb >= GOOD_THRESHOLD) {
        (false, false) => None,
        (true, false) => Some((a, b)),
        (false, true) => Some((b, a)),
        (true, true) => Some(if (cb, std::cmp::Reverse(b)) > (ca, std::cmp::Reverse(a)) {
            (b, a)
        } else {
            (a, b)
        }),
    }
}

/// Validates the state and fills `W`, good edges, good pairs, `r` and `W'`.
pub fn compute_good_structure(
    g: &EdgeColoredGraph,
    m: &Matching,
    m0: &Matching,
) -> Result<AuditReport, AuditError> {
    let invalid = |s: &str| AuditError::InvalidState(s.to_string());
    if m.is_empty() {
        return Err(invalid("M must contain at least one edge"));
    }
    if !is_rainbow_matching(g, m).map_err(|e| AuditError::InvalidState(e.to_string()))? {
        return Err(invalid("M is not a rainbow matching"));
    }
    if !m0
        .is_matching(g)
        .map_err(|e| AuditError::InvalidState(e.to_string()))?
    {
        return Err(invalid("M0 is not a matching"));
    }
    let mono_colours = m0.colours(g);
    if mono_colours.len() > 1 {
        return Err(invalid("M0 is not monochromatic"));
    }
    let m_colours = m.colours(g);
    let mono_colour = mono_colours.first().copied();
    if mono_colour.is_some_and(|c| m_colours.contains(&c)) {
        return Err(invalid("M0 shares its colour with M"));
    }
    if m0.edges().iter().any(|&id| m.contains(id)) {
        return Err(invalid("M and M0 share an edge"));
    }

    let n = g.vertex_count();
    let covered = m.vertices(g);
    let in_m = AuditReport::in_set(&covered, n);
    let w: Vec<VertexId> = (0..n).filter(|&v| !in_m[v]).collect();
    let good_edges: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| !m_colours.contains(&e.colour) && (!in_m[e.u] || !in_m[e.v]))
        .copied()
        .collect();

    let mut pairs = Vec::with_capacity(m.len());
    let mut y_good = Vec::new();
    for &id in m.edges() {
        let e = *g.edge(id);
        let (gu, gv) = (count_at(&good_edges, e.u), count_at(&good_edges, e.v));
        let info = match orient(e.u, e.v, gu, gv) {
            Some((x, y)) => {
                y_good.push(y);
                PairInfo {
                    x,
                    y,
                    colour: e.colour,
                    class: PairClass::Good,
                    oriented: true,
                    good_x: count_at(&good_edges, x),
                    good_y: count_at(&good_edges, y),
                    nice_x: 0,
                    nice_y: 0,
                }
            }
            None => PairInfo {
                x: e.u,
                y: e.v,
                colour: e.colour,
                class: PairClass::Plain,
                oriented: false,
                good_x: gu,
                good_y: gv,
                nice_x: 0,
                nice_y: 0,
            },
        };
        pairs.push(info);
    }
    pairs.sort_by_key(|p| p.class != PairClass::Good);
    let r = pairs.iter().filter(|p| p.class == PairClass::Good).count();
    let mut w_prime = w.clone();
    w_prime.extend(y_good);
    w_prime.sort_unstable();

    let profile = g.color_profile();
    Ok(AuditReport {
        delta: m.len() + 1,
        n,
        matching: m.edges().iter().map(|&id| *g.edge(id)).collect(),
        mono: m0.edges().iter().map(|&id| *g.edge(id)).collect(),
        mono_colour,
        a: m0.len(),
        a_global: profile.a,
        pairs,
        w,
        w_prime,
        good_edges,
        nice_edges: Vec::new(),
        r,
        s: 0,
        t: 0,
        checks: Vec::new(),
        applicable_rules: Vec::new(),
    })
}

/// Fills nice edges, nice pairs and `s`, and records the good ⊆ nice check.
pub fn compute_nice_structure(g: &EdgeColoredGraph, report: &mut AuditReport) {
    let n = g.vertex_count();
    let excluded = report.colours_of(&[PairClass::Nice, PairClass::MonoReach, PairClass::Plain]);
    let in_wp = AuditReport::in_set(&report.w_prime, n);
    report.nice_edges = g
        .edges()
        .iter()
        .filter(|e| !excluded.contains(&e.colour) && (in_wp[e.u] || in_wp[e.v]))
        .copied()
        .collect();

    let nice = report.nice_edges.clone();
    for p in report.pairs.iter_mut() {
        let (nx, ny) = (count_at(&nice, p.x), count_at(&nice, p.y));
        if p.class == PairClass::Good {
            p.nice_x = nx;
            p.nice_y = ny;
            continue;
        }
        match orient(p.x, p.y, nx, ny) {
            Some((x, y)) => {
                if x != p.x {
                    std::mem::swap(&mut p.good_x, &mut p.good_y);
                }
                p.x = x;
                p.y = y;
                p.class = PairClass::Nice;
                p.oriented = true;
                p.nice_x = count_at(&nice, x);
                p.nice_y = count_at(&nice, y);
            }
            None => {
                p.nice_x = nx;
                p.nice_y = ny;
            }
        }
    }
    report.pairs.sort_by_key(|p| match p.class {
        PairClass::Good => 0,
        PairClass::Nice => 1,
        _ => 2,
    });
    report.s = report
        .pairs
        .iter()
        .filter(|p| p.class == PairClass::Nice)
        .count();

    let nice_set: BTreeSet<Edge> = report.nice_edges.iter().copied().collect();
    let missing: Vec<Edge> = report
        .good_edges
        .iter()
        .filter(|e| !nice_set.contains(e))
        .take(MAX_WITNESS)
        .copied()
        .collect();
    report.push(
        ClaimId::GoodEdgesAreNice,
        CheckKind::Local,
        missing.is_empty(),
        format!(
            "{} good, {} nice edges",
            report.good_edges.len(),
            report.nice_edges.len()
        ),
        missing,
    );
}

/// Fills `t` by marking remaining pairs with an `M0`-coloured edge into
/// `W`, and records both halves of the `t` bounds. The lower bound's
/// half-integer is rounded up.
pub fn compute_t(g: &EdgeColoredGraph, report: &mut AuditReport) {
    let n = g.vertex_count();
    let in_w = AuditReport::in_set(&report.w, n);
    if let Some(colour) = report.mono_colour {
        for p in report
            .pairs
            .iter_mut()
            .filter(|p| p.class == PairClass::Plain)
        {
            let reaches = |v: VertexId| {
                g.edge_with_colour_at(v, colour)
                    .is_some_and(|id| in_w[g.edge(id).other(v)])
            };
            if reaches(p.x) || reaches(p.y) {
                p.class = PairClass::MonoReach;
            }
        }
    }
    report.pairs.sort_by_key(|p| match p.class {
        PairClass::Good => 0,
        PairClass::Nice => 1,
        PairClass::MonoReach => 2,
        PairClass::Plain => 3,
    });
    report.t = report
        .pairs
        .iter()
        .filter(|p| p.class == PairClass::MonoReach)
        .count();

    let (delta, a, r, s, t) = (
        report.delta as i64,
        report.a as i64,
        report.r as i64,
        report.s as i64,
        report.t as i64,
    );
    // t >= ceil(a - delta + 1 - (r + s) / 2)  <=>  2t >= 2a - 2 delta + 2 - (r + s)
    let lower_twice = 2 * a - 2 * delta + 2 - (r + s);
    let holds = 2 * t >= lower_twice && r + s + t < delta;
    let lower = (lower_twice as f64 / 2.0).ceil() as i64;
    report.push(
        ClaimId::TBounds,
        CheckKind::Local,
        holds,
        format!(
            "t = {t}, lower bound {lower}, r + s + t = {} <= {}",
            r + s + t,
            delta - 1
        ),
        Vec::new(),
    );
}

/// Evaluates every remaining claim and inequality on the populated report.
pub fn check_claims(g: &EdgeColoredGraph, report: &mut AuditReport) {
    let n = g.vertex_count();
    let in_w = AuditReport::in_set(&report.w, n);
    let in_wp = AuditReport::in_set(&report.w_prime, n);
    let delta = report.delta;

    let inside_w: Vec<Edge> = report
        .good_edges
        .iter()
        .filter(|e| in_w[e.u] && in_w[e.v])
        .copied()
        .collect();
    report.push(
        ClaimId::GoodEdgesTouchM,
        CheckKind::Local,
        inside_w.is_empty(),
        format!("{} good edges inside G[W]", inside_w.len()),
        inside_w.into_iter().take(MAX_WITNESS).collect(),
    );

    let loose: Vec<Edge> = report
        .mono
        .iter()
        .filter(|e| in_w[e.u] && in_w[e.v])
        .copied()
        .collect();
    report.push(
        ClaimId::MonoMeetsM,
        CheckKind::Local,
        loose.is_empty(),
        format!("{} M0 edges miss V(M)", loose.len()),
        loose,
    );

    let cap = 3 * (delta - 1);
    let max_deg = g.max_degree();
    let heavy = (0..n).find(|&v| g.degree(v) > cap);
    report.push(
        ClaimId::MaxDegree,
        CheckKind::Conditional,
        heavy.is_none(),
        match heavy {
            Some(v) => format!(
                "vertex {v} has degree {} > {cap} (bound assumes a minimal counterexample)",
                g.degree(v)
            ),
            None => format!("max degree {max_deg} <= {cap}"),
        },
        Vec::new(),
    );

    let good = report.good_edges.clone();
    let dichotomy = dichotomy_witness(&report.pairs, &good, |_| true);
    report.push(
        ClaimId::GoodVertexDichotomy,
        CheckKind::Local,
        dichotomy.is_empty(),
        format!("threshold {DICHOTOMY_THRESHOLD} good edges"),
        dichotomy,
    );

    let good_colours = report.colours_of(&[PairClass::Good]);
    let clash = edges_in_set_with_colours(g, &in_wp, &good_colours);
    report.push(
        ClaimId::GoodColoursAvoidWPrime,
        CheckKind::Local,
        clash.is_empty(),
        format!("{} good-pair colours checked", good_colours.len()),
        clash,
    );

    let nice_inside: Vec<Edge> = report
        .nice_edges
        .iter()
        .filter(|e| in_wp[e.u] && in_wp[e.v])
        .take(MAX_WITNESS)
        .copied()
        .collect();
    report.push(
        ClaimId::NiceEdgesCross,
        CheckKind::Local,
        nice_inside.is_empty(),
        format!("{} nice edges", report.nice_edges.len()),
        nice_inside,
    );

    let nice = report.nice_edges.clone();
    let dichotomy = dichotomy_witness(&report.pairs, &nice, |p| p.class != PairClass::Good);
    report.push(
        ClaimId::NiceVertexDichotomy,
        CheckKind::Local,
        dichotomy.is_empty(),
        format!("threshold {DICHOTOMY_THRESHOLD} nice edges"),
        dichotomy,
    );

    let low_colours = report.colours_of(&[PairClass::Good, PairClass::Nice]);
    let clash = edges_in_set_with_colours(g, &in_wp, &low_colours);
    report.push(
        ClaimId::NiceColoursAvoidWPrime,
        CheckKind::Local,
        clash.is_empty(),
        format!("{} good- or nice-pair colours checked", low_colours.len()),
        clash,
    );

    let (d, r, s) = (delta as i64, report.r as i64, report.s as i64);
    let nice_cap = (3 * d - 9 + s) * r + 6 * (d - 1);
    let nice_count = report.nice_edges.len() as i64;
    report.push(
        ClaimId::NiceEdgeCount,
        CheckKind::Conditional,
        nice_count <= nice_cap,
        format!("{nice_count} nice edges, bound {nice_cap}"),
        Vec::new(),
    );

    let mut witness = Vec::new();
    for p in report
        .pairs
        .iter()
        .filter(|p| p.class == PairClass::MonoReach)
    {
        let inside: Vec<Edge> = g
            .colour_class(p.colour)
            .into_iter()
            .map(|id| *g.edge(id))
            .filter(|e| in_w[e.u] && in_w[e.v])
            .collect();
        if inside.len() >= 2 {
            witness = inside;
            break;
        }
    }
    report.push(
        ClaimId::MonoColourInW,
        CheckKind::Local,
        witness.is_empty(),
        format!("{} t-range colours checked", report.t),
        witness,
    );

    let (a, t) = (report.a as i64, report.t as i64);
    let lhs = d * report.n as i64;
    let rhs = (3 * d - 10 - r) * r - (a - 2) * t
        + 2 * (d + 3) * (d - 1)
        + (a - 1) * (2 * d - 2 - 2 * r - s);
    report.push(
        ClaimId::CountingInequality,
        CheckKind::Diagnostic,
        lhs <= rhs,
        format!("delta n = {lhs}, right-hand side = {rhs}"),
        Vec::new(),
    );

    report.push(
        ClaimId::RBound,
        CheckKind::Diagnostic,
        5 * r + 3 * s < 2 * (d + 1),
        format!(
            "5r + 3s = {}, 2 (delta + 1) = {}",
            5 * r + 3 * s,
            2 * (d + 1)
        ),
        Vec::new(),
    );

    report.checks.sort_by_key(|c| c.claim);
}

/// Pairs where one endpoint has at least three counted edges and the other
/// at least one; returns the counted edges at both endpoints of the first.
fn dichotomy_witness(
    pairs: &[PairInfo],
    counted: &[Edge],
    scope: impl Fn(&PairInfo) -> bool,
) -> Vec<Edge> {
    for p in pairs.iter().filter(|p| scope(p)) {
        let (cx, cy) = (count_at(counted, p.x), count_at(counted, p.y));
        if (cx >= DICHOTOMY_THRESHOLD && cy >= 1) || (cy >= DICHOTOMY_THRESHOLD && cx >= 1) {
            return counted
                .iter()
                .filter(|e| e.touches(p.x) || e.touches(p.y))
                .copied()
                .collect();
        }
    }
    Vec::new()
}

fn edges_in_set_with_colours(
    g: &EdgeColoredGraph,
    set: &[bool],
    colours: &BTreeSet<Colour>,
) -> Vec<Edge> {
    g.edges()
        .iter()
        .filter(|e| set[e.u] && set[e.v] && colours.contains(&e.colour))
        .take(MAX_WITNESS)
        .copied()
        .collect()
}

/// Engine rules that fire on `m`.
pub fn applicable_rules(g: &EdgeColoredGraph, m: &Matching, opts: &EngineOptions) -> Vec<RuleId> {
    let mut rules = Vec::new();
    if rule_direct(g, m).is_some() {
        rules.push(RuleId::Direct);
    }
    if rule_mono(g, m).is_some() {
        rules.push(RuleId::Mono);
    }
    for depth in 1..=opts.max_exchange_depth {
        if let Ok(Some(mv)) = exchange_at_depth(g, m, depth, opts.exchange_cap) {
            rules.push(mv.rule);
        }
    }
    if let Ok(Some(_)) = rule_vertex_reduce(g, m.len() + 1, opts) {
        rules.push(RuleId::VertexReduce);
    }
    rules.dedup();
    rules
}

/// Full audit of a supplied state.
pub fn audit_state(
    g: &EdgeColoredGraph,
    m: &Matching,
    m0: &Matching,
    opts: &EngineOptions,
) -> Result<AuditReport, AuditError> {
    let mut report = compute_good_structure(g, m, m0)?;
    compute_nice_structure(g, &mut report);
    compute_t(g, &mut report);
    check_claims(g, &mut report);
    report.applicable_rules = applicable_rules(g, m, opts);
    Ok(report)
}

/// The largest colour class whose colour `m` does not use (lowest label on
/// ties); empty if every colour is used.
pub fn select_mono(g: &EdgeColoredGraph, m: &Matching) -> Matching {
    let used = m.colours(g);
    let profile = g.color_profile();
    profile
        .counts
        .iter()
        .filter(|(c, _)| !used.contains(c))
        .max_by_key(|&(&c, &count)| (count, std::cmp::Reverse(c)))
        .map(|(&c, _)| Matching::new(g.colour_class(c)))
        .unwrap_or_default()
}

/// Runs the engine towards `target` and audits the state it gets stuck in.
/// The audit's `delta` is the stuck size plus one.
pub fn audit_stuck(
    g: &EdgeColoredGraph,
    target: usize,
    opts: &EngineOptions,
) -> Result<AuditReport, AuditError> {
    let run = run_engine(g, target, opts);
    if run.size >= target {
        return Err(AuditError::NotStuck {
            size: run.size,
            target,
        });
    }
    let m0 = select_mono(g, &run.best);
    audit_state(g, &run.best, &m0, opts)
}
