use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use rainbow_cli::campaign::{scan, verify, ScanConfig};
use rainbow_cli::config::{parse_range, CampaignConfig, NRule, DEFAULT_BUDGET};
use rainbow_cli::output::{render, write_verify};
use rainbow_cli::{CliError, Format};
use rainbow_core::audit::{
    audit_state, audit_stuck, certify_counting_bound, select_mono, AuditError, AuditReport,
    CertError, DEFAULT_A_CAP_FACTOR,
};
use rainbow_core::generate::{
    derive_seed, greedy_proper_coloring, one_factorization, random_graph_min_degree_with,
    random_latin,
};
use rainbow_core::io::{graph_to_json, graph_to_text, latin_to_text, parse_graph, parse_latin};
use rainbow_core::latin::{count_transversals, find_transversal, LatinSquare};
use rainbow_core::{
    max_rainbow_matching, run_engine, EdgeColoredGraph, EngineOptions, Matching, SolverOptions,
};

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum rainbow matching of one graph file.
    Solve(SolveArgs),
    /// Degree-bound campaign on random instances.
    Verify(VerifyArgs),
    /// Failure rate of "rainbow matching >= delta" across n.
    Scan(ScanArgs),
    /// Exhaustive check of the counting inequality per delta.
    Certify(CertifyArgs),
    /// Latin square transversals.
    #[command(subcommand)]
    Latin(LatinCommand),
    /// Structural report on the state where augmentation stalls.
    Audit(AuditArgs),
    /// Emit generated instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Args)]
struct SearchArgs {
    /// Exact-search node budget.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Largest exchange depth for the engine.
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// Also run the augmentation engine and report its gap.
    #[arg(long)]
    engine: bool,
    /// Engine target; defaults to the minimum degree.
    #[arg(long)]
    target: Option<usize>,
    /// Write the event trace as JSON lines.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Values of delta: `2..4`, `2,3` or empty.
    #[arg(long, default_value = "2..4")]
    deltas: String,
    /// Vertex count: `bound`, `bound+k`, `bound-k` or a number.
    #[arg(long, default_value = "bound")]
    n: NRule,
    #[arg(long, default_value_t = 500)]
    samples: usize,
    #[arg(long, default_value_t = 3)]
    recolourings: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    extra_p: f64,
    /// Add the 1-factorized complete graph on delta + 1 vertices for odd delta.
    #[arg(long)]
    extremal: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Directory for config, instance rows, cell summaries and witnesses.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    delta: usize,
    /// Values of n: `3..7` or `5,9`.
    #[arg(long)]
    ns: String,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 0.0)]
    extra_p: f64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, default_value = "2..200")]
    deltas: String,
    /// `a` ranges up to this multiple of delta.
    #[arg(long, default_value_t = DEFAULT_A_CAP_FACTOR)]
    a_cap_factor: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum LatinCommand {
    /// Number of transversals of a square file.
    Count { file: PathBuf },
    /// One transversal of a square file, as a column per row.
    Find { file: PathBuf },
    /// Transversal counts over random or cyclic squares.
    Sweep {
        #[arg(long, default_value = "1,3,5,7")]
        orders: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use the cyclic square of each order instead of random ones.
        #[arg(long)]
        cyclic: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Args)]
struct AuditArgs {
    file: PathBuf,
    /// Size the engine aims for; defaults to the minimum degree.
    #[arg(long)]
    target: Option<usize>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Audit this rainbow matching (`0-1,2-3`) instead of running the engine.
    #[arg(long)]
    matching: Option<String>,
    /// One line per check instead of the JSON report.
    #[arg(long)]
    table: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random graph with minimum degree at least `delta`, greedily coloured.
    Graph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0.0)]
        extra_p: f64,
        #[arg(long)]
        json: bool,
    },
    /// Round-robin 1-factorization of the complete graph on 2k vertices.
    Factorization {
        #[arg(long)]
        k: usize,
    },
    /// Random Latin square.
    Latin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Cyclic Latin square.
    Cyclic {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Certify(a) => certify(a),
        Command::Latin(c) => latin(c),
        Command::Audit(a) => audit(a),
        Command::Gen(c) => generate(c),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<EdgeColoredGraph, CliError> {
    Ok(parse_graph(&read(path)?)?)
}

fn load_latin(path: &Path) -> Result<LatinSquare, CliError> {
    Ok(parse_latin(&read(path)?)?)
}

fn ranged(s: &str) -> Result<Vec<usize>, CliError> {
    parse_range(s).map_err(CliError::Usage)
}

fn witness(g: &EdgeColoredGraph, m: &Matching) -> Vec<(usize, usize, u32)> {
    m.pairs(g)
}

fn witness_text(g: &EdgeColoredGraph, m: &Matching) -> String {
    witness(g, m)
        .iter()
        .map(|(u, v, c)| format!("{u}-{v}:{c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn solve(a: SolveArgs) -> Result<(), CliError> {
    let g = load_graph(&a.file)?;
    let exact = max_rainbow_matching(&g, SolverOptions::with_budget(a.search.budget));
    let engine = a.engine.then(|| {
        let opts = EngineOptions {
            max_exchange_depth: a.search.depth,
            ..EngineOptions::default()
        };
        run_engine(&g, a.target.unwrap_or(g.min_degree()), &opts)
    });
    if let Some(path) = &a.trace {
        let trace = engine
            .as_ref()
            .map_or_else(|| exact.trace_jsonl(), |e| e.trace_jsonl());
        fs::write(path, trace)?;
    }
    match a.format {
        Format::Json => {
            let report = json!({
                "size": exact.size,
                "optimal": exact.optimal,
                "witness": witness(&g, &exact.best),
                "nodes": exact.nodes_explored,
                "engine": engine.as_ref().map(|e| json!({
                    "size": e.size,
                    "gap": exact.size.saturating_sub(e.size),
                    "witness": witness(&g, &e.best),
                    "rules": e.rule_applications().count(),
                })),
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Format::Csv => {
            if exact.optimal {
                println!("optimum {}", exact.size);
            } else {
                println!(
                    "best {} (inconclusive: node budget {} exhausted)",
                    exact.size, a.search.budget
                );
            }
            println!("witness {}", witness_text(&g, &exact.best));
            println!("nodes {}", exact.nodes_explored);
            if let Some(e) = &engine {
                println!(
                    "engine {} (gap {})",
                    e.size,
                    exact.size.saturating_sub(e.size)
                );
                println!("engine-witness {}", witness_text(&g, &e.best));
            }
        }
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let config = CampaignConfig {
        deltas: ranged(&a.deltas)?,
        n_rule: a.n,
        samples: a.samples,
        recolourings: a.recolourings,
        seed: a.seed,
        extra_p: a.extra_p,
        depth: a.search.depth,
        budget: a.search.budget,
        extremal: a.extremal,
    };
    if let Some(&d) = config
        .deltas
        .iter()
        .find(|&&d| d < 1 || config.n_rule.n_for(d) <= d)
    {
        return Err(CliError::Invalid(format!(
            "no simple graph on {} vertices has minimum degree {d}",
            config.n_rule.n_for(d)
        )));
    }
    let out = verify(&config);
    match &a.out {
        Some(dir) => write_verify(&out, dir, a.format)?,
        None => print!("{}", render(&out.cells, a.format)?),
    }
    let violations = out.violations();
    if violations > 0 {
        return Err(CliError::Violation(format!(
            "{violations} instances violate a bound; witnesses: {}",
            out.witnesses
                .iter()
                .map(|w| w.file_name.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    Ok(())
}

fn cmd_scan(a: ScanArgs) -> Result<(), CliError> {
    let rows = scan(&ScanConfig {
        delta: a.delta,
        ns: ranged(&a.ns)?,
        samples: a.samples,
        seed: a.seed,
        budget: a.budget,
        extra_p: a.extra_p,
    });
    print!("{}", render(&rows, a.format)?);
    Ok(())
}

#[derive(Serialize)]
struct CertRow {
    delta: usize,
    holds: bool,
    worst_r: usize,
    worst_s: usize,
    worst_a: usize,
    worst_t: String,
    worst_n: String,
    worst_n_approx: f64,
    target: String,
    margin: String,
    tuples: u64,
    forms_agree: bool,
}

fn certify(a: CertifyArgs) -> Result<(), CliError> {
    let deltas = ranged(&a.deltas)?;
    if let Some(&d) = deltas.iter().find(|&&d| d < 2) {
        return Err(CliError::Invalid(format!(
            "delta must be at least 2, got {d}"
        )));
    }
    let results: Vec<Result<_, CertError>> = {
        use rayon::prelude::*;
        deltas
            .par_iter()
            .map(|&d| certify_counting_bound(d, a.a_cap_factor * d))
            .collect()
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(c) => {
                if !c.holds || !c.forms_agree {
                    failures.push(format!("delta {}", c.delta));
                }
                rows.push(CertRow {
                    delta: c.delta,
                    holds: c.holds,
                    worst_r: c.worst.r,
                    worst_s: c.worst.s,
                    worst_a: c.worst.a,
                    worst_t: c.worst.t.to_string(),
                    worst_n: c.worst_n.to_string(),
                    worst_n_approx: *c.worst_n.numer() as f64 / *c.worst_n.denom() as f64,
                    target: c.target.to_string(),
                    margin: c.margin().to_string(),
                    tuples: c.tuples,
                    forms_agree: c.forms_agree,
                });
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    print!("{}", render(&rows, a.format)?);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Violation(format!(
            "certification failed: {}",
            failures.join("; ")
        )))
    }
}

#[derive(Serialize)]
struct LatinRow {
    order: usize,
    kind: &'static str,
    index: usize,
    seed: u64,
    transversals: u64,
}

fn latin(c: LatinCommand) -> Result<(), CliError> {
    let invalid = |e: rainbow_core::latin::LatinError| CliError::Invalid(e.to_string());
    match c {
        LatinCommand::Count { file } => {
            println!(
                "transversals {}",
                count_transversals(&load_latin(&file)?).map_err(invalid)?
            );
        }
        LatinCommand::Find { file } => match find_transversal(&load_latin(&file)?) {
            Some(cols) => println!(
                "transversal {}",
                cols.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
            None => println!("no transversal"),
        },
        LatinCommand::Sweep {
            orders,
            samples,
            seed,
            cyclic,
            format,
        } => {
            let mut rows = Vec::new();
            for n in ranged(&orders)? {
                if n == 0 {
                    return Err(CliError::Invalid("order must be at least 1".into()));
                }
                if cyclic {
                    let count = count_transversals(&LatinSquare::cyclic(n)).map_err(invalid)?;
                    rows.push(LatinRow {
                        order: n,
                        kind: "cyclic",
                        index: 0,
                        seed: 0,
                        transversals: count,
                    });
                    continue;
                }
                for i in 0..samples {
                    let s = derive_seed(seed, n as u64, i as u64);
                    let l = random_latin(n, s).map_err(|e| CliError::Invalid(e.to_string()))?;
                    rows.push(LatinRow {
                        order: n,
                        kind: "random",
                        index: i,
                        seed: s,
                        transversals: count_transversals(&l).map_err(invalid)?,
                    });
                }
            }
            print!("{}", render(&rows, format)?);
        }
    }
    Ok(())
}

fn audit(a: AuditArgs) -> Result<(), CliError> {
    let g = load_graph(&a.file)?;
    let target = a.target.unwrap_or(g.min_degree());
    let opts = EngineOptions {
        max_exchange_depth: a.depth,
        ..EngineOptions::default()
    };
    if let Some(spec) = &a.matching {
        let m = Matching::from_pairs(&g, &parse_pairs(spec)?)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        let report = audit_state(&g, &m, &select_mono(&g, &m), &opts)
            .map_err(|e| CliError::Invalid(e.to_string()))?;
        return print_report(&report, a.table);
    }
    match audit_stuck(&g, target, &opts) {
        Ok(report) => print_report(&report, a.table)?,
        Err(AuditError::NotStuck { size, target }) => {
            println!(
                "{}",
                json!({ "status": "not-stuck", "size": size, "target": target })
            );
        }
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    }
    Ok(())
}

fn print_report(report: &AuditReport, table: bool) -> Result<(), CliError> {
    if !table {
        println!("{}", serde_json::to_string_pretty(report)?);
        return Ok(());
    }
    println!(
        "delta {} n {} |M| {} a {} r {} s {} t {}",
        report.delta,
        report.n,
        report.pairs.len(),
        report.a,
        report.r,
        report.s,
        report.t
    );
    for c in &report.checks {
        let kind = format!("{:?}", c.kind).to_lowercase();
        let verdict = if c.holds { "ok" } else { "FAIL" };
        println!(
            "{:<28} {kind:<11} {verdict:<4} {}",
            c.claim.name(),
            c.detail
        );
    }
    if !report.applicable_rules.is_empty() {
        let rules: Vec<String> = report
            .applicable_rules
            .iter()
            .map(|r| r.to_string())
            .collect();
        println!("rules {}", rules.join(" "));
    }
    Ok(())
}

fn parse_pairs(spec: &str) -> Result<Vec<(usize, usize)>, CliError> {
    spec.split(',')
        .map(|p| {
            let (u, v) = p
                .trim()
                .split_once('-')
                .ok_or_else(|| CliError::Usage(format!("bad pair {p:?}")))?;
            let num = |x: &str| {
                x.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad vertex {x:?}")))
            };
            Ok((num(u)?, num(v)?))
        })
        .collect()
}

fn generate(c: GenCommand) -> Result<(), CliError> {
    match c {
        GenCommand::Graph {
            n,
            delta,
            seed,
            extra_p,
            json,
        } => {
            let simple = random_graph_min_degree_with(n, delta, extra_p, seed)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            let g = greedy_proper_coloring(&simple, seed);
            print!(
                "{}",
                if json {
                    graph_to_json(&g) + "\n"
                } else {
                    graph_to_text(&g)
                }
            );
        }
        GenCommand::Factorization { k } => {
            if k == 0 {
                return Err(CliError::Invalid("k must be at least 1".into()));
            }
            print!("{}", graph_to_text(&one_factorization(k)));
        }
        GenCommand::Latin { n, seed } => {
            if n == 0 {
                return Err(CliError::Invalid("order must be at least 1".into()));
            }
            let l = random_latin(n, seed).map_err(|e| CliError::Invalid(e.to_string()))?;
            print!("{}", latin_to_text(&l));
        }
        GenCommand::Cyclic { n } => {
            if n == 0 {
                return Err(CliError::Invalid("order must be at least 1".into()));
            }
            print!("{}", latin_to_text(&LatinSquare::cyclic(n)));
        }
    }
    Ok(())
}
