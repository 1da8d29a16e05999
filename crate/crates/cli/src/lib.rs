//! Command-line surface for the toolkit: graph input in graph6 or
//! edge-list form, JSON reports with a stable schema, and subcommands for
//! homomorphism search, criticality, potential, the structural audit,
//! discharging, constructions, enumeration, and the small-order sweep.
//!
//! Exit codes: 0 on success, 1 when a run completes but a checked
//! mathematical expectation fails (`verify-small` mismatch), 2 on usage
//! errors. Reports go to stdout, one JSON object per input graph;
//! diagnostics go to stderr as `{"schema_version":1,"error":...}`.

use circ52_core::{
    audit_structure, count_homs, edgelist, enumerate, extract_critical_subgraph, family_x,
    find_hom, graph6, is_critical, make_named, ore_6critical, run_discharging, theorem_predicate,
    verify_small_critical, AuditReport, BoundReport, ChargeLedger, Checkpoint, CriticalityVerdict,
    DischargeMode, EnumerateOutcome, EnumerationTask, ExtensionFamily, Graph, HomAssignment,
    NamedGraph, Pinning, SmallOrderReport,
};
use clap::{Parser, Subcommand};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "circ52",
    version,
    about = "Exact tools for circular 5/2-coloring: homomorphisms to odd cycles, \
             criticality, potential, discharging, constructions, and enumeration"
)]
struct Cli {
    /// Config file with `key = value` lines (supported key: threads).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide or count homomorphisms into the odd cycle C_{2t+1}.
    Hom {
        /// Graph file (graph6 or edge list); stdin when omitted.
        input: Option<PathBuf>,
        /// Target odd cycle parameter: C_{2t+1}.
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Pin vertex V to color C (repeatable).
        #[arg(long = "pin", value_name = "V=C")]
        pins: Vec<String>,
        /// Count homomorphisms instead of finding one.
        #[arg(long)]
        count: bool,
    },
    /// Test edge-criticality, or extract a critical subgraph.
    Critical {
        /// Graph file (graph6 or edge list); stdin when omitted.
        input: Option<PathBuf>,
        /// Target odd cycle parameter: C_{2t+1}.
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Extract a critical subgraph instead of reporting a verdict.
        #[arg(long)]
        extract: bool,
    },
    /// Report n, e, and the potential 5n - 4e.
    Potential {
        /// Graph file (graph6 or edge list); stdin when omitted.
        input: Option<PathBuf>,
    },
    /// Run the structural audit (strings, cells, short cycles, weights).
    Audit {
        /// Graph file (graph6 or edge list); stdin when omitted.
        input: Option<PathBuf>,
    },
    /// Run the discharging procedure and print the full charge ledger.
    Discharge {
        /// Graph file (graph6 or edge list); stdin when omitted.
        input: Option<PathBuf>,
        /// Refuse inputs the redistribution rules do not determine.
        #[arg(long)]
        strict: bool,
    },
    /// Build named graphs, extension families, or the composition chain.
    ///
    /// Examples: `construct e1`, `construct cycle 5`, `construct theta 2 3 3`,
    /// `construct ore 3`, `construct q --from base.g6`.
    Construct {
        /// What to build: a named graph (e1, e2, petersen, k6, cycle K,
        /// path K, theta A B C), `ore M`, or a family (p2, p3, q, qprime,
        /// e1fam, e2fam) applied to a base graph.
        spec: Vec<String>,
        /// Base graph for family constructions; stdin when omitted.
        #[arg(long, value_name = "FILE")]
        from: Option<PathBuf>,
        /// Subdivide every edge of each output K times.
        #[arg(long, value_name = "K")]
        subdivide: Option<usize>,
        /// Emit a JSON report instead of raw graph6 lines.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all graphs with given order, size, girth bound, and
    /// optional 2-connectivity, one graph6 line each.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        /// Reject any cycle shorter than this.
        #[arg(long, default_value_t = 3)]
        min_girth: usize,
        /// Keep only 2-connected graphs.
        #[arg(long)]
        biconnected: bool,
        /// Wall-clock budget in seconds; requires --checkpoint.
        #[arg(long, value_name = "SECS")]
        budget_secs: Option<f64>,
        /// Checkpoint file: resumed when present, updated on exit.
        #[arg(long, value_name = "FILE")]
        checkpoint: Option<PathBuf>,
    },
    /// Enumerate the potential-2 orders and test every candidate for
    /// criticality, checking the expected critical sets.
    VerifySmall {
        /// Orders to sweep, from {6, 10, 14, 18}.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Wall-clock budget in seconds shared across the orders.
        #[arg(long, value_name = "SECS")]
        budget_secs: Option<f64>,
    },
}

#[derive(Debug)]
struct UsageError(String);

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

type CliResult<T> = Result<T, UsageError>;

#[derive(Serialize)]
struct Diagnostic<'a> {
    schema_version: u32,
    error: &'a str,
}

#[derive(Serialize)]
struct Report<'a, P: Serialize> {
    schema_version: u32,
    command: &'a [String],
    input_sha256: Option<&'a str>,
    version: &'static str,
    timing_ms: f64,
    payload: P,
}

/// Graph identity repeated in every per-graph payload.
#[derive(Serialize)]
struct GraphSummary {
    graph6: String,
    n: usize,
    e: usize,
    potential: i64,
}

fn summarize(g: &Graph) -> GraphSummary {
    GraphSummary {
        graph6: graph6::encode(g),
        n: g.n(),
        e: g.e(),
        potential: g.potential(),
    }
}

#[derive(Serialize)]
struct HomDecision {
    t: u32,
    graph: GraphSummary,
    found: bool,
    witness: Option<HomAssignment>,
}

#[derive(Serialize)]
struct HomCount {
    t: u32,
    graph: GraphSummary,
    count: u64,
}

#[derive(Serialize)]
struct CriticalPayload {
    t: u32,
    graph: GraphSummary,
    verdict: CriticalityVerdict,
    /// Potential-bound analysis; present when the graph is critical and
    /// `t = 2`.
    bound: Option<BoundReport>,
}

#[derive(Serialize)]
struct ExtractPayload {
    t: u32,
    graph: GraphSummary,
    extracted: Option<GraphSummary>,
    note: Option<&'static str>,
}

#[derive(Serialize)]
struct AuditPayload {
    graph: GraphSummary,
    audit: AuditReport,
}

#[derive(Serialize)]
struct DischargePayload {
    graph: GraphSummary,
    ledger: ChargeLedger,
}

#[derive(Serialize)]
struct ConstructPayload {
    count: usize,
    graphs: Vec<GraphSummary>,
}

/// Runs the CLI with explicit argv (element 0 is the program name) and
/// output streams, returning the process exit code.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            if err.use_stderr() {
                emit_diagnostic(stderr, &err.to_string());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{err}");
            return EXIT_OK;
        }
    };
    let echo: &[String] = argv.get(1..).unwrap_or(&[]);
    match execute(&cli, echo, stdout, stderr) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            emit_diagnostic(stderr, &msg);
            EXIT_USAGE
        }
    }
}

fn emit_diagnostic(stderr: &mut dyn Write, msg: &str) {
    let diag = Diagnostic {
        schema_version: SCHEMA_VERSION,
        error: msg,
    };
    let _ = writeln!(
        stderr,
        "{}",
        serde_json::to_string(&diag).expect("diagnostic serializes")
    );
}

fn execute(
    cli: &Cli,
    echo: &[String],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<i32> {
    configure_threads(cli)?;
    let started = Instant::now();
    match &cli.command {
        Command::Hom {
            input,
            t,
            pins,
            count,
        } => {
            let pins = parse_pins(pins)?;
            let (digest, graphs) = read_graphs(input)?;
            for g in &graphs {
                if *count {
                    let count = count_homs(g, *t, &pins).map_err(|e| usage(e.to_string()))?;
                    let payload = HomCount {
                        t: *t,
                        graph: summarize(g),
                        count,
                    };
                    emit_report(stdout, echo, Some(&digest), started, payload);
                } else {
                    let witness = find_hom(g, *t, &pins).map_err(|e| usage(e.to_string()))?;
                    let payload = HomDecision {
                        t: *t,
                        graph: summarize(g),
                        found: witness.is_some(),
                        witness,
                    };
                    emit_report(stdout, echo, Some(&digest), started, payload);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Critical { input, t, extract } => {
            let (digest, graphs) = read_graphs(input)?;
            for g in &graphs {
                if *extract {
                    let extracted = match extract_critical_subgraph(g, *t) {
                        Ok(sub) => Some(sub),
                        Err(circ52_core::CriticalityError::NotApplicable) => None,
                        Err(e) => return Err(usage(e.to_string())),
                    };
                    let payload = ExtractPayload {
                        t: *t,
                        graph: summarize(g),
                        note: extracted
                            .is_none()
                            .then_some("input admits a homomorphism; nothing to extract"),
                        extracted: extracted.as_ref().map(summarize),
                    };
                    emit_report(stdout, echo, Some(&digest), started, payload);
                } else {
                    let verdict = is_critical(g, *t).map_err(|e| usage(e.to_string()))?;
                    let bound = if *t == 2 && verdict.is_critical {
                        theorem_predicate(g).ok()
                    } else {
                        None
                    };
                    let payload = CriticalPayload {
                        t: *t,
                        graph: summarize(g),
                        verdict,
                        bound,
                    };
                    emit_report(stdout, echo, Some(&digest), started, payload);
                }
            }
            Ok(EXIT_OK)
        }
        Command::Potential { input } => {
            let (digest, graphs) = read_graphs(input)?;
            for g in &graphs {
                emit_report(stdout, echo, Some(&digest), started, summarize(g));
            }
            Ok(EXIT_OK)
        }
        Command::Audit { input } => {
            let (digest, graphs) = read_graphs(input)?;
            for g in &graphs {
                let payload = AuditPayload {
                    graph: summarize(g),
                    audit: audit_structure(g),
                };
                emit_report(stdout, echo, Some(&digest), started, payload);
            }
            Ok(EXIT_OK)
        }
        Command::Discharge { input, strict } => {
            let mode = if *strict {
                DischargeMode::Strict
            } else {
                DischargeMode::Lenient
            };
            let (digest, graphs) = read_graphs(input)?;
            for g in &graphs {
                let ledger = run_discharging(g, mode).map_err(|e| usage(e.to_string()))?;
                let payload = DischargePayload {
                    graph: summarize(g),
                    ledger,
                };
                emit_report(stdout, echo, Some(&digest), started, payload);
            }
            Ok(EXIT_OK)
        }
        Command::Construct {
            spec,
            from,
            subdivide,
            json,
        } => {
            let mut graphs = build_construction(spec, from)?;
            if let Some(k) = subdivide {
                graphs = graphs.iter().map(|g| g.subdivide_all_edges(*k)).collect();
            }
            if *json {
                let payload = ConstructPayload {
                    count: graphs.len(),
                    graphs: graphs.iter().map(summarize).collect(),
                };
                emit_report(stdout, echo, None, started, payload);
            } else {
                for g in &graphs {
                    let _ = writeln!(stdout, "{}", graph6::encode(g));
                }
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            n,
            e,
            min_girth,
            biconnected,
            budget_secs,
            checkpoint,
        } => {
            if budget_secs.is_some() && checkpoint.is_none() {
                return Err(usage("--budget-secs requires --checkpoint to save progress"));
            }
            let resumed = match checkpoint {
                Some(path) if path.exists() => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    Some(Checkpoint::parse(&text).map_err(|e| usage(e.to_string()))?)
                }
                _ => None,
            };
            let prior = resumed.as_ref().map(|cp| cp.emitted.clone()).unwrap_or_default();
            let task = EnumerationTask {
                n: *n,
                e: *e,
                min_girth: *min_girth,
                require_biconnected: *biconnected,
                budget: budget_secs.map(Duration::from_secs_f64),
                checkpoint: resumed,
            };
            let outcome = enumerate(&task).map_err(|e| usage(e.to_string()))?;
            for g in outcome.graphs() {
                let _ = writeln!(stdout, "{}", graph6::encode(g));
            }
            match outcome {
                EnumerateOutcome::Complete { graphs } => {
                    if let Some(path) = checkpoint {
                        let mut emitted = prior;
                        emitted.extend(graphs.iter().map(graph6::encode));
                        let done = Checkpoint {
                            n: *n,
                            e: *e,
                            min_girth: *min_girth,
                            require_biconnected: *biconnected,
                            emitted,
                            frontier: Vec::new(),
                        };
                        fs::write(path, done.render())
                            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    }
                }
                EnumerateOutcome::Partial { graphs, checkpoint: cp } => {
                    let path = checkpoint.as_ref().expect("budget requires a checkpoint path");
                    fs::write(path, cp.render())
                        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
                    let _ = writeln!(
                        stderr,
                        "budget exhausted after {} new graphs; checkpoint written to {}",
                        graphs.len(),
                        path.display()
                    );
                }
            }
            Ok(EXIT_OK)
        }
        Command::VerifySmall { n, budget_secs } => {
            let report =
                verify_small_critical(n, budget_secs.map(Duration::from_secs_f64))
                    .map_err(|e| usage(e.to_string()))?;
            let ok = report.all_match();
            emit_report::<&SmallOrderReport>(stdout, echo, None, started, &report);
            Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
        }
    }
}

fn emit_report<P: Serialize>(
    stdout: &mut dyn Write,
    command: &[String],
    input_sha256: Option<&str>,
    started: Instant,
    payload: P,
) {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command,
        input_sha256,
        version: env!("CARGO_PKG_VERSION"),
        timing_ms: started.elapsed().as_secs_f64() * 1e3,
        payload,
    };
    let line = serde_json::to_string(&report).expect("report serializes");
    let _ = writeln!(stdout, "{line}");
}

fn configure_threads(cli: &Cli) -> CliResult<()> {
    let mut threads: Option<usize> = None;
    if let Some(path) = &cli.config {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
            match key.trim() {
                "threads" => {
                    threads = Some(value.trim().parse().map_err(|_| {
                        usage(format!("config line {}: bad thread count {value:?}", i + 1))
                    })?);
                }
                other => {
                    return Err(usage(format!("config line {}: unknown key {other:?}", i + 1)));
                }
            }
        }
    }
    if let Ok(v) = std::env::var("CIRC52_THREADS") {
        threads = Some(
            v.parse()
                .map_err(|_| usage(format!("CIRC52_THREADS must be an integer, got {v:?}")))?,
        );
    }
    if let Some(t) = threads {
        if t == 0 {
            return Err(usage("thread count must be positive"));
        }
        // Ignored if a global pool already exists (repeat in-process calls).
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

fn parse_pins(specs: &[String]) -> CliResult<Pinning> {
    specs
        .iter()
        .map(|s| {
            let (v, c) = s
                .split_once('=')
                .ok_or_else(|| usage(format!("pin {s:?} must have the form V=C")))?;
            let v = v
                .trim()
                .parse::<u32>()
                .map_err(|_| usage(format!("bad vertex in pin {s:?}")))?;
            let c = c
                .trim()
                .parse::<u8>()
                .map_err(|_| usage(format!("bad color in pin {s:?}")))?;
            Ok((v, c))
        })
        .collect()
}

fn build_construction(spec: &[String], from: &Option<PathBuf>) -> CliResult<Vec<Graph>> {
    if spec.is_empty() {
        return Err(usage("construct needs a target, e.g. `construct e1`"));
    }
    let joined = spec.join(":");
    if let Ok(named) = joined.parse::<NamedGraph>() {
        return Ok(vec![make_named(named).map_err(|e| usage(e.to_string()))?]);
    }
    if spec[0] == "ore" {
        if spec.len() != 2 {
            return Err(usage("ore takes one parameter, e.g. `construct ore 3`"));
        }
        let m: usize = spec[1]
            .parse()
            .map_err(|_| usage(format!("bad composition count {:?}", spec[1])))?;
        if m == 0 {
            return Err(usage("composition count must be at least 1"));
        }
        return Ok(vec![ore_6critical(m).graph]);
    }
    if let Ok(family) = spec[0].parse::<ExtensionFamily>() {
        if spec.len() != 1 {
            return Err(usage(format!("{} takes no parameters", spec[0])));
        }
        let (_, bases) = read_graphs(from)?;
        let [base] = bases.as_slice() else {
            return Err(usage("family constructions need exactly one base graph"));
        };
        return Ok(family_x(base, family));
    }
    Err(usage(format!(
        "unknown construction {joined:?}; expected a named graph, `ore M`, or a family"
    )))
}

/// Reads graphs plus the hex SHA-256 of the raw input bytes. The format is
/// detected from the first significant line: edge lists open with a digit
/// header or a `#` comment, anything else is treated as graph6, one graph
/// per line.
fn read_graphs(input: &Option<PathBuf>) -> CliResult<(String, Vec<Graph>)> {
    let raw: Vec<u8> = match input {
        Some(p) if p.as_os_str() != "-" => {
            fs::read(p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| usage(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let digest = hex(&Sha256::digest(&raw));
    let text = std::str::from_utf8(&raw).map_err(|_| usage("input is not UTF-8"))?;
    let graphs = parse_graphs(text)?;
    Ok((digest, graphs))
}

fn parse_graphs(text: &str) -> CliResult<Vec<Graph>> {
    let Some(first) = text.lines().map(str::trim).find(|l| !l.is_empty()) else {
        return Err(usage("empty input"));
    };
    let is_edge_list = first.starts_with('#')
        || first.chars().next().is_some_and(|c| c.is_ascii_digit());
    if is_edge_list {
        Ok(vec![edgelist::parse(text).map_err(|e| usage(e.to_string()))?])
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                graph6::decode(l).map_err(|e| usage(format!("graph6 line {l:?}: {e}")))
            })
            .collect()
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
