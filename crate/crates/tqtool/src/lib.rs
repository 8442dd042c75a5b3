//! Command-line front end for the `twisted-cube` library.
//!
//! [`run`] takes an argument vector and two sinks and returns the process
//! exit status, so the whole tool can be driven in-process by tests.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use twisted_cube::broadcast::{
    simulate_all_to_all_with_cap, Direction, MessageShare, RingSchedule, DEFAULT_BROADCAST_CAP,
};
use twisted_cube::construction::cycles_with_cap;
use twisted_cube::io::{
    export_cycles, export_dot_with_cap, export_edgelist_with_cap, export_graph_json,
    export_link_load, import_cycles, label_to_string, parse_label, CycleDocument,
};
use twisted_cube::verification::{
    find_hamiltonian_paths, graph_stats_with_cap, oracle_edh_pair_exists, verify_edh_pair,
    verify_equal_node_disjoint_with_cap, VerificationReport, WitnessSource,
};
use twisted_cube::{path_stream, ConstructionKind, Dimension, Error, NodeCap, NodeLabel, Which};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

/// Environment variable that overrides the enumeration cap when `--cap` is absent.
pub const MAX_N_ENV: &str = "TQTOOL_MAX_N";

#[derive(Parser, Debug)]
#[command(
    name = "tqtool",
    version,
    about = "Twisted cube generator, verifier and simulator"
)]
struct Cli {
    /// Largest n for which full enumeration is allowed.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Export the graph TQ_n.
    Graph {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum, default_value_t = GraphFormat::Dot)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the constructed pair of cycles.
    Cycles {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, value_enum)]
        format: Option<CycleFormat>,
        /// Generate nodes on the fly instead of materializing the cycles.
        #[arg(long)]
        stream: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the constructed pair, or a pair read from a cycles document.
    Verify {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Exhaustive search on small cubes.
    Oracle {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum)]
        question: Question,
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        end: Option<String>,
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Simulate all-to-all broadcast over the constructed rings.
    Broadcast {
        #[command(flatten)]
        dim: DimArg,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Write per-link loads as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Count nodes and edges by enumeration.
    Stats {
        #[command(flatten)]
        dim: DimArg,
    },
}

#[derive(Args, Debug)]
struct DimArg {
    /// Dimension (odd).
    #[arg(long = "n", value_name = "N")]
    n: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Dot,
    Edgelist,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CycleFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Edh,
    Ndc,
}

impl From<Kind> for ConstructionKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Edh => ConstructionKind::Edh,
            Kind::Ndc => ConstructionKind::Ndc,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Question {
    EdhPair,
    HamPath,
}

/// How a command ended, before it is turned into an exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Capacity(String),
    /// A report was printed and something in it failed.
    Verification,
    /// Input could not be read as a valid document.
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            Error::Document(_) => Failure::Rejected(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Context<'a> {
    cap: NodeCap,
    /// Set only when the user chose a cap, so other defaults can be kept.
    explicit_cap: Option<NodeCap>,
    stdout: &'a mut dyn Write,
}

impl Context<'_> {
    fn emit(&mut self, text: &str, out: Option<&FsPath>) -> Outcome {
        match out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
            None => self.print(text),
        }
    }

    fn print(&mut self, text: &str) -> Outcome {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write to standard output: {e}")))
    }

    fn report(&mut self, report: &VerificationReport) -> Outcome {
        self.print(&format!("{report}\n"))?;
        if report.passed() {
            Ok(())
        } else {
            Err(Failure::Verification)
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status. Normal output goes to `stdout`, diagnostics to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let explicit_cap = match cap_override(cli.cap) {
        Ok(cap) => cap,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let mut ctx = Context {
        cap: explicit_cap.unwrap_or_default(),
        explicit_cap,
        stdout,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verification) => EXIT_FAILED,
        Err(Failure::Rejected(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_FAILED
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Capacity(msg)) => {
            let _ = writeln!(stderr, "error: {msg} (raise it with --cap or {MAX_N_ENV})");
            EXIT_CAPACITY
        }
    }
}

fn cap_override(flag: Option<u32>) -> Result<Option<NodeCap>, String> {
    if let Some(n) = flag {
        return Ok(Some(NodeCap::new(n)));
    }
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map(|n| Some(NodeCap::new(n)))
            .map_err(|_| format!("{MAX_N_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Outcome {
    match command {
        Command::Graph { dim, format, out } => graph(ctx, dimension(&dim)?, format, out),
        Command::Cycles {
            dim,
            kind,
            format,
            stream,
            out,
        } => cycles(ctx, dimension(&dim)?, kind.into(), format, stream, out),
        Command::Verify { dim, kind, input } => verify(ctx, dimension(&dim)?, kind.into(), input),
        Command::Oracle {
            dim,
            question,
            start,
            end,
            limit,
        } => {
            let n = dimension(&dim)?;
            if !matches!(n.get(), 3 | 5) {
                return Err(Failure::Usage(format!(
                    "the oracle runs on n = 3 or 5, not {n}"
                )));
            }
            match question {
                Question::EdhPair => oracle_pair(ctx, n),
                Question::HamPath => oracle_path(ctx, n, start, end, limit),
            }
        }
        Command::Broadcast { dim, kind, report } => {
            broadcast(ctx, dimension(&dim)?, kind.into(), report)
        }
        Command::Stats { dim } => {
            let stats = graph_stats_with_cap(dimension(&dim)?, ctx.cap)?;
            ctx.print(&format!("{stats}\n"))
        }
    }
}

fn dimension(arg: &DimArg) -> Result<Dimension, Failure> {
    Ok(Dimension::new(arg.n)?)
}

fn graph(
    ctx: &mut Context<'_>,
    n: Dimension,
    format: GraphFormat,
    out: Option<PathBuf>,
) -> Outcome {
    let text = match format {
        GraphFormat::Dot => export_dot_with_cap(n, None, ctx.cap)?,
        GraphFormat::Edgelist => export_edgelist_with_cap(n, ctx.cap)?,
        GraphFormat::Json => export_graph_json(n, ctx.cap)? + "\n",
    };
    ctx.emit(&text, out.as_deref())
}

fn cycles(
    ctx: &mut Context<'_>,
    n: Dimension,
    kind: ConstructionKind,
    format: Option<CycleFormat>,
    stream: bool,
    out: Option<PathBuf>,
) -> Outcome {
    let format = match (format, stream) {
        (Some(CycleFormat::Json), true) => {
            return Err(Failure::Usage(
                "--stream writes one node per line; it cannot be combined with --format json"
                    .into(),
            ))
        }
        (_, true) => CycleFormat::Text,
        (f, false) => f.unwrap_or(CycleFormat::Json),
    };
    kind.check(n)?;
    if stream {
        return stream_cycles(ctx, n, kind, out.as_deref());
    }
    let (p, q) = cycles_with_cap(n, kind, ctx.cap)?;
    let text = match format {
        CycleFormat::Json => export_cycles(&CycleDocument::from_cycles(kind, &p, &q)) + "\n",
        CycleFormat::Text => {
            let mut text = String::new();
            for (i, ring) in [&p, &q].into_iter().enumerate() {
                if i > 0 {
                    text.push('\n');
                }
                for &v in ring.nodes() {
                    let _ = writeln!(text, "{}", label_to_string(v, n));
                }
            }
            text
        }
    };
    ctx.emit(&text, out.as_deref())
}

fn stream_cycles(
    ctx: &mut Context<'_>,
    n: Dimension,
    kind: ConstructionKind,
    out: Option<&FsPath>,
) -> Outcome {
    let write_all = |sink: &mut dyn Write| -> std::io::Result<()> {
        let mut sink = std::io::BufWriter::new(sink);
        for (i, which) in [Which::P, Which::Q].into_iter().enumerate() {
            if i > 0 {
                sink.write_all(b"\n")?;
            }
            let nodes = path_stream(n, kind, which).map_err(std::io::Error::other)?;
            for v in nodes {
                writeln!(sink, "{}", label_to_string(v, n))?;
            }
        }
        sink.flush()
    };
    match out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            write_all(&mut file)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => write_all(ctx.stdout)
            .map_err(|e| Failure::Usage(format!("cannot write to standard output: {e}"))),
    }
}

fn verify(
    ctx: &mut Context<'_>,
    n: Dimension,
    kind: ConstructionKind,
    input: Option<PathBuf>,
) -> Outcome {
    kind.check(n)?;
    let [a, b] = match input {
        None => {
            let (p, q) = cycles_with_cap(n, kind, ctx.cap)?;
            [p.into_path().into_nodes(), q.into_path().into_nodes()]
        }
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let doc = import_cycles(&text)?;
            if doc.n != n || doc.kind != kind {
                return Err(Failure::Rejected(format!(
                    "{} holds a {} pair for n = {}, but --n {} --kind {} was requested",
                    path.display(),
                    doc.kind,
                    doc.n,
                    n,
                    kind
                )));
            }
            doc.cycles
        }
    };
    let report = match kind {
        ConstructionKind::Edh => verify_edh_pair(&a, &b, n, ctx.cap)?,
        ConstructionKind::Ndc => verify_equal_node_disjoint_with_cap(&a, &b, n, ctx.cap)?,
    };
    ctx.report(&report)
}

fn oracle_pair(ctx: &mut Context<'_>, n: Dimension) -> Outcome {
    let v = oracle_edh_pair_exists(n)?;
    let b = v.degree_bound;
    let mut text = format!("n={} exists={}\n", n, v.exists);
    let _ = writeln!(
        text,
        "degree-bound: degree={} required-degree={} required-edges={} available-edges={} feasible={}",
        b.degree,
        b.required_degree,
        b.required_edges,
        b.available_edges,
        b.feasible()
    );
    if let Some(ex) = v.exhaustive {
        let _ = writeln!(
            text,
            "exhaustive: hamiltonian-cycles={} disjoint-pairs={}",
            ex.hamiltonian_cycles, ex.disjoint_pairs
        );
    }
    if let Some((c1, c2, source)) = &v.witness {
        let source = match source {
            WitnessSource::Search => "search",
            WitnessSource::Construction => "construction",
        };
        let _ = writeln!(text, "witness: {source}");
        for (name, c) in [("ring-1", c1), ("ring-2", c2)] {
            let _ = writeln!(text, "{name}: {}", join_labels(c.nodes(), n));
        }
    }
    ctx.print(&text)
}

fn oracle_path(
    ctx: &mut Context<'_>,
    n: Dimension,
    start: Option<String>,
    end: Option<String>,
    limit: usize,
) -> Outcome {
    let label = |s: Option<String>, default: u64, flag: &str| -> Result<NodeLabel, Failure> {
        match s {
            Some(s) => parse_label(&s, n).map_err(|e| Failure::Usage(format!("--{flag}: {e}"))),
            None => Ok(NodeLabel(default)),
        }
    };
    // Defaults: from 0...0 to 110...0, a neighbor of the start.
    let top_two = 0b11 << (n.get().max(2) - 2);
    let start = label(start, 0, "start")?;
    let end = label(end, top_two & n.mask(), "end")?;
    let paths = find_hamiltonian_paths(n, start, end, limit)?;
    let mut text = String::new();
    for p in &paths {
        let _ = writeln!(text, "{}", join_labels(p.nodes(), n));
    }
    let _ = writeln!(text, "found={}", paths.len());
    ctx.print(&text)
}

fn broadcast(
    ctx: &mut Context<'_>,
    n: Dimension,
    kind: ConstructionKind,
    report: Option<PathBuf>,
) -> Outcome {
    kind.check(n)?;
    let cap = ctx
        .explicit_cap
        .unwrap_or(NodeCap::new(DEFAULT_BROADCAST_CAP));
    let (p, q) = cycles_with_cap(n, kind, cap)?;
    // Hamiltonian rings split each payload; disjoint half-size rings carry it whole.
    let share = match kind {
        ConstructionKind::Edh => MessageShare::Half,
        ConstructionKind::Ndc => MessageShare::Whole,
    };
    let schedules = [
        RingSchedule::new(p, Direction::Forward, share),
        RingSchedule::new(q, Direction::Forward, share),
    ];
    let r = simulate_all_to_all_with_cap(&schedules, cap)?;
    let mut text = format!(
        "n={} kind={} rings={} steps={} contention_edges={}\n",
        n,
        kind,
        r.rings.len(),
        r.steps(),
        r.contention_edges
    );
    for (i, ring) in r.rings.iter().enumerate() {
        let loads: Vec<u64> = {
            let order = schedules[i].ring.nodes();
            (0..order.len())
                .map(|k| r.load(order[k], order[(k + 1) % order.len()]))
                .collect()
        };
        let _ = writeln!(
            text,
            "ring {}: nodes={} share={} steps={} complete={} link-load={}..{}",
            i + 1,
            ring.ring_len,
            match ring.share {
                MessageShare::Whole => "whole",
                MessageShare::Half => "half",
            },
            ring.steps,
            ring.complete,
            loads.iter().min().copied().unwrap_or(0),
            loads.iter().max().copied().unwrap_or(0),
        );
    }
    if let Some(path) = report {
        fs::write(&path, export_link_load(&r) + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    ctx.print(&text)?;
    if r.rings.iter().all(|ring| ring.complete) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn join_labels(nodes: &[NodeLabel], n: Dimension) -> String {
    nodes
        .iter()
        .map(|&v| label_to_string(v, n))
        .collect::<Vec<_>>()
        .join(" ")
}
