//! Command-line front end. All functionality lives in the library; the
//! binary only parses flags, wires files together, and maps errors to
//! stable exit codes: 1 for parse errors, 2 for unknown start vertices,
//! 3 for a missing derivation.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    self, bind_query, builtin_queries, compile_query, load_scenario, run_scenario, speedup_report,
    summarize, Mode,
};
use crate::gll::run;
use crate::grammar::{parse_grammar_text, EbnfGrammar};
use crate::graph::{load_edge_list, Graph, LoadOptions, VertexId};
use crate::results::{build_sppf, enumerate_paths, reachable_pairs, sppf_to_dot, PathLimits};
use crate::rsm::rsm_to_dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNKNOWN_START: i32 = 2;
pub const EXIT_NO_DERIVATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cfpq",
    about = "Context-free and regular path querying over edge-labelled graphs",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Stream reachable vertex pairs for a set of start vertices.
    Reach(ReachArgs),
    /// Enumerate witness paths between two vertices, shortest first.
    Paths(PathsArgs),
    /// Export the derivation forest for a vertex pair as DOT.
    Sppf(SppfArgs),
    /// Compile a grammar and export its state machine as DOT.
    #[command(name = "grammar-inspect")]
    GrammarInspect(InspectArgs),
    /// Run a scenario file and write per-run records as CSV.
    Bench(BenchArgs),
    /// Print vertex, edge, and per-label counts as one JSON line.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum PipelineMode {
    #[default]
    Ebnf,
    Bnf,
}

impl PipelineMode {
    fn mode(self) -> Mode {
        match self {
            PipelineMode::Ebnf => Mode::EbnfRsm,
            PipelineMode::Bnf => Mode::BnfRsm,
        }
    }
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Grammar file in the textual rule syntax.
    #[arg(long, conflicts_with = "query")]
    grammar: Option<PathBuf>,
    /// Builtin query name (G1, G2, Geo, reg1..reg4), bound to the graph's
    /// labels.
    #[arg(long)]
    query: Option<String>,
    /// Grammar-to-RSM pipeline.
    #[arg(long, value_enum, default_value_t = PipelineMode::Ebnf)]
    mode: PipelineMode,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Edge-list file: `source label target` per line.
    #[arg(long)]
    graph: PathBuf,
    /// Materialize inverse edges with this label suffix.
    #[arg(long, value_name = "SUFFIX")]
    add_inverse: Option<String>,
}

#[derive(Debug, Args)]
struct ReachArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    query: QueryArgs,
    /// Comma-separated start vertex names.
    #[arg(long, value_name = "LIST", required_unless_present = "starts_file")]
    starts: Option<String>,
    /// File with one start vertex name per line.
    #[arg(long, value_name = "FILE")]
    starts_file: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PathsArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 10)]
    max_paths: usize,
    #[arg(long, default_value_t = 10)]
    max_length: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SppfArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    query: QueryArgs,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    /// Output DOT file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InspectArgs {
    /// Grammar file in the textual rule syntax.
    #[arg(long)]
    grammar: PathBuf,
    #[arg(long, value_enum, default_value_t = PipelineMode::Ebnf)]
    mode: PipelineMode,
    /// Include the synthetic start box with the end marker.
    #[arg(long)]
    extended: bool,
    /// Output DOT file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Scenario file (TOML): graph, query or grammar, chunk sizes, seed,
    /// mode, repeats.
    #[arg(long)]
    scenario: PathBuf,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
    /// Dispatch runs across this many threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    graph: GraphArgs,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parse arguments and run; returns the process exit code.
pub fn main_entry<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Reach(args) => cmd_reach(args),
        Command::Paths(args) => cmd_paths(args),
        Command::Sppf(args) => cmd_sppf(args),
        Command::GrammarInspect(args) => cmd_grammar_inspect(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Stats(args) => cmd_stats(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    let text = read_file(&args.graph)?;
    let options = LoadOptions {
        add_inverse: args.add_inverse.is_some(),
        inverse_suffix: args.add_inverse.clone().unwrap_or_else(|| "_r".into()),
    };
    load_edge_list(&text, &options)
        .map_err(|e| Failure::parse(format!("{}: {e}", args.graph.display())))
}

fn load_query(args: &QueryArgs, graph: &Graph, inverse_suffix: &str) -> Result<EbnfGrammar, Failure> {
    let text = match (&args.grammar, &args.query) {
        (Some(path), None) => read_file(path)?,
        (None, Some(name)) => {
            let builtins = builtin_queries();
            let template = builtins
                .get(name)
                .ok_or_else(|| Failure::parse(format!("unknown builtin query `{name}`")))?;
            bind_query(template, graph, inverse_suffix).grammar_text
        }
        _ => return Err(Failure::parse("exactly one of --grammar or --query is required")),
    };
    parse_grammar_text(&text).map_err(|e| Failure::parse(e.to_string()))
}

fn resolve_vertex(graph: &Graph, name: &str) -> Result<VertexId, Failure> {
    graph.vertex_id(name).ok_or(Failure {
        code: EXIT_UNKNOWN_START,
        message: format!("vertex `{name}` is not in the graph"),
    })
}

fn out_writer(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| Failure::parse(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(std::io::stdout())),
    }
}

fn inverse_suffix(args: &GraphArgs) -> String {
    args.add_inverse.clone().unwrap_or_else(|| "_r".into())
}

fn cmd_reach(args: ReachArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let grammar = load_query(&args.query, &graph, &inverse_suffix(&args.graph))?;
    let ext = compile_query(&grammar, args.query.mode.mode())
        .map_err(|e| Failure::parse(e.to_string()))?;

    let mut start_names: Vec<String> = Vec::new();
    if let Some(list) = &args.starts {
        start_names.extend(list.split(',').map(|s| s.trim().to_string()));
    }
    if let Some(path) = &args.starts_file {
        start_names.extend(
            read_file(path)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(String::from),
        );
    }
    start_names.retain(|n| !n.is_empty());
    let mut starts: Vec<(String, VertexId)> = start_names
        .iter()
        .map(|n| resolve_vertex(&graph, n).map(|v| (n.clone(), v)))
        .collect::<Result<_, _>>()?;
    starts.sort();
    starts.dedup();

    // One engine run per start vertex, in name order: each block arrives on
    // the output as soon as its run completes, and the concatenation stays
    // lexicographically sorted.
    let mut out = out_writer(&args.out)?;
    for (name, v) in starts {
        let result = run(&ext, &graph, &[v]).map_err(|e| Failure::parse(e.to_string()))?;
        let mut targets: Vec<String> = reachable_pairs(&result)
            .iter()
            .map(|(_, t)| graph.vertex_name(*t).to_string())
            .collect();
        targets.sort();
        for t in targets {
            writeln!(out, "{name},{t}").map_err(|e| Failure::parse(e.to_string()))?;
        }
        out.flush().map_err(|e| Failure::parse(e.to_string()))?;
    }
    Ok(())
}

fn cmd_paths(args: PathsArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let grammar = load_query(&args.query, &graph, &inverse_suffix(&args.graph))?;
    let ext = compile_query(&grammar, args.query.mode.mode())
        .map_err(|e| Failure::parse(e.to_string()))?;
    let source = resolve_vertex(&graph, &args.source)?;
    let target = resolve_vertex(&graph, &args.target)?;
    let result = run(&ext, &graph, &[source]).map_err(|e| Failure::parse(e.to_string()))?;
    let paths = enumerate_paths(
        &result,
        &graph,
        source,
        target,
        PathLimits {
            max_paths: args.max_paths.max(1),
            max_length: args.max_length.max(1),
        },
    );
    if paths.is_empty() {
        eprintln!(
            "no path from `{}` to `{}` within the limits",
            args.source, args.target
        );
        return Ok(());
    }
    let mut out = out_writer(&args.out)?;
    for p in paths {
        writeln!(out, "{}", p.display(&graph)).map_err(|e| Failure::parse(e.to_string()))?;
    }
    out.flush().map_err(|e| Failure::parse(e.to_string()))
}

fn cmd_sppf(args: SppfArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    let grammar = load_query(&args.query, &graph, &inverse_suffix(&args.graph))?;
    let ext = compile_query(&grammar, args.query.mode.mode())
        .map_err(|e| Failure::parse(e.to_string()))?;
    let source = resolve_vertex(&graph, &args.source)?;
    let target = resolve_vertex(&graph, &args.target)?;
    let result = run(&ext, &graph, &[source]).map_err(|e| Failure::parse(e.to_string()))?;
    let root = result.root_for(source, target).ok_or(Failure {
        code: EXIT_NO_DERIVATION,
        message: format!("no derivation from `{}` to `{}`", args.source, args.target),
    })?;
    let sppf = build_sppf(&result, &graph, &root).map_err(|e| Failure {
        code: EXIT_NO_DERIVATION,
        message: e.to_string(),
    })?;
    let mut out = out_writer(&args.out)?;
    out.write_all(sppf_to_dot(&sppf).as_bytes())
        .map_err(|e| Failure::parse(e.to_string()))?;
    out.flush().map_err(|e| Failure::parse(e.to_string()))
}

fn cmd_grammar_inspect(args: InspectArgs) -> CmdResult {
    let text = read_file(&args.grammar)?;
    let grammar = parse_grammar_text(&text).map_err(|e| Failure::parse(e.to_string()))?;
    let ext = compile_query(&grammar, args.mode.mode())
        .map_err(|e| Failure::parse(e.to_string()))?;
    let (boxes, states, dot) = if args.extended {
        (
            ext.inner.boxes.len() + 1,
            ext.state_count(),
            rsm_to_dot(ext.boxes()),
        )
    } else {
        (
            ext.inner.boxes.len(),
            ext.inner.state_count(),
            rsm_to_dot(ext.inner.boxes.values()),
        )
    };
    eprintln!("boxes: {boxes}");
    eprintln!("states: {states}");
    let mut out = out_writer(&args.out)?;
    out.write_all(dot.as_bytes())
        .map_err(|e| Failure::parse(e.to_string()))?;
    out.flush().map_err(|e| Failure::parse(e.to_string()))
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let seed_override = std::env::var("CFPQ_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok());
    let scenario = load_scenario(&args.scenario, seed_override)
        .map_err(|e| Failure::parse(e.to_string()))?;
    let outcome =
        run_scenario(&scenario, args.jobs.max(1)).map_err(|e| Failure::parse(e.to_string()))?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }

    let file = File::create(&args.out)
        .map_err(|e| Failure::parse(format!("cannot create {}: {e}", args.out.display())))?;
    let mut writer = BufWriter::new(file);
    bench::write_csv(&outcome.records, &mut writer)
        .map_err(|e| Failure::parse(e.to_string()))?;

    for (scenario_id, mode, chunk, mean) in summarize(&outcome.records) {
        eprintln!("{scenario_id} {mode} chunk_size={chunk} mean_millis={mean:.3}");
    }
    if scenario.modes.len() == 2 {
        let report = speedup_report(&outcome.records)
            .map_err(|e| Failure::parse(e.to_string()))?;
        writeln!(writer, "# speedup (bnf-rsm millis / ebnf-rsm millis)")
            .map_err(|e| Failure::parse(e.to_string()))?;
        writeln!(writer, "scenario,chunk_size,speedup")
            .map_err(|e| Failure::parse(e.to_string()))?;
        for (s, c, r) in &report.rows {
            writeln!(writer, "{s},{c},{r:.3}").map_err(|e| Failure::parse(e.to_string()))?;
            eprintln!("speedup {s} chunk_size={c}: {r:.3}");
        }
        writeln!(writer, "# geometric_mean,{:.3}", report.geometric_mean)
            .map_err(|e| Failure::parse(e.to_string()))?;
        eprintln!("speedup geometric mean: {:.3}", report.geometric_mean);
    }
    writer.flush().map_err(|e| Failure::parse(e.to_string()))
}

fn cmd_stats(args: StatsArgs) -> CmdResult {
    let graph = load_graph(&args.graph)?;
    println!("{}", graph.stats().to_json_line());
    Ok(())
}
