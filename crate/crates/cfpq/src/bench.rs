//! Desk-scale reproduction of the evaluation methodology: the named query
//! library, chunked multiple-source scenarios over seeded permutations,
//! both grammar-to-RSM pipelines, and CSV reporting.
//!
//! Wall-clock numbers are reported, never asserted; they depend on the
//! machine and the data set.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use indexmap::IndexMap;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::gll::{run, EngineError};
use crate::grammar::{ebnf_to_bnf, parse_grammar_text, EbnfGrammar, GrammarError, Regex, Symbol};
use crate::graph::{load_edge_list, Graph, GraphError, LoadOptions, VertexId};
use crate::results::reachable_pairs;
use crate::rsm::{build_rsm, build_rsm_from_bnf, extend_rsm, ExtendedRsm, RsmError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("scenario file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("scenario must name exactly one of `query` or `grammar`")]
    QueryOrGrammar,
    #[error("unknown builtin query `{0}`")]
    UnknownQuery(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Rsm(#[from] RsmError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("speedup needs matched records for both modes (scenario `{0}`, chunk size {1})")]
    UnmatchedModes(String, usize),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryKind {
    Cfg,
    Rpq,
}

/// A named query with placeholder labels `a`..`d`. Context-free templates
/// carry the canonical relation names they were defined with; regular
/// templates are bound to the graph's most frequent labels.
#[derive(Debug, Clone)]
pub struct QueryTemplate {
    pub name: String,
    pub kind: QueryKind,
    /// Grammar text over placeholder terminals; `x_r` stands for the
    /// inverse of placeholder `x`.
    pub text: String,
    /// Placeholders in binding order.
    pub placeholders: Vec<char>,
    /// Preferred concrete names per placeholder, for context-free queries.
    pub canonical: BTreeMap<char, String>,
}

/// The builtin query library.
pub fn builtin_queries() -> IndexMap<String, QueryTemplate> {
    let mut out = IndexMap::new();
    let mut add = |name: &str, kind, text: &str, placeholders: &[char], canonical: &[(char, &str)]| {
        out.insert(
            name.to_string(),
            QueryTemplate {
                name: name.to_string(),
                kind,
                text: text.to_string(),
                placeholders: placeholders.to_vec(),
                canonical: canonical
                    .iter()
                    .map(|(c, n)| (*c, n.to_string()))
                    .collect(),
            },
        );
    };
    add(
        "G1",
        QueryKind::Cfg,
        "S -> a_r S a | b_r S b | a_r a | b_r b",
        &['a', 'b'],
        &[('a', "subClassOf"), ('b', "type")],
    );
    add(
        "G2",
        QueryKind::Cfg,
        "S -> a_r S a | a",
        &['a'],
        &[('a', "subClassOf")],
    );
    add(
        "Geo",
        QueryKind::Cfg,
        "S -> a S a_r | a a_r",
        &['a'],
        &[('a', "broaderTransitive")],
    );
    add("reg1", QueryKind::Rpq, "S -> (a | b)*", &['a', 'b'], &[]);
    add("reg2", QueryKind::Rpq, "S -> a* b*", &['a', 'b'], &[]);
    add(
        "reg3",
        QueryKind::Rpq,
        "S -> (a | b | c)+",
        &['a', 'b', 'c'],
        &[],
    );
    add(
        "reg4",
        QueryKind::Rpq,
        "S -> (a | b)+ (c | d)+",
        &['a', 'b', 'c', 'd'],
        &[],
    );
    out
}

/// A template with concrete labels substituted in.
#[derive(Debug, Clone)]
pub struct BoundQuery {
    pub grammar_text: String,
    pub binding: BTreeMap<char, String>,
}

fn quote_label(name: &str) -> String {
    let bare = !name.is_empty()
        && name != "eps"
        && !name.chars().next().unwrap().is_uppercase()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | ':'));
    if bare {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}

/// Bind a template against a graph. Context-free templates use their
/// canonical relation names; regular templates take the graph's most
/// frequent labels, ties broken by label name.
pub fn bind_query(template: &QueryTemplate, graph: &Graph, inverse_suffix: &str) -> BoundQuery {
    let mut binding: BTreeMap<char, String> = BTreeMap::new();
    match template.kind {
        QueryKind::Cfg => {
            for p in &template.placeholders {
                binding.insert(*p, template.canonical[p].clone());
            }
        }
        QueryKind::Rpq => {
            let mut labels: Vec<(String, u64)> = graph.stats().label_counts;
            labels.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            for (i, p) in template.placeholders.iter().enumerate() {
                let name = if labels.is_empty() {
                    // No labels to bind: keep the placeholder, it will
                    // simply never match.
                    p.to_string()
                } else {
                    labels[i % labels.len()].0.clone()
                };
                binding.insert(*p, name);
            }
        }
    }

    // Token-wise substitution of `x` and `x_r` placeholder terminals.
    let mut text = String::new();
    let mut token = String::new();
    let flush = |token: &mut String, text: &mut String| {
        if token.is_empty() {
            return;
        }
        let replaced = if token.len() == 1 {
            let c = token.chars().next().unwrap();
            binding.get(&c).map(|n| quote_label(n))
        } else if token.len() == 3 && token.ends_with("_r") {
            let c = token.chars().next().unwrap();
            binding
                .get(&c)
                .map(|n| quote_label(&format!("{n}{inverse_suffix}")))
        } else {
            None
        };
        match replaced {
            Some(r) => text.push_str(&r),
            None => text.push_str(token),
        }
        token.clear();
    };
    for c in template.text.chars() {
        if c.is_alphanumeric() || matches!(c, '_' | '.' | ':') {
            token.push(c);
        } else {
            flush(&mut token, &mut text);
            text.push(c);
        }
    }
    flush(&mut token, &mut text);
    BoundQuery {
        grammar_text: text,
        binding,
    }
}

/// One start chunk: the size it was requested at and its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartChunk {
    pub requested_size: usize,
    pub vertices: Vec<VertexId>,
}

/// Seeded random permutation of the vertex set, reduced to the size-based
/// fraction (everything under 10 000 vertices, 10% up to 100 000, 1%
/// beyond), then cut into consecutive chunks of each requested size.
pub fn chunk_starts(graph: &Graph, sizes: &[usize], seed: u64) -> Vec<StartChunk> {
    let n = graph.vertex_count();
    let selected_count = if n < 10_000 {
        n
    } else if n <= 100_000 {
        n / 10
    } else {
        n / 100
    };
    let mut vertices: Vec<VertexId> = graph.vertices().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vertices.shuffle(&mut rng);
    vertices.truncate(selected_count);

    let mut chunks = Vec::new();
    for &size in sizes {
        if size == 0 {
            continue;
        }
        for slice in vertices.chunks(size) {
            chunks.push(StartChunk {
                requested_size: size,
                vertices: slice.to_vec(),
            });
        }
    }
    chunks
}

/// Which grammar-to-RSM pipeline evaluates the query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Mode {
    EbnfRsm,
    BnfRsm,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::EbnfRsm => write!(f, "ebnf-rsm"),
            Mode::BnfRsm => write!(f, "bnf-rsm"),
        }
    }
}

/// Build the extended machine for a grammar under the given mode.
pub fn compile_query(grammar: &EbnfGrammar, mode: Mode) -> Result<ExtendedRsm, RsmError> {
    let rsm = match mode {
        Mode::EbnfRsm => build_rsm(grammar)?,
        Mode::BnfRsm => build_rsm_from_bnf(&ebnf_to_bnf(grammar))?,
    };
    extend_rsm(rsm)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub scenario: String,
    pub mode: Mode,
    pub chunk_size: usize,
    pub repeat: usize,
    pub millis: f64,
    pub pairs: usize,
    pub descriptors: usize,
    pub gss_nodes: usize,
    pub gss_edges: usize,
}

pub const CSV_HEADER: [&str; 9] = [
    "scenario",
    "mode",
    "chunk_size",
    "repeat",
    "millis",
    "pairs",
    "descriptors",
    "gss_nodes",
    "gss_edges",
];

/// Scenario file: graph path, query name or grammar path, chunk sizes,
/// seed, mode, repeats.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ScenarioSpec {
    pub name: Option<String>,
    pub graph: PathBuf,
    pub query: Option<String>,
    pub grammar: Option<PathBuf>,
    #[serde(default = "default_chunk_sizes")]
    pub chunk_sizes: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: ModeSpec,
    #[serde(default = "default_repeats")]
    pub repeats: usize,
    pub add_inverse: Option<String>,
}

fn default_chunk_sizes() -> Vec<usize> {
    vec![1, 10, 100]
}

fn default_repeats() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    Ebnf,
    Bnf,
    #[default]
    Both,
}

impl ModeSpec {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeSpec::Ebnf => vec![Mode::EbnfRsm],
            ModeSpec::Bnf => vec![Mode::BnfRsm],
            ModeSpec::Both => vec![Mode::EbnfRsm, Mode::BnfRsm],
        }
    }
}

/// A scenario with its inputs loaded and chunks drawn.
#[derive(Debug)]
pub struct Scenario {
    pub id: String,
    pub graph: Graph,
    pub grammar: EbnfGrammar,
    pub chunks: Vec<StartChunk>,
    pub modes: Vec<Mode>,
    pub repeats: usize,
}

fn read_file(path: &Path) -> Result<String, BenchError> {
    std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Load and resolve a scenario file; paths are relative to the file.
pub fn load_scenario(path: &Path, seed_override: Option<u64>) -> Result<Scenario, BenchError> {
    let spec: ScenarioSpec = toml::from_str(&read_file(path)?)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    let graph_path = base.join(&spec.graph);
    let options = LoadOptions {
        add_inverse: spec.add_inverse.is_some(),
        inverse_suffix: spec.add_inverse.clone().unwrap_or_else(|| "_r".into()),
    };
    let graph = load_edge_list(&read_file(&graph_path)?, &options)?;

    let grammar_text = match (&spec.query, &spec.grammar) {
        (Some(name), None) => {
            let builtins = builtin_queries();
            let template = builtins
                .get(name)
                .ok_or_else(|| BenchError::UnknownQuery(name.clone()))?;
            bind_query(template, &graph, &options.inverse_suffix).grammar_text
        }
        (None, Some(grammar_path)) => read_file(&base.join(grammar_path))?,
        _ => return Err(BenchError::QueryOrGrammar),
    };
    let grammar = parse_grammar_text(&grammar_text)?;

    let seed = seed_override.unwrap_or(spec.seed);
    let chunks = chunk_starts(&graph, &spec.chunk_sizes, seed);
    let id = spec
        .name
        .clone()
        .or_else(|| {
            path.file_stem()
                .map(|s| s.to_string_lossy().into_owned())
        })
        .unwrap_or_else(|| "scenario".into());
    Ok(Scenario {
        id,
        graph,
        grammar,
        chunks,
        modes: spec.mode.modes(),
        repeats: spec.repeats.max(1),
    })
}

#[derive(Debug)]
pub struct ScenarioOutcome {
    pub records: Vec<RunRecord>,
    pub warnings: Vec<String>,
}

/// Run every mode, chunk, and repeat of a scenario. `jobs > 1` dispatches
/// runs across a thread pool; record order is independent of scheduling.
pub fn run_scenario(s: &Scenario, jobs: usize) -> Result<ScenarioOutcome, BenchError> {
    let mut warnings = Vec::new();
    for (_, rhs) in &s.grammar.productions {
        let mut terminals = Vec::new();
        collect_terminals(rhs, &mut terminals);
        for t in terminals {
            if s.graph.label_id(&t).is_none() {
                warnings.push(format!(
                    "label `{t}` does not occur in the graph; matches will be empty"
                ));
            }
        }
    }
    warnings.sort();
    warnings.dedup();

    let mut compiled = Vec::new();
    for &mode in &s.modes {
        compiled.push((mode, compile_query(&s.grammar, mode)?));
    }

    let mut tasks = Vec::new();
    for (mode_idx, _) in compiled.iter().enumerate() {
        for chunk in &s.chunks {
            for repeat in 0..s.repeats {
                tasks.push((mode_idx, chunk, repeat));
            }
        }
    }

    let run_one = |&(mode_idx, chunk, repeat): &(usize, &StartChunk, usize)| -> Result<RunRecord, BenchError> {
        let (mode, ref ext) = compiled[mode_idx];
        let started = Instant::now();
        let result = run(ext, &s.graph, &chunk.vertices)?;
        let millis = started.elapsed().as_secs_f64() * 1e3;
        Ok(RunRecord {
            scenario: s.id.clone(),
            mode,
            chunk_size: chunk.requested_size,
            repeat,
            millis,
            pairs: reachable_pairs(&result).len(),
            descriptors: result.diagnostics.descriptor_count,
            gss_nodes: result.diagnostics.gss_node_count,
            gss_edges: result.diagnostics.gss_edge_count,
        })
    };

    let records: Result<Vec<RunRecord>, BenchError> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            use rayon::prelude::*;
            tasks.par_iter().map(run_one).collect()
        })
    } else {
        tasks.iter().map(run_one).collect()
    };
    Ok(ScenarioOutcome {
        records: records?,
        warnings,
    })
}

fn collect_terminals(r: &Regex, out: &mut Vec<String>) {
    match r {
        Regex::Epsilon => {}
        Regex::Sym(Symbol::Terminal(t)) => out.push(t.clone()),
        Regex::Sym(Symbol::Nonterminal(_)) => {}
        Regex::Concat(cs) | Regex::Union(cs) => {
            for c in cs {
                collect_terminals(c, out);
            }
        }
        Regex::Star(c) | Regex::Plus(c) | Regex::Optional(c) => collect_terminals(c, out),
    }
}

/// Write records in the pinned CSV schema.
pub fn write_csv<W: Write>(records: &[RunRecord], writer: W) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.scenario.clone(),
            r.mode.to_string(),
            r.chunk_size.to_string(),
            r.repeat.to_string(),
            format!("{:.3}", r.millis),
            r.pairs.to_string(),
            r.descriptors.to_string(),
            r.gss_nodes.to_string(),
            r.gss_edges.to_string(),
        ])?;
    }
    w.flush().map_err(|e| BenchError::Io {
        path: PathBuf::from("<csv>"),
        source: e,
    })?;
    Ok(())
}

/// Mean milliseconds per `(scenario, mode, chunk_size)` group.
pub fn summarize(records: &[RunRecord]) -> Vec<(String, Mode, usize, f64)> {
    let mut groups: BTreeMap<(String, Mode, usize), (f64, usize)> = BTreeMap::new();
    for r in records {
        let entry = groups
            .entry((r.scenario.clone(), r.mode, r.chunk_size))
            .or_insert((0.0, 0));
        entry.0 += r.millis;
        entry.1 += 1;
    }
    groups
        .into_iter()
        .map(|((s, m, c), (total, n))| (s, m, c, total / n as f64))
        .collect()
}

#[derive(Debug, Clone)]
pub struct SpeedupReport {
    /// `(scenario, chunk_size, bnf_millis / ebnf_millis)`.
    pub rows: Vec<(String, usize, f64)>,
    pub geometric_mean: f64,
}

/// Ratio of mean BNF-pipeline time to mean EBNF-pipeline time per scenario
/// and chunk size. Report only; nothing asserts a threshold.
pub fn speedup_report(records: &[RunRecord]) -> Result<SpeedupReport, BenchError> {
    let mut by_group: BTreeMap<(String, usize), BTreeMap<Mode, (f64, usize)>> = BTreeMap::new();
    for r in records {
        let entry = by_group
            .entry((r.scenario.clone(), r.chunk_size))
            .or_default()
            .entry(r.mode)
            .or_insert((0.0, 0));
        entry.0 += r.millis;
        entry.1 += 1;
    }
    let mut rows = Vec::new();
    for ((scenario, chunk_size), modes) in by_group {
        let mean = |m: Mode| -> Option<f64> {
            modes.get(&m).map(|(total, n)| total / *n as f64)
        };
        match (mean(Mode::EbnfRsm), mean(Mode::BnfRsm)) {
            (Some(e), Some(b)) if e > 0.0 => rows.push((scenario, chunk_size, b / e)),
            (Some(_), Some(_)) => rows.push((scenario, chunk_size, 1.0)),
            _ => return Err(BenchError::UnmatchedModes(scenario, chunk_size)),
        }
    }
    let geometric_mean = if rows.is_empty() {
        1.0
    } else {
        (rows.iter().map(|(_, _, r)| r.ln()).sum::<f64>() / rows.len() as f64).exp()
    };
    Ok(SpeedupReport {
        rows,
        geometric_mean,
    })
}
