//! Context-free path querying (CFPQ) for edge-labelled directed graphs.
//!
//! Queries are context-free grammars in a small EBNF syntax (regular
//! expressions are the degenerate single-production case). A grammar is
//! compiled to a recursive state machine — one deterministic ε-free
//! automaton per nonterminal — and evaluated against the graph by a
//! GLL-style engine: a worklist of descriptors over a graph-structured
//! stack. The engine answers multiple-source reachability and records a
//! path index from which shared packed parse forests and concrete witness
//! paths are reconstructed.
//!
//! ```
//! use cfpq::graph::{load_edge_list, LoadOptions, VertexId};
//! use cfpq::grammar::parse_grammar_text;
//! use cfpq::rsm::{build_rsm, extend_rsm};
//! use cfpq::{gll, results};
//!
//! let graph = load_edge_list("0 a 0\n0 b 1\n1 b 0", &LoadOptions::default()).unwrap();
//! let grammar = parse_grammar_text("S -> a b | a S b").unwrap();
//! let rsm = extend_rsm(build_rsm(&grammar).unwrap()).unwrap();
//! let result = gll::run(&rsm, &graph, &[VertexId(0)]).unwrap();
//! let pairs = results::reachable_pairs(&result);
//! assert_eq!(pairs.len(), 2);
//! ```
//!
//! The `examples/` directory shows one runnable program per capability;
//! the `cfpq` binary wraps the same entry points for shell use.

pub mod bench;
pub mod cli;
pub mod gll;
pub mod grammar;
pub mod graph;
pub mod oracle;
pub mod results;
pub mod rsm;
