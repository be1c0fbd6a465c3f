//! Multiple-source reachability under a context-free constraint.
//!
//! The graph is a two-vertex loop/cycle and the query is the matched-pair
//! language a^n b^n; run with `cargo run --example reachability`.

use cfpq::gll;
use cfpq::grammar::parse_grammar_text;
use cfpq::graph::{load_edge_list, LoadOptions, VertexId};
use cfpq::results::reachable_pairs;
use cfpq::rsm::{build_rsm, extend_rsm};

fn main() {
    let graph = load_edge_list("0 a 0\n0 b 1\n1 b 0", &LoadOptions::default()).unwrap();
    let grammar = parse_grammar_text("S -> a b | a S b").unwrap();
    let rsm = extend_rsm(build_rsm(&grammar).unwrap()).unwrap();

    let result = gll::run(&rsm, &graph, &[VertexId(0)]).unwrap();
    println!("pairs reachable from vertex 0 with a^n b^n words:");
    for (source, target) in reachable_pairs(&result) {
        println!(
            "  {} -> {}",
            graph.vertex_name(source),
            graph.vertex_name(target)
        );
    }
    let d = result.diagnostics;
    println!(
        "descriptors: {}, gss nodes: {}, gss edges: {}",
        d.descriptor_count, d.gss_node_count, d.gss_edge_count
    );
}
