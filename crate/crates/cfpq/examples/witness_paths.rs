//! Extract concrete witness paths for reachable pairs, shortest first.

use cfpq::gll;
use cfpq::grammar::parse_grammar_text;
use cfpq::graph::{load_edge_list, LoadOptions, VertexId};
use cfpq::results::{enumerate_paths, PathLimits};
use cfpq::rsm::{build_rsm, extend_rsm};

fn main() {
    let graph = load_edge_list("0 a 0\n0 b 1\n1 b 0", &LoadOptions::default()).unwrap();
    let grammar = parse_grammar_text("S -> a b | a S b").unwrap();
    let rsm = extend_rsm(build_rsm(&grammar).unwrap()).unwrap();
    let result = gll::run(&rsm, &graph, &[VertexId(0)]).unwrap();

    for target in [VertexId(1), VertexId(0)] {
        println!(
            "paths 0 -> {} (at most 3, length <= 10):",
            graph.vertex_name(target)
        );
        let paths = enumerate_paths(
            &result,
            &graph,
            VertexId(0),
            target,
            PathLimits {
                max_paths: 3,
                max_length: 10,
            },
        );
        for p in paths {
            println!("  {}", p.display(&graph));
        }
    }
}
