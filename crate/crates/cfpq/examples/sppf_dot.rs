//! Reconstruct the shared packed parse forest for one reachable pair and
//! print it as DOT. The chosen pair has infinitely many witnesses, so the
//! forest is cyclic; pipe the output into `dot -Tsvg` to see the sharing.

use cfpq::gll;
use cfpq::grammar::parse_grammar_text;
use cfpq::graph::{load_edge_list, LoadOptions, VertexId};
use cfpq::results::{build_sppf, sppf_to_dot};
use cfpq::rsm::{build_rsm, extend_rsm};

fn main() {
    let graph = load_edge_list("0 a 0\n0 b 1\n1 b 0", &LoadOptions::default()).unwrap();
    let grammar = parse_grammar_text("S -> a b | a S b").unwrap();
    let rsm = extend_rsm(build_rsm(&grammar).unwrap()).unwrap();
    let result = gll::run(&rsm, &graph, &[VertexId(0)]).unwrap();

    let root = result
        .root_for(VertexId(0), VertexId(0))
        .expect("0 -> 0 is reachable");
    let sppf = build_sppf(&result, &graph, &root).unwrap();
    eprintln!(
        "forest: {} nodes, {} edges, cyclic: {}",
        sppf.node_count(),
        sppf.edge_count(),
        sppf.has_cycle()
    );
    print!("{}", sppf_to_dot(&sppf));
}
