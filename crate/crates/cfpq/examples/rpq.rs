//! Regular path queries go through the same engine: a regex is just the
//! single-production grammar over it.

use cfpq::gll::run_rpq;
use cfpq::grammar::Regex;
use cfpq::graph::{load_edge_list, LoadOptions, VertexId};
use cfpq::results::reachable_pairs;

fn main() {
    let graph = load_edge_list(
        "0 a 1\n1 a 2\n2 b 3\n3 b 0\n2 c 4",
        &LoadOptions::default(),
    )
    .unwrap();

    // (a | b)+ c?
    let regex = Regex::concat(vec![
        Regex::plus(Regex::union(vec![
            Regex::terminal("a"),
            Regex::terminal("b"),
        ])),
        Regex::optional(Regex::terminal("c")),
    ]);

    let result = run_rpq(&regex, &graph, &[VertexId(0), VertexId(2)]).unwrap();
    println!("pairs for (a | b)+ c? from vertices 0 and 2:");
    for (s, t) in reachable_pairs(&result) {
        println!("  {} -> {}", graph.vertex_name(s), graph.vertex_name(t));
    }
}
