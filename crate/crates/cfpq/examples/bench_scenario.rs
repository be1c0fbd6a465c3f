//! Run a small two-mode scenario in memory and print the CSV records plus
//! the speedup table. Timings on a toy graph carry no signal; the point is
//! the record schema and the equal pair counts across modes.

use cfpq::bench::{
    run_scenario, speedup_report, write_csv, Mode, Scenario, StartChunk,
};
use cfpq::grammar::parse_grammar_text;
use cfpq::graph::{load_edge_list, LoadOptions, VertexId};

fn main() {
    let graph = load_edge_list(
        "0 a 0\n0 b 1\n1 b 0\n1 a 2\n2 b 0",
        &LoadOptions::default(),
    )
    .unwrap();
    let grammar = parse_grammar_text("S -> a b | a S b").unwrap();
    let scenario = Scenario {
        id: "inline".into(),
        chunks: vec![
            StartChunk {
                requested_size: 1,
                vertices: vec![VertexId(0)],
            },
            StartChunk {
                requested_size: 2,
                vertices: vec![VertexId(1), VertexId(2)],
            },
        ],
        graph,
        grammar,
        modes: vec![Mode::EbnfRsm, Mode::BnfRsm],
        repeats: 2,
    };

    let outcome = run_scenario(&scenario, 1).unwrap();
    let mut csv = Vec::new();
    write_csv(&outcome.records, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    let report = speedup_report(&outcome.records).unwrap();
    for (scenario, chunk_size, ratio) in &report.rows {
        println!("speedup {scenario} chunk_size={chunk_size}: {ratio:.3}");
    }
    println!("geometric mean: {:.3}", report.geometric_mean);
}
