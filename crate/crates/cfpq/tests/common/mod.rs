//! Shared helpers for the integration suites: the worked example with its
//! exact state numbering, seeded random instances, and a string-graph
//! membership harness.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cfpq::gll::{self, QueryResult};
use cfpq::grammar::{ebnf_to_bnf, parse_grammar_text, to_cnf, CnfGrammar, EbnfGrammar};
use cfpq::graph::{Graph, GraphBuilder, VertexId};
use cfpq::rsm::{
    build_rsm, build_rsm_from_bnf, extend_rsm, ExtendedRsm, RsmBuilder, TransitionLabel,
};

/// The two-vertex example graph: an `a` loop on 0 and a `b` cycle 0 <-> 1.
pub fn example_graph() -> Graph {
    cfpq::graph::load_edge_list("0 a 0\n0 b 1\n1 b 0", &cfpq::graph::LoadOptions::default())
        .unwrap()
}

/// The extended machine for `S -> a b | a S b` with exact ids q0..q6.
pub fn example_machine() -> ExtendedRsm {
    let t = |n: &str| TransitionLabel::Terminal(n.into());
    let call = |n: &str| TransitionLabel::Call(n.into());
    RsmBuilder::new()
        .add_box(
            "S",
            &[0, 1, 2, 3],
            0,
            &[3],
            &[
                (0, t("a"), 1),
                (1, call("S"), 2),
                (1, t("b"), 3),
                (2, t("b"), 3),
            ],
        )
        .add_box(
            "S'",
            &[4, 5, 6],
            4,
            &[6],
            &[(4, call("S"), 5), (5, TransitionLabel::EndMarker, 6)],
        )
        .build_extended()
        .unwrap()
}

/// Grammar shapes the random CFPQ instances draw from.
pub const CFG_SHAPES: [&str; 4] = [
    // matched pairs a^n b^n
    "S -> a b | a S b",
    // balanced brackets (a opens, b closes)
    "S -> eps | a S b S",
    // single-relation same-generation shape
    "S -> b S a | a",
    // ε-admitting nesting
    "S -> eps | a S b",
];

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub starts: Vec<VertexId>,
}

/// A random graph with at most `max_vertices` vertices and `max_edges`
/// edges over the given labels, plus a nonempty start set.
pub fn random_instance(seed: u64, labels: &[&str], max_vertices: u32, max_edges: u32) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices);
    let e = rng.gen_range(0..=max_edges);
    let mut b = GraphBuilder::new();
    for v in 0..n {
        b.intern_vertex(&v.to_string());
    }
    for label in labels {
        b.intern_label(label);
    }
    for _ in 0..e {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let l = labels[rng.gen_range(0..labels.len())];
        b.add_edge(&u.to_string(), l, &v.to_string());
    }
    let graph = b.build();
    let start_count = rng.gen_range(1..=n.min(3));
    let mut starts: Vec<VertexId> = Vec::new();
    while starts.len() < start_count as usize {
        let v = VertexId(rng.gen_range(0..n));
        if !starts.contains(&v) {
            starts.push(v);
        }
    }
    starts.sort();
    Instance { graph, starts }
}

pub fn compile_ebnf(grammar: &EbnfGrammar) -> ExtendedRsm {
    extend_rsm(build_rsm(grammar).unwrap()).unwrap()
}

pub fn compile_bnf(grammar: &EbnfGrammar) -> ExtendedRsm {
    extend_rsm(build_rsm_from_bnf(&ebnf_to_bnf(grammar)).unwrap()).unwrap()
}

pub fn cnf_of(grammar: &EbnfGrammar) -> CnfGrammar {
    to_cnf(&ebnf_to_bnf(grammar))
}

pub fn pairs_of(qr: &QueryResult) -> std::collections::BTreeSet<(VertexId, VertexId)> {
    cfpq::results::reachable_pairs(qr)
}

/// Run the machine over the linear graph of `word` and report whether the
/// whole word is matched from its first vertex.
pub fn string_graph_accepts(ext: &ExtendedRsm, word: &[&str]) -> bool {
    let mut b = GraphBuilder::new();
    for v in 0..=word.len() {
        b.intern_vertex(&v.to_string());
    }
    for (i, w) in word.iter().enumerate() {
        b.add_edge(&i.to_string(), w, &(i + 1).to_string());
    }
    let graph = b.build();
    let result = gll::run(ext, &graph, &[VertexId(0)]).unwrap();
    pairs_of(&result).contains(&(VertexId(0), VertexId(word.len() as u32)))
}

/// All words over `alphabet` with length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &[&str], max_len: usize) -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = vec![vec![]];
    let mut layer: Vec<Vec<String>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in alphabet {
                let mut w2 = w.clone();
                w2.push(a.to_string());
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn parse(text: &str) -> EbnfGrammar {
    parse_grammar_text(text).unwrap()
}
