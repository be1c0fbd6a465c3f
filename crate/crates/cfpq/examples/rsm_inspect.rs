//! Compile one grammar through both pipelines and compare machine sizes:
//! direct compilation keeps iteration inside a single box, while lowering
//! to plain productions first pays in extra boxes and states.

use cfpq::grammar::{ebnf_to_bnf, parse_grammar_text};
use cfpq::rsm::{build_rsm, build_rsm_from_bnf, rsm_to_dot};

fn main() {
    let text = "S -> (a | b)* c?";
    let grammar = parse_grammar_text(text).unwrap();

    let direct = build_rsm(&grammar).unwrap();
    let lowered = build_rsm_from_bnf(&ebnf_to_bnf(&grammar)).unwrap();
    eprintln!("query: {text}");
    eprintln!(
        "direct:  {} box(es), {} state(s)",
        direct.boxes.len(),
        direct.state_count()
    );
    eprintln!(
        "lowered: {} box(es), {} state(s)",
        lowered.boxes.len(),
        lowered.state_count()
    );

    print!("{}", rsm_to_dot(direct.boxes.values()));
}
