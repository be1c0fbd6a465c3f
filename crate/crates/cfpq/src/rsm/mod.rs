//! Recursive state machines: one deterministic ε-free box per nonterminal,
//! compiled from grammars, plus the extended machine with the synthetic
//! start box and end marker.

mod dfa;

pub use dfa::{regex_to_dfa, BoxDfa};

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;

use indexmap::IndexMap;
use thiserror::Error;

use crate::grammar::{BnfGrammar, Diagnostic, EbnfGrammar, Regex};

/// Globally unique RSM state id; each state belongs to exactly one box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RsmStateId(pub u32);

impl fmt::Display for RsmStateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Transition letter of a box: a terminal, the reserved end marker, or a
/// call of another box, stored by nonterminal name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransitionLabel {
    Terminal(String),
    EndMarker,
    Call(String),
}

impl fmt::Display for TransitionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionLabel::Terminal(t) => write!(f, "{t}"),
            TransitionLabel::EndMarker => write!(f, "$"),
            TransitionLabel::Call(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum RsmError {
    #[error("grammar is invalid: {0:?}")]
    InvalidGrammar(Vec<Diagnostic>),
    #[error("box `{nonterminal}` is not deterministic: two transitions from {state} on `{label}`")]
    Nondeterministic {
        nonterminal: String,
        state: RsmStateId,
        label: String,
    },
    #[error("box `{nonterminal}`: state {state} is not in the box's state set")]
    StateOutsideBox {
        nonterminal: String,
        state: RsmStateId,
    },
    #[error("state {0} belongs to more than one box")]
    DuplicateState(RsmStateId),
    #[error("duplicate box `{0}`")]
    DuplicateBox(String),
    #[error("call transition targets unknown box `{callee}` (from box `{nonterminal}`)")]
    UnknownCallTarget { nonterminal: String, callee: String },
    #[error("machine already carries the end marker")]
    AlreadyExtended,
    #[error("extended machine needs exactly one box with an end-marker transition")]
    MissingEndMarker,
    #[error("start box is not of the extended form: {0}")]
    MalformedStartBox(String),
    #[error("start nonterminal `{0}` has no box")]
    MissingStartBox(String),
}

/// One nonterminal's automaton inside an RSM.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsmBox {
    pub nonterminal: String,
    pub states: Vec<RsmStateId>,
    pub start: RsmStateId,
    pub finals: BTreeSet<RsmStateId>,
    /// Sorted by `(from, label)`.
    pub transitions: Vec<(RsmStateId, TransitionLabel, RsmStateId)>,
}

impl RsmBox {
    fn check(&self) -> Result<(), RsmError> {
        let states: BTreeSet<RsmStateId> = self.states.iter().copied().collect();
        if !states.contains(&self.start) {
            return Err(RsmError::StateOutsideBox {
                nonterminal: self.nonterminal.clone(),
                state: self.start,
            });
        }
        for f in &self.finals {
            if !states.contains(f) {
                return Err(RsmError::StateOutsideBox {
                    nonterminal: self.nonterminal.clone(),
                    state: *f,
                });
            }
        }
        let mut keys = BTreeSet::new();
        for (from, label, to) in &self.transitions {
            if !states.contains(from) || !states.contains(to) {
                return Err(RsmError::StateOutsideBox {
                    nonterminal: self.nonterminal.clone(),
                    state: if states.contains(from) { *to } else { *from },
                });
            }
            if !keys.insert((*from, label.clone())) {
                return Err(RsmError::Nondeterministic {
                    nonterminal: self.nonterminal.clone(),
                    state: *from,
                    label: label.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Shape with box-local breadth-first numbering, for structural
    /// comparisons that ignore global state ids.
    pub fn canonical_shape(
        &self,
    ) -> (
        usize,
        Vec<usize>,
        Vec<(usize, TransitionLabel, usize)>,
    ) {
        let mut outgoing: HashMap<RsmStateId, Vec<(TransitionLabel, RsmStateId)>> = HashMap::new();
        for (from, label, to) in &self.transitions {
            outgoing.entry(*from).or_default().push((label.clone(), *to));
        }
        for row in outgoing.values_mut() {
            row.sort();
        }
        let mut order: HashMap<RsmStateId, usize> = HashMap::new();
        order.insert(self.start, 0);
        let mut queue = std::collections::VecDeque::from([self.start]);
        while let Some(s) = queue.pop_front() {
            if let Some(row) = outgoing.get(&s) {
                for (_, to) in row {
                    if !order.contains_key(to) {
                        order.insert(*to, order.len());
                        queue.push_back(*to);
                    }
                }
            }
        }
        for s in &self.states {
            if !order.contains_key(s) {
                order.insert(*s, order.len());
            }
        }
        let mut finals: Vec<usize> = self.finals.iter().map(|f| order[f]).collect();
        finals.sort_unstable();
        let mut transitions: Vec<(usize, TransitionLabel, usize)> = self
            .transitions
            .iter()
            .map(|(f, l, t)| (order[f], l.clone(), order[t]))
            .collect();
        transitions.sort();
        (self.states.len(), finals, transitions)
    }

    fn has_end_marker(&self) -> bool {
        self.transitions
            .iter()
            .any(|(_, l, _)| matches!(l, TransitionLabel::EndMarker))
    }
}

/// A set of boxes with a designated start nonterminal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rsm {
    pub boxes: IndexMap<String, RsmBox>,
    pub start_nonterminal: String,
}

impl Rsm {
    fn check(&self) -> Result<(), RsmError> {
        let mut owner: HashMap<RsmStateId, &str> = HashMap::new();
        for (name, b) in &self.boxes {
            b.check()?;
            for s in &b.states {
                if owner.insert(*s, name).is_some() {
                    return Err(RsmError::DuplicateState(*s));
                }
            }
        }
        for (name, b) in &self.boxes {
            for (_, label, _) in &b.transitions {
                if let TransitionLabel::Call(callee) = label {
                    if !self.boxes.contains_key(callee) {
                        return Err(RsmError::UnknownCallTarget {
                            nonterminal: name.clone(),
                            callee: callee.clone(),
                        });
                    }
                }
            }
        }
        if !self.boxes.contains_key(&self.start_nonterminal) {
            return Err(RsmError::MissingStartBox(self.start_nonterminal.clone()));
        }
        Ok(())
    }

    pub fn state_count(&self) -> usize {
        self.boxes.values().map(|b| b.states.len()).sum()
    }

    /// Union of all boxes' transition functions.
    pub fn delta(&self) -> impl Iterator<Item = &(RsmStateId, TransitionLabel, RsmStateId)> {
        self.boxes.values().flat_map(|b| b.transitions.iter())
    }

    fn max_state_id(&self) -> u32 {
        self.boxes
            .values()
            .flat_map(|b| b.states.iter())
            .map(|s| s.0)
            .max()
            .map(|m| m + 1)
            .unwrap_or(0)
    }

    fn has_end_marker(&self) -> bool {
        self.boxes.values().any(|b| b.has_end_marker())
    }
}

/// An RSM plus the synthetic start box `q'0 -call S-> q'1 -$-> q'2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedRsm {
    pub inner: Rsm,
    pub start_box: RsmBox,
}

impl ExtendedRsm {
    /// `q'0`: the initial state for every start vertex.
    pub fn init_state(&self) -> RsmStateId {
        self.start_box.start
    }

    /// `q'1`: reached exactly when the start nonterminal has been matched;
    /// the end marker is never consumed against graph edges.
    pub fn accept_state(&self) -> RsmStateId {
        self.start_box
            .transitions
            .iter()
            .find_map(|(_, l, to)| matches!(l, TransitionLabel::Call(_)).then_some(*to))
            .expect("start box calls the start nonterminal")
    }

    pub fn synthetic_nonterminal(&self) -> &str {
        &self.start_box.nonterminal
    }

    pub fn state_count(&self) -> usize {
        self.inner.state_count() + self.start_box.states.len()
    }

    /// All boxes: the inner ones, then the synthetic start box.
    pub fn boxes(&self) -> impl Iterator<Item = &RsmBox> {
        self.inner.boxes.values().chain(std::iter::once(&self.start_box))
    }

    pub fn box_for(&self, nonterminal: &str) -> Option<&RsmBox> {
        if nonterminal == self.start_box.nonterminal {
            Some(&self.start_box)
        } else {
            self.inner.boxes.get(nonterminal)
        }
    }
}

fn dfa_to_box(nonterminal: &str, dfa: &BoxDfa, base: u32) -> RsmBox {
    RsmBox {
        nonterminal: nonterminal.to_string(),
        states: (0..dfa.state_count as u32).map(|i| RsmStateId(base + i)).collect(),
        start: RsmStateId(base + dfa.start as u32),
        finals: dfa.finals.iter().map(|&f| RsmStateId(base + f as u32)).collect(),
        transitions: dfa
            .transitions
            .iter()
            .map(|(f, l, t)| (RsmStateId(base + *f as u32), l.clone(), RsmStateId(base + *t as u32)))
            .collect(),
    }
}

/// Compile an EBNF grammar: one minimal-DFA box per nonterminal. Global
/// state ids are assigned box by box in production-declaration order, then
/// in construction order within a box.
pub fn build_rsm(g: &EbnfGrammar) -> Result<Rsm, RsmError> {
    let diags = g.validate();
    if !diags.is_empty() {
        return Err(RsmError::InvalidGrammar(diags));
    }
    let mut boxes = IndexMap::new();
    let mut base = 0u32;
    for (name, rhs) in &g.productions {
        let dfa = regex_to_dfa(rhs);
        let b = dfa_to_box(name, &dfa, base);
        base += dfa.state_count as u32;
        boxes.insert(name.clone(), b);
    }
    let rsm = Rsm {
        boxes,
        start_nonterminal: g.start.clone(),
    };
    rsm.check()?;
    Ok(rsm)
}

/// Compile a BNF grammar: per nonterminal, the box is the determinized and
/// minimized union of its right-hand-side sequences; an ε-production makes
/// the box's start state final.
pub fn build_rsm_from_bnf(g: &BnfGrammar) -> Result<Rsm, RsmError> {
    let mut boxes = IndexMap::new();
    let mut base = 0u32;
    for name in g.nonterminals() {
        let branches: Vec<Regex> = g
            .productions_for(&name)
            .map(|rhs| Regex::concat(rhs.iter().cloned().map(Regex::Sym).collect()))
            .collect();
        let regex = Regex::union(branches);
        let dfa = regex_to_dfa(&regex);
        let b = dfa_to_box(&name, &dfa, base);
        base += dfa.state_count as u32;
        boxes.insert(name, b);
    }
    let rsm = Rsm {
        boxes,
        start_nonterminal: g.start.clone(),
    };
    rsm.check()?;
    Ok(rsm)
}

/// Add the synthetic start box. Fails if the machine already carries an
/// end-marker transition.
pub fn extend_rsm(rsm: Rsm) -> Result<ExtendedRsm, RsmError> {
    if rsm.has_end_marker() {
        return Err(RsmError::AlreadyExtended);
    }
    rsm.check()?;
    let mut synthetic = format!("{}'", rsm.start_nonterminal);
    while rsm.boxes.contains_key(&synthetic) {
        synthetic.push('\'');
    }
    let base = rsm.max_state_id();
    let q0 = RsmStateId(base);
    let q1 = RsmStateId(base + 1);
    let q2 = RsmStateId(base + 2);
    let start_box = RsmBox {
        nonterminal: synthetic,
        states: vec![q0, q1, q2],
        start: q0,
        finals: BTreeSet::from([q2]),
        transitions: vec![
            (q0, TransitionLabel::Call(rsm.start_nonterminal.clone()), q1),
            (q1, TransitionLabel::EndMarker, q2),
        ],
    };
    Ok(ExtendedRsm {
        inner: rsm,
        start_box,
    })
}

/// Hand construction with explicit state ids; nothing is renumbered.
#[derive(Debug, Default)]
pub struct RsmBuilder {
    boxes: Vec<RsmBox>,
}

impl RsmBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_box(
        mut self,
        nonterminal: &str,
        states: &[u32],
        start: u32,
        finals: &[u32],
        transitions: &[(u32, TransitionLabel, u32)],
    ) -> Self {
        let mut trans: Vec<(RsmStateId, TransitionLabel, RsmStateId)> = transitions
            .iter()
            .map(|(f, l, t)| (RsmStateId(*f), l.clone(), RsmStateId(*t)))
            .collect();
        trans.sort();
        self.boxes.push(RsmBox {
            nonterminal: nonterminal.to_string(),
            states: states.iter().map(|&s| RsmStateId(s)).collect(),
            start: RsmStateId(start),
            finals: finals.iter().map(|&f| RsmStateId(f)).collect(),
            transitions: trans,
        });
        self
    }

    /// Build a plain machine whose start box is `start_nonterminal`.
    pub fn build(self, start_nonterminal: &str) -> Result<Rsm, RsmError> {
        let mut boxes = IndexMap::new();
        for b in self.boxes {
            let name = b.nonterminal.clone();
            if boxes.insert(name.clone(), b).is_some() {
                return Err(RsmError::DuplicateBox(name));
            }
        }
        let rsm = Rsm {
            boxes,
            start_nonterminal: start_nonterminal.to_string(),
        };
        rsm.check()?;
        Ok(rsm)
    }

    /// Build an extended machine. Exactly one supplied box must have the
    /// end-marker shape `s -call N-> m -$-> f` with `f` its only final;
    /// that box becomes the synthetic start box and `N` the start
    /// nonterminal.
    pub fn build_extended(self) -> Result<ExtendedRsm, RsmError> {
        let mut start_boxes: Vec<RsmBox> = Vec::new();
        let mut inner: Vec<RsmBox> = Vec::new();
        for b in self.boxes {
            if b.has_end_marker() {
                start_boxes.push(b);
            } else {
                inner.push(b);
            }
        }
        let start_box = match start_boxes.len() {
            1 => start_boxes.pop().unwrap(),
            _ => return Err(RsmError::MissingEndMarker),
        };
        start_box.check()?;
        if start_box.states.len() != 3 || start_box.transitions.len() != 2 {
            return Err(RsmError::MalformedStartBox(
                "expected three states and two transitions".into(),
            ));
        }
        let call = start_box
            .transitions
            .iter()
            .find_map(|(f, l, t)| match l {
                TransitionLabel::Call(n) => Some((*f, n.clone(), *t)),
                _ => None,
            })
            .ok_or_else(|| RsmError::MalformedStartBox("missing call transition".into()))?;
        let end = start_box
            .transitions
            .iter()
            .find_map(|(f, l, t)| matches!(l, TransitionLabel::EndMarker).then_some((*f, *t)))
            .unwrap();
        if call.0 != start_box.start || call.2 != end.0 || !start_box.finals.contains(&end.1)
            || start_box.finals.len() != 1
        {
            return Err(RsmError::MalformedStartBox(
                "expected start -call-> mid -$-> final".into(),
            ));
        }
        let mut boxes = IndexMap::new();
        for b in inner {
            let name = b.nonterminal.clone();
            if boxes.insert(name.clone(), b).is_some() {
                return Err(RsmError::DuplicateBox(name));
            }
        }
        let rsm = Rsm {
            boxes,
            start_nonterminal: call.1,
        };
        rsm.check()?;
        // No state may be shared between the inner machine and the start box.
        let inner_states: BTreeSet<RsmStateId> = rsm
            .boxes
            .values()
            .flat_map(|b| b.states.iter().copied())
            .collect();
        for s in &start_box.states {
            if inner_states.contains(s) {
                return Err(RsmError::DuplicateState(*s));
            }
        }
        Ok(ExtendedRsm {
            inner: rsm,
            start_box,
        })
    }
}

/// DOT rendering: one cluster per box, doubled circles for final states,
/// dashed edges for call transitions.
pub fn rsm_to_dot<'a>(boxes: impl Iterator<Item = &'a RsmBox>) -> String {
    let mut out = String::from("digraph rsm {\n  rankdir=LR;\n  node [shape=circle];\n");
    for (i, b) in boxes.enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{");
        let _ = writeln!(out, "    label=\"{}\";", b.nonterminal);
        let _ = writeln!(out, "    entry_{i} [shape=point, style=invis];");
        let mut states = b.states.clone();
        states.sort();
        for s in &states {
            let shape = if b.finals.contains(s) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(out, "    q{} [shape={shape}, label=\"q{}\"];", s.0, s.0);
        }
        let _ = writeln!(out, "    entry_{i} -> q{};", b.start.0);
        for (from, label, to) in &b.transitions {
            let style = match label {
                TransitionLabel::Call(_) => ", style=dashed",
                _ => "",
            };
            let _ = writeln!(
                out,
                "    q{} -> q{} [label=\"{}\"{}];",
                from.0, to.0, label, style
            );
        }
        let _ = writeln!(out, "  }}");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{ebnf_to_bnf, parse_grammar_text};

    fn t(name: &str) -> TransitionLabel {
        TransitionLabel::Terminal(name.into())
    }

    fn call(name: &str) -> TransitionLabel {
        TransitionLabel::Call(name.into())
    }

    pub(crate) fn fig1_extended() -> ExtendedRsm {
        RsmBuilder::new()
            .add_box(
                "S",
                &[0, 1, 2, 3],
                0,
                &[3],
                &[(0, t("a"), 1), (1, call("S"), 2), (1, t("b"), 3), (2, t("b"), 3)],
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

    #[test]
    fn builder_reproduces_exact_ids() {
        let ext = fig1_extended();
        assert_eq!(ext.init_state(), RsmStateId(4));
        assert_eq!(ext.accept_state(), RsmStateId(5));
        assert_eq!(ext.inner.start_nonterminal, "S");
        let s = &ext.inner.boxes["S"];
        assert_eq!(s.start, RsmStateId(0));
        assert_eq!(s.finals, BTreeSet::from([RsmStateId(3)]));
        assert_eq!(ext.state_count(), 7);
    }

    #[test]
    fn builder_rejects_nondeterminism() {
        let err = RsmBuilder::new()
            .add_box(
                "S",
                &[0, 1, 2],
                0,
                &[2],
                &[(0, t("a"), 1), (0, t("a"), 2)],
            )
            .build("S")
            .unwrap_err();
        assert!(matches!(err, RsmError::Nondeterministic { .. }));
    }

    #[test]
    fn builder_rejects_final_outside_box() {
        let err = RsmBuilder::new()
            .add_box("S", &[0, 1], 0, &[7], &[(0, t("a"), 1)])
            .build("S")
            .unwrap_err();
        assert!(matches!(err, RsmError::StateOutsideBox { .. }));
    }

    #[test]
    fn build_rsm_matches_the_figure_shape() {
        let g = parse_grammar_text("S -> a b | a S b").unwrap();
        let rsm = build_rsm(&g).unwrap();
        assert_eq!(rsm.boxes.len(), 1);
        let built = rsm.boxes["S"].canonical_shape();
        let golden = fig1_extended().inner.boxes["S"].canonical_shape();
        assert_eq!(built, golden);
    }

    #[test]
    fn build_rsm_g2_shape() {
        let g = parse_grammar_text("S -> subClassOf_r S subClassOf | subClassOf").unwrap();
        let rsm = build_rsm(&g).unwrap();
        let golden = RsmBuilder::new()
            .add_box(
                "S",
                &[0, 1, 2, 3],
                0,
                &[3],
                &[
                    (0, t("subClassOf_r"), 1),
                    (1, call("S"), 2),
                    (2, t("subClassOf"), 3),
                    (0, t("subClassOf"), 3),
                ],
            )
            .build("S")
            .unwrap();
        assert_eq!(
            rsm.boxes["S"].canonical_shape(),
            golden.boxes["S"].canonical_shape()
        );
    }

    #[test]
    fn build_rsm_geo_shape() {
        let g = parse_grammar_text(
            "S -> broaderTransitive S broaderTransitive_r | broaderTransitive broaderTransitive_r",
        )
        .unwrap();
        let rsm = build_rsm(&g).unwrap();
        let b = &rsm.boxes["S"];
        assert_eq!(b.states.len(), 4);
        let golden = RsmBuilder::new()
            .add_box(
                "S",
                &[0, 1, 2, 3],
                0,
                &[3],
                &[
                    (0, t("broaderTransitive"), 1),
                    (1, call("S"), 2),
                    (2, t("broaderTransitive_r"), 3),
                    (1, t("broaderTransitive_r"), 3),
                ],
            )
            .build("S")
            .unwrap();
        assert_eq!(b.canonical_shape(), golden.boxes["S"].canonical_shape());
    }

    #[test]
    fn build_rsm_g1_has_six_states() {
        let g = parse_grammar_text(
            "S -> subClassOf_r S subClassOf | type_r S type | subClassOf_r subClassOf | type_r type",
        )
        .unwrap();
        let rsm = build_rsm(&g).unwrap();
        assert_eq!(rsm.boxes["S"].states.len(), 6);
    }

    #[test]
    fn bnf_construction_agrees_on_plain_grammars() {
        let g = parse_grammar_text("S -> a b | a S b").unwrap();
        let ebnf_rsm = build_rsm(&g).unwrap();
        let bnf_rsm = build_rsm_from_bnf(&ebnf_to_bnf(&g)).unwrap();
        assert_eq!(
            ebnf_rsm.boxes["S"].canonical_shape(),
            bnf_rsm.boxes["S"].canonical_shape()
        );
    }

    #[test]
    fn epsilon_production_box_is_one_final_state() {
        let g = parse_grammar_text("S -> eps").unwrap();
        let rsm = build_rsm_from_bnf(&ebnf_to_bnf(&g)).unwrap();
        let b = &rsm.boxes["S"];
        assert_eq!(b.states.len(), 1);
        assert_eq!(b.finals, BTreeSet::from([b.start]));
        assert!(b.transitions.is_empty());
    }

    #[test]
    fn bnf_mode_pays_in_boxes_and_states() {
        let g = parse_grammar_text("S -> (a | b)*").unwrap();
        let ebnf_rsm = build_rsm(&g).unwrap();
        let bnf_rsm = build_rsm_from_bnf(&ebnf_to_bnf(&g)).unwrap();
        assert!(bnf_rsm.boxes.len() > ebnf_rsm.boxes.len());
        assert!(bnf_rsm.state_count() > ebnf_rsm.state_count());
    }

    #[test]
    fn extension_adds_exactly_three_states() {
        let g = parse_grammar_text("S -> a b | a S b").unwrap();
        let rsm = build_rsm(&g).unwrap();
        let inner_count = rsm.state_count();
        let ext = extend_rsm(rsm).unwrap();
        assert_eq!(ext.state_count(), inner_count + 3);
        assert_eq!(ext.synthetic_nonterminal(), "S'");
        assert_eq!(
            ext.start_box.transitions[0].1,
            TransitionLabel::Call("S".into())
        );
    }

    #[test]
    fn extending_twice_fails() {
        let ext = fig1_extended();
        let mut boxes = ext.inner.boxes.clone();
        boxes.insert(ext.start_box.nonterminal.clone(), ext.start_box.clone());
        let merged = Rsm {
            boxes,
            start_nonterminal: "S'".into(),
        };
        assert!(matches!(extend_rsm(merged), Err(RsmError::AlreadyExtended)));
    }

    #[test]
    fn dot_export_is_deterministic_and_clustered() {
        let ext = fig1_extended();
        let dot1 = rsm_to_dot(ext.boxes());
        let dot2 = rsm_to_dot(ext.boxes());
        assert_eq!(dot1, dot2);
        assert!(dot1.contains("subgraph cluster_0"));
        assert!(dot1.contains("subgraph cluster_1"));
        assert!(dot1.contains("doublecircle"));
        assert!(dot1.contains("style=dashed"));
    }

    #[test]
    fn every_box_is_deterministic_for_named_grammars() {
        for text in [
            "S -> a b | a S b",
            "S -> (a | b)*",
            "S -> a* b*",
            "S -> (a | b | c)+",
            "S -> (a | b)+ (c | d)+",
        ] {
            let g = parse_grammar_text(text).unwrap();
            for rsm in [
                build_rsm(&g).unwrap(),
                build_rsm_from_bnf(&ebnf_to_bnf(&g)).unwrap(),
            ] {
                for b in rsm.boxes.values() {
                    let mut keys = BTreeSet::new();
                    for (from, label, _) in &b.transitions {
                        assert!(keys.insert((*from, label.clone())));
                    }
                }
            }
        }
    }
}
