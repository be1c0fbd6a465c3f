//! The GLL-based CFPQ evaluator: a descriptor loop over the extended RSM
//! and the graph, a graph-structured stack with stored pops, and a sparse
//! path index recording how every matched range was built.
//!
//! One engine instance serves one query and is single-threaded; instances
//! share the immutable graph and RSM and may run concurrently.

mod index;

pub use index::{IndexEntry, NtId, PathIndex, Position, Range};

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, LabelId, VertexId};
use crate::grammar::EbnfGrammar;
use crate::rsm::{build_rsm, extend_rsm, ExtendedRsm, RsmStateId, TransitionLabel};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("start vertex {0} out of range (graph has {1} vertices)")]
    StartOutOfRange(u32, usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

/// Order in which pending descriptors are handled. The result is the same
/// for either; the engine exposes both to let tests assert that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueueDiscipline {
    #[default]
    Fifo,
    Lifo,
}

#[derive(Debug, Clone, Default)]
pub struct EngineOptions {
    pub discipline: QueueDiscipline,
}

/// Reference to a node of the graph-structured stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GssNodeId(pub u32);

/// The resumable unit of work: RSM state, graph vertex, stack node, and the
/// range matched so far within the current box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Descriptor {
    pub state: RsmStateId,
    pub vertex: VertexId,
    pub gss: GssNodeId,
    pub range: Range,
}

/// A GSS edge: the return address plus the caller's accumulated range.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GssEdge {
    pub return_state: RsmStateId,
    pub caller_range: Range,
    pub target: GssNodeId,
}

#[derive(Debug)]
struct GssNode {
    key: Position,
    edges: Vec<GssEdge>,
    edge_set: HashSet<GssEdge>,
    /// Completed ranges popped at this node, replayed on new edges.
    pops: Vec<Range>,
    pop_set: HashSet<Range>,
}

/// Box shape data carried into the query result for SPPF reconstruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonterminalShape {
    pub name: String,
    pub start: RsmStateId,
    pub finals: Vec<RsmStateId>,
    pub start_is_final: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Diagnostics {
    /// Distinct descriptors ever created.
    pub descriptor_count: usize,
    /// Descriptors taken off the queue; equals `descriptor_count` when every
    /// descriptor is handled exactly once.
    pub processed_count: usize,
    pub gss_node_count: usize,
    pub gss_edge_count: usize,
}

/// An accepted start/final vertex pair with the root range of its
/// derivations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Accepted {
    pub start: VertexId,
    pub target: VertexId,
    pub root: Range,
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    pub index: PathIndex,
    pub accepted: BTreeSet<Accepted>,
    pub diagnostics: Diagnostics,
    /// Shapes of all boxes, indexed by [`NtId`].
    pub nonterminals: Vec<NonterminalShape>,
}

impl QueryResult {
    pub fn nt_id(&self, name: &str) -> Option<NtId> {
        self.nonterminals
            .iter()
            .position(|n| n.name == name)
            .map(|i| NtId(i as u32))
    }

    pub fn root_for(&self, start: VertexId, target: VertexId) -> Option<Range> {
        self.accepted
            .iter()
            .find(|a| a.start == start && a.target == target)
            .map(|a| a.root.clone())
    }
}

pub struct Engine<'a> {
    graph: &'a Graph,
    accept_state: RsmStateId,
    // Dense per-state tables, indexed by RsmStateId.
    terminal_steps: Vec<Vec<(LabelId, RsmStateId)>>,
    call_steps: Vec<Vec<(NtId, RsmStateId)>>,
    is_final: Vec<bool>,
    owner_box: Vec<NtId>,
    nonterminals: Vec<NonterminalShape>,
    nodes: Vec<GssNode>,
    node_ids: HashMap<Position, GssNodeId>,
    queue: VecDeque<Descriptor>,
    discipline: QueueDiscipline,
    seen: HashSet<Descriptor>,
    processed_count: usize,
    #[cfg(debug_assertions)]
    handled: HashSet<Descriptor>,
    index: PathIndex,
    accepted: BTreeSet<Accepted>,
}

impl<'a> Engine<'a> {
    /// Compile the query against the graph and seed one descriptor
    /// `(q'0, v, (q'0, v), ε)` per start vertex.
    pub fn new(
        rsm: &ExtendedRsm,
        graph: &'a Graph,
        starts: &[VertexId],
        options: EngineOptions,
    ) -> Result<Self, EngineError> {
        for v in starts {
            if v.0 as usize >= graph.vertex_count() {
                return Err(EngineError::StartOutOfRange(v.0, graph.vertex_count()));
            }
        }

        let mut nt_ids: HashMap<&str, NtId> = HashMap::new();
        let mut nonterminals = Vec::new();
        for b in rsm.boxes() {
            let id = NtId(nonterminals.len() as u32);
            nt_ids.insert(b.nonterminal.as_str(), id);
            nonterminals.push(NonterminalShape {
                name: b.nonterminal.clone(),
                start: b.start,
                finals: b.finals.iter().copied().collect(),
                start_is_final: b.finals.contains(&b.start),
            });
        }

        let state_count = rsm
            .boxes()
            .flat_map(|b| b.states.iter())
            .map(|s| s.0 as usize + 1)
            .max()
            .unwrap_or(0);
        let mut terminal_steps = vec![Vec::new(); state_count];
        let mut call_steps = vec![Vec::new(); state_count];
        let mut is_final = vec![false; state_count];
        let mut owner_box = vec![NtId(u32::MAX); state_count];
        for b in rsm.boxes() {
            let nt = nt_ids[b.nonterminal.as_str()];
            for s in &b.states {
                owner_box[s.0 as usize] = nt;
            }
            for f in &b.finals {
                is_final[f.0 as usize] = true;
            }
            for (from, label, to) in &b.transitions {
                match label {
                    TransitionLabel::Terminal(name) => {
                        // Terminals absent from the graph can never match.
                        if let Some(l) = graph.label_id(name) {
                            terminal_steps[from.0 as usize].push((l, *to));
                        }
                    }
                    TransitionLabel::EndMarker => {
                        // Never consumed against graph edges; acceptance is
                        // checked at the state before it.
                    }
                    TransitionLabel::Call(callee) => {
                        let nt = *nt_ids.get(callee.as_str()).ok_or_else(|| {
                            EngineError::InvalidQuery(format!("call of unknown box `{callee}`"))
                        })?;
                        call_steps[from.0 as usize].push((nt, *to));
                    }
                }
            }
        }

        let mut engine = Engine {
            graph,
            accept_state: rsm.accept_state(),
            terminal_steps,
            call_steps,
            is_final,
            owner_box,
            nonterminals,
            nodes: Vec::new(),
            node_ids: HashMap::new(),
            queue: VecDeque::new(),
            discipline: options.discipline,
            seen: HashSet::new(),
            processed_count: 0,
            #[cfg(debug_assertions)]
            handled: HashSet::new(),
            index: PathIndex::default(),
            accepted: BTreeSet::new(),
        };

        let init = rsm.init_state();
        let starts: BTreeSet<VertexId> = starts.iter().copied().collect();
        for v in starts {
            let node = engine.node(Position { state: init, vertex: v }).0;
            engine.emit(Descriptor {
                state: init,
                vertex: v,
                gss: node,
                range: Range::Empty,
            });
        }
        Ok(engine)
    }

    fn node(&mut self, key: Position) -> (GssNodeId, bool) {
        if let Some(&id) = self.node_ids.get(&key) {
            return (id, false);
        }
        let id = GssNodeId(self.nodes.len() as u32);
        self.nodes.push(GssNode {
            key,
            edges: Vec::new(),
            edge_set: HashSet::new(),
            pops: Vec::new(),
            pop_set: HashSet::new(),
        });
        self.node_ids.insert(key, id);
        (id, true)
    }

    /// Record acceptance when a descriptor reaches `q'1`, then queue it if
    /// it was never seen before. Returns whether it was enqueued.
    fn emit(&mut self, d: Descriptor) -> bool {
        if d.state == self.accept_state {
            self.accepted.insert(Accepted {
                start: self.nodes[d.gss.0 as usize].key.vertex,
                target: d.vertex,
                root: d.range.clone(),
            });
        }
        self.add_descriptor(d)
    }

    /// True and enqueued iff the descriptor has not been created before.
    pub fn add_descriptor(&mut self, d: Descriptor) -> bool {
        if self.seen.insert(d.clone()) {
            self.queue.push_back(d);
            true
        } else {
            false
        }
    }

    /// Pop the next descriptor to handle, per the queue discipline.
    pub fn next_descriptor(&mut self) -> Option<Descriptor> {
        let d = match self.discipline {
            QueueDiscipline::Fifo => self.queue.pop_front(),
            QueueDiscipline::Lifo => self.queue.pop_back(),
        }?;
        self.processed_count += 1;
        #[cfg(debug_assertions)]
        {
            assert!(
                self.handled.insert(d.clone()),
                "descriptor handled twice: {d:?}"
            );
        }
        Some(d)
    }

    /// Terminal transitions: move along matching graph edges, extending the
    /// accumulated range to the right.
    pub fn step_terminal(&mut self, d: &Descriptor) -> Vec<Descriptor> {
        let cur = Position {
            state: d.state,
            vertex: d.vertex,
        };
        let mut out = Vec::new();
        let steps = self.terminal_steps[d.state.0 as usize].clone();
        for (label, to_state) in steps {
            for &target in self.graph.outgoing(d.vertex, label) {
                let to = Position {
                    state: to_state,
                    vertex: target,
                };
                self.index.add(cur, to, IndexEntry::Terminal(label));
                let (range, split) = d.range.extended(cur, to);
                if let Some(point) = split {
                    self.index
                        .add(range.from().unwrap(), to, IndexEntry::Intermediate(point));
                }
                let nd = Descriptor {
                    state: to_state,
                    vertex: target,
                    gss: d.gss,
                    range,
                };
                self.emit(nd.clone());
                out.push(nd);
            }
        }
        out
    }

    /// Call transitions: push a GSS edge carrying the return address and the
    /// caller's range, descend into the callee, and replay stored pops
    /// through the new edge.
    pub fn step_nonterminal(&mut self, d: &Descriptor) -> Vec<Descriptor> {
        let mut out = Vec::new();
        let steps = self.call_steps[d.state.0 as usize].clone();
        for (nt, return_state) in steps {
            let callee_start = self.nonterminals[nt.0 as usize].start;
            let key = Position {
                state: callee_start,
                vertex: d.vertex,
            };
            let (node, _) = self.node(key);
            let edge = GssEdge {
                return_state,
                caller_range: d.range.clone(),
                target: d.gss,
            };
            let node_data = &mut self.nodes[node.0 as usize];
            let edge_is_new = node_data.edge_set.insert(edge.clone());
            if edge_is_new {
                node_data.edges.push(edge.clone());
            }
            let nd = Descriptor {
                state: callee_start,
                vertex: d.vertex,
                gss: node,
                range: Range::Empty,
            };
            self.emit(nd.clone());
            out.push(nd);
            if edge_is_new {
                let pops = self.nodes[node.0 as usize].pops.clone();
                for pop in pops {
                    out.push(self.contract(&pop, &edge, key, nt));
                }
            }
        }
        out
    }

    /// Final states: store the pop and return through every outgoing GSS
    /// edge, writing the recognized nonterminal and the combined range.
    pub fn step_final(&mut self, d: &Descriptor) -> Vec<Descriptor> {
        if !self.is_final[d.state.0 as usize] {
            return Vec::new();
        }
        let nt = self.owner_box[d.state.0 as usize];
        let node = d.gss;
        let key = self.nodes[node.0 as usize].key;
        let pop = d.range.clone();
        {
            let node_data = &mut self.nodes[node.0 as usize];
            if node_data.pop_set.insert(pop.clone()) {
                node_data.pops.push(pop.clone());
            }
        }
        let edges = self.nodes[node.0 as usize].edges.clone();
        edges
            .iter()
            .map(|edge| self.contract(&pop, edge, key, nt))
            .collect()
    }

    /// Complete nonterminal `nt` over the popped body range through one GSS
    /// edge: write the nonterminal (and ε for an empty body) into the index,
    /// combine with the caller's range, and resume at the return address.
    fn contract(&mut self, pop: &Range, edge: &GssEdge, node_key: Position, nt: NtId) -> Descriptor {
        let (body_empty, end_vertex) = match pop {
            Range::Empty => (true, node_key.vertex),
            Range::Span { to, .. } => (false, to.vertex),
        };
        let ret = Position {
            state: edge.return_state,
            vertex: end_vertex,
        };
        // With an empty caller range the caller still sits at its own box
        // start, which is exactly the key of the edge's target node.
        let nt_start = match &edge.caller_range {
            Range::Empty => self.nodes[edge.target.0 as usize].key,
            Range::Span { to, .. } => *to,
        };
        self.index.add(nt_start, ret, IndexEntry::Nonterminal(nt));
        if body_empty {
            self.index.add(nt_start, ret, IndexEntry::Epsilon);
        }
        let (range, split) = edge.caller_range.extended(nt_start, ret);
        if let Some(point) = split {
            self.index
                .add(range.from().unwrap(), ret, IndexEntry::Intermediate(point));
        }
        let nd = Descriptor {
            state: edge.return_state,
            vertex: end_vertex,
            gss: edge.target,
            range,
        };
        self.emit(nd.clone());
        nd
    }

    /// Handle one descriptor through all three transition cases.
    pub fn process(&mut self, d: &Descriptor) {
        self.step_terminal(d);
        self.step_nonterminal(d);
        self.step_final(d);
    }

    /// Drain the queue and package the result.
    pub fn run(mut self) -> QueryResult {
        while let Some(d) = self.next_descriptor() {
            self.process(&d);
        }
        let diagnostics = Diagnostics {
            descriptor_count: self.seen.len(),
            processed_count: self.processed_count,
            gss_node_count: self.nodes.len(),
            gss_edge_count: self.nodes.iter().map(|n| n.edges.len()).sum(),
        };
        QueryResult {
            index: self.index,
            accepted: self.accepted,
            diagnostics,
            nonterminals: self.nonterminals,
        }
    }

    pub fn queued(&self) -> usize {
        self.queue.len()
    }

    pub fn gss_node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn gss_node(&self, key: Position) -> Option<GssNodeId> {
        self.node_ids.get(&key).copied()
    }

    pub fn gss_edges(&self, id: GssNodeId) -> &[GssEdge] {
        &self.nodes[id.0 as usize].edges
    }

    pub fn stored_pops(&self, id: GssNodeId) -> &[Range] {
        &self.nodes[id.0 as usize].pops
    }

    pub fn index(&self) -> &PathIndex {
        &self.index
    }

    pub fn is_seen(&self, d: &Descriptor) -> bool {
        self.seen.contains(d)
    }
}

/// Evaluate the query for the given start vertices with default options.
pub fn run(
    rsm: &ExtendedRsm,
    graph: &Graph,
    starts: &[VertexId],
) -> Result<QueryResult, EngineError> {
    run_with_options(rsm, graph, starts, EngineOptions::default())
}

pub fn run_with_options(
    rsm: &ExtendedRsm,
    graph: &Graph,
    starts: &[VertexId],
    options: EngineOptions,
) -> Result<QueryResult, EngineError> {
    Ok(Engine::new(rsm, graph, starts, options)?.run())
}

/// Evaluate a regular path query through the same engine, as the grammar
/// `S -> regex`.
pub fn run_rpq(
    regex: &crate::grammar::Regex,
    graph: &Graph,
    starts: &[VertexId],
) -> Result<QueryResult, EngineError> {
    let mut g = EbnfGrammar::new("S");
    g.add_production("S", regex.clone());
    let diags = g.validate();
    if !diags.is_empty() {
        return Err(EngineError::InvalidQuery(format!("{diags:?}")));
    }
    let rsm = build_rsm(&g).map_err(|e| EngineError::InvalidQuery(e.to_string()))?;
    let ext = extend_rsm(rsm).map_err(|e| EngineError::InvalidQuery(e.to_string()))?;
    run(&ext, graph, starts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;
    use crate::testutil::{fig1_extended, fig2_graph};

    fn pos(state: u32, vertex: u32) -> Position {
        Position {
            state: RsmStateId(state),
            vertex: VertexId(vertex),
        }
    }

    fn span(a: Position, b: Position) -> Range {
        Range::span(a, b)
    }

    #[test]
    fn initialize_seeds_one_descriptor_per_start() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let engine = Engine::new(&ext, &g, &[VertexId(0)], EngineOptions::default()).unwrap();
        assert_eq!(engine.queued(), 1);
        assert_eq!(engine.gss_node_count(), 1);
        let node = engine.gss_node(pos(4, 0)).unwrap();
        assert!(engine.is_seen(&Descriptor {
            state: RsmStateId(4),
            vertex: VertexId(0),
            gss: node,
            range: Range::Empty,
        }));
        assert!(engine.index().is_empty());
    }

    #[test]
    fn initialize_rejects_out_of_range_start() {
        let ext = fig1_extended();
        let g = fig2_graph();
        match Engine::new(&ext, &g, &[VertexId(7)], EngineOptions::default()) {
            Err(EngineError::StartOutOfRange(7, 2)) => {}
            Err(other) => panic!("unexpected error {other:?}"),
            Ok(_) => panic!("expected an error"),
        }
    }

    #[test]
    fn empty_start_set_yields_empty_result() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let result = run(&ext, &g, &[]).unwrap();
        assert!(result.accepted.is_empty());
        assert!(result.index.is_empty());
        assert_eq!(result.diagnostics.descriptor_count, 0);
    }

    #[test]
    fn two_starts_seed_two_nodes() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let engine =
            Engine::new(&ext, &g, &[VertexId(0), VertexId(1)], EngineOptions::default()).unwrap();
        assert_eq!(engine.queued(), 2);
        assert_eq!(engine.gss_node_count(), 2);
    }

    /// The full worked run, row by row: states q0..q3 form the box for S,
    /// q4..q6 the start box; the graph is the two-vertex loop/cycle.
    #[test]
    fn worked_example_descriptor_trace() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let a = g.label_id("a").unwrap();
        let b = g.label_id("b").unwrap();
        let mut engine = Engine::new(&ext, &g, &[VertexId(0)], EngineOptions::default()).unwrap();
        let s_id = NtId(0);

        // Row 1/2: the initial descriptor calls into the box for S.
        let d1 = engine.next_descriptor().unwrap();
        assert_eq!(d1.state, RsmStateId(4));
        assert!(engine.step_terminal(&d1).is_empty());
        let created = engine.step_nonterminal(&d1);
        let n_q0v0 = engine.gss_node(pos(0, 0)).unwrap();
        let n_q4v0 = engine.gss_node(pos(4, 0)).unwrap();
        assert_eq!(
            created,
            vec![Descriptor {
                state: RsmStateId(0),
                vertex: VertexId(0),
                gss: n_q0v0,
                range: Range::Empty,
            }]
        );
        assert_eq!(
            engine.gss_edges(n_q0v0),
            &[GssEdge {
                return_state: RsmStateId(5),
                caller_range: Range::Empty,
                target: n_q4v0,
            }]
        );
        assert!(engine.step_final(&d1).is_empty());

        // Row 3: terminal a over the loop edge.
        let d2 = engine.next_descriptor().unwrap();
        assert_eq!(d2.state, RsmStateId(0));
        let created = engine.step_terminal(&d2);
        assert_eq!(
            created,
            vec![Descriptor {
                state: RsmStateId(1),
                vertex: VertexId(0),
                gss: n_q0v0,
                range: span(pos(0, 0), pos(1, 0)),
            }]
        );
        assert_eq!(
            engine.index().get(pos(0, 0), pos(1, 0)),
            Some(&BTreeSet::from([IndexEntry::Terminal(a)]))
        );
        engine.step_nonterminal(&d2);
        engine.step_final(&d2);

        // Row 4: b-step to v1 plus the re-entrant call (a duplicate).
        let d3 = engine.next_descriptor().unwrap();
        assert_eq!(d3.state, RsmStateId(1));
        let created = engine.step_terminal(&d3);
        assert_eq!(
            created,
            vec![Descriptor {
                state: RsmStateId(3),
                vertex: VertexId(1),
                gss: n_q0v0,
                range: span(pos(0, 0), pos(3, 1)),
            }]
        );
        assert_eq!(
            engine.index().get(pos(1, 0), pos(3, 1)),
            Some(&BTreeSet::from([IndexEntry::Terminal(b)]))
        );
        assert_eq!(
            engine.index().get(pos(0, 0), pos(3, 1)),
            Some(&BTreeSet::from([IndexEntry::Intermediate(pos(1, 0))]))
        );
        let queued_before = engine.queued();
        let created = engine.step_nonterminal(&d3);
        // The callee descriptor is re-created but crossed out as a duplicate.
        assert_eq!(created.len(), 1);
        assert_eq!(engine.queued(), queued_before);
        // The self-loop call edge carries the caller's progress.
        assert_eq!(engine.gss_edges(n_q0v0).len(), 2);
        assert!(engine.gss_edges(n_q0v0).contains(&GssEdge {
            return_state: RsmStateId(2),
            caller_range: span(pos(0, 0), pos(1, 0)),
            target: n_q0v0,
        }));
        engine.step_final(&d3);

        // Row 5: q3 is final; pop through both edges.
        let d4 = engine.next_descriptor().unwrap();
        assert_eq!(d4.state, RsmStateId(3));
        assert_eq!(d4.vertex, VertexId(1));
        engine.step_terminal(&d4);
        engine.step_nonterminal(&d4);
        let created = engine.step_final(&d4);
        let as_set: HashSet<Descriptor> = created.into_iter().collect();
        assert_eq!(
            as_set,
            HashSet::from([
                Descriptor {
                    state: RsmStateId(5),
                    vertex: VertexId(1),
                    gss: n_q4v0,
                    range: span(pos(4, 0), pos(5, 1)),
                },
                Descriptor {
                    state: RsmStateId(2),
                    vertex: VertexId(1),
                    gss: n_q0v0,
                    range: span(pos(0, 0), pos(2, 1)),
                },
            ])
        );
        assert_eq!(engine.stored_pops(n_q0v0), &[span(pos(0, 0), pos(3, 1))]);
        assert_eq!(
            engine.index().get(pos(4, 0), pos(5, 1)),
            Some(&BTreeSet::from([IndexEntry::Nonterminal(s_id)]))
        );
        assert_eq!(
            engine.index().get(pos(1, 0), pos(2, 1)),
            Some(&BTreeSet::from([IndexEntry::Nonterminal(s_id)]))
        );
        assert_eq!(
            engine.index().get(pos(0, 0), pos(2, 1)),
            Some(&BTreeSet::from([IndexEntry::Intermediate(pos(1, 0))]))
        );
    }

    #[test]
    fn worked_example_accepts_both_pairs() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let result = run(&ext, &g, &[VertexId(0)]).unwrap();
        let pairs: BTreeSet<(VertexId, VertexId)> = result
            .accepted
            .iter()
            .map(|a| (a.start, a.target))
            .collect();
        assert_eq!(
            pairs,
            BTreeSet::from([
                (VertexId(0), VertexId(0)),
                (VertexId(0), VertexId(1)),
            ])
        );
        // Every root range ends at the accept state q5.
        for a in &result.accepted {
            match &a.root {
                Range::Span { to, .. } => assert_eq!(to.state, RsmStateId(5)),
                Range::Empty => panic!("accepted with empty root"),
            }
        }
        assert_eq!(
            result.diagnostics.descriptor_count,
            result.diagnostics.processed_count
        );
    }

    #[test]
    fn epsilon_grammar_accepts_the_start_vertex() {
        let g = load_edge_list("x a y", &crate::graph::LoadOptions::default()).unwrap();
        let grammar = crate::grammar::parse_grammar_text("S -> eps").unwrap();
        let ext = extend_rsm(build_rsm(&grammar).unwrap()).unwrap();
        let result = run(&ext, &g, &[VertexId(0)]).unwrap();
        let pairs: Vec<(VertexId, VertexId)> = result
            .accepted
            .iter()
            .map(|a| (a.start, a.target))
            .collect();
        assert_eq!(pairs, vec![(VertexId(0), VertexId(0))]);
        // The completed empty body leaves both the nonterminal and ε in the
        // root cell.
        let root = result.root_for(VertexId(0), VertexId(0)).unwrap();
        let (from, to) = (root.from().unwrap(), root.to().unwrap());
        let cell = result.index.get(from, to).unwrap();
        assert!(cell.contains(&IndexEntry::Epsilon));
        assert!(cell.iter().any(|e| matches!(e, IndexEntry::Nonterminal(_))));
    }

    #[test]
    fn fifo_and_lifo_agree_on_pairs_and_index() {
        let ext = fig1_extended();
        let g = fig2_graph();
        let fifo = run_with_options(
            &ext,
            &g,
            &[VertexId(0), VertexId(1)],
            EngineOptions {
                discipline: QueueDiscipline::Fifo,
            },
        )
        .unwrap();
        let lifo = run_with_options(
            &ext,
            &g,
            &[VertexId(0), VertexId(1)],
            EngineOptions {
                discipline: QueueDiscipline::Lifo,
            },
        )
        .unwrap();
        assert_eq!(fifo.accepted, lifo.accepted);
        assert_eq!(fifo.index.sorted_cells(), lifo.index.sorted_cells());
    }

    #[test]
    fn rpq_runs_through_the_same_engine() {
        let g = fig2_graph();
        let reg1 = crate::grammar::Regex::star(crate::grammar::Regex::union(vec![
            crate::grammar::Regex::terminal("a"),
            crate::grammar::Regex::terminal("b"),
        ]));
        let result = run_rpq(&reg1, &g, &[VertexId(0)]).unwrap();
        let pairs: BTreeSet<(VertexId, VertexId)> = result
            .accepted
            .iter()
            .map(|a| (a.start, a.target))
            .collect();
        assert_eq!(
            pairs,
            BTreeSet::from([
                (VertexId(0), VertexId(0)),
                (VertexId(0), VertexId(1)),
            ])
        );
    }
}
