//! Brute-force reference implementations used by tests and the acceptance
//! suite. Nothing here shares code with the query engine: membership is
//! decided by CYK over the CNF grammar, regular queries by a product of an
//! NFA with the graph, and pairs by exhaustive bounded enumeration.
//!
//! These oracles favor obviousness over speed and are only meant for small
//! instances (a handful of vertices, length bounds around ten).

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use crate::grammar::{CnfGrammar, Regex, Symbol};
use crate::graph::{Graph, LabelId, Path, VertexId};

/// Pairs found by exhaustive search, with a shortest witness per pair.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub pairs: BTreeSet<(VertexId, VertexId)>,
    pub witness: BTreeMap<(VertexId, VertexId), Path>,
    /// The path-length bound the search used.
    pub bound: usize,
}

/// CYK membership over label names.
pub fn cyk_membership_names(word: &[&str], g: &CnfGrammar) -> bool {
    let n = word.len();
    if n == 0 {
        return g.start_nullable;
    }
    if g.terminal.is_empty() {
        return false;
    }
    let nt = g.nonterminal_count();
    let mut table = vec![false; n * n * nt];
    let idx = |i: usize, len: usize, a: usize| ((len - 1) * n + i) * nt + a;
    for (a, t) in &g.terminal {
        for (i, w) in word.iter().enumerate() {
            if w == t {
                table[idx(i, 1, *a)] = true;
            }
        }
    }
    for len in 2..=n {
        for i in 0..=(n - len) {
            for split in 1..len {
                for &(a, b, c) in &g.binary {
                    if table[idx(i, split, b)] && table[idx(i + split, len - split, c)] {
                        table[idx(i, len, a)] = true;
                    }
                }
            }
        }
    }
    table[idx(0, n, g.start)]
}

/// CYK membership for a word of graph labels.
pub fn cyk_membership(word: &[LabelId], graph: &Graph, g: &CnfGrammar) -> bool {
    let names: Vec<&str> = word.iter().map(|l| graph.label_name(*l)).collect();
    cyk_membership_names(&names, g)
}

/// All paths from `source` with at most `max_len` edges, shortest first,
/// starting with the zero-length path. Lazy: the underlying breadth-first
/// frontier grows only as the iterator is drained.
pub fn enumerate_paths_bounded(
    graph: &Graph,
    source: VertexId,
    max_len: usize,
) -> impl Iterator<Item = Path> + '_ {
    let mut queue = VecDeque::new();
    queue.push_back(Path::empty(source));
    BoundedPaths {
        graph,
        queue,
        max_len,
    }
}

struct BoundedPaths<'a> {
    graph: &'a Graph,
    queue: VecDeque<Path>,
    max_len: usize,
}

impl Iterator for BoundedPaths<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        let path = self.queue.pop_front()?;
        if path.len() < self.max_len {
            let end = path.end();
            for (label, targets) in self.graph.outgoing_all(end) {
                for &t in targets {
                    let mut longer = path.clone();
                    longer.steps.push((*label, t));
                    self.queue.push_back(longer);
                }
            }
        }
        Some(path)
    }
}

/// Multiple-source CFPQ by exhaustive enumeration: every word of length at
/// most `max_len` that is realizable from some start is tested with CYK,
/// and reachability per word is tracked as vertex sets, so dense graphs do
/// not force one traversal per path.
pub fn cfpq_oracle(
    graph: &Graph,
    grammar: &CnfGrammar,
    starts: &[VertexId],
    max_len: usize,
) -> OracleReport {
    let starts: Vec<VertexId> = {
        let set: BTreeSet<VertexId> = starts.iter().copied().collect();
        set.into_iter().collect()
    };
    let mut pairs = BTreeSet::new();
    let mut witness: BTreeMap<(VertexId, VertexId), Path> = BTreeMap::new();

    // Breadth-first over realizable words; each frontier item carries the
    // set of vertices reachable from each start by that word.
    let mut queue: VecDeque<(Vec<LabelId>, Vec<BTreeSet<VertexId>>)> = VecDeque::new();
    let init: Vec<BTreeSet<VertexId>> = starts.iter().map(|&s| BTreeSet::from([s])).collect();
    queue.push_back((Vec::new(), init));
    while let Some((word, reach)) = queue.pop_front() {
        if cyk_membership(&word, graph, grammar) {
            for (i, set) in reach.iter().enumerate() {
                for &v in set {
                    let pair = (starts[i], v);
                    if pairs.insert(pair) {
                        witness.insert(pair, reconstruct_path(graph, starts[i], &word, v));
                    }
                }
            }
        }
        if word.len() == max_len {
            continue;
        }
        for l in 0..graph.label_count() as u32 {
            let label = LabelId(l);
            let next: Vec<BTreeSet<VertexId>> = reach
                .iter()
                .map(|set| {
                    set.iter()
                        .flat_map(|&v| graph.outgoing(v, label).iter().copied())
                        .collect()
                })
                .collect();
            if next.iter().all(|s| s.is_empty()) {
                continue;
            }
            let mut w = word.clone();
            w.push(label);
            queue.push_back((w, next));
        }
    }
    OracleReport {
        pairs,
        witness,
        bound: max_len,
    }
}

/// Rebuild one concrete path realizing `word` from `source` to `target`,
/// choosing the smallest vertex at each backward step.
fn reconstruct_path(graph: &Graph, source: VertexId, word: &[LabelId], target: VertexId) -> Path {
    let mut layers: Vec<BTreeSet<VertexId>> = vec![BTreeSet::from([source])];
    for &l in word {
        let next: BTreeSet<VertexId> = layers
            .last()
            .unwrap()
            .iter()
            .flat_map(|&v| graph.outgoing(v, l).iter().copied())
            .collect();
        layers.push(next);
    }
    debug_assert!(layers.last().unwrap().contains(&target));
    let mut vertices = vec![target];
    for k in (0..word.len()).rev() {
        let cur = *vertices.last().unwrap();
        let prev = layers[k]
            .iter()
            .copied()
            .find(|&u| graph.outgoing(u, word[k]).contains(&cur))
            .expect("layered reachability is consistent");
        vertices.push(prev);
    }
    vertices.reverse();
    Path {
        start: source,
        steps: word
            .iter()
            .zip(vertices.iter().skip(1))
            .map(|(&l, &v)| (l, v))
            .collect(),
    }
}

struct Nfa {
    eps: Vec<Vec<usize>>,
    steps: Vec<Vec<(String, usize)>>,
    start: usize,
    accept: usize,
}

impl Nfa {
    fn fresh(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.steps.push(Vec::new());
        self.eps.len() - 1
    }

    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Epsilon => {
                let s = self.fresh();
                let t = self.fresh();
                self.eps[s].push(t);
                (s, t)
            }
            Regex::Sym(Symbol::Terminal(name)) => {
                let s = self.fresh();
                let t = self.fresh();
                self.steps[s].push((name.clone(), t));
                (s, t)
            }
            Regex::Sym(Symbol::Nonterminal(n)) => {
                panic!("regular oracle got a nonterminal reference `{n}`")
            }
            Regex::Concat(cs) => {
                let mut first = None;
                let mut prev: Option<usize> = None;
                for c in cs {
                    let (s, t) = self.build(c);
                    match prev {
                        Some(p) => self.eps[p].push(s),
                        None => first = Some(s),
                    }
                    prev = Some(t);
                }
                (first.unwrap(), prev.unwrap())
            }
            Regex::Union(cs) => {
                let s = self.fresh();
                let t = self.fresh();
                for c in cs {
                    let (cs_, ct) = self.build(c);
                    self.eps[s].push(cs_);
                    self.eps[ct].push(t);
                }
                (s, t)
            }
            Regex::Star(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.eps[s].push(cs_);
                self.eps[s].push(t);
                self.eps[ct].push(cs_);
                self.eps[ct].push(t);
                (s, t)
            }
            Regex::Plus(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.eps[s].push(cs_);
                self.eps[ct].push(cs_);
                self.eps[ct].push(t);
                (s, t)
            }
            Regex::Optional(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.eps[s].push(cs_);
                self.eps[s].push(t);
                self.eps[ct].push(t);
                (s, t)
            }
        }
    }
}

/// Complete RPQ decision procedure: breadth-first search over the product
/// of the regex's NFA with the graph. No length bound is needed.
pub fn rpq_oracle(
    graph: &Graph,
    regex: &Regex,
    starts: &[VertexId],
) -> BTreeSet<(VertexId, VertexId)> {
    let mut nfa = Nfa {
        eps: Vec::new(),
        steps: Vec::new(),
        start: 0,
        accept: 0,
    };
    let (s, t) = nfa.build(regex);
    nfa.start = s;
    nfa.accept = t;

    let mut pairs = BTreeSet::new();
    for &source in starts {
        let mut visited: HashSet<(usize, VertexId)> = HashSet::new();
        let mut queue = VecDeque::from([(nfa.start, source)]);
        visited.insert((nfa.start, source));
        while let Some((state, vertex)) = queue.pop_front() {
            if state == nfa.accept {
                pairs.insert((source, vertex));
            }
            for &next in &nfa.eps[state] {
                if visited.insert((next, vertex)) {
                    queue.push_back((next, vertex));
                }
            }
            for (name, next) in &nfa.steps[state] {
                if let Some(label) = graph.label_id(name) {
                    for &target in graph.outgoing(vertex, label) {
                        if visited.insert((*next, target)) {
                            queue.push_back((*next, target));
                        }
                    }
                }
            }
        }
    }
    pairs
}
