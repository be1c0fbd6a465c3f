//! Regex to minimal DFA over a mixed alphabet of terminals and
//! nonterminal-call letters: Thompson construction, subset construction,
//! then Hopcroft minimization with canonical breadth-first numbering.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::TransitionLabel;
use crate::grammar::{Regex, Symbol};

/// A deterministic ε-free automaton with local state ids `0..state_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDfa {
    pub state_count: usize,
    pub start: usize,
    pub finals: BTreeSet<usize>,
    /// Sorted by `(from, label)`; determinism means that key is unique.
    pub transitions: Vec<(usize, TransitionLabel, usize)>,
}

struct Nfa {
    state_count: usize,
    edges: Vec<(usize, Option<TransitionLabel>, usize)>,
}

impl Nfa {
    fn fresh(&mut self) -> usize {
        self.state_count += 1;
        self.state_count - 1
    }

    /// Thompson fragment `(entry, exit)` for `r`.
    fn build(&mut self, r: &Regex) -> (usize, usize) {
        match r {
            Regex::Epsilon => {
                let s = self.fresh();
                let t = self.fresh();
                self.edges.push((s, None, t));
                (s, t)
            }
            Regex::Sym(sym) => {
                let s = self.fresh();
                let t = self.fresh();
                let label = match sym {
                    Symbol::Terminal(name) => TransitionLabel::Terminal(name.clone()),
                    Symbol::Nonterminal(name) => TransitionLabel::Call(name.clone()),
                };
                self.edges.push((s, Some(label), t));
                (s, t)
            }
            Regex::Concat(cs) => {
                let mut entry = None;
                let mut prev_exit = None;
                for c in cs {
                    let (s, t) = self.build(c);
                    if let Some(p) = prev_exit {
                        self.edges.push((p, None, s));
                    } else {
                        entry = Some(s);
                    }
                    prev_exit = Some(t);
                }
                (entry.unwrap(), prev_exit.unwrap())
            }
            Regex::Union(cs) => {
                let s = self.fresh();
                let t = self.fresh();
                for c in cs {
                    let (cs_, ct) = self.build(c);
                    self.edges.push((s, None, cs_));
                    self.edges.push((ct, None, t));
                }
                (s, t)
            }
            Regex::Star(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.edges.push((s, None, t));
                self.edges.push((s, None, cs_));
                self.edges.push((ct, None, t));
                self.edges.push((ct, None, cs_));
                (s, t)
            }
            Regex::Plus(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.edges.push((s, None, cs_));
                self.edges.push((ct, None, t));
                self.edges.push((ct, None, cs_));
                (s, t)
            }
            Regex::Optional(c) => {
                let s = self.fresh();
                let t = self.fresh();
                let (cs_, ct) = self.build(c);
                self.edges.push((s, None, t));
                self.edges.push((s, None, cs_));
                self.edges.push((ct, None, t));
                (s, t)
            }
        }
    }
}

fn epsilon_closure(nfa: &Nfa, set: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut closure = set.clone();
    let mut queue: VecDeque<usize> = set.iter().copied().collect();
    while let Some(s) = queue.pop_front() {
        for &(from, ref label, to) in &nfa.edges {
            if from == s && label.is_none() && closure.insert(to) {
                queue.push_back(to);
            }
        }
    }
    closure
}

fn determinize(nfa: &Nfa, start: usize, accept: usize) -> BoxDfa {
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    let init = epsilon_closure(nfa, &BTreeSet::from([start]));
    ids.insert(init.clone(), 0);
    sets.push(init);
    let mut transitions = Vec::new();
    let mut finals = BTreeSet::new();
    let mut i = 0;
    while i < sets.len() {
        let current = sets[i].clone();
        if current.contains(&accept) {
            finals.insert(i);
        }
        let mut by_label: BTreeMap<TransitionLabel, BTreeSet<usize>> = BTreeMap::new();
        for &(from, ref label, to) in &nfa.edges {
            if let Some(l) = label {
                if current.contains(&from) {
                    by_label.entry(l.clone()).or_default().insert(to);
                }
            }
        }
        for (label, targets) in by_label {
            let closed = epsilon_closure(nfa, &targets);
            let next = ids.len();
            let id = *ids.entry(closed.clone()).or_insert_with(|| {
                sets.push(closed);
                next
            });
            transitions.push((i, label, id));
        }
        i += 1;
    }
    BoxDfa {
        state_count: sets.len(),
        start: 0,
        finals,
        transitions,
    }
}

/// Keep only states that lie on some path from the start to a final state.
fn trim(dfa: &BoxDfa) -> BoxDfa {
    let mut co = HashSet::new();
    let mut queue: VecDeque<usize> = dfa.finals.iter().copied().collect();
    co.extend(dfa.finals.iter().copied());
    while let Some(s) = queue.pop_front() {
        for &(from, _, to) in &dfa.transitions {
            if to == s && co.insert(from) {
                queue.push_back(from);
            }
        }
    }
    debug_assert!(co.contains(&dfa.start), "regex language is never empty");
    let mut remap = HashMap::new();
    let mut count = 0;
    for s in 0..dfa.state_count {
        if co.contains(&s) {
            remap.insert(s, count);
            count += 1;
        }
    }
    BoxDfa {
        state_count: count,
        start: remap[&dfa.start],
        finals: dfa.finals.iter().map(|f| remap[f]).collect(),
        transitions: dfa
            .transitions
            .iter()
            .filter(|(f, _, t)| co.contains(f) && co.contains(t))
            .map(|(f, l, t)| (remap[f], l.clone(), remap[t]))
            .collect(),
    }
}

/// Hopcroft's partition refinement. The DFA is completed with an implicit
/// sink whose class is dropped afterwards.
fn minimize(dfa: &BoxDfa) -> BoxDfa {
    let alphabet: BTreeSet<TransitionLabel> =
        dfa.transitions.iter().map(|(_, l, _)| l.clone()).collect();
    let alphabet: Vec<TransitionLabel> = alphabet.into_iter().collect();
    let n = dfa.state_count + 1; // extra sink
    let sink = dfa.state_count;
    let mut delta = vec![vec![sink; n]; alphabet.len()];
    for (from, label, to) in &dfa.transitions {
        let c = alphabet.iter().position(|l| l == label).unwrap();
        delta[c][*from] = *to;
    }
    // Reverse transition lists per label.
    let mut rev: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; alphabet.len()];
    for c in 0..alphabet.len() {
        for s in 0..n {
            rev[c][delta[c][s]].push(s);
        }
    }

    let finals: BTreeSet<usize> = dfa.finals.iter().copied().collect();
    let non_finals: BTreeSet<usize> = (0..n).filter(|s| !finals.contains(s)).collect();
    let mut partition: Vec<BTreeSet<usize>> = Vec::new();
    if !finals.is_empty() {
        partition.push(finals.clone());
    }
    if !non_finals.is_empty() {
        partition.push(non_finals);
    }
    let mut work: VecDeque<usize> = (0..partition.len()).collect();

    while let Some(a_idx) = work.pop_front() {
        let a = partition[a_idx].clone();
        for c in 0..alphabet.len() {
            let x: BTreeSet<usize> = a
                .iter()
                .flat_map(|&s| rev[c][s].iter().copied())
                .collect();
            if x.is_empty() {
                continue;
            }
            let mut y_idx = 0;
            while y_idx < partition.len() {
                let y = &partition[y_idx];
                let inter: BTreeSet<usize> = y.intersection(&x).copied().collect();
                if inter.is_empty() || inter.len() == y.len() {
                    y_idx += 1;
                    continue;
                }
                let diff: BTreeSet<usize> = y.difference(&x).copied().collect();
                let (small, large) = if inter.len() <= diff.len() {
                    (inter, diff)
                } else {
                    (diff, inter)
                };
                partition[y_idx] = large;
                partition.push(small);
                work.push_back(partition.len() - 1);
                y_idx += 1;
            }
        }
    }

    let mut class_of = vec![0usize; n];
    for (i, class) in partition.iter().enumerate() {
        for &s in class {
            class_of[s] = i;
        }
    }
    let sink_class = class_of[sink];

    let mut transitions = Vec::new();
    let mut seen = HashSet::new();
    for (from, label, to) in &dfa.transitions {
        let (cf, ct) = (class_of[*from], class_of[*to]);
        if cf == sink_class || ct == sink_class {
            continue;
        }
        if seen.insert((cf, label.clone())) {
            transitions.push((cf, label.clone(), ct));
        }
    }
    let finals: BTreeSet<usize> = dfa
        .finals
        .iter()
        .map(|f| class_of[*f])
        .filter(|&c| c != sink_class)
        .collect();

    canonical_renumber(&BoxDfa {
        state_count: partition.len(),
        start: class_of[dfa.start],
        finals,
        transitions,
    })
}

/// Breadth-first renumbering from the start state, visiting transitions in
/// label order, so construction order is reproducible.
fn canonical_renumber(dfa: &BoxDfa) -> BoxDfa {
    let mut order: HashMap<usize, usize> = HashMap::new();
    order.insert(dfa.start, 0);
    let mut queue = VecDeque::from([dfa.start]);
    let mut outgoing: HashMap<usize, Vec<(TransitionLabel, usize)>> = HashMap::new();
    for (from, label, to) in &dfa.transitions {
        outgoing.entry(*from).or_default().push((label.clone(), *to));
    }
    for row in outgoing.values_mut() {
        row.sort();
    }
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
    let mut transitions: Vec<(usize, TransitionLabel, usize)> = dfa
        .transitions
        .iter()
        .map(|(f, l, t)| (order[f], l.clone(), order[t]))
        .collect();
    transitions.sort();
    BoxDfa {
        state_count: order.len(),
        start: 0,
        finals: dfa.finals.iter().map(|f| order[f]).collect(),
        transitions,
    }
}

/// Compile a regex over terminals and nonterminal calls into the minimal
/// deterministic ε-free automaton.
pub fn regex_to_dfa(r: &Regex) -> BoxDfa {
    let mut nfa = Nfa {
        state_count: 0,
        edges: Vec::new(),
    };
    let (start, accept) = nfa.build(r);
    minimize(&trim(&determinize(&nfa, start, accept)))
}

/// Determinized but not minimized; only used to check that minimization
/// does not change acceptance.
#[cfg(test)]
pub(crate) fn regex_to_dfa_unminimized(r: &Regex) -> BoxDfa {
    let mut nfa = Nfa {
        state_count: 0,
        edges: Vec::new(),
    };
    let (start, accept) = nfa.build(r);
    trim(&determinize(&nfa, start, accept))
}

impl BoxDfa {
    /// Run the DFA on a word of transition labels.
    pub fn accepts(&self, word: &[TransitionLabel]) -> bool {
        let mut state = self.start;
        for label in word {
            match self
                .transitions
                .iter()
                .find(|(f, l, _)| *f == state && l == label)
            {
                Some(&(_, _, to)) => state = to,
                None => return false,
            }
        }
        self.finals.contains(&state)
    }
}
