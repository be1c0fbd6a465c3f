use std::collections::HashSet;

use super::ast::{Regex, Symbol};
use super::EbnfGrammar;

/// A plain context-free grammar: each production is a symbol sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnfGrammar {
    /// `(lhs, rhs)` pairs in declaration order; an empty rhs is an
    /// ε-production.
    pub productions: Vec<(String, Vec<Symbol>)>,
    pub start: String,
}

impl BnfGrammar {
    pub fn nonterminals(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (lhs, _) in &self.productions {
            if seen.insert(lhs.clone()) {
                out.push(lhs.clone());
            }
        }
        out
    }

    pub fn productions_for<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a [Symbol]> {
        self.productions
            .iter()
            .filter(move |(lhs, _)| lhs == name)
            .map(|(_, rhs)| rhs.as_slice())
    }
}

struct Lowering {
    /// `(pre-order ordinal of the lhs, lhs, rhs)`.
    out: Vec<(usize, String, Vec<Symbol>)>,
    used: HashSet<String>,
    counter: usize,
    base: String,
}

impl Lowering {
    fn fresh(&mut self) -> (usize, String) {
        loop {
            let ordinal = self.counter;
            let name = format!("{}#{}", self.base, ordinal);
            self.counter += 1;
            if self.used.insert(name.clone()) {
                return (ordinal, name);
            }
        }
    }

    /// Lower a regex to a symbol sequence, introducing auxiliary
    /// nonterminals for union/star/plus/optional subterms. Fresh names are
    /// assigned in pre-order.
    fn lower(&mut self, r: &Regex) -> Vec<Symbol> {
        match r {
            Regex::Epsilon => vec![],
            Regex::Sym(s) => vec![s.clone()],
            Regex::Concat(cs) => {
                let mut seq = Vec::new();
                for c in cs {
                    seq.extend(self.lower(c));
                }
                seq
            }
            Regex::Union(cs) => {
                let (ord, x) = self.fresh();
                for c in cs {
                    let body = self.lower(c);
                    self.out.push((ord, x.clone(), body));
                }
                vec![Symbol::nonterminal(x)]
            }
            Regex::Star(c) => {
                let (ord, x) = self.fresh();
                let body = self.lower(c);
                self.out.push((ord, x.clone(), vec![]));
                let mut rec = body;
                rec.push(Symbol::nonterminal(x.clone()));
                self.out.push((ord, x.clone(), rec));
                vec![Symbol::nonterminal(x)]
            }
            Regex::Plus(c) => {
                let (ord, x) = self.fresh();
                let body = self.lower(c);
                self.out.push((ord, x.clone(), body.clone()));
                let mut rec = body;
                rec.push(Symbol::nonterminal(x.clone()));
                self.out.push((ord, x.clone(), rec));
                vec![Symbol::nonterminal(x)]
            }
            Regex::Optional(c) => {
                let (ord, x) = self.fresh();
                let body = self.lower(c);
                self.out.push((ord, x.clone(), vec![]));
                self.out.push((ord, x.clone(), body));
                vec![Symbol::nonterminal(x)]
            }
        }
    }
}

/// Lower an EBNF grammar to a language-equivalent BNF grammar. Top-level
/// alternatives of each production become separate BNF productions;
/// everything else gets a deterministic fresh nonterminal `Lhs#k`.
pub fn ebnf_to_bnf(g: &EbnfGrammar) -> BnfGrammar {
    let used: HashSet<String> = g.productions.keys().cloned().collect();
    let mut productions = Vec::new();
    for (lhs, rhs) in &g.productions {
        let mut lowering = Lowering {
            out: Vec::new(),
            used: used.clone(),
            counter: 0,
            base: lhs.clone(),
        };
        let branches: Vec<&Regex> = match rhs {
            Regex::Union(cs) => cs.iter().collect(),
            other => vec![other],
        };
        for branch in branches {
            let seq = lowering.lower(branch);
            productions.push((lhs.clone(), seq));
        }
        lowering.out.sort_by_key(|(ord, _, _)| *ord);
        productions.extend(lowering.out.into_iter().map(|(_, l, r)| (l, r)));
    }
    BnfGrammar {
        productions,
        start: g.start.clone(),
    }
}
