//! Grammars: a textual EBNF surface syntax, validation, lowering to plain
//! BNF, and Chomsky normal form for the membership oracle.
//!
//! Lexical convention: bare tokens starting with an uppercase letter are
//! nonterminals, all other bare tokens and any single-quoted string are
//! terminals. `eps` is the empty word. Inverse relations are ordinary
//! terminals carrying a `_r` suffix by convention; nothing in the engine
//! treats them specially.

mod ast;
mod bnf;
mod cnf;
mod parse;

pub use ast::{Regex, Symbol};
pub use bnf::{ebnf_to_bnf, BnfGrammar};
pub use cnf::{to_cnf, CnfGrammar};
pub use parse::parse_grammar_text;

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GrammarError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("empty grammar")]
    Empty,
    #[error("invalid grammar: {}", format_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// A nonterminal is referenced but has no production.
    UndefinedNonterminal { name: String, referenced_in: String },
    /// The start nonterminal has no production.
    MissingStart { name: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::UndefinedNonterminal { name, referenced_in } => {
                write!(f, "nonterminal `{name}` referenced in `{referenced_in}` has no production")
            }
            Diagnostic::MissingStart { name } => {
                write!(f, "start nonterminal `{name}` has no production")
            }
        }
    }
}

/// A grammar whose productions map each nonterminal to one regular
/// expression over terminals and nonterminals. Alternatives are folded into
/// a single `Union` per left-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EbnfGrammar {
    /// Production per nonterminal, in declaration order.
    pub productions: IndexMap<String, Regex>,
    pub start: String,
}

impl EbnfGrammar {
    pub fn new(start: impl Into<String>) -> Self {
        EbnfGrammar {
            productions: IndexMap::new(),
            start: start.into(),
        }
    }

    /// Add a production; repeated left-hand sides are unioned.
    pub fn add_production(&mut self, lhs: impl Into<String>, rhs: Regex) {
        let lhs = lhs.into();
        match self.productions.shift_remove(&lhs) {
            Some(existing) => {
                self.productions.insert(lhs, Regex::union(vec![existing, rhs]));
            }
            None => {
                self.productions.insert(lhs, rhs);
            }
        }
    }

    /// Empty list iff all grammar invariants hold.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();
        if !self.productions.contains_key(&self.start) {
            diags.push(Diagnostic::MissingStart {
                name: self.start.clone(),
            });
        }
        for (lhs, rhs) in &self.productions {
            let mut referenced = Vec::new();
            rhs.collect_nonterminals(&mut referenced);
            for name in referenced {
                if !self.productions.contains_key(&name)
                    && !diags.iter().any(|d| {
                        matches!(d, Diagnostic::UndefinedNonterminal { name: n, .. } if *n == name)
                    })
                {
                    diags.push(Diagnostic::UndefinedNonterminal {
                        name,
                        referenced_in: lhs.clone(),
                    });
                }
            }
        }
        diags
    }
}

impl fmt::Display for EbnfGrammar {
    /// Canonical text form; parsing it back yields an equal grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut rest: Vec<_> = self
            .productions
            .iter()
            .filter(|(lhs, _)| **lhs != self.start)
            .collect();
        rest.sort_by(|a, b| a.0.cmp(b.0));
        if let Some(rhs) = self.productions.get(&self.start) {
            writeln!(f, "{} -> {}", self.start, rhs)?;
        }
        for (lhs, rhs) in rest {
            writeln!(f, "{lhs} -> {rhs}")?;
        }
        Ok(())
    }
}
