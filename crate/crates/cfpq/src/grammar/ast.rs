use std::fmt;

/// A terminal or nonterminal occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Terminal(String),
    Nonterminal(String),
}

impl Symbol {
    pub fn terminal(name: impl Into<String>) -> Self {
        Symbol::Terminal(name.into())
    }

    pub fn nonterminal(name: impl Into<String>) -> Self {
        Symbol::Nonterminal(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Symbol::Terminal(n) | Symbol::Nonterminal(n) => n,
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Symbol::Terminal(_))
    }
}

/// Regular expression over terminals and nonterminal references.
///
/// `Concat` and `Union` always have at least two children; use the
/// [`Regex::concat`] and [`Regex::union`] constructors to keep that invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Epsilon,
    Sym(Symbol),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
    Optional(Box<Regex>),
}

impl Regex {
    pub fn sym(s: Symbol) -> Self {
        Regex::Sym(s)
    }

    pub fn terminal(name: impl Into<String>) -> Self {
        Regex::Sym(Symbol::terminal(name))
    }

    pub fn nonterminal(name: impl Into<String>) -> Self {
        Regex::Sym(Symbol::nonterminal(name))
    }

    /// Concatenation; zero parts give `Epsilon`, one part gives the part.
    pub fn concat(mut parts: Vec<Regex>) -> Self {
        match parts.len() {
            0 => Regex::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Regex::Concat(parts),
        }
    }

    /// Union; one branch gives the branch. Zero branches are not expressible.
    pub fn union(mut branches: Vec<Regex>) -> Self {
        assert!(!branches.is_empty(), "union of zero branches");
        if branches.len() == 1 {
            return branches.pop().unwrap();
        }
        // Flatten nested unions so folded alternatives stay one level deep.
        let mut flat = Vec::with_capacity(branches.len());
        for b in branches {
            match b {
                Regex::Union(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        Regex::Union(flat)
    }

    pub fn star(inner: Regex) -> Self {
        Regex::Star(Box::new(inner))
    }

    pub fn plus(inner: Regex) -> Self {
        Regex::Plus(Box::new(inner))
    }

    pub fn optional(inner: Regex) -> Self {
        Regex::Optional(Box::new(inner))
    }

    pub fn collect_nonterminals(&self, out: &mut Vec<String>) {
        match self {
            Regex::Epsilon => {}
            Regex::Sym(Symbol::Terminal(_)) => {}
            Regex::Sym(Symbol::Nonterminal(n)) => out.push(n.clone()),
            Regex::Concat(cs) | Regex::Union(cs) => {
                for c in cs {
                    c.collect_nonterminals(out);
                }
            }
            Regex::Star(c) | Regex::Plus(c) | Regex::Optional(c) => c.collect_nonterminals(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Regex::Union(_) => 0,
            Regex::Concat(_) => 1,
            Regex::Star(_) | Regex::Plus(_) | Regex::Optional(_) => 2,
            Regex::Epsilon | Regex::Sym(_) => 3,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min {
            write!(f, "(")?;
        }
        match self {
            Regex::Epsilon => write!(f, "eps")?,
            Regex::Sym(Symbol::Nonterminal(n)) => write!(f, "{n}")?,
            Regex::Sym(Symbol::Terminal(t)) => write!(f, "{}", quote_terminal(t))?,
            Regex::Concat(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    c.fmt_prec(f, 2)?;
                }
            }
            Regex::Union(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    c.fmt_prec(f, 1)?;
                }
            }
            Regex::Star(c) => {
                c.fmt_prec(f, 3)?;
                write!(f, "*")?;
            }
            Regex::Plus(c) => {
                c.fmt_prec(f, 3)?;
                write!(f, "+")?;
            }
            Regex::Optional(c) => {
                c.fmt_prec(f, 3)?;
                write!(f, "?")?;
            }
        }
        if prec < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// True when `name` lexes back as a bare terminal token.
pub(crate) fn is_bare_terminal(name: &str) -> bool {
    !name.is_empty()
        && name != "eps"
        && !name.chars().next().unwrap().is_uppercase()
        && name.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | ':'))
}

fn quote_terminal(name: &str) -> String {
    if is_bare_terminal(name) {
        name.to_string()
    } else {
        format!("'{name}'")
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_fold_degenerate_cases() {
        assert_eq!(Regex::concat(vec![]), Regex::Epsilon);
        assert_eq!(Regex::concat(vec![Regex::terminal("a")]), Regex::terminal("a"));
        assert_eq!(Regex::union(vec![Regex::terminal("a")]), Regex::terminal("a"));
        let u = Regex::union(vec![
            Regex::union(vec![Regex::terminal("a"), Regex::terminal("b")]),
            Regex::terminal("c"),
        ]);
        assert!(matches!(&u, Regex::Union(cs) if cs.len() == 3));
    }

    #[test]
    fn display_parenthesizes_by_precedence() {
        let r = Regex::star(Regex::union(vec![Regex::terminal("a"), Regex::terminal("b")]));
        assert_eq!(r.to_string(), "(a | b)*");
        let r2 = Regex::concat(vec![
            Regex::terminal("a"),
            Regex::union(vec![Regex::terminal("b"), Regex::terminal("c")]),
        ]);
        assert_eq!(r2.to_string(), "a (b | c)");
        let r3 = Regex::union(vec![
            Regex::concat(vec![Regex::terminal("a"), Regex::terminal("b")]),
            Regex::Epsilon,
        ]);
        assert_eq!(r3.to_string(), "a b | eps");
    }

    #[test]
    fn odd_terminals_are_quoted() {
        assert_eq!(Regex::terminal("Weird").to_string(), "'Weird'");
        assert_eq!(Regex::terminal("eps").to_string(), "'eps'");
        assert_eq!(Regex::terminal("has space").to_string(), "'has space'");
        assert_eq!(Regex::terminal("subClassOf_r").to_string(), "subClassOf_r");
    }
}
