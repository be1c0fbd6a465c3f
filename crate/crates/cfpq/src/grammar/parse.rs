use super::ast::Regex;
use super::{EbnfGrammar, GrammarError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Arrow,
    Pipe,
    LParen,
    RParen,
    Star,
    Plus,
    Question,
    Bare(String),
    Quoted(String),
}

struct Spanned {
    tok: Tok,
    col: usize,
}

fn is_bare_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | ':')
}

fn lex_line(line: &str, line_no: usize) -> Result<Vec<Spanned>, GrammarError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    toks.push(Spanned { tok: Tok::Arrow, col });
                    i += 2;
                } else {
                    return Err(GrammarError::Syntax {
                        line: line_no,
                        col,
                        msg: "expected `->`".into(),
                    });
                }
            }
            '|' => {
                toks.push(Spanned { tok: Tok::Pipe, col });
                i += 1;
            }
            '(' => {
                toks.push(Spanned { tok: Tok::LParen, col });
                i += 1;
            }
            ')' => {
                toks.push(Spanned { tok: Tok::RParen, col });
                i += 1;
            }
            '*' => {
                toks.push(Spanned { tok: Tok::Star, col });
                i += 1;
            }
            '+' => {
                toks.push(Spanned { tok: Tok::Plus, col });
                i += 1;
            }
            '?' => {
                toks.push(Spanned { tok: Tok::Question, col });
                i += 1;
            }
            '\'' => {
                let start = i + 1;
                let mut j = start;
                while j < chars.len() && chars[j] != '\'' {
                    j += 1;
                }
                if j == chars.len() {
                    return Err(GrammarError::Syntax {
                        line: line_no,
                        col,
                        msg: "unterminated quoted terminal".into(),
                    });
                }
                if j == start {
                    return Err(GrammarError::Syntax {
                        line: line_no,
                        col,
                        msg: "empty quoted terminal (use `eps` for the empty word)".into(),
                    });
                }
                toks.push(Spanned {
                    tok: Tok::Quoted(chars[start..j].iter().collect()),
                    col,
                });
                i = j + 1;
            }
            c if is_bare_char(c) => {
                let start = i;
                while i < chars.len() && is_bare_char(chars[i]) {
                    i += 1;
                }
                toks.push(Spanned {
                    tok: Tok::Bare(chars[start..i].iter().collect()),
                    col: start + 1,
                });
            }
            other => {
                return Err(GrammarError::Syntax {
                    line: line_no,
                    col,
                    msg: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct LineParser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    line_len: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|s| s.col)
            .unwrap_or(self.line_len + 1)
    }

    fn bump(&mut self) -> Option<&'a Spanned> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> GrammarError {
        GrammarError::Syntax {
            line: self.line,
            col: self.col(),
            msg: msg.into(),
        }
    }

    fn parse_union(&mut self) -> Result<Regex, GrammarError> {
        let mut branches = vec![self.parse_concat()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.bump();
            branches.push(self.parse_concat()?);
        }
        Ok(Regex::union(branches))
    }

    fn parse_concat(&mut self) -> Result<Regex, GrammarError> {
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                None | Some(Tok::Pipe) | Some(Tok::RParen) => break,
                _ => parts.push(self.parse_postfix()?),
            }
        }
        if parts.is_empty() {
            return Err(self.err("expected a symbol, `eps`, or `(`"));
        }
        Ok(Regex::concat(parts))
    }

    fn parse_postfix(&mut self) -> Result<Regex, GrammarError> {
        let mut r = self.parse_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    r = Regex::star(r);
                }
                Some(Tok::Plus) => {
                    self.bump();
                    r = Regex::plus(r);
                }
                Some(Tok::Question) => {
                    self.bump();
                    r = Regex::optional(r);
                }
                _ => return Ok(r),
            }
        }
    }

    fn parse_atom(&mut self) -> Result<Regex, GrammarError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.parse_union()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(Tok::Quoted(name)) => {
                self.bump();
                Ok(Regex::terminal(name))
            }
            Some(Tok::Bare(name)) => {
                self.bump();
                if name == "eps" {
                    Ok(Regex::Epsilon)
                } else if name.chars().next().unwrap().is_uppercase() {
                    Ok(Regex::nonterminal(name))
                } else {
                    Ok(Regex::terminal(name))
                }
            }
            Some(_) => Err(self.err("expected a symbol, `eps`, or `(`")),
            None => Err(self.err("unexpected end of rule")),
        }
    }
}

/// Parse the textual grammar format: one `Lhs -> regex` rule per line, `|`
/// for union, juxtaposition for concatenation, postfix `*` `+` `?`, `( )`
/// grouping, and `eps` for the empty word. The first rule names the start
/// nonterminal; repeated left-hand sides are unioned. Blank lines and lines
/// starting with `#` are skipped.
pub fn parse_grammar_text(text: &str) -> Result<EbnfGrammar, GrammarError> {
    let mut grammar: Option<EbnfGrammar> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks = lex_line(raw, line_no)?;
        let mut p = LineParser {
            toks: &toks,
            pos: 0,
            line: line_no,
            line_len: raw.chars().count(),
        };
        let lhs = match p.bump() {
            Some(Spanned {
                tok: Tok::Bare(name),
                col,
            }) if name.chars().next().unwrap().is_uppercase() => {
                let _ = col;
                name.clone()
            }
            _ => {
                return Err(GrammarError::Syntax {
                    line: line_no,
                    col: toks.first().map(|s| s.col).unwrap_or(1),
                    msg: "rule must start with a nonterminal (uppercase-initial token)".into(),
                })
            }
        };
        if p.peek() != Some(&Tok::Arrow) {
            return Err(p.err("expected `->` after the left-hand side"));
        }
        p.bump();
        let rhs = p.parse_union()?;
        if p.peek().is_some() {
            return Err(p.err("trailing tokens after rule"));
        }
        let g = grammar.get_or_insert_with(|| EbnfGrammar::new(lhs.clone()));
        g.add_production(lhs, rhs);
    }
    let g = grammar.ok_or(GrammarError::Empty)?;
    let diags = g.validate();
    if !diags.is_empty() {
        return Err(GrammarError::Invalid(diags));
    }
    Ok(g)
}
