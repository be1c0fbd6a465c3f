use std::collections::{HashMap, HashSet};

use super::ast::Symbol;
use super::bnf::BnfGrammar;

/// Chomsky normal form: `A -> B C`, `A -> t`, plus an optional `S -> eps`
/// recorded as [`CnfGrammar::start_nullable`]. Only the start may derive ε,
/// and the start never occurs on a right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfGrammar {
    pub nonterminal_names: Vec<String>,
    pub start: usize,
    /// `A -> B C` productions as index triples.
    pub binary: Vec<(usize, usize, usize)>,
    /// `A -> t` productions.
    pub terminal: Vec<(usize, String)>,
    pub start_nullable: bool,
}

impl CnfGrammar {
    pub fn nonterminal_count(&self) -> usize {
        self.nonterminal_names.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Sym {
    T(String),
    N(usize),
}

struct Names {
    names: Vec<String>,
    by_name: HashMap<String, usize>,
}

impl Names {
    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.by_name.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), i);
        i
    }

    fn fresh(&mut self, base: &str) -> usize {
        let mut k = 0;
        loop {
            let candidate = format!("{base}%{k}");
            if !self.by_name.contains_key(&candidate) {
                return self.intern(&candidate);
            }
            k += 1;
        }
    }
}

/// Convert a BNF grammar to a language-equivalent CNF grammar via the
/// standard pipeline: fresh start, terminal lifting, binarization,
/// ε-elimination, unit elimination, and pruning of useless symbols. A
/// grammar whose start derives nothing yields an empty production set.
pub fn to_cnf(g: &BnfGrammar) -> CnfGrammar {
    let mut names = Names {
        names: Vec::new(),
        by_name: HashMap::new(),
    };
    let old_start = names.intern(&g.start);
    let mut prods: Vec<(usize, Vec<Sym>)> = Vec::new();
    for (lhs, rhs) in &g.productions {
        let l = names.intern(lhs);
        let r = rhs
            .iter()
            .map(|s| match s {
                Symbol::Terminal(t) => Sym::T(t.clone()),
                Symbol::Nonterminal(n) => Sym::N(names.intern(n)),
            })
            .collect();
        prods.push((l, r));
    }

    // Fresh start so the start symbol never appears on a right-hand side.
    let start = names.fresh(&g.start);
    prods.push((start, vec![Sym::N(old_start)]));

    // Lift terminals out of long right-hand sides.
    let mut lifted: HashMap<String, usize> = HashMap::new();
    for (_, rhs) in prods.iter_mut() {
        if rhs.len() >= 2 {
            for s in rhs.iter_mut() {
                if let Sym::T(t) = s {
                    let n = *lifted
                        .entry(t.clone())
                        .or_insert_with(|| names.fresh(&format!("lift:{t}")));
                    *s = Sym::N(n);
                }
            }
        }
    }
    for (t, n) in &lifted {
        prods.push((*n, vec![Sym::T(t.clone())]));
    }

    // Binarize.
    let mut binarized: Vec<(usize, Vec<Sym>)> = Vec::new();
    for (lhs, rhs) in prods {
        if rhs.len() <= 2 {
            binarized.push((lhs, rhs));
            continue;
        }
        let mut current = lhs;
        for i in 0..rhs.len() - 2 {
            let next = names.fresh(&names.names[lhs].clone());
            binarized.push((current, vec![rhs[i].clone(), Sym::N(next)]));
            current = next;
        }
        binarized.push((current, rhs[rhs.len() - 2..].to_vec()));
    }

    // ε-elimination.
    let mut nullable: HashSet<usize> = HashSet::new();
    loop {
        let before = nullable.len();
        for (lhs, rhs) in &binarized {
            if rhs.iter().all(|s| matches!(s, Sym::N(n) if nullable.contains(n))) {
                nullable.insert(*lhs);
            }
        }
        if nullable.len() == before {
            break;
        }
    }
    let start_nullable = nullable.contains(&start);
    let mut no_eps: HashSet<(usize, Vec<Sym>)> = HashSet::new();
    for (lhs, rhs) in &binarized {
        match rhs.len() {
            0 => {}
            1 => {
                no_eps.insert((*lhs, rhs.clone()));
            }
            2 => {
                no_eps.insert((*lhs, rhs.clone()));
                if let Sym::N(b) = &rhs[0] {
                    if nullable.contains(b) {
                        no_eps.insert((*lhs, vec![rhs[1].clone()]));
                    }
                }
                if let Sym::N(c) = &rhs[1] {
                    if nullable.contains(c) {
                        no_eps.insert((*lhs, vec![rhs[0].clone()]));
                    }
                }
            }
            _ => unreachable!("binarized"),
        }
    }

    // Unit elimination.
    let nt_count = names.names.len();
    let mut unit_reach: Vec<HashSet<usize>> = (0..nt_count)
        .map(|i| {
            let mut s = HashSet::new();
            s.insert(i);
            s
        })
        .collect();
    loop {
        let mut changed = false;
        for (lhs, rhs) in &no_eps {
            if let [Sym::N(b)] = rhs.as_slice() {
                let to_add: Vec<usize> = unit_reach[*b]
                    .iter()
                    .copied()
                    .filter(|x| !unit_reach[*lhs].contains(x))
                    .collect();
                if !to_add.is_empty() {
                    changed = true;
                    unit_reach[*lhs].extend(to_add);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut final_prods: HashSet<(usize, Vec<Sym>)> = HashSet::new();
    for a in 0..nt_count {
        for b in unit_reach[a].iter() {
            for (lhs, rhs) in &no_eps {
                if lhs == b && !matches!(rhs.as_slice(), [Sym::N(_)]) {
                    final_prods.insert((a, rhs.clone()));
                }
            }
        }
    }

    // Drop unproductive and unreachable symbols.
    let mut productive: HashSet<usize> = HashSet::new();
    loop {
        let before = productive.len();
        for (lhs, rhs) in &final_prods {
            let ok = rhs.iter().all(|s| match s {
                Sym::T(_) => true,
                Sym::N(n) => productive.contains(n),
            });
            if ok {
                productive.insert(*lhs);
            }
        }
        if productive.len() == before {
            break;
        }
    }
    let kept: Vec<(usize, Vec<Sym>)> = final_prods
        .into_iter()
        .filter(|(lhs, rhs)| {
            productive.contains(lhs)
                && rhs
                    .iter()
                    .all(|s| !matches!(s, Sym::N(n) if !productive.contains(n)))
        })
        .collect();
    let mut reachable: HashSet<usize> = HashSet::new();
    reachable.insert(start);
    loop {
        let before = reachable.len();
        for (lhs, rhs) in &kept {
            if reachable.contains(lhs) {
                for s in rhs {
                    if let Sym::N(n) = s {
                        reachable.insert(*n);
                    }
                }
            }
        }
        if reachable.len() == before {
            break;
        }
    }

    let mut binary = Vec::new();
    let mut terminal = Vec::new();
    let mut rows: Vec<(usize, Vec<Sym>)> = kept
        .into_iter()
        .filter(|(lhs, _)| reachable.contains(lhs))
        .collect();
    rows.sort_by(|a, b| {
        (a.0, format!("{:?}", a.1)).cmp(&(b.0, format!("{:?}", b.1)))
    });
    for (lhs, rhs) in rows {
        match rhs.as_slice() {
            [Sym::T(t)] => terminal.push((lhs, t.clone())),
            [Sym::N(b), Sym::N(c)] => binary.push((lhs, *b, *c)),
            other => unreachable!("non-CNF production survived: {other:?}"),
        }
    }

    CnfGrammar {
        nonterminal_names: names.names,
        start,
        binary,
        terminal,
        start_nullable,
    }
}
