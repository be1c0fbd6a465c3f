use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::graph::{LabelId, VertexId};
use crate::rsm::RsmStateId;

/// A point of the computation: an RSM state paired with a graph vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    pub state: RsmStateId,
    pub vertex: VertexId,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q{},v{})", self.state.0, self.vertex.0)
    }
}

/// A matched range: the fact that the computation can move from one
/// position to another. `Empty` is the empty range ε, the identity of
/// range composition; it carries no endpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Range {
    Empty,
    Span { from: Position, to: Position },
}

impl Range {
    pub fn span(from: Position, to: Position) -> Self {
        Range::Span { from, to }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Range::Empty)
    }

    pub fn from(&self) -> Option<Position> {
        match self {
            Range::Empty => None,
            Range::Span { from, .. } => Some(*from),
        }
    }

    pub fn to(&self) -> Option<Position> {
        match self {
            Range::Empty => None,
            Range::Span { to, .. } => Some(*to),
        }
    }

    /// Extend to the right by a sub-range `cur -> end`. For a non-empty
    /// range `cur` is its current endpoint and the result records the split
    /// point to write as an intermediate entry; ε extends to `cur -> end`
    /// with no split.
    pub fn extended(&self, cur: Position, end: Position) -> (Range, Option<Position>) {
        match self {
            Range::Empty => (Range::span(cur, end), None),
            Range::Span { from, to } => {
                debug_assert_eq!(*to, cur, "range must end at the current position");
                (Range::span(*from, end), Some(*to))
            }
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Range::Empty => write!(f, "ε"),
            Range::Span { from, to } => write!(f, "R{from}..{to}"),
        }
    }
}

/// Index of a nonterminal box within a query's [`super::QueryResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NtId(pub u32);

/// How a range can be built: a matched edge label, a recognized
/// nonterminal, an empty body, or a split into two sub-ranges at an
/// intermediate point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IndexEntry {
    Terminal(LabelId),
    Nonterminal(NtId),
    Epsilon,
    Intermediate(Position),
}

/// Sparse path index: only nonempty cells are stored. Conceptually this is
/// the square matrix over positions, but the dense form is infeasible for
/// real graphs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathIndex {
    cells: HashMap<(Position, Position), BTreeSet<IndexEntry>>,
}

impl PathIndex {
    pub fn add(&mut self, from: Position, to: Position, entry: IndexEntry) -> bool {
        self.cells.entry((from, to)).or_default().insert(entry)
    }

    pub fn get(&self, from: Position, to: Position) -> Option<&BTreeSet<IndexEntry>> {
        self.cells.get(&(from, to))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of nonempty cells.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(Position, Position), &BTreeSet<IndexEntry>)> {
        self.cells.iter()
    }

    /// Cells in ascending key order, for deterministic output and
    /// comparisons.
    pub fn sorted_cells(&self) -> Vec<((Position, Position), BTreeSet<IndexEntry>)> {
        let mut rows: Vec<_> = self
            .cells
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        rows.sort_by_key(|(k, _)| *k);
        rows
    }
}
