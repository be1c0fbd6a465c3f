//! Edge-labelled directed multigraph with interned vertex and label names.
//!
//! Graphs are immutable after construction and safe to share between
//! concurrently running query engines. Vertices and labels are interned in
//! first-appearance order, so the dense integer ids are reproducible for a
//! given input stream.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Dense vertex index, bijective with the original vertex name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// Dense label index, bijective with the original label text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for LabelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: expected `source label target`, found {found} token(s)")]
    MalformedLine { line: usize, found: usize },
    #[error("unknown vertex name `{0}`")]
    UnknownVertex(String),
    #[error("vertex id {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(u32, u32),
    #[error("path step {step}: ({from} -{label}-> {to}) is not an edge of the graph")]
    InvalidPathStep {
        step: usize,
        from: u32,
        label: String,
        to: u32,
    },
}

/// Options for [`load_edge_list`].
#[derive(Debug, Clone)]
pub struct LoadOptions {
    /// Materialize an inverse edge `(v, l+suffix, u)` for every edge `(u, l, v)`.
    pub add_inverse: bool,
    /// Suffix appended to the label of materialized inverse edges.
    pub inverse_suffix: String,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            add_inverse: false,
            inverse_suffix: "_r".to_string(),
        }
    }
}

/// A concrete path: a start vertex and an ordered list of labelled steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexId,
    pub steps: Vec<(LabelId, VertexId)>,
}

impl Path {
    pub fn empty(start: VertexId) -> Self {
        Path {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> VertexId {
        self.steps.last().map(|&(_, v)| v).unwrap_or(self.start)
    }

    /// Render as `v0 -a-> v1 -b-> v2` using the graph's original names.
    /// A zero-length path renders as the bare vertex name.
    pub fn display(&self, g: &Graph) -> String {
        let mut out = g.vertex_name(self.start).to_string();
        for &(l, v) in &self.steps {
            out.push_str(" -");
            out.push_str(g.label_name(l));
            out.push_str("-> ");
            out.push_str(g.vertex_name(v));
        }
        out
    }
}

/// Immutable edge-labelled directed multigraph.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_names: Vec<String>,
    vertex_ids: HashMap<String, VertexId>,
    label_names: Vec<String>,
    label_ids: HashMap<String, LabelId>,
    /// Edge multiset in input order. Duplicates are kept.
    edges: Vec<(VertexId, LabelId, VertexId)>,
    /// Per vertex: sorted `(label, targets)` groups; duplicate edges keep
    /// duplicate targets.
    adjacency: Vec<Vec<(LabelId, Vec<VertexId>)>>,
    /// Edge count per label, indexed by `LabelId`.
    label_counts: Vec<u64>,
}

/// Incremental constructor; everything goes through it so interning order is
/// uniform between file loads and programmatic construction.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    vertex_names: Vec<String>,
    vertex_ids: HashMap<String, VertexId>,
    label_names: Vec<String>,
    label_ids: HashMap<String, LabelId>,
    edges: Vec<(VertexId, LabelId, VertexId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern_vertex(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.vertex_ids.get(name) {
            return id;
        }
        let id = VertexId(self.vertex_names.len() as u32);
        self.vertex_names.push(name.to_string());
        self.vertex_ids.insert(name.to_string(), id);
        id
    }

    pub fn intern_label(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.label_ids.get(name) {
            return id;
        }
        let id = LabelId(self.label_names.len() as u32);
        self.label_names.push(name.to_string());
        self.label_ids.insert(name.to_string(), id);
        id
    }

    pub fn add_edge(&mut self, source: &str, label: &str, target: &str) {
        let s = self.intern_vertex(source);
        let l = self.intern_label(label);
        let t = self.intern_vertex(target);
        self.edges.push((s, l, t));
    }

    pub fn build(self) -> Graph {
        let n = self.vertex_names.len();
        let mut adjacency: Vec<Vec<(LabelId, Vec<VertexId>)>> = vec![Vec::new(); n];
        let mut label_counts = vec![0u64; self.label_names.len()];
        for &(s, l, t) in &self.edges {
            label_counts[l.0 as usize] += 1;
            let row = &mut adjacency[s.0 as usize];
            match row.binary_search_by_key(&l, |&(lbl, _)| lbl) {
                Ok(i) => row[i].1.push(t),
                Err(i) => row.insert(i, (l, vec![t])),
            }
        }
        Graph {
            vertex_names: self.vertex_names,
            vertex_ids: self.vertex_ids,
            label_names: self.label_names,
            label_ids: self.label_ids,
            edges: self.edges,
            adjacency,
            label_counts,
        }
    }
}

/// Parse whitespace-separated `source label target` lines into a graph.
///
/// Blank lines and lines starting with `#` are skipped. Vertices and labels
/// are interned in first-appearance order. With `add_inverse`, each edge
/// `(u, l, v)` is immediately followed by `(v, l+suffix, u)`.
pub fn load_edge_list(text: &str, options: &LoadOptions) -> Result<Graph, GraphError> {
    let mut b = GraphBuilder::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 {
            return Err(GraphError::MalformedLine {
                line: idx + 1,
                found: tokens.len(),
            });
        }
        b.add_edge(tokens[0], tokens[1], tokens[2]);
        if options.add_inverse {
            let inv = format!("{}{}", tokens[1], options.inverse_suffix);
            b.add_edge(tokens[2], &inv, tokens[0]);
        }
    }
    Ok(b.build())
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn label_count(&self) -> usize {
        self.label_names.len()
    }

    pub fn edges(&self) -> &[(VertexId, LabelId, VertexId)] {
        &self.edges
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0 as usize]
    }

    pub fn label_name(&self, l: LabelId) -> &str {
        &self.label_names[l.0 as usize]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_ids.get(name).copied()
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_ids.get(name).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if (v.0 as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v.0, self.vertex_count() as u32))
        }
    }

    /// Targets of edges `(v, l, ·)`, with multiset semantics: one entry per
    /// edge. Unknown labels or vertices without such edges yield `&[]`.
    pub fn outgoing(&self, v: VertexId, l: LabelId) -> &[VertexId] {
        let row = match self.adjacency.get(v.0 as usize) {
            Some(row) => row,
            None => return &[],
        };
        match row.binary_search_by_key(&l, |&(lbl, _)| lbl) {
            Ok(i) => &row[i].1,
            Err(_) => &[],
        }
    }

    /// All outgoing `(label, target)` steps of `v`, grouped by label.
    pub fn outgoing_all(&self, v: VertexId) -> &[(LabelId, Vec<VertexId>)] {
        self.adjacency
            .get(v.0 as usize)
            .map(|r| r.as_slice())
            .unwrap_or(&[])
    }

    pub fn has_edge(&self, s: VertexId, l: LabelId, t: VertexId) -> bool {
        self.outgoing(s, l).contains(&t)
    }

    /// The word of a path: the concatenation of its step labels (Eq. of the
    /// ω function). Every step must be an edge of this graph.
    pub fn word_of_path(&self, p: &Path) -> Result<Vec<LabelId>, GraphError> {
        self.check_vertex(p.start)?;
        let mut at = p.start;
        let mut word = Vec::with_capacity(p.steps.len());
        for (i, &(l, v)) in p.steps.iter().enumerate() {
            if !self.has_edge(at, l, v) {
                return Err(GraphError::InvalidPathStep {
                    step: i,
                    from: at.0,
                    label: self
                        .label_names
                        .get(l.0 as usize)
                        .cloned()
                        .unwrap_or_else(|| format!("<label {}>", l.0)),
                    to: v.0,
                });
            }
            word.push(l);
            at = v;
        }
        Ok(word)
    }

    /// Vertex, edge and per-label counts. Labels are reported in `LabelId`
    /// order (first appearance).
    pub fn stats(&self) -> GraphStats {
        GraphStats {
            vertex_count: self.vertex_count(),
            edge_count: self.edge_count(),
            label_counts: self
                .label_names
                .iter()
                .cloned()
                .zip(self.label_counts.iter().copied())
                .collect(),
        }
    }

    /// Serialize back to edge-list text; reloading yields an identical edge
    /// multiset in identical order.
    pub fn to_edge_list_text(&self) -> String {
        let mut out = String::new();
        for &(s, l, t) in &self.edges {
            out.push_str(self.vertex_name(s));
            out.push(' ');
            out.push_str(self.label_name(l));
            out.push(' ');
            out.push_str(self.vertex_name(t));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub edge_count: usize,
    /// `(label name, edge count)` in `LabelId` order.
    pub label_counts: Vec<(String, u64)>,
}

impl GraphStats {
    /// Single-line JSON record, labels sorted by name for stability.
    pub fn to_json_line(&self) -> String {
        let mut labels: Vec<_> = self.label_counts.clone();
        labels.sort();
        let labels_json: Vec<String> = labels
            .iter()
            .map(|(name, count)| format!("{}:{}", serde_json::to_string(name).unwrap(), count))
            .collect();
        format!(
            "{{\"vertices\":{},\"edges\":{},\"labels\":{{{}}}}}",
            self.vertex_count,
            self.edge_count,
            labels_json.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fig2_graph() -> Graph {
        load_edge_list("0 a 0\n0 b 1\n1 b 0", &LoadOptions::default()).unwrap()
    }

    #[test]
    fn loads_the_two_vertex_example() {
        let g = fig2_graph();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
        let a = g.label_id("a").unwrap();
        let b = g.label_id("b").unwrap();
        assert_eq!(
            g.edges(),
            &[
                (VertexId(0), a, VertexId(0)),
                (VertexId(0), b, VertexId(1)),
                (VertexId(1), b, VertexId(0)),
            ]
        );
    }

    #[test]
    fn empty_stream_is_the_empty_graph() {
        let g = load_edge_list("", &LoadOptions::default()).unwrap();
        assert_eq!(g.vertex_count(), 0);
        assert_eq!(g.edge_count(), 0);
        assert!(g.stats().label_counts.is_empty());
    }

    #[test]
    fn add_inverse_materializes_suffixed_edges() {
        let g = load_edge_list(
            "x subClassOf y",
            &LoadOptions {
                add_inverse: true,
                inverse_suffix: "_r".into(),
            },
        )
        .unwrap();
        assert_eq!(g.edge_count(), 2);
        let x = g.vertex_id("x").unwrap();
        let y = g.vertex_id("y").unwrap();
        let sc = g.label_id("subClassOf").unwrap();
        let sc_r = g.label_id("subClassOf_r").unwrap();
        assert!(g.has_edge(x, sc, y));
        assert!(g.has_edge(y, sc_r, x));
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_edge_list("0 a 0\n0 a\n", &LoadOptions::default()).unwrap_err();
        match err {
            GraphError::MalformedLine { line, found } => {
                assert_eq!(line, 2);
                assert_eq!(found, 2);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let g = load_edge_list("# header\n\n0 a 1\n  # indented comment\n", &LoadOptions::default())
            .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn outgoing_matches_the_example_graph() {
        let g = fig2_graph();
        let a = g.label_id("a").unwrap();
        let b = g.label_id("b").unwrap();
        assert_eq!(g.outgoing(VertexId(0), a), &[VertexId(0)]);
        assert_eq!(g.outgoing(VertexId(1), a), &[] as &[VertexId]);
        assert_eq!(g.outgoing(VertexId(0), b), &[VertexId(1)]);
    }

    #[test]
    fn word_of_path_concatenates_labels() {
        let g = fig2_graph();
        let a = g.label_id("a").unwrap();
        let b = g.label_id("b").unwrap();
        let p = Path {
            start: VertexId(0),
            steps: vec![(a, VertexId(0)), (b, VertexId(1))],
        };
        assert_eq!(g.word_of_path(&p).unwrap(), vec![a, b]);

        assert_eq!(g.word_of_path(&Path::empty(VertexId(0))).unwrap(), vec![]);

        let p2 = Path {
            start: VertexId(0),
            steps: vec![(a, VertexId(0)), (a, VertexId(0)), (b, VertexId(1)), (b, VertexId(0))],
        };
        assert_eq!(g.word_of_path(&p2).unwrap(), vec![a, a, b, b]);
    }

    #[test]
    fn word_of_path_rejects_non_edges() {
        let g = fig2_graph();
        let a = g.label_id("a").unwrap();
        let p = Path {
            start: VertexId(1),
            steps: vec![(a, VertexId(0))],
        };
        assert!(matches!(
            g.word_of_path(&p),
            Err(GraphError::InvalidPathStep { step: 0, .. })
        ));
    }

    #[test]
    fn stats_counts_per_label() {
        let g = fig2_graph();
        let s = g.stats();
        assert_eq!(s.vertex_count, 2);
        assert_eq!(s.edge_count, 3);
        assert_eq!(s.label_counts, vec![("a".into(), 1), ("b".into(), 2)]);
    }

    // Runs only when the CFPQ_Data "core" graph is supplied by the user.
    #[test]
    fn core_graph_stats_if_present() {
        let path = match std::env::var("CFPQ_CORE_GRAPH") {
            Ok(p) => p,
            Err(_) => return,
        };
        let text = std::fs::read_to_string(path).unwrap();
        let g = load_edge_list(&text, &LoadOptions::default()).unwrap();
        let s = g.stats();
        assert_eq!(s.vertex_count, 1323);
        assert_eq!(s.edge_count, 2752);
        let sc = s
            .label_counts
            .iter()
            .find(|(n, _)| n == "subClassOf")
            .map(|&(_, c)| c);
        assert_eq!(sc, Some(178));
    }

    #[test]
    fn round_trip_preserves_the_edge_multiset() {
        let g = load_edge_list("0 a 0\n0 b 1\n1 b 0\n0 b 1", &LoadOptions::default()).unwrap();
        let text = g.to_edge_list_text();
        let g2 = load_edge_list(&text, &LoadOptions::default()).unwrap();
        assert_eq!(g.edges(), g2.edges());
        assert_eq!(g.to_edge_list_text(), g2.to_edge_list_text());
    }

    #[test]
    fn add_inverse_doubles_edges_and_used_labels() {
        let base = "0 a 1\n1 b 2\n2 a 0";
        let plain = load_edge_list(base, &LoadOptions::default()).unwrap();
        let inv = load_edge_list(
            base,
            &LoadOptions {
                add_inverse: true,
                inverse_suffix: "_r".into(),
            },
        )
        .unwrap();
        assert_eq!(inv.edge_count(), 2 * plain.edge_count());
        assert_eq!(inv.label_count(), 2 * plain.label_count());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn edge_list_strategy() -> impl Strategy<Value = String> {
            let token = prop::sample::select(vec!["0", "1", "2", "v3", "x", "a", "b", "c"]);
            prop::collection::vec((token.clone(), token.clone(), token), 0..30).prop_map(|edges| {
                edges
                    .into_iter()
                    .map(|(s, l, t)| format!("{s} {l} {t}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }

        proptest! {
            #[test]
            fn serialize_reload_round_trip(text in edge_list_strategy()) {
                let g = load_edge_list(&text, &LoadOptions::default()).unwrap();
                let g2 = load_edge_list(&g.to_edge_list_text(), &LoadOptions::default()).unwrap();
                let name = |g: &Graph, e: &(VertexId, LabelId, VertexId)| {
                    (g.vertex_name(e.0).to_string(), g.label_name(e.1).to_string(), g.vertex_name(e.2).to_string())
                };
                let e1: Vec<_> = g.edges().iter().map(|e| name(&g, e)).collect();
                let e2: Vec<_> = g2.edges().iter().map(|e| name(&g2, e)).collect();
                prop_assert_eq!(e1, e2);
            }

            #[test]
            fn outgoing_counts_match_edge_multiset(text in edge_list_strategy()) {
                let g = load_edge_list(&text, &LoadOptions::default()).unwrap();
                for v in g.vertices() {
                    for l in 0..g.label_count() as u32 {
                        let l = LabelId(l);
                        let expected = g.edges().iter().filter(|&&(s, lbl, _)| s == v && lbl == l).count();
                        prop_assert_eq!(g.outgoing(v, l).len(), expected);
                    }
                }
            }
        }
    }
}
