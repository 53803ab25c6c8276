//! Undirected simple graphs with contiguous vertex ids and edge-list I/O.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// Bidirectional map between vertex ids and external string labels.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl Labels {
    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.names.len();
        self.names.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Immutable undirected simple graph.
///
/// Adjacency lists are sorted and duplicate free, `u ∈ adj(v)` iff
/// `v ∈ adj(u)`, and no vertex is its own neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
    labels: Option<Labels>,
}

/// Bookkeeping reported by [`load_edge_list`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub self_loops_dropped: usize,
    pub duplicate_edges_dropped: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Self-loops and duplicates are dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let (graph, _) = Self::build(n, edges, None)?;
        Ok(graph)
    }

    fn build(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
        labels: Option<Labels>,
    ) -> Result<(Self, LoadStats)> {
        let mut adjacency = vec![Vec::new(); n];
        let mut stats = LoadStats::default();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut half_edges = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            stats.duplicate_edges_dropped += before - list.len();
            half_edges += list.len();
        }
        // Each duplicated edge was counted once from each endpoint.
        stats.duplicate_edges_dropped /= 2;
        let graph = Graph { adjacency, edge_count: half_edges / 2, labels };
        Ok((graph, stats))
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// External label of `v`; the decimal id when the graph carries no labels.
    pub fn label(&self, v: VertexId) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels.name(v)),
            None => Cow::Owned(v.to_string()),
        }
    }

    /// Resolves an external label to a vertex id.
    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        match &self.labels {
            Some(labels) => labels.id(label),
            None => label.parse::<VertexId>().ok().filter(|&v| v < self.vertex_count()),
        }
    }

    /// Number of edges among the given vertices' pairs, i.e. triangles through `v`
    /// when `vertices` is (a subset of) the neighborhood of `v`.
    pub fn edges_within(&self, vertices: &[VertexId]) -> usize {
        let mut count = 0;
        for (i, &a) in vertices.iter().enumerate() {
            for &b in &vertices[i + 1..] {
                if self.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Local clustering coefficient over the full neighborhood.
    pub fn clustering_coefficient(&self, v: VertexId) -> f64 {
        let d = self.degree(v);
        if d < 2 {
            return 0.0;
        }
        let links = self.edges_within(self.neighbors(v));
        2.0 * links as f64 / (d * (d - 1)) as f64
    }

    /// Total number of triangles.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for (u, v) in self.edges() {
            count += intersect_count_above(self.neighbors(u), self.neighbors(v), v);
        }
        count
    }

    /// Checks the undirected/simple invariants. Used by tests and after ingestion.
    pub fn check_invariants(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(v, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list.iter().all(|&u| u != v && u < self.vertex_count() && self.adjacency[u].binary_search(&v).is_ok())
        })
    }

    /// Serializes the graph in the edge-list format accepted by [`load_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", self.label(u), self.label(v));
        }
        out
    }

    /// Subgraph induced by `members`, relabelled `0..members.len()` in the given order.
    pub fn induced(&self, members: &[VertexId]) -> Graph {
        let mut local = HashMap::with_capacity(members.len());
        for (i, &v) in members.iter().enumerate() {
            local.insert(v, i);
        }
        let mut adjacency = vec![Vec::new(); members.len()];
        let mut half = 0;
        for (i, &v) in members.iter().enumerate() {
            for &u in self.neighbors(v) {
                if let Some(&j) = local.get(&u) {
                    adjacency[i].push(j);
                }
            }
            adjacency[i].sort_unstable();
            half += adjacency[i].len();
        }
        Graph { adjacency, edge_count: half / 2, labels: None }
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut component = Vec::new();
            while let Some(v) = stack.pop() {
                component.push(v);
                for &u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }
}

/// Count of common elements greater than `floor` in two sorted slices.
fn intersect_count_above(a: &[VertexId], b: &[VertexId], floor: VertexId) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a[i] > floor {
                    count += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Parses a whitespace separated edge list, one edge per line.
///
/// Blank lines and lines starting with `#` are skipped. Labels are assigned
/// ids in order of first appearance.
pub fn load_edge_list(text: &str) -> Result<(Graph, LoadStats)> {
    let mut labels = Labels::default();
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match (fields.next(), fields.next(), fields.next()) {
            (Some(a), Some(b), None) => {
                let u = labels.intern(a);
                let v = labels.intern(b);
                edges.push((u, v));
            }
            _ => {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected two labels, found {:?}", line),
                })
            }
        }
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = labels.len();
    Graph::build(n, edges, Some(labels))
}
