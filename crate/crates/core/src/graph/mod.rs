//! Labeled simple undirected graphs.
//!
//! Vertices carry opaque string labels and keep their insertion order. Two
//! graphs compare equal when they have the same label set and the same edges
//! between those labels; insertion order does not matter.

mod classify;
mod decompose;
mod edgelist;
mod graph6;
mod twins;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use classify::{classify_base, is_complete_multipartite, multipartite_parts, BaseClass};
pub use decompose::{biconnected_components, connected_components, cut_vertices, Block};
pub use edgelist::{parse_edge_list, write_edge_list};
pub use graph6::{parse_graph6, write_graph6};
pub use twins::{find_twins, TrueTwinClass, Twins};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),
    #[error("self-loop at {0:?}")]
    SelfLoop(String),
    #[error("malformed graph6: {0}")]
    Graph6(String),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("graph is not connected")]
    Disconnected,
}

/// Input formats understood by [`parse_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Graph6,
    EdgeList,
}

pub fn parse_graph(input: &str, format: Format) -> Result<Graph, GraphError> {
    match format {
        Format::Graph6 => parse_graph6(input),
        Format::EdgeList => parse_edge_list(input),
    }
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I, S>(labels: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph::new();
        for l in labels {
            g.add_vertex(l)?;
        }
        Ok(g)
    }

    /// Builds a graph from vertex labels and label pairs. Every edge endpoint
    /// must be listed among `vertices`.
    pub fn from_edges<I, S, E, T>(vertices: I, edges: E) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut g = Graph::with_vertices(vertices)?;
        for (a, b) in edges {
            g.add_edge(a.as_ref(), b.as_ref())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize, GraphError> {
        let label = label.into();
        if self.index.contains_key(&label) {
            return Err(GraphError::DuplicateVertex(label));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.adj.push(BTreeSet::new());
        Ok(id)
    }

    /// Returns the index of `label`, adding the vertex if needed.
    pub fn ensure_vertex(&mut self, label: &str) -> usize {
        match self.index.get(label) {
            Some(&i) => i,
            None => self.add_vertex(label).expect("label checked absent"),
        }
    }

    /// Adds the edge `ab`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.add_edge_idx(i, j)
    }

    pub fn add_edge_idx(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        if i == j {
            return Err(GraphError::SelfLoop(self.labels[i].clone()));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.adj[i].remove(&j);
        self.adj[j].remove(&i);
        Ok(())
    }

    fn require(&self, label: &str) -> Result<usize, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_string()))
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(&j)
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adjacent(i, j),
            _ => false,
        }
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().copied()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    /// Open neighborhood N(v) as a label set.
    pub fn neighborhood(&self, label: &str) -> Result<BTreeSet<String>, GraphError> {
        let i = self.require(label)?;
        Ok(self.adj[i].iter().map(|&j| self.labels[j].clone()).collect())
    }

    /// Closed neighborhood N[v] as a label set.
    pub fn closed_neighborhood(&self, label: &str) -> Result<BTreeSet<String>, GraphError> {
        let mut s = self.neighborhood(label)?;
        s.insert(label.to_string());
        Ok(s)
    }

    /// Edges as index pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m());
        for (i, nb) in self.adj.iter().enumerate() {
            for &j in nb.range(i + 1..) {
                out.push((i, j));
            }
        }
        out
    }

    /// Edges as label pairs with the smaller label first.
    pub fn edge_labels(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .into_iter()
            .map(|(i, j)| ordered_pair(&self.labels[i], &self.labels[j]))
            .collect()
    }

    pub fn label_set(&self) -> BTreeSet<String> {
        self.labels.iter().cloned().collect()
    }

    /// The induced subgraph G[X]. Vertices keep their relative order from
    /// `self`; unknown labels are an error.
    pub fn induced<S: AsRef<str>>(&self, keep: &[S]) -> Result<Graph, GraphError> {
        let mut chosen = vec![false; self.n()];
        for l in keep {
            chosen[self.require(l.as_ref())?] = true;
        }
        Ok(self.induced_by_mask(&chosen))
    }

    pub(crate) fn induced_by_mask(&self, chosen: &[bool]) -> Graph {
        let mut g = Graph::new();
        let mut map = vec![usize::MAX; self.n()];
        for i in (0..self.n()).filter(|&i| chosen[i]) {
            map[i] = g.add_vertex(self.labels[i].clone()).expect("labels are unique");
        }
        for (i, j) in self.edges() {
            if chosen[i] && chosen[j] {
                g.add_edge_idx(map[i], map[j]).expect("no self-loops");
            }
        }
        g
    }

    /// G − v.
    pub fn without(&self, label: &str) -> Result<Graph, GraphError> {
        let i = self.require(label)?;
        let mut mask = vec![true; self.n()];
        mask[i] = false;
        Ok(self.induced_by_mask(&mask))
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::with_vertices(self.labels.iter().cloned()).expect("labels are unique");
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if !self.adjacent(i, j) {
                    g.add_edge_idx(i, j).expect("i != j");
                }
            }
        }
        g
    }

    /// Renames vertices through `f`. The renamed labels must stay unique.
    pub fn relabel<F: Fn(&str) -> String>(&self, f: F) -> Result<Graph, GraphError> {
        let mut g = Graph::with_vertices(self.labels.iter().map(|l| f(l)))?;
        for (i, j) in self.edges() {
            g.add_edge_idx(i, j)?;
        }
        Ok(g)
    }

    /// Union of vertex and edge sets; shared labels are identified.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut g = self.clone();
        for l in &other.labels {
            g.ensure_vertex(l);
        }
        for (i, j) in other.edges() {
            g.add_edge(&other.labels[i], &other.labels[j])
                .expect("endpoints present");
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|nb| nb.len() + 1 == n)
    }

    // A few named families, labeled v0..v{n-1}.

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::numbered(n);
        for i in 1..n {
            g.add_edge_idx(i - 1, i).expect("distinct");
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge_idx(n - 1, 0).expect("distinct");
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        Graph::numbered(n).complement()
    }

    /// Complete multipartite graph; part `p` occupies a consecutive run of
    /// labels.
    pub fn complete_multipartite(sizes: &[usize]) -> Graph {
        let n = sizes.iter().sum();
        let mut part = Vec::with_capacity(n);
        for (p, &s) in sizes.iter().enumerate() {
            part.extend(std::iter::repeat_n(p, s));
        }
        let mut g = Graph::numbered(n);
        for i in 0..n {
            for j in i + 1..n {
                if part[i] != part[j] {
                    g.add_edge_idx(i, j).expect("distinct");
                }
            }
        }
        g
    }

    pub fn numbered(n: usize) -> Graph {
        Graph::with_vertices((0..n).map(|i| format!("v{i}"))).expect("labels are unique")
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.m() == other.m()
            && self.labels.iter().all(|l| other.contains(l))
            && self.edge_labels() == other.edge_labels()
    }
}

impl Eq for Graph {}

/// JSON shape of a graph: vertex labels in order, then edges as label pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            vertices: g.labels.clone(),
            edges: g
                .edges()
                .into_iter()
                .map(|(i, j)| (g.labels[i].clone(), g.labels[j].clone()))
                .collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, GraphError> {
        Graph::from_edges(j.vertices, j.edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Graph::try_from(GraphJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}
