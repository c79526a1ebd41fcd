use std::collections::{HashMap, HashSet};

use num_traits::{Signed, Zero};

use super::PcrError;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub weight: Rational,
}

impl TreeEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

/// A finite tree with labeled vertices and non-negative rational edge
/// weights. Leaves are the vertices of degree at most one, so a one-vertex
/// tree has a single leaf and a two-vertex tree has two.
///
/// Values are immutable; every operation returns a new tree.
#[derive(Debug, Clone)]
pub struct WeightedTree {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<TreeEdge>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for WeightedTree {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for WeightedTree {}

impl WeightedTree {
    /// Validates and builds a tree from labels and weighted label pairs.
    pub fn new<S: Into<String>>(
        vertices: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (String, String, Rational)>,
    ) -> Result<Self, PcrError> {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PcrError::InvalidTree(format!("duplicate vertex {l:?}")));
            }
        }
        let mut idx_edges = Vec::new();
        for (a, b, w) in edges {
            let ia = *index.get(&a).ok_or_else(|| PcrError::UnknownVertex(a.clone()))?;
            let ib = *index.get(&b).ok_or_else(|| PcrError::UnknownVertex(b.clone()))?;
            idx_edges.push(TreeEdge {
                a: ia,
                b: ib,
                weight: w,
            });
        }
        Self::from_parts(labels, index, idx_edges)
    }

    pub(crate) fn from_indexed(labels: Vec<String>, edges: Vec<TreeEdge>) -> Result<Self, PcrError> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(PcrError::InvalidTree(format!("duplicate vertex {l:?}")));
            }
        }
        Self::from_parts(labels, index, edges)
    }

    fn from_parts(labels: Vec<String>, index: HashMap<String, usize>, edges: Vec<TreeEdge>) -> Result<Self, PcrError> {
        let n = labels.len();
        if n == 0 {
            return Err(PcrError::InvalidTree("no vertices".into()));
        }
        if edges.len() + 1 != n {
            return Err(PcrError::InvalidTree(format!(
                "{n} vertices need {} edges, found {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for (k, e) in edges.iter().enumerate() {
            if e.a == e.b || e.a >= n || e.b >= n {
                return Err(PcrError::InvalidTree(format!("bad edge {}-{}", e.a, e.b)));
            }
            if e.weight.is_negative() {
                return Err(PcrError::InvalidTree(format!(
                    "negative weight on {}-{}",
                    labels[e.a], labels[e.b]
                )));
            }
            adj[e.a].push((e.b, k));
            adj[e.b].push((e.a, k));
        }
        // n - 1 edges plus connectivity rules out cycles and parallel edges.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(PcrError::InvalidTree("not connected".into()));
        }
        Ok(Self {
            labels,
            index,
            edges,
            adj,
        })
    }

    pub fn single(label: impl Into<String>) -> Self {
        Self::new([label.into()], []).expect("one vertex is a tree")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
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

    pub(crate) fn require(&self, label: &str) -> Result<usize, PcrError> {
        self.index_of(label)
            .ok_or_else(|| PcrError::UnknownVertex(label.to_string()))
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs around `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) <= 1
    }

    /// Leaf indices in vertex order.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_labels(&self) -> Vec<String> {
        self.leaves().into_iter().map(|v| self.labels[v].clone()).collect()
    }

    pub fn inner_vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.is_leaf(v)).collect()
    }

    pub fn is_leaf_edge(&self, e: usize) -> bool {
        let e = &self.edges[e];
        self.is_leaf(e.a) || self.is_leaf(e.b)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, k)| k)
    }

    pub fn weight(&self, u: &str, v: &str) -> Result<&Rational, PcrError> {
        let (iu, iv) = (self.require(u)?, self.require(v)?);
        let k = self
            .edge_between(iu, iv)
            .ok_or_else(|| PcrError::NoSuchEdge(u.to_string(), v.to_string()))?;
        Ok(&self.edges[k].weight)
    }

    /// Distances from `src` to every vertex.
    pub fn distances_from(&self, src: usize) -> Vec<Rational> {
        let mut dist = vec![Rational::zero(); self.len()];
        let mut seen = vec![false; self.len()];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(v) = stack.pop() {
            for &(w, k) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    dist[w] = &dist[v] + &self.edges[k].weight;
                    stack.push(w);
                }
            }
        }
        dist
    }

    /// Path-weight sum between two labeled vertices.
    pub fn distance(&self, u: &str, v: &str) -> Result<Rational, PcrError> {
        let (iu, iv) = (self.require(u)?, self.require(v)?);
        Ok(self.distances_from(iu).swap_remove(iv))
    }

    /// The vertex sequence of the unique path from `u` to `v`.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.len()];
        parent[u] = u;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            if x == v {
                break;
            }
            for &(w, _) in &self.adj[x] {
                if parent[w] == usize::MAX {
                    parent[w] = x;
                    stack.push(w);
                }
            }
        }
        let mut out = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            out.push(x);
        }
        out.reverse();
        out
    }

    /// A label not used by this tree, derived from `base`.
    pub fn fresh_label(&self, base: &str) -> String {
        fresh_label(base, |l| self.contains(l))
    }

    /// The first `#k` label not used by this tree. Inner vertices created by
    /// the toolkit are named this way.
    pub fn fresh_inner_label(&self) -> String {
        (0..)
            .map(|k| format!("#{k}"))
            .find(|l| !self.contains(l))
            .expect("unbounded search")
    }

    /// Makes `label` available for a new leaf: an inner vertex carrying it is
    /// renamed, a leaf carrying it is a collision.
    pub fn free_label(&self, label: &str) -> Result<WeightedTree, PcrError> {
        match self.index_of(label) {
            None => Ok(self.clone()),
            Some(v) if self.is_leaf(v) => Err(PcrError::LabelCollision(label.to_string())),
            Some(_) => {
                let mut map = HashMap::new();
                map.insert(label.to_string(), self.fresh_inner_label());
                self.relabel(&map)
            }
        }
    }

    /// Splits edge `u1-u2` by a new vertex at distance `offset` from `u1`.
    pub fn subdivide_at_point(
        &self,
        u1: &str,
        u2: &str,
        offset: &Rational,
        label: &str,
    ) -> Result<WeightedTree, PcrError> {
        let (a, b) = (self.require(u1)?, self.require(u2)?);
        let k = self
            .edge_between(a, b)
            .ok_or_else(|| PcrError::NoSuchEdge(u1.to_string(), u2.to_string()))?;
        if self.contains(label) {
            return Err(PcrError::LabelCollision(label.to_string()));
        }
        let w = &self.edges[k].weight;
        if offset.is_negative() || offset > w {
            return Err(PcrError::OffsetOutOfRange {
                offset: rational::format(offset),
                weight: rational::format(w),
            });
        }
        let mut labels = self.labels.clone();
        let c = labels.len();
        labels.push(label.to_string());
        let mut edges = self.edges.clone();
        edges[k] = TreeEdge {
            a,
            b: c,
            weight: offset.clone(),
        };
        edges.push(TreeEdge {
            a: c,
            b,
            weight: w - offset,
        });
        Self::from_indexed(labels, edges)
    }

    /// Identifies the endpoints of edge `k`; the endpoint listed first in
    /// vertex order keeps its label. Distances between surviving vertices
    /// change by the edge weight, so callers contract zero-weight edges.
    pub fn contract_edge(&self, k: usize) -> WeightedTree {
        let e = &self.edges[k];
        let (keep, gone) = if e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
        let remap = |v: usize| {
            let v = if v == gone { keep } else { v };
            if v > gone {
                v - 1
            } else {
                v
            }
        };
        let labels: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != gone)
            .map(|(_, l)| l.clone())
            .collect();
        let edges: Vec<TreeEdge> = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, e)| TreeEdge {
                a: remap(e.a),
                b: remap(e.b),
                weight: e.weight.clone(),
            })
            .collect();
        Self::from_indexed(labels, edges).expect("contraction keeps a tree")
    }

    /// Removes every degree-2 vertex, merging its two edges into one edge
    /// carrying the summed weight. Leaf distances are unchanged.
    pub fn smooth_degree_two(&self) -> WeightedTree {
        let mut t = self.clone();
        while let Some(v) = (0..t.len()).find(|&v| t.degree(v) == 2) {
            let (x, kx) = t.adj[v][0];
            let (y, ky) = t.adj[v][1];
            let w = &t.edges[kx].weight + &t.edges[ky].weight;
            let mut labels = t.labels.clone();
            labels.remove(v);
            let shift = |u: usize| if u > v { u - 1 } else { u };
            let mut edges: Vec<TreeEdge> = Vec::new();
            for (j, e) in t.edges.iter().enumerate() {
                if j == kx {
                    edges.push(TreeEdge {
                        a: shift(x),
                        b: shift(y),
                        weight: w.clone(),
                    });
                } else if j != ky {
                    edges.push(TreeEdge {
                        a: shift(e.a),
                        b: shift(e.b),
                        weight: e.weight.clone(),
                    });
                }
            }
            t = Self::from_indexed(labels, edges).expect("smoothing keeps a tree");
        }
        t
    }

    /// Resolves every vertex of degree >= 4 into a chain of degree-3
    /// vertices joined by zero-weight edges. Leaf distances are unchanged.
    pub fn binarize(&self) -> WeightedTree {
        let mut labels = self.labels.clone();
        let mut edges = self.edges.clone();
        let mut taken: HashSet<String> = labels.iter().cloned().collect();
        for v in 0..self.len() {
            let inc = &self.adj[v];
            if inc.len() <= 3 {
                continue;
            }
            // v keeps its first two edges; the rest move down a chain.
            let mut current = v;
            let rest = &inc[2..];
            for (pos, &(_, k)) in rest.iter().enumerate() {
                let remaining = rest.len() - pos;
                if remaining == 1 {
                    let e = &mut edges[k];
                    if e.a == v {
                        e.a = current;
                    } else {
                        e.b = current;
                    }
                    break;
                }
                let label = fresh_label(&format!("{}~", self.labels[v]), |l| taken.contains(l));
                taken.insert(label.clone());
                let x = labels.len();
                labels.push(label);
                edges.push(TreeEdge {
                    a: current,
                    b: x,
                    weight: Rational::zero(),
                });
                let e = &mut edges[k];
                if e.a == v {
                    e.a = x;
                } else {
                    e.b = x;
                }
                current = x;
            }
        }
        Self::from_indexed(labels, edges).expect("binarization keeps a tree")
    }

    /// Renames vertices through `map`; unmapped labels are kept.
    pub fn relabel(&self, map: &HashMap<String, String>) -> Result<WeightedTree, PcrError> {
        let labels = self
            .labels
            .iter()
            .map(|l| map.get(l).cloned().unwrap_or_else(|| l.clone()))
            .collect();
        Self::from_indexed(labels, self.edges.clone())
    }

    /// Hangs a new leaf `label` off vertex `at`.
    pub fn attach_leaf(&self, at: &str, label: &str, weight: Rational) -> Result<WeightedTree, PcrError> {
        let a = self.require(at)?;
        if self.contains(label) {
            return Err(PcrError::LabelCollision(label.to_string()));
        }
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let mut edges = self.edges.clone();
        edges.push(TreeEdge {
            a,
            b: labels.len() - 1,
            weight,
        });
        Self::from_indexed(labels, edges)
    }

    /// Edges as `(label, label, weight)` triples.
    pub fn labeled_edges(&self) -> Vec<(String, String, Rational)> {
        self.edges
            .iter()
            .map(|e| (self.labels[e.a].clone(), self.labels[e.b].clone(), e.weight.clone()))
            .collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

pub(crate) fn fresh_label(base: &str, taken: impl Fn(&str) -> bool) -> String {
    if !taken(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}{i}"))
        .find(|l| !taken(l))
        .expect("unbounded search")
}
