//! Edge-weighted trees and pairwise compatibility representations.
//!
//! A [`Pcr`] is a weighted tree plus a closed distance window
//! `[d_min, d_max]`. Its induced graph has the tree's leaves as vertices and
//! joins two leaves exactly when their path weight lies in the window.
//! Everything is exact rational arithmetic.

mod dot;
mod json;
mod tree;

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::{self, Rational};

pub use dot::to_dot;
pub use json::{pcr_from_json, pcr_to_json, PcrJson};
pub(crate) use tree::fresh_label;
pub use tree::{TreeEdge, WeightedTree};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PcrError {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("unknown tree vertex {0:?}")]
    UnknownVertex(String),
    #[error("no tree edge between {0:?} and {1:?}")]
    NoSuchEdge(String, String),
    #[error("{0:?} is not a leaf")]
    NotALeaf(String),
    #[error("label {0:?} is already in use")]
    LabelCollision(String),
    #[error("offset {offset} outside [0, {weight}]")]
    OffsetOutOfRange { offset: String, weight: String },
    #[error("bounds must satisfy 0 <= d_min <= d_max (got {d_min}, {d_max})")]
    InvalidBounds { d_min: String, d_max: String },
    #[error("leaf subset is empty")]
    EmptySubset,
    #[error("leaf labels and graph vertices differ (tree only: {tree_only:?}, graph only: {graph_only:?})")]
    LabelMismatch {
        tree_only: Vec<String>,
        graph_only: Vec<String>,
    },
    #[error("malformed PCR JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pcr {
    tree: WeightedTree,
    d_min: Rational,
    d_max: Rational,
}

impl Pcr {
    pub fn new(tree: WeightedTree, d_min: Rational, d_max: Rational) -> Result<Self, PcrError> {
        if d_min.is_negative() || d_min > d_max {
            return Err(PcrError::InvalidBounds {
                d_min: rational::format(&d_min),
                d_max: rational::format(&d_max),
            });
        }
        Ok(Self { tree, d_min, d_max })
    }

    pub fn tree(&self) -> &WeightedTree {
        &self.tree
    }

    pub fn d_min(&self) -> &Rational {
        &self.d_min
    }

    pub fn d_max(&self) -> &Rational {
        &self.d_max
    }

    pub fn into_parts(self) -> (WeightedTree, Rational, Rational) {
        (self.tree, self.d_min, self.d_max)
    }

    pub fn leaf_labels(&self) -> Vec<String> {
        self.tree.leaf_labels()
    }

    pub fn in_window(&self, d: &Rational) -> bool {
        &self.d_min <= d && d <= &self.d_max
    }

    /// The graph G(T, w, d_min, d_max) on the leaves of the tree, in tree
    /// vertex order. A one-vertex tree yields a single isolated vertex.
    pub fn induced_graph(&self) -> Graph {
        let leaves = self.tree.leaves();
        let mut g = Graph::with_vertices(leaves.iter().map(|&v| self.tree.label(v).to_string()))
            .expect("tree labels are unique");
        if self.tree.len() == 1 {
            return g;
        }
        let mut pos = vec![usize::MAX; self.tree.len()];
        for (i, &v) in leaves.iter().enumerate() {
            pos[v] = i;
        }
        for (i, &u) in leaves.iter().enumerate() {
            let dist = self.tree.distances_from(u);
            for &v in &leaves[i + 1..] {
                if self.in_window(&dist[v]) {
                    g.add_edge_idx(i, pos[v]).expect("distinct leaves");
                }
            }
        }
        g
    }

    /// Leaf-to-leaf distances, leaves in tree vertex order.
    pub fn leaf_distances(&self) -> Vec<Vec<Rational>> {
        let leaves = self.tree.leaves();
        leaves
            .iter()
            .map(|&u| {
                let d = self.tree.distances_from(u);
                leaves.iter().map(|&v| d[v].clone()).collect()
            })
            .collect()
    }

    /// (T<X>, w_X, d_min, d_max): prune away everything not on a path between
    /// two members of `x`. Degree-2 vertices left behind are kept and the
    /// surviving weights are copied verbatim.
    pub fn restrict<S: AsRef<str>>(&self, x: &[S]) -> Result<Pcr, PcrError> {
        if x.is_empty() {
            return Err(PcrError::EmptySubset);
        }
        let t = &self.tree;
        let mut keep = vec![false; t.len()];
        for l in x {
            let v = t.require(l.as_ref())?;
            if !t.is_leaf(v) {
                return Err(PcrError::NotALeaf(l.as_ref().to_string()));
            }
            keep[v] = true;
        }
        let mut alive = vec![true; t.len()];
        let mut deg: Vec<usize> = (0..t.len()).map(|v| t.degree(v)).collect();
        let mut queue: Vec<usize> = (0..t.len()).filter(|&v| deg[v] <= 1 && !keep[v]).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &(w, _) in t.incident(v) {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] <= 1 && !keep[w] {
                        queue.push(w);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; t.len()];
        let mut labels = Vec::new();
        for v in (0..t.len()).filter(|&v| alive[v]) {
            map[v] = labels.len();
            labels.push(t.label(v).to_string());
        }
        let edges = t
            .edges()
            .iter()
            .filter(|e| alive[e.a] && alive[e.b])
            .map(|e| TreeEdge {
                a: map[e.a],
                b: map[e.b],
                weight: e.weight.clone(),
            })
            .collect();
        let tree = WeightedTree::from_indexed(labels, edges)?;
        Pcr::new(tree, self.d_min.clone(), self.d_max.clone())
    }

    /// Checks that the leaves are exactly the vertices of `g` and that the
    /// induced graph has exactly the edges of `g`.
    pub fn verify(&self, g: &Graph) -> Result<bool, PcrError> {
        let leaves: BTreeSet<String> = self.leaf_labels().into_iter().collect();
        let verts = g.label_set();
        if leaves != verts {
            return Err(PcrError::LabelMismatch {
                tree_only: leaves.difference(&verts).cloned().collect(),
                graph_only: verts.difference(&leaves).cloned().collect(),
            });
        }
        Ok(self.induced_graph() == *g)
    }

    pub fn all_weights_positive(&self) -> bool {
        self.tree.edges().iter().all(|e| e.weight.is_positive())
    }

    /// At least three tree vertices, 0 < d_min < d_max, all weights positive.
    pub fn is_nonsingular(&self) -> bool {
        self.tree.len() >= 3 && self.d_min.is_positive() && self.d_min < self.d_max && self.all_weights_positive()
    }

    /// Non-singular with d_max = 1 and every leaf edge heavier than 1/4.
    pub fn is_normalized(&self) -> bool {
        let quarter = rational::ratio(1, 4);
        self.is_nonsingular()
            && self.d_max.is_one()
            && (0..self.tree.edges().len())
                .filter(|&k| self.tree.is_leaf_edge(k))
                .all(|k| self.tree.edges()[k].weight > quarter)
    }

    /// Renames leaves and inner vertices; see [`WeightedTree::relabel`].
    pub fn relabel(&self, map: &std::collections::HashMap<String, String>) -> Result<Pcr, PcrError> {
        Pcr::new(self.tree.relabel(map)?, self.d_min.clone(), self.d_max.clone())
    }

    /// Same tree with multifurcations resolved by zero-weight edges.
    pub fn binarize(&self) -> Pcr {
        Pcr {
            tree: self.tree.binarize(),
            d_min: self.d_min.clone(),
            d_max: self.d_max.clone(),
        }
    }

    /// Contracts every zero-weight edge between two inner vertices, one at a
    /// time, returning the contracted edges as `(kept, removed)` labels.
    pub fn contract_zero_inner_edges(&self) -> (Pcr, Vec<(String, String)>) {
        let mut tree = self.tree.clone();
        let mut done = Vec::new();
        while let Some(k) = (0..tree.edges().len()).find(|&k| !tree.is_leaf_edge(k) && tree.edges()[k].weight.is_zero())
        {
            let e = &tree.edges()[k];
            let (keep, gone) = if e.a < e.b { (e.a, e.b) } else { (e.b, e.a) };
            done.push((tree.label(keep).to_string(), tree.label(gone).to_string()));
            tree = tree.contract_edge(k);
        }
        let p = Pcr {
            tree,
            d_min: self.d_min.clone(),
            d_max: self.d_max.clone(),
        };
        (p, done)
    }
}

/// Inner-vertex labels of `trees` that collide with each other get renamed so
/// the trees can be glued into one. Leaf labels are left alone.
pub(crate) fn disjoint_inner_labels(trees: &mut [WeightedTree]) {
    let mut taken: HashSet<String> = trees.iter().flat_map(|t| t.leaf_labels()).collect();
    for t in trees.iter_mut() {
        let mut map = std::collections::HashMap::new();
        for v in t.inner_vertices() {
            let l = t.label(v).to_string();
            if taken.contains(&l) {
                let fresh = fresh_label(&l, |c| taken.contains(c) || t.contains(c));
                taken.insert(fresh.clone());
                map.insert(l, fresh);
            } else {
                taken.insert(l);
            }
        }
        if !map.is_empty() {
            *t = t.relabel(&map).expect("fresh labels are unique");
        }
    }
}
