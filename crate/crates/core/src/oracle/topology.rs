//! Unrooted binary tree shapes over a labeled leaf set.
//!
//! Leaves are `0..n`; inner vertices are `n..2n-2`. Shapes are produced by
//! inserting leaf `k` into every edge of each shape on leaves `0..k`, which
//! yields every shape exactly once: (2n-5)!! of them for n >= 3.

use std::collections::HashMap;

use crate::pcr::WeightedTree;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    leaves: usize,
    edges: Vec<(usize, usize)>,
}

impl Topology {
    /// The single edge on two leaves, or the 3-star on three.
    fn base(leaves: usize) -> Self {
        match leaves {
            2 => Self {
                leaves: 2,
                edges: vec![(0, 1)],
            },
            _ => Self {
                leaves: 3,
                edges: vec![(0, 3), (1, 3), (2, 3)],
            },
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Adds leaf `self.leaves` on edge `e`, renumbering so leaves stay
    /// `0..n` and inner vertices follow.
    fn insert(&self, e: usize) -> Self {
        let old_n = self.leaves;
        let shift = |v: usize| if v >= old_n { v + 1 } else { v };
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        let leaf = old_n;
        let inner = self.vertex_count() + 1;
        let (a, b) = edges[e];
        edges[e] = (a, inner);
        edges.push((inner, b));
        edges.push((inner, leaf));
        Self {
            leaves: old_n + 1,
            edges,
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// For every leaf pair `(i, j)` with `i < j`, the edge indices on the
    /// path between them. Pairs are listed row by row.
    pub fn leaf_paths(&self) -> Vec<((usize, usize), Vec<usize>)> {
        let nv = self.vertex_count();
        let mut adj = vec![Vec::new(); nv];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            adj[a].push((b, k));
            adj[b].push((a, k));
        }
        let mut out = Vec::new();
        for i in 0..self.leaves {
            let mut via = vec![usize::MAX; nv];
            let mut parent = vec![usize::MAX; nv];
            parent[i] = i;
            let mut stack = vec![i];
            while let Some(v) = stack.pop() {
                for &(w, k) in &adj[v] {
                    if parent[w] == usize::MAX {
                        parent[w] = v;
                        via[w] = k;
                        stack.push(w);
                    }
                }
            }
            for j in i + 1..self.leaves {
                let mut path = Vec::new();
                let mut x = j;
                while x != i {
                    path.push(via[x]);
                    x = parent[x];
                }
                path.sort_unstable();
                out.push(((i, j), path));
            }
        }
        out
    }

    /// The set of nontrivial splits, each given as the side not containing
    /// leaf 0, sorted. Two shapes are the same unrooted tree iff their codes
    /// agree.
    pub fn canonical_code(&self) -> Vec<u64> {
        assert!(self.leaves <= 64, "canonical code supports up to 64 leaves");
        let nv = self.vertex_count();
        let mut adj = vec![Vec::new(); nv];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // Root at leaf 0; each non-root vertex's subtree is one split side.
        let mut order = vec![0];
        let mut parent = vec![usize::MAX; nv];
        parent[0] = 0;
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut below = vec![0u64; nv];
        for &v in order.iter().rev() {
            if v < self.leaves {
                below[v] |= 1 << v;
            }
            if v != 0 {
                below[parent[v]] |= below[v];
            }
        }
        let mut code: Vec<u64> = (self.leaves..nv)
            .filter(|&v| parent[v] >= self.leaves)
            .map(|v| below[v])
            .collect();
        code.sort_unstable();
        code
    }

    /// Reads a tree whose inner vertices all have degree three (after
    /// smoothing degree-2 vertices) as a topology, with leaf `i` being
    /// `leaf_order[i]`.
    pub fn from_tree(tree: &WeightedTree, leaf_order: &[String]) -> Option<Topology> {
        let t = tree.smooth_degree_two();
        let n = leaf_order.len();
        if t.leaves().len() != n || (n >= 3 && t.inner_vertices().iter().any(|&v| t.degree(v) != 3)) {
            return None;
        }
        let mut id = HashMap::new();
        for (i, l) in leaf_order.iter().enumerate() {
            let v = t.index_of(l)?;
            if !t.is_leaf(v) {
                return None;
            }
            id.insert(v, i);
        }
        for (k, v) in t.inner_vertices().into_iter().enumerate() {
            id.insert(v, n + k);
        }
        let edges = t.edges().iter().map(|e| (id[&e.a], id[&e.b])).collect();
        Some(Topology { leaves: n, edges })
    }
}

/// Streams every topology on `n >= 2` leaves in a fixed order.
pub struct TopologyIter {
    target: usize,
    stack: Vec<Topology>,
}

impl Iterator for TopologyIter {
    type Item = Topology;

    fn next(&mut self) -> Option<Topology> {
        while let Some(t) = self.stack.pop() {
            if t.leaves == self.target {
                return Some(t);
            }
            for e in (0..t.edges.len()).rev() {
                self.stack.push(t.insert(e));
            }
        }
        None
    }
}

pub fn enumerate_topologies(n: usize) -> TopologyIter {
    assert!(n >= 2, "topologies need at least two leaves");
    TopologyIter {
        target: n,
        stack: vec![Topology::base(n.min(3))],
    }
}

/// (2n-5)!! for n >= 3, and 1 for n = 2.
pub fn topology_count(n: usize) -> u64 {
    (3..=n).map(|k| (2 * k - 5) as u64).product()
}
