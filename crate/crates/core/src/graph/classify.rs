use serde::{Deserialize, Serialize};

use super::Graph;

/// Structured graph families with known PCR constructions, tested in this
/// fixed order so that overlapping families (K3 is both a cycle and a
/// clique) always get the same tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BaseClass {
    SingleVertex,
    SingleEdge,
    Tree,
    Cycle,
    Clique,
    CompleteMultipartite,
    /// At most seven vertices and none of the above.
    SmallGraph,
    /// No tag applies.
    #[serde(rename = "None")]
    Unstructured,
}

pub const SMALL_GRAPH_BOUND: usize = 7;

pub fn classify_base(g: &Graph) -> BaseClass {
    let (n, m) = (g.n(), g.m());
    if n == 1 {
        return BaseClass::SingleVertex;
    }
    if n == 2 && m == 1 {
        return BaseClass::SingleEdge;
    }
    let connected = g.is_connected();
    if connected && m + 1 == n {
        return BaseClass::Tree;
    }
    if connected && n >= 3 && (0..n).all(|i| g.degree(i) == 2) {
        return BaseClass::Cycle;
    }
    if n >= 2 && g.is_complete() {
        return BaseClass::Clique;
    }
    if connected && is_complete_multipartite(g) {
        return BaseClass::CompleteMultipartite;
    }
    if n <= SMALL_GRAPH_BOUND {
        return BaseClass::SmallGraph;
    }
    BaseClass::Unstructured
}

/// True iff non-adjacency is an equivalence relation, i.e. the complement is
/// a disjoint union of cliques.
pub fn is_complete_multipartite(g: &Graph) -> bool {
    multipartite_parts(g).is_some()
}

/// The parts of a complete multipartite graph (each sorted by label, parts
/// ordered by their first member), or `None` if `g` is not one.
pub fn multipartite_parts(g: &Graph) -> Option<Vec<Vec<String>>> {
    let n = g.n();
    let mut part = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        if part[i] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&j| j == i || !g.adjacent(i, j)).collect();
        for &j in &members {
            if part[j] != usize::MAX {
                return None;
            }
            part[j] = parts.len();
        }
        parts.push(members);
    }
    for i in 0..n {
        for j in i + 1..n {
            if (part[i] == part[j]) == g.adjacent(i, j) {
                return None;
            }
        }
    }
    let mut out: Vec<Vec<String>> = parts
        .into_iter()
        .map(|p| {
            let mut v: Vec<String> = p.into_iter().map(|i| g.label(i).to_string()).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    Some(out)
}
