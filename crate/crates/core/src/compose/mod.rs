//! Building larger PCRs from smaller ones.
//!
//! The four operations here are the inverses of the reduction rules: a
//! disjoint union, gluing at a shared vertex, and adding a false or true
//! twin. Each one keeps the induced graph of every input intact and adds
//! exactly the expected new vertices and edges.

mod cache;
mod families;

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::GraphError;
use crate::normalize::{critical_alpha_of, make_normalized, NormalizeError};
use crate::pcr::{disjoint_inner_labels, Pcr, PcrError, WeightedTree};
use crate::rational::{self, Rational};

pub use cache::{build_cycle_cache, cycle_cache, CycleCache, CACHE_VERSION, CYCLE_MAX, CYCLE_MIN};
pub use families::{cactus, clique, complete_multipartite, cycle, generate, Family};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("need at least two inputs")]
    TooFewInputs,
    #[error("leaf label {0:?} is used more than once")]
    LabelCollision(String),
    #[error("{0:?} is not a leaf of every input")]
    MissingVertex(String),
    #[error("{0:?} and {1:?} are not true twins")]
    NotTrueTwins(String, String),
    #[error("not a cactus: {0}")]
    NotACactus(String),
    #[error("no cached cycle witness for length {0}")]
    CycleLength(usize),
    #[error("parts of a complete multipartite graph must be nonempty")]
    EmptyPart,
    #[error("cycle cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Pcr(#[from] PcrError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Weight of the edges that hang each component off the new root.
const JOIN_WEIGHT: i64 = 2;

/// Bounds used when no input has a window of its own (all single leaves).
fn default_alpha() -> Rational {
    rational::ratio(3, 4)
}

/// A ratio every multi-leaf input can be normalized to. Inputs already
/// normalized to one shared ratio keep it.
fn common_alpha(ps: &[&Pcr]) -> Result<Option<Rational>, ComposeError> {
    let multi: Vec<&Pcr> = ps.iter().copied().filter(|p| p.leaf_labels().len() >= 2).collect();
    if multi.is_empty() {
        return Ok(None);
    }
    if multi.iter().all(|p| p.is_normalized() && p.d_min() == multi[0].d_min()) {
        return Ok(Some(multi[0].d_min().clone()));
    }
    let mut top = critical_alpha_of(multi[0])?;
    for p in &multi[1..] {
        let c = critical_alpha_of(p)?;
        if c > top {
            top = c;
        }
    }
    Ok(Some(rational::half(&(top + Rational::one()))))
}

fn normalize_to(p: &Pcr, alpha: &Option<Rational>) -> Result<Pcr, ComposeError> {
    match alpha {
        Some(a) if p.leaf_labels().len() >= 2 => {
            if p.is_normalized() && p.d_min() == a {
                Ok(p.clone())
            } else {
                Ok(make_normalized(p, Some(a))?.0)
            }
        }
        _ => Ok(p.clone()),
    }
}

/// The first `#k` not used by any of `trees` and not in `avoid`.
fn fresh_inner(trees: &[&WeightedTree], avoid: &[&str]) -> String {
    (0..)
        .map(|k| format!("#{k}"))
        .find(|l| !avoid.contains(&l.as_str()) && trees.iter().all(|t| !t.contains(l)))
        .expect("unbounded search")
}

fn check_disjoint_leaves(ps: &[&Pcr], shared: Option<&str>) -> Result<(), ComposeError> {
    let mut seen = HashSet::new();
    for p in ps {
        for l in p.leaf_labels() {
            if Some(l.as_str()) != shared && !seen.insert(l.clone()) {
                return Err(ComposeError::LabelCollision(l));
            }
        }
    }
    Ok(())
}

/// The only neighbor of leaf `v` and the weight of its edge.
fn leaf_edge(t: &WeightedTree, v: &str) -> Result<(String, Rational), ComposeError> {
    let i = t
        .index_of(v)
        .ok_or_else(|| ComposeError::MissingVertex(v.to_string()))?;
    if !t.is_leaf(i) || t.len() < 2 {
        return Err(PcrError::NotALeaf(v.to_string()).into());
    }
    let (u, k) = t.incident(i)[0];
    Ok((t.label(u).to_string(), t.edges()[k].weight.clone()))
}

/// Disjoint union. Every multi-leaf input is normalized to a common ratio
/// alpha and hung off a new root by one of its inner vertices with an edge
/// of weight 2; single-leaf inputs hang off the root directly. Leaves of
/// different inputs end up more than 4 apart, far outside `[alpha, 1]`.
pub fn join_components(ps: &[Pcr]) -> Result<Pcr, ComposeError> {
    if ps.len() < 2 {
        return Err(ComposeError::TooFewInputs);
    }
    let refs: Vec<&Pcr> = ps.iter().collect();
    check_disjoint_leaves(&refs, None)?;
    let alpha = common_alpha(&refs)?;
    let mut trees = ps
        .iter()
        .map(|p| Ok(normalize_to(p, &alpha)?.tree().clone()))
        .collect::<Result<Vec<_>, ComposeError>>()?;
    disjoint_inner_labels(&mut trees);
    let root = fresh_inner(&trees.iter().collect::<Vec<_>>(), &[]);
    let mut vertices = vec![root.clone()];
    let mut edges = Vec::new();
    for t in &trees {
        vertices.extend(t.labels().iter().cloned());
        edges.extend(t.labeled_edges());
        let hook = match t.inner_vertices().first() {
            Some(&v) => t.label(v).to_string(),
            None => t.label(0).to_string(),
        };
        edges.push((root.clone(), hook, rational::int(JOIN_WEIGHT)));
    }
    let tree = WeightedTree::new(vertices, edges)?;
    Ok(Pcr::new(tree, alpha.unwrap_or_else(default_alpha), Rational::one())?)
}

/// Glues two PCRs whose leaf sets share exactly `v_star`. After normalizing
/// both to a common alpha, the two leaf edges at `v_star` are redirected to
/// a new vertex `v'`, and `v_star` hangs off `v'` with weight 0. Distances
/// to `v_star` are unchanged, and leaves from different sides end up more
/// than 1 apart.
pub fn join_at_cut_vertex(p1: &Pcr, p2: &Pcr, v_star: &str) -> Result<Pcr, ComposeError> {
    for p in [p1, p2] {
        if !p.leaf_labels().iter().any(|l| l == v_star) {
            return Err(ComposeError::MissingVertex(v_star.to_string()));
        }
    }
    check_disjoint_leaves(&[p1, p2], Some(v_star))?;
    if p1.leaf_labels().len() == 1 {
        return Ok(p2.clone());
    }
    if p2.leaf_labels().len() == 1 {
        return Ok(p1.clone());
    }
    let alpha = common_alpha(&[p1, p2])?;
    let mut trees = vec![
        normalize_to(p1, &alpha)?.tree().clone(),
        normalize_to(p2, &alpha)?.tree().clone(),
    ];
    disjoint_inner_labels(&mut trees);
    let v_prime = fresh_inner(&[&trees[0], &trees[1]], &[]);
    let mut vertices = vec![v_prime.clone(), v_star.to_string()];
    let mut edges = vec![(v_prime.clone(), v_star.to_string(), Rational::zero())];
    for t in &trees {
        let (u, w) = leaf_edge(t, v_star)?;
        vertices.extend(t.labels().iter().filter(|l| *l != v_star).cloned());
        edges.extend(
            t.labeled_edges()
                .into_iter()
                .filter(|(a, b, _)| a != v_star && b != v_star),
        );
        edges.push((u, v_prime.clone(), w));
    }
    let tree = WeightedTree::new(vertices, edges)?;
    let alpha = alpha.expect("both inputs have two or more leaves");
    Ok(Pcr::new(tree, alpha, Rational::one())?)
}

/// Adds `v1` as a false twin of leaf `v2`: the leaf edge `v'-v2` becomes
/// `v'-v''` with the old weight, and both `v2` and `v1` hang off `v''` with
/// weight 0. Then `v1` sees exactly what `v2` sees, and `d(v1, v2) = 0` is
/// below the window. The input is normalized first unless it already is.
pub fn add_false_twin(p: &Pcr, v2: &str, v1: &str) -> Result<Pcr, ComposeError> {
    let leaves = p.leaf_labels();
    if !leaves.iter().any(|l| l == v2) {
        return Err(ComposeError::MissingVertex(v2.to_string()));
    }
    if leaves.iter().any(|l| l == v1) {
        return Err(ComposeError::LabelCollision(v1.to_string()));
    }
    if leaves.len() == 1 {
        let mid = fresh_inner(&[], &[v1, v2]);
        let tree = WeightedTree::new(
            [v2.to_string(), mid.clone(), v1.to_string()],
            [
                (mid.clone(), v2.to_string(), Rational::zero()),
                (mid, v1.to_string(), Rational::zero()),
            ],
        )?;
        return Ok(Pcr::new(tree, default_alpha(), Rational::one())?);
    }
    let q = if p.is_normalized() {
        p.clone()
    } else {
        make_normalized(p, None)?.0
    };
    let t = q.tree().free_label(v1)?;
    let (u, w) = leaf_edge(&t, v2)?;
    let mid = fresh_inner(&[&t], &[v1]);
    let t = t
        .subdivide_at_point(&u, v2, &w, &mid)?
        .attach_leaf(&mid, v1, Rational::zero())?;
    Ok(Pcr::new(t, q.d_min().clone(), q.d_max().clone())?)
}

/// Adds `v1` as a true twin of the true-twin pair `v2, v3`: a new leaf
/// edge of weight `d(v2, v3) / 2` is attached at the midpoint of their
/// path. Any other leaf is then exactly as far from `v1` as from the farther
/// of `v2` and `v3`, so `N[v1] = N[v2] = N[v3]`. Bounds are unchanged.
pub fn add_true_twin(p: &Pcr, v2: &str, v3: &str, v1: &str) -> Result<Pcr, ComposeError> {
    let leaves: BTreeSet<String> = p.leaf_labels().into_iter().collect();
    for v in [v2, v3] {
        if !leaves.contains(v) {
            return Err(ComposeError::MissingVertex(v.to_string()));
        }
    }
    if leaves.contains(v1) {
        return Err(ComposeError::LabelCollision(v1.to_string()));
    }
    let g = p.induced_graph();
    if v2 == v3 || g.closed_neighborhood(v2)? != g.closed_neighborhood(v3)? {
        return Err(ComposeError::NotTrueTwins(v2.to_string(), v3.to_string()));
    }
    let t = p.tree().free_label(v1)?;
    let (c0, t) = midpoint(&t, v2, v3, v1)?;
    let half = rational::half(&t.distance(v2, v3)?);
    let t = t.attach_leaf(&c0, v1, half)?;
    Ok(Pcr::new(t, p.d_min().clone(), p.d_max().clone())?)
}

/// Finds or creates the inner point halfway along the `a`-`b` path. When
/// the point would be the leaf `a` itself (zero distance), a new vertex is
/// placed on `a`'s leaf edge at offset 0.
fn midpoint(t: &WeightedTree, a: &str, b: &str, avoid: &str) -> Result<(String, WeightedTree), ComposeError> {
    let (ia, ib) = (t.index_of(a).expect("checked"), t.index_of(b).expect("checked"));
    let target = rational::half(&t.distance(a, b)?);
    let path = t.path(ia, ib);
    let mut walked = Rational::zero();
    for pair in path.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        if walked == target && !t.is_leaf(x) {
            return Ok((t.label(x).to_string(), t.clone()));
        }
        let w = &t.edges()[t.edge_between(x, y).expect("path edge")].weight;
        let next = &walked + w;
        if walked <= target && target < next || (walked == target && t.is_leaf(x)) {
            let label = fresh_inner(&[t], &[avoid]);
            let offset = &target - &walked;
            let s = t.subdivide_at_point(t.label(x), t.label(y), &offset, &label)?;
            return Ok((label, s));
        }
        walked = next;
    }
    unreachable!("the midpoint lies on the path")
}
