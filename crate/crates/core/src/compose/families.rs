use std::collections::{BTreeSet, HashMap};

use super::{add_false_twin, cycle_cache, fresh_inner, join_at_cut_vertex, ComposeError, CYCLE_MAX, CYCLE_MIN};
use crate::graph::{biconnected_components, Graph};
use crate::normalize::make_normalized;
use crate::pcr::{Pcr, WeightedTree};
use crate::rational;

/// Graph families with a constructed witness. Generated vertices are
/// labeled `v0, v1, ...` in the same order as the matching [`Graph`]
/// constructors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Clique(usize),
    Kpartite(Vec<usize>),
    Cycle(usize),
    Cactus(Graph),
}

impl Family {
    pub fn target(&self) -> Graph {
        match self {
            Family::Clique(k) => Graph::complete(*k),
            Family::Kpartite(sizes) => Graph::complete_multipartite(sizes),
            Family::Cycle(n) => Graph::cycle(*n),
            Family::Cactus(g) => g.clone(),
        }
    }
}

/// The target graph and its witness.
pub fn generate(family: &Family) -> Result<(Graph, Pcr), ComposeError> {
    let g = family.target();
    let labels = g.labels().to_vec();
    let p = match family {
        Family::Clique(_) => clique(&labels)?,
        Family::Kpartite(sizes) => {
            if sizes.is_empty() || sizes.contains(&0) {
                return Err(ComposeError::EmptyPart);
            }
            let mut parts = Vec::new();
            let mut at = 0;
            for &s in sizes {
                parts.push(labels[at..at + s].to_vec());
                at += s;
            }
            complete_multipartite(&parts)?
        }
        Family::Cycle(_) => cycle(&labels)?,
        Family::Cactus(g) => cactus(g)?,
    };
    Ok((g, p))
}

/// A star with every leaf edge 1/2 and window `[1, 1]`, normalized. One
/// label gives the one-vertex tree.
pub fn clique<S: AsRef<str>>(labels: &[S]) -> Result<Pcr, ComposeError> {
    let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
    match labels.len() {
        0 => Err(ComposeError::EmptyPart),
        1 => Ok(Pcr::new(
            WeightedTree::single(&labels[0]),
            rational::zero(),
            rational::zero(),
        )?),
        _ => {
            let avoid: Vec<&str> = labels.iter().map(String::as_str).collect();
            let center = fresh_inner(&[], &avoid);
            let edges: Vec<_> = labels
                .iter()
                .map(|l| (center.clone(), l.clone(), rational::ratio(1, 2)))
                .collect();
            let mut vertices = labels.clone();
            vertices.push(center);
            let star = Pcr::new(WeightedTree::new(vertices, edges)?, rational::one(), rational::one())?;
            Ok(make_normalized(&star, None)?.0)
        }
    }
}

/// A clique on the first member of every part, then every other member
/// added as a false twin of its part's first member.
pub fn complete_multipartite<S: AsRef<str>>(parts: &[Vec<S>]) -> Result<Pcr, ComposeError> {
    if parts.is_empty() || parts.iter().any(Vec::is_empty) {
        return Err(ComposeError::EmptyPart);
    }
    let heads: Vec<&str> = parts.iter().map(|p| p[0].as_ref()).collect();
    let mut p = clique(&heads)?;
    for part in parts {
        for v in &part[1..] {
            p = add_false_twin(&p, part[0].as_ref(), v.as_ref())?;
        }
    }
    Ok(p)
}

/// The cached witness for a cycle, with its leaves renamed so that
/// consecutive entries of `order` are adjacent.
pub fn cycle<S: AsRef<str>>(order: &[S]) -> Result<Pcr, ComposeError> {
    let n = order.len();
    if !(CYCLE_MIN..=CYCLE_MAX).contains(&n) {
        return Err(ComposeError::CycleLength(n));
    }
    let cached = cycle_cache()?.get(n).ok_or(ComposeError::CycleLength(n))?;
    let map: HashMap<String, String> = (0..n)
        .map(|i| (format!("v{i}"), order[i].as_ref().to_string()))
        .collect();
    rename_leaves(cached, &map)
}

/// Renames leaves through `map`, moving any inner vertex out of the way of
/// the new leaf labels first.
fn rename_leaves(p: &Pcr, map: &HashMap<String, String>) -> Result<Pcr, ComposeError> {
    let t = p.tree();
    let targets: BTreeSet<&str> = map.values().map(String::as_str).collect();
    let mut full = map.clone();
    let mut used: BTreeSet<String> = t.labels().iter().cloned().chain(map.values().cloned()).collect();
    for v in t.inner_vertices() {
        let l = t.label(v);
        if targets.contains(l) {
            let fresh = (0..)
                .map(|k| format!("#{k}"))
                .find(|c| !used.contains(c))
                .expect("unbounded search");
            used.insert(fresh.clone());
            full.insert(l.to_string(), fresh);
        }
    }
    Ok(p.relabel(&full)?)
}

/// Witness for a connected graph whose blocks are all edges or cycles: one
/// witness per block, glued at cut vertices in breadth-first order.
pub fn cactus(g: &Graph) -> Result<Pcr, ComposeError> {
    if g.is_empty() {
        return Err(ComposeError::NotACactus("no vertices".into()));
    }
    if !g.is_connected() {
        return Err(ComposeError::NotACactus("not connected".into()));
    }
    if g.n() == 1 {
        return clique(&[g.label(0)]);
    }
    let mut pending = Vec::new();
    for block in biconnected_components(g)? {
        let b = &block.graph;
        let witness = if b.n() == 2 {
            clique(b.labels())?
        } else if b.m() == b.n() && (0..b.n()).all(|i| b.degree(i) == 2) {
            cycle(&cycle_order(b))?
        } else {
            return Err(ComposeError::NotACactus(format!(
                "block {{{}}} is neither an edge nor a cycle",
                b.labels().join(", ")
            )));
        };
        pending.push(witness);
    }
    let mut acc = pending.remove(0);
    let mut covered: BTreeSet<String> = acc.leaf_labels().into_iter().collect();
    while !pending.is_empty() {
        let (k, shared) = pending
            .iter()
            .enumerate()
            .find_map(|(k, p)| {
                p.leaf_labels()
                    .into_iter()
                    .find(|l| covered.contains(l))
                    .map(|l| (k, l))
            })
            .expect("blocks of a connected graph are linked by cut vertices");
        let next = pending.remove(k);
        covered.extend(next.leaf_labels());
        acc = join_at_cut_vertex(&acc, &next, &shared)?;
    }
    Ok(acc)
}

/// Vertices of a cycle graph in walking order from its first vertex.
fn cycle_order(c: &Graph) -> Vec<String> {
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = c
            .neighbors(cur)
            .find(|&w| w != prev)
            .expect("cycle vertices have degree two");
        if next == 0 {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    order.into_iter().map(|i| c.label(i).to_string()).collect()
}
