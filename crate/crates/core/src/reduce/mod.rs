//! Kernelization: shrink a graph with rules that preserve PCG membership in
//! both directions, and undo the shrinking on witnesses.
//!
//! The rules, tried in this order on every graph produced along the way:
//!
//! 1. a disconnected graph splits into its components;
//! 2. a graph with a cut vertex splits at the smallest one, each side
//!    keeping a copy of it;
//! 3. of a false-twin pair, the larger label is removed;
//! 4. of a true-twin class with three or more members, the largest label is
//!    removed.
//!
//! Graphs no rule applies to are the kernels. A graph is a PCG iff all of
//! its kernels are, and [`replay_witness`] turns kernel witnesses back into
//! a witness for the input.

mod grow;
mod recognize;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compose::{add_false_twin, add_true_twin, join_at_cut_vertex, join_components, ComposeError};
use crate::graph::{connected_components, cut_vertices, find_twins, Graph, GraphError};
use crate::oracle::OracleError;
use crate::pcr::{Pcr, PcrError};

pub use grow::{grow_non_pcg, GrowDirective};
pub use recognize::{kernel_witness, recognize, KernelStatus, RecognizeOptions, Verdict};

/// Index of a graph created during one reduction; the input is 0.
pub type GraphId = usize;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("the empty graph has no representation")]
    EmptyGraph,
    #[error("no witness for kernel {0}")]
    MissingWitness(GraphId),
    #[error("witness for kernel {0} does not verify")]
    BadWitness(GraphId),
    #[error("trace refers to unknown graph {0}")]
    MalformedTrace(GraphId),
    #[error("replayed witness does not verify")]
    Unsound,
    #[error("directive {index}: {msg}")]
    Directive { index: usize, msg: String },
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pcr(#[from] PcrError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Which rules [`reduce_graph`] may use. All are on by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRules {
    pub components: bool,
    pub cut_vertices: bool,
    pub false_twins: bool,
    pub true_twins: bool,
}

impl Default for ReductionRules {
    fn default() -> Self {
        Self {
            components: true,
            cut_vertices: true,
            false_twins: true,
            true_twins: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ReductionStep {
    SplitComponents {
        graph: GraphId,
        parts: Vec<GraphId>,
    },
    SplitAtCutVertex {
        graph: GraphId,
        cut_vertex: String,
        sides: Vec<GraphId>,
    },
    RemoveFalseTwin {
        graph: GraphId,
        result: GraphId,
        kept: String,
        removed: String,
    },
    RemoveTrueTwin {
        graph: GraphId,
        result: GraphId,
        kept: (String, String),
        removed: String,
    },
}

impl ReductionStep {
    pub fn graph(&self) -> GraphId {
        match self {
            ReductionStep::SplitComponents { graph, .. }
            | ReductionStep::SplitAtCutVertex { graph, .. }
            | ReductionStep::RemoveFalseTwin { graph, .. }
            | ReductionStep::RemoveTrueTwin { graph, .. } => *graph,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernel {
    pub id: GraphId,
    pub graph: Graph,
}

/// The steps applied, in order, and the kernels they ended in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub kernels: Vec<Kernel>,
}

impl ReductionTrace {
    pub fn kernel_graphs(&self) -> Vec<Graph> {
        self.kernels.iter().map(|k| k.graph.clone()).collect()
    }
}

fn apply_rule(g: &Graph, rules: &ReductionRules) -> Option<Rule> {
    if g.n() <= 1 {
        return None;
    }
    if rules.components && !g.is_connected() {
        return Some(Rule::Components(connected_components(g)));
    }
    if rules.cut_vertices {
        if let Some(v) = cut_vertices(g).into_iter().next() {
            let rest = g.without(&v).expect("cut vertex is present");
            let sides = connected_components(&rest)
                .into_iter()
                .map(|c| {
                    let mut keep: Vec<String> = c.labels().to_vec();
                    keep.push(v.clone());
                    g.induced(&keep).expect("labels come from g")
                })
                .collect();
            return Some(Rule::CutVertex(v, sides));
        }
    }
    let twins = find_twins(g);
    if rules.false_twins {
        if let Some((kept, removed)) = twins.false_pairs.into_iter().next() {
            return Some(Rule::FalseTwin(kept, removed));
        }
    }
    if rules.true_twins {
        if let Some(class) = twins.true_classes.into_iter().find(|c| c.reducible) {
            let mut m = class.members;
            let removed = m.pop().expect("class has three members");
            return Some(Rule::TrueTwin((m[0].clone(), m[1].clone()), removed));
        }
    }
    None
}

enum Rule {
    Components(Vec<Graph>),
    CutVertex(String, Vec<Graph>),
    FalseTwin(String, String),
    TrueTwin((String, String), String),
}

/// Applies the enabled rules until none applies. Graphs are processed in
/// creation order, so the trace is deterministic.
pub fn reduce_graph(g: &Graph, rules: &ReductionRules) -> ReductionTrace {
    let mut trace = ReductionTrace::default();
    let mut next_id: GraphId = 1;
    let mut queue = VecDeque::from([(0, g.clone())]);
    let mut fresh = |n: usize| {
        let ids: Vec<GraphId> = (next_id..next_id + n).collect();
        next_id += n;
        ids
    };
    while let Some((id, h)) = queue.pop_front() {
        match apply_rule(&h, rules) {
            None => trace.kernels.push(Kernel { id, graph: h }),
            Some(Rule::Components(parts)) => {
                let ids = fresh(parts.len());
                queue.extend(ids.iter().copied().zip(parts));
                trace
                    .steps
                    .push(ReductionStep::SplitComponents { graph: id, parts: ids });
            }
            Some(Rule::CutVertex(v, sides)) => {
                let ids = fresh(sides.len());
                queue.extend(ids.iter().copied().zip(sides));
                trace.steps.push(ReductionStep::SplitAtCutVertex {
                    graph: id,
                    cut_vertex: v,
                    sides: ids,
                });
            }
            Some(Rule::FalseTwin(kept, removed)) => {
                let result = fresh(1)[0];
                queue.push_back((result, h.without(&removed).expect("twin is present")));
                trace.steps.push(ReductionStep::RemoveFalseTwin {
                    graph: id,
                    result,
                    kept,
                    removed,
                });
            }
            Some(Rule::TrueTwin(kept, removed)) => {
                let result = fresh(1)[0];
                queue.push_back((result, h.without(&removed).expect("twin is present")));
                trace.steps.push(ReductionStep::RemoveTrueTwin {
                    graph: id,
                    result,
                    kept,
                    removed,
                });
            }
        }
    }
    trace.kernels.sort_by_key(|k| k.id);
    trace
}

/// Folds the trace backwards from per-kernel values, combining children
/// into their parent with `combine`, and returns the value for graph 0.
fn fold_back<T: Clone>(
    trace: &ReductionTrace,
    mut known: BTreeMap<GraphId, T>,
    mut combine: impl FnMut(&ReductionStep, Vec<T>) -> Result<T, ReduceError>,
) -> Result<T, ReduceError> {
    for step in trace.steps.iter().rev() {
        let children: Vec<GraphId> = match step {
            ReductionStep::SplitComponents { parts, .. } => parts.clone(),
            ReductionStep::SplitAtCutVertex { sides, .. } => sides.clone(),
            ReductionStep::RemoveFalseTwin { result, .. } | ReductionStep::RemoveTrueTwin { result, .. } => {
                vec![*result]
            }
        };
        let values = children
            .iter()
            .map(|c| known.remove(c).ok_or(ReduceError::MalformedTrace(*c)))
            .collect::<Result<Vec<T>, _>>()?;
        let v = combine(step, values)?;
        known.insert(step.graph(), v);
    }
    known.remove(&0).ok_or(ReduceError::MalformedTrace(0))
}

/// Rebuilds the input graph from the kernels recorded in the trace.
pub fn replay_graph(trace: &ReductionTrace) -> Result<Graph, ReduceError> {
    let known = trace.kernels.iter().map(|k| (k.id, k.graph.clone())).collect();
    fold_back(trace, known, |step, mut gs| match step {
        ReductionStep::SplitComponents { .. } | ReductionStep::SplitAtCutVertex { .. } => {
            let first = gs.remove(0);
            Ok(gs.iter().fold(first, |acc, g| acc.union(g)))
        }
        ReductionStep::RemoveFalseTwin { kept, removed, .. } => {
            let mut g = gs.remove(0);
            let nb = g.neighborhood(kept)?;
            g.add_vertex(removed.clone())?;
            for u in nb {
                g.add_edge(removed, &u)?;
            }
            Ok(g)
        }
        ReductionStep::RemoveTrueTwin { kept, removed, .. } => {
            let mut g = gs.remove(0);
            let nb = g.closed_neighborhood(&kept.0)?;
            g.add_vertex(removed.clone())?;
            for u in nb {
                g.add_edge(removed, &u)?;
            }
            Ok(g)
        }
    })
}

/// Turns one witness per kernel into a witness for the reduced graph by
/// running the matching constructions backwards through the trace. Every
/// kernel witness is checked first and the result is checked at the end.
pub fn replay_witness(witnesses: &BTreeMap<GraphId, Pcr>, trace: &ReductionTrace) -> Result<Pcr, ReduceError> {
    let mut known = BTreeMap::new();
    for k in &trace.kernels {
        let w = witnesses.get(&k.id).ok_or(ReduceError::MissingWitness(k.id))?;
        if !w.verify(&k.graph).unwrap_or(false) {
            return Err(ReduceError::BadWitness(k.id));
        }
        known.insert(k.id, w.clone());
    }
    let p = fold_back(trace, known, |step, mut ps| match step {
        ReductionStep::SplitComponents { .. } => Ok(join_components(&ps)?),
        ReductionStep::SplitAtCutVertex { cut_vertex, .. } => {
            let first = ps.remove(0);
            ps.iter()
                .try_fold(first, |acc, p| Ok(join_at_cut_vertex(&acc, p, cut_vertex)?))
        }
        ReductionStep::RemoveFalseTwin { kept, removed, .. } => Ok(add_false_twin(&ps[0], kept, removed)?),
        ReductionStep::RemoveTrueTwin { kept, removed, .. } => Ok(add_true_twin(&ps[0], &kept.0, &kept.1, removed)?),
    })?;
    let g = replay_graph(trace)?;
    if !p.verify(&g).unwrap_or(false) {
        return Err(ReduceError::Unsound);
    }
    Ok(p)
}
