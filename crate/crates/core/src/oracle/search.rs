use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;

use super::lp::{feasible_point, LinearSystem};
use super::topology::{enumerate_topologies, topology_count, Topology};
use super::{Budget, OracleError, SearchOutcome};
use crate::graph::Graph;
use crate::pcr::{Pcr, TreeEdge, WeightedTree};
use crate::rational::{int, zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Below,
    Above,
}

/// The linear constraints one topology imposes on a graph, before any
/// non-edge has been assigned a side.
///
/// Variables are the edge weights, then `d_min`, then `d_max`, all
/// non-negative. Non-edges go strictly outside the window with slack one,
/// which loses nothing because every constraint is positively homogeneous.
#[derive(Debug, Clone)]
pub struct FeasibilitySystem {
    edges: usize,
    base: LinearSystem,
    non_edges: Vec<Vec<usize>>,
}

impl FeasibilitySystem {
    pub fn new(t: &Topology, g: &Graph) -> Self {
        let edges = t.edges().len();
        let (lo, hi) = (edges, edges + 1);
        let mut base = LinearSystem::new(edges + 2);
        base.push(vec![(lo, 1), (hi, -1)], 0);
        let mut non_edges = Vec::new();
        for ((i, j), path) in t.leaf_paths() {
            if g.adjacent(i, j) {
                let mut below: Vec<(usize, i64)> = path.iter().map(|&e| (e, -1)).collect();
                below.push((lo, 1));
                base.push(below, 0);
                let mut above: Vec<(usize, i64)> = path.iter().map(|&e| (e, 1)).collect();
                above.push((hi, -1));
                base.push(above, 0);
            } else {
                non_edges.push(path);
            }
        }
        Self { edges, base, non_edges }
    }

    fn with_sides(&self, sides: &[Option<Side>]) -> LinearSystem {
        let mut sys = self.base.clone();
        for (path, side) in self.non_edges.iter().zip(sides) {
            if let Some(s) = side {
                let (row, rhs) = self.side_row(path, *s);
                sys.push(row, rhs);
            }
        }
        sys
    }

    fn side_row(&self, path: &[usize], side: Side) -> (Vec<(usize, i64)>, i64) {
        let (lo, hi) = (self.edges, self.edges + 1);
        match side {
            Side::Below => {
                let mut row: Vec<(usize, i64)> = path.iter().map(|&e| (e, 1)).collect();
                row.push((lo, -1));
                (row, -1)
            }
            Side::Above => {
                let mut row: Vec<(usize, i64)> = path.iter().map(|&e| (e, -1)).collect();
                row.push((hi, 1));
                (row, -1)
            }
        }
    }

    /// A point satisfying the edge constraints and putting every non-edge
    /// strictly outside the window, or `None`.
    pub fn solve(&self) -> Option<Vec<BigRational>> {
        let mut sides = vec![None; self.non_edges.len()];
        self.branch(&mut sides)
    }

    fn branch(&self, sides: &mut Vec<Option<Side>>) -> Option<Vec<BigRational>> {
        let x = feasible_point(&self.with_sides(sides))?;
        let lo = &x[self.edges];
        let hi = &x[self.edges + 1];
        let one = int(1);
        let mut pick: Option<(usize, usize, Side)> = None;
        for (k, path) in self.non_edges.iter().enumerate() {
            if sides[k].is_some() {
                continue;
            }
            let d: BigRational = path.iter().map(|&e| &x[e]).sum();
            let gap_below = &d - (lo - &one);
            let gap_above = (hi + &one) - &d;
            if gap_below <= zero() || gap_above <= zero() {
                continue;
            }
            let score = self.shared_edges(path, sides);
            if pick.is_none_or(|(_, s, _)| score > s) {
                let near = if gap_below <= gap_above {
                    Side::Below
                } else {
                    Side::Above
                };
                pick = Some((k, score, near));
            }
        }
        let Some((k, _, near)) = pick else {
            return Some(x);
        };
        let far = match near {
            Side::Below => Side::Above,
            Side::Above => Side::Below,
        };
        for side in [near, far] {
            sides[k] = Some(side);
            if let Some(x) = self.branch(sides) {
                return Some(x);
            }
        }
        sides[k] = None;
        None
    }

    /// How many edges of `path` lie on the paths of already decided pairs,
    /// counted with multiplicity.
    fn shared_edges(&self, path: &[usize], sides: &[Option<Side>]) -> usize {
        self.non_edges
            .iter()
            .zip(sides)
            .filter(|(_, s)| s.is_some())
            .map(|(p, _)| p.iter().filter(|e| path.binary_search(e).is_ok()).count())
            .sum()
    }
}

/// Builds the witness for `t` with leaf `i` labelled by vertex `i` of `g`.
fn package(t: &Topology, g: &Graph, x: &[BigRational]) -> Pcr {
    let mut labels: Vec<String> = g.labels().to_vec();
    let mut k = 0;
    while labels.len() < t.vertex_count() {
        let l = format!("#{k}");
        k += 1;
        if !g.contains(&l) {
            labels.push(l);
        }
    }
    let edges = t
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| TreeEdge {
            a,
            b,
            weight: x[e].clone(),
        })
        .collect();
    let tree = WeightedTree::from_indexed(labels, edges).expect("topology is a tree");
    let m = t.edges().len();
    Pcr::new(tree, x[m].clone(), x[m + 1].clone()).expect("solver keeps d_min <= d_max")
}

/// Tries one topology. The returned witness has been checked against `g`.
pub fn solve_topology(t: &Topology, g: &Graph) -> Result<Option<Pcr>, OracleError> {
    if t.leaf_count() != g.n() {
        return Err(OracleError::LeafMismatch {
            leaves: t.leaf_count(),
            vertices: g.n(),
        });
    }
    let Some(x) = FeasibilitySystem::new(t, g).solve() else {
        return Ok(None);
    };
    let p = package(t, g, &x);
    match p.verify(g) {
        Ok(true) => Ok(Some(p)),
        _ => Err(OracleError::Unsound),
    }
}

enum Found {
    Witness(Pcr, u64),
    Timeout,
    Failed(OracleError),
}

const CHUNK: usize = 256;

pub fn exact_search(g: &Graph, budget: &Budget) -> Result<SearchOutcome, OracleError> {
    let n = g.n();
    if n == 0 {
        return Err(OracleError::EmptyGraph);
    }
    if n == 1 {
        let p = Pcr::new(WeightedTree::single(g.label(0)), zero(), zero()).expect("valid bounds");
        return Ok(SearchOutcome::Pcg {
            witness: p,
            topology_index: 0,
        });
    }
    if n > budget.max_n {
        return Ok(SearchOutcome::Inconclusive {
            reason: format!("{n} vertices exceeds the limit of {}", budget.max_n),
            explored: 0,
        });
    }
    let total = topology_count(n);
    let deadline = budget.time_limit.map(|d| Instant::now() + d);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.jobs.max(1))
        .build()
        .map_err(|e| OracleError::Threads(e.to_string()))?;
    let mut stream = enumerate_topologies(n);
    let mut explored: u64 = 0;
    loop {
        let room = budget
            .max_topologies
            .map_or(CHUNK as u64, |cap| (cap - explored).min(CHUNK as u64));
        let chunk: Vec<Topology> = stream.by_ref().take(room as usize).collect();
        if chunk.is_empty() {
            break;
        }
        let base = explored;
        let hit = pool.install(|| {
            chunk.par_iter().enumerate().find_map_first(|(i, t)| {
                if deadline.is_some_and(|d| Instant::now() >= d) {
                    return Some(Found::Timeout);
                }
                match solve_topology(t, g) {
                    Ok(Some(p)) => Some(Found::Witness(p, base + i as u64)),
                    Ok(None) => None,
                    Err(e) => Some(Found::Failed(e)),
                }
            })
        });
        match hit {
            Some(Found::Witness(witness, topology_index)) => {
                return Ok(SearchOutcome::Pcg {
                    witness,
                    topology_index,
                })
            }
            Some(Found::Timeout) => {
                return Ok(SearchOutcome::Inconclusive {
                    reason: "time limit reached".into(),
                    explored,
                })
            }
            Some(Found::Failed(e)) => return Err(e),
            None => explored += chunk.len() as u64,
        }
    }
    if explored < total {
        return Ok(SearchOutcome::Inconclusive {
            reason: format!("topology budget of {explored} reached out of {total}"),
            explored,
        });
    }
    Ok(SearchOutcome::NonPcg { topologies: explored })
}
