use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{reduce_graph, replay_witness, ReduceError, ReductionRules, ReductionTrace};
use crate::compose::{cactus, clique, complete_multipartite, CYCLE_MAX};
use crate::graph::{classify_base, multipartite_parts, BaseClass, Graph};
use crate::oracle::{exact_search, Budget, SearchOutcome};
use crate::pcr::Pcr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognizeOptions {
    pub rules: ReductionRules,
    /// `None` leaves unstructured kernels unresolved.
    pub oracle: Option<Budget>,
}

impl Default for RecognizeOptions {
    fn default() -> Self {
        Self {
            rules: ReductionRules::default(),
            oracle: Some(Budget::default()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum KernelStatus {
    Witness { witness: Pcr },
    NonPcg { topologies: u64 },
    Unresolved { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Pcg {
        witness: Pcr,
    },
    /// `kernel` was shown not to be a PCG by trying every topology.
    NonPcg {
        kernel: Graph,
        topologies: u64,
        trace: ReductionTrace,
    },
    Unknown {
        kernels: Vec<Graph>,
        trace: ReductionTrace,
    },
}

/// A witness for one kernel: built directly for the structured families,
/// searched for otherwise.
pub fn kernel_witness(k: &Graph, oracle: Option<&Budget>) -> Result<KernelStatus, ReduceError> {
    let built = match classify_base(k) {
        BaseClass::SingleVertex | BaseClass::SingleEdge | BaseClass::Clique => Some(clique(k.labels())?),
        BaseClass::Tree => Some(cactus(k)?),
        BaseClass::Cycle if k.n() <= CYCLE_MAX => Some(cactus(k)?),
        BaseClass::CompleteMultipartite => {
            let parts = multipartite_parts(k).expect("classified as multipartite");
            Some(complete_multipartite(&parts)?)
        }
        _ => None,
    };
    if let Some(witness) = built {
        return Ok(KernelStatus::Witness { witness });
    }
    let Some(budget) = oracle.filter(|b| b.max_topologies != Some(0)) else {
        return Ok(KernelStatus::Unresolved {
            reason: "no oracle budget".into(),
        });
    };
    Ok(match exact_search(k, budget)? {
        SearchOutcome::Pcg { witness, .. } => KernelStatus::Witness { witness },
        SearchOutcome::NonPcg { topologies } => KernelStatus::NonPcg { topologies },
        SearchOutcome::Inconclusive { reason, .. } => KernelStatus::Unresolved { reason },
    })
}

/// Reduces `g`, settles every kernel, and either replays a full witness,
/// reports a kernel the oracle refuted, or lists the kernels left open.
pub fn recognize(g: &Graph, opts: &RecognizeOptions) -> Result<Verdict, ReduceError> {
    if g.is_empty() {
        return Err(ReduceError::EmptyGraph);
    }
    let trace = reduce_graph(g, &opts.rules);
    let mut witnesses = BTreeMap::new();
    let mut open = Vec::new();
    for k in &trace.kernels {
        match kernel_witness(&k.graph, opts.oracle.as_ref())? {
            KernelStatus::Witness { witness } => {
                witnesses.insert(k.id, witness);
            }
            KernelStatus::NonPcg { topologies } => {
                return Ok(Verdict::NonPcg {
                    kernel: k.graph.clone(),
                    topologies,
                    trace,
                });
            }
            KernelStatus::Unresolved { .. } => open.push(k.graph.clone()),
        }
    }
    if !open.is_empty() {
        return Ok(Verdict::Unknown { kernels: open, trace });
    }
    let witness = replay_witness(&witnesses, &trace)?;
    if !witness.verify(g)? {
        return Err(ReduceError::Unsound);
    }
    Ok(Verdict::Pcg { witness })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pcg(g: &Graph, opts: &RecognizeOptions) -> Pcr {
        match recognize(g, opts).unwrap() {
            Verdict::Pcg { witness } => {
                assert!(witness.verify(g).unwrap());
                witness
            }
            other => panic!("{other:?}"),
        }
    }

    /// A twin-free, cut-vertex-free graph on ten vertices: the Petersen graph.
    fn petersen() -> Graph {
        let mut g = Graph::numbered(10);
        for i in 0..5 {
            g.add_edge_idx(i, (i + 1) % 5).unwrap();
            g.add_edge_idx(i, i + 5).unwrap();
            g.add_edge_idx(i + 5, (i + 2) % 5 + 5).unwrap();
        }
        g
    }

    #[test]
    fn structured_graphs_without_oracle() {
        let none = RecognizeOptions {
            oracle: None,
            ..Default::default()
        };
        pcg(&Graph::complete_multipartite(&[3, 1, 2, 2]), &none);
        pcg(&Graph::complete(6), &none);
        pcg(&Graph::cycle(7), &none);
        pcg(&Graph::path(9), &none);
        pcg(&Graph::numbered(4), &none);
    }

    #[test]
    fn petersen_is_unknown_without_budget() {
        let g = petersen();
        let opts = RecognizeOptions {
            oracle: Some(Budget {
                max_topologies: Some(0),
                ..Budget::default()
            }),
            ..Default::default()
        };
        match recognize(&g, &opts).unwrap() {
            Verdict::Unknown { kernels, .. } => assert_eq!(kernels, vec![g]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_kernels_use_the_oracle() {
        // The house graph: C5 plus one chord. It has no twins and no cut vertex.
        let g = Graph::from_edges(
            ["a", "b", "c", "d", "e"],
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e"), ("e", "a"), ("b", "e")],
        )
        .unwrap();
        assert_eq!(reduce_graph(&g, &ReductionRules::default()).kernels.len(), 1);
        pcg(&g, &RecognizeOptions::default());
        let none = RecognizeOptions {
            oracle: None,
            ..Default::default()
        };
        assert!(matches!(recognize(&g, &none).unwrap(), Verdict::Unknown { .. }));
    }

    #[test]
    fn long_cycles_are_left_open() {
        let none = RecognizeOptions {
            oracle: None,
            ..Default::default()
        };
        assert!(matches!(
            recognize(&Graph::cycle(9), &none).unwrap(),
            Verdict::Unknown { .. }
        ));
    }

    #[test]
    fn empty_graph_is_an_error() {
        assert_eq!(
            recognize(&Graph::new(), &RecognizeOptions::default()),
            Err(ReduceError::EmptyGraph)
        );
    }
}
