//! Growing larger graphs from a seed with the inverse reduction steps. If
//! the seed is not a PCG then neither is anything grown from it, and
//! [`reduce_graph`](super::reduce_graph) finds the seed again among the
//! kernels.

use serde::{Deserialize, Serialize};

use super::{recognize, RecognizeOptions, ReduceError, Verdict};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum GrowDirective {
    /// New vertex with the same open neighborhood as `of`.
    AddFalseTwin {
        of: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// New vertex with the same closed neighborhood as the true twins
    /// `pair`.
    AddTrueTwin {
        pair: (String, String),
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    /// Glues a PCG onto vertex `at`, identifying its vertex `via` with `at`.
    /// The other vertices get fresh labels.
    Attach { at: String, graph: Graph, via: String },
}

/// A label that sorts after every label of `g`, so twin removal during
/// reduction picks it over the seed's own vertices.
fn next_label(g: &Graph) -> String {
    let top = g.labels().iter().max().cloned().unwrap_or_default();
    format!("{top}'")
}

pub fn grow_non_pcg(seed: &Graph, ops: &[GrowDirective]) -> Result<Graph, ReduceError> {
    let mut g = seed.clone();
    for (index, op) in ops.iter().enumerate() {
        let fail = |msg: String| ReduceError::Directive { index, msg };
        let require = |g: &Graph, v: &str| {
            if g.contains(v) {
                Ok(())
            } else {
                Err(fail(format!("unknown vertex {v:?}")))
            }
        };
        match op {
            GrowDirective::AddFalseTwin { of, label } => {
                require(&g, of)?;
                let new = label.clone().unwrap_or_else(|| next_label(&g));
                let nb = g.neighborhood(of)?;
                g.add_vertex(new.clone()).map_err(|e| fail(e.to_string()))?;
                for u in nb {
                    g.add_edge(&new, &u)?;
                }
            }
            GrowDirective::AddTrueTwin { pair: (u, v), label } => {
                require(&g, u)?;
                require(&g, v)?;
                let nb = g.closed_neighborhood(u)?;
                if u == v || nb != g.closed_neighborhood(v)? {
                    return Err(fail(format!("{u:?} and {v:?} are not true twins")));
                }
                let new = label.clone().unwrap_or_else(|| next_label(&g));
                g.add_vertex(new.clone()).map_err(|e| fail(e.to_string()))?;
                for w in nb {
                    g.add_edge(&new, &w)?;
                }
            }
            GrowDirective::Attach { at, graph, via } => {
                require(&g, at)?;
                if !graph.contains(via) {
                    return Err(fail(format!("attached graph has no vertex {via:?}")));
                }
                if !graph.is_connected() {
                    return Err(fail("attached graph is not connected".into()));
                }
                let opts = RecognizeOptions {
                    oracle: None,
                    ..Default::default()
                };
                if !matches!(recognize(graph, &opts)?, Verdict::Pcg { .. }) {
                    return Err(fail("attached graph is not a recognized PCG".into()));
                }
                let mut names = std::collections::HashMap::new();
                for l in graph.labels() {
                    let name = if l == via {
                        at.clone()
                    } else {
                        let n = next_label(&g);
                        g.ensure_vertex(&n);
                        n
                    };
                    names.insert(l.clone(), name);
                }
                for (a, b) in graph.edge_labels() {
                    g.add_edge(&names[&a], &names[&b])?;
                }
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::{reduce_graph, ReductionRules};

    fn seed() -> Graph {
        // Not claimed to be a non-PCG here; only the bookkeeping is tested.
        let mut g = Graph::numbered(10);
        for i in 0..5 {
            g.add_edge_idx(i, (i + 1) % 5).unwrap();
            g.add_edge_idx(i, i + 5).unwrap();
            g.add_edge_idx(i + 5, (i + 2) % 5 + 5).unwrap();
        }
        g
    }

    fn recovers(ops: &[GrowDirective]) {
        let s = seed();
        let g = grow_non_pcg(&s, ops).unwrap();
        let kernels = reduce_graph(&g, &ReductionRules::default()).kernel_graphs();
        assert!(kernels.contains(&s), "{ops:?}");
    }

    #[test]
    fn false_twin_then_reduce() {
        recovers(&[GrowDirective::AddFalseTwin {
            of: "v3".into(),
            label: None,
        }]);
    }

    #[test]
    fn attach_cycle_then_reduce() {
        let ops = [GrowDirective::Attach {
            at: "v1".into(),
            graph: Graph::cycle(5),
            via: "v0".into(),
        }];
        let g = grow_non_pcg(&seed(), &ops).unwrap();
        assert_eq!(g.n(), 14);
        let kernels = reduce_graph(&g, &ReductionRules::default()).kernel_graphs();
        assert_eq!(kernels.len(), 2);
        assert!(kernels.contains(&seed()));
    }

    #[test]
    fn true_twins_need_a_pair() {
        let ops = [GrowDirective::AddTrueTwin {
            pair: ("v0".into(), "v1".into()),
            label: None,
        }];
        assert!(matches!(
            grow_non_pcg(&seed(), &ops),
            Err(ReduceError::Directive { index: 0, .. })
        ));
        let ops = [
            GrowDirective::Attach {
                at: "v0".into(),
                graph: Graph::complete(3),
                via: "v0".into(),
            },
            GrowDirective::AddTrueTwin {
                pair: ("v9'".into(), "v9''".into()),
                label: None,
            },
            GrowDirective::AddFalseTwin {
                of: "v9'''".into(),
                label: None,
            },
        ];
        recovers(&ops);
    }

    #[test]
    fn directives_round_trip_as_json() {
        let ops = vec![
            GrowDirective::AddFalseTwin {
                of: "a".into(),
                label: Some("b".into()),
            },
            GrowDirective::Attach {
                at: "a".into(),
                graph: Graph::path(3),
                via: "v1".into(),
            },
        ];
        let s = serde_json::to_string(&ops).unwrap();
        assert_eq!(serde_json::from_str::<Vec<GrowDirective>>(&s).unwrap(), ops);
    }
}
