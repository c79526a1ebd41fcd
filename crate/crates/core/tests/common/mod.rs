#![allow(dead_code)]

use std::collections::HashMap;

use pcg_core::compose::{add_false_twin, add_true_twin, join_at_cut_vertex, join_components};
use pcg_core::graph::{find_twins, Graph};
use pcg_core::pcr::{Pcr, WeightedTree};
use pcg_core::rational;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random tree on 2..=max vertices with small half-integer weights and a
/// random window. Leaves are `x<i>`, inner vertices `u<i>`.
pub fn random_pcr<R: Rng>(rng: &mut R, max: usize) -> Pcr {
    let n = rng.gen_range(2..=max);
    let parents: Vec<usize> = (1..n).map(|i| rng.gen_range(0..i)).collect();
    let mut degree = vec![0; n];
    for (i, &p) in parents.iter().enumerate() {
        degree[i + 1] += 1;
        degree[p] += 1;
    }
    let name = |v: usize| {
        if degree[v] <= 1 {
            format!("x{v}")
        } else {
            format!("u{v}")
        }
    };
    let edges = parents.iter().enumerate().map(|(i, &p)| {
        (
            name(p),
            name(i + 1),
            rational::ratio(rng.gen_range(0..=4), rng.gen_range(1..=2)),
        )
    });
    let edges: Vec<_> = edges.collect();
    let tree = WeightedTree::new((0..n).map(name), edges).unwrap();
    let d_min = rational::ratio(rng.gen_range(0..=8), 2);
    let d_max = &d_min + rational::ratio(rng.gen_range(0..=4), 2);
    Pcr::new(tree, d_min, d_max).unwrap()
}

/// Renames leaves with `prefix` and moves inner vertices out of the way;
/// `keep` maps a leaf to a fixed new name.
pub fn rename(p: &Pcr, prefix: &str, keep: Option<(&str, &str)>) -> Pcr {
    let leaves = p.leaf_labels();
    let map: HashMap<String, String> = p
        .tree()
        .labels()
        .iter()
        .map(|l| {
            let new = match keep {
                Some((from, to)) if from == l => to.to_string(),
                _ if leaves.contains(l) => format!("{prefix}{l}"),
                _ => format!("{prefix}#{l}"),
            };
            (l.clone(), new)
        })
        .collect();
    p.relabel(&map).unwrap()
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::numbered(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge_idx(i, j).unwrap();
            }
        }
    }
    g
}

/// A connected cactus on at most `max` vertices: pendant edges and cycles
/// of length 3..=`max_cycle` hung off random existing vertices.
pub fn random_cactus<R: Rng>(rng: &mut R, max: usize, max_cycle: usize) -> Graph {
    let target = rng.gen_range(1..=max);
    let mut g = Graph::numbered(1);
    let mut fails = 0;
    while g.n() < target && fails < 20 {
        let at = g.label(rng.gen_range(0..g.n())).to_string();
        let len = if rng.gen_bool(0.3) {
            2
        } else {
            rng.gen_range(3..=max_cycle)
        };
        if g.n() + len - 1 > max {
            fails += 1;
            continue;
        }
        let mut prev = at.clone();
        for _ in 1..len {
            let v = format!("v{}", g.n());
            g.add_vertex(v.clone()).unwrap();
            g.add_edge(&prev, &v).unwrap();
            prev = v;
        }
        if len > 2 {
            g.add_edge(&prev, &at).unwrap();
        }
    }
    g
}

/// A graph together with a witness, grown by random composition steps.
pub struct Built {
    pub graph: Graph,
    pub witness: Pcr,
    next: usize,
}

impl Built {
    pub fn new(graph: Graph, witness: Pcr) -> Self {
        assert!(witness.verify(&graph).unwrap());
        Built {
            graph,
            witness,
            next: 0,
        }
    }

    fn fresh(&mut self) -> String {
        self.next += 1;
        format!("n{}", self.next)
    }

    pub fn false_twin<R: Rng>(&mut self, rng: &mut R) {
        let v2 = self.graph.labels().choose(rng).unwrap().clone();
        let v1 = self.fresh();
        self.witness = add_false_twin(&self.witness, &v2, &v1).unwrap();
        self.graph.add_vertex(v1.clone()).unwrap();
        for u in self.graph.neighborhood(&v2).unwrap() {
            self.graph.add_edge(&v1, &u).unwrap();
        }
    }

    /// Returns false when the graph has no true twins to extend.
    pub fn true_twin<R: Rng>(&mut self, rng: &mut R) -> bool {
        let twins = find_twins(&self.graph);
        let Some(class) = twins.true_classes.choose(rng) else {
            return false;
        };
        let pair: Vec<&String> = class.members.choose_multiple(rng, 2).collect();
        let v1 = self.fresh();
        self.witness = add_true_twin(&self.witness, pair[0], pair[1], &v1).unwrap();
        let nb = self.graph.closed_neighborhood(pair[0]).unwrap();
        self.graph.add_vertex(v1.clone()).unwrap();
        for u in nb {
            self.graph.add_edge(&v1, &u).unwrap();
        }
        true
    }

    /// Glues `other` on at a random vertex, identifying it with a random
    /// vertex of `other`.
    pub fn glue<R: Rng>(&mut self, rng: &mut R, other: &Built) {
        let at = self.graph.labels().choose(rng).unwrap().clone();
        let via = other.graph.labels().choose(rng).unwrap().clone();
        let tag = self.fresh();
        let name = |l: &str| if l == via { at.clone() } else { format!("{tag}.{l}") };
        let p = rename(&other.witness, &format!("{tag}."), Some((&via, &at)));
        self.witness = join_at_cut_vertex(&self.witness, &p, &at).unwrap();
        self.graph = self.graph.union(&other.graph.relabel(name).unwrap());
    }

    pub fn disjoint(&mut self, other: &Built) {
        let tag = self.fresh();
        let p = rename(&other.witness, &format!("{tag}."), None);
        self.witness = join_components(&[self.witness.clone(), p]).unwrap();
        self.graph = self
            .graph
            .union(&other.graph.relabel(|l| format!("{tag}.{l}")).unwrap());
    }
}
