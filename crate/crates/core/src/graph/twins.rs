use std::collections::BTreeMap;

use super::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrueTwinClass {
    /// Sorted labels sharing one closed neighborhood.
    pub members: Vec<String>,
    /// A class of three or more admits removing one member without changing
    /// PCG membership.
    pub reducible: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Twins {
    /// Unordered pairs with N(u) = N(v), smaller label first, sorted.
    pub false_pairs: Vec<(String, String)>,
    /// Maximal classes (size >= 2) with equal N[.], sorted by first member.
    pub true_classes: Vec<TrueTwinClass>,
}

pub fn find_twins(g: &Graph) -> Twins {
    let open: Vec<Vec<usize>> = (0..g.n()).map(|i| g.neighbors(i).collect()).collect();

    let mut false_pairs = Vec::new();
    for i in 0..g.n() {
        for j in i + 1..g.n() {
            if open[i] == open[j] {
                false_pairs.push(super::ordered_pair(g.label(i), g.label(j)));
            }
        }
    }
    false_pairs.sort();

    let mut by_closed: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for (i, nb) in open.iter().enumerate() {
        let mut closed = nb.clone();
        closed.push(i);
        closed.sort_unstable();
        by_closed.entry(closed).or_default().push(g.label(i).to_string());
    }
    let mut true_classes: Vec<TrueTwinClass> = by_closed
        .into_values()
        .filter(|c| c.len() >= 2)
        .map(|mut members| {
            members.sort();
            TrueTwinClass {
                reducible: members.len() >= 3,
                members,
            }
        })
        .collect();
    true_classes.sort_by(|a, b| a.members.cmp(&b.members));

    Twins {
        false_pairs,
        true_classes,
    }
}
