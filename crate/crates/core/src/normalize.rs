//! Bringing a PCR into non-singular and then normalized form without
//! changing its induced graph.
//!
//! Non-singular: at least three tree vertices, `0 < d_min < d_max`, every
//! weight positive. Normalized: additionally `d_max = 1`, `d_min = alpha`
//! and every leaf edge heavier than 1/4. Each transformation is recorded as a
//! [`NormalizationStep`] so the output can be rebuilt from the input.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pcr::{Pcr, PcrError, TreeEdge, WeightedTree};
use crate::rational::{self, Rational};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("need at least two leaves, found {0}")]
    TooFewLeaves(usize),
    #[error("PCR is not non-singular")]
    NotNonsingular,
    #[error("alpha {alpha} outside the open interval ({critical}, 1)")]
    AlphaOutOfRange { alpha: String, critical: String },
    #[error("cannot replay step: {0}")]
    Replay(String),
    #[error(transparent)]
    Pcr(#[from] PcrError),
}

/// Leaf-edge increment used when some leaf edge or `d_min` is zero.
pub const LEAF_RAISE: i64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum NormalizationStep {
    /// Zero-weight edges between inner vertices, contracted in order as
    /// `(kept, removed)` labels.
    ShrinkZeroEdges { contracted: Vec<(String, String)> },
    /// The single edge of a two-vertex tree split in half by `label`.
    SubdivideTwoVertex { label: String },
    /// `delta` added to every leaf edge and `2 * delta` to both bounds.
    RaiseLeafWeights {
        #[serde(with = "rational::serde_str")]
        delta: Rational,
    },
    /// `d_max` increased by `epsilon`.
    WidenDmax {
        #[serde(with = "rational::serde_str")]
        epsilon: Rational,
    },
    /// `delta / 2` added to every leaf edge and `delta` to both bounds.
    AddDelta {
        #[serde(with = "rational::serde_str")]
        delta: Rational,
    },
    /// Every weight and both bounds multiplied by `factor`.
    Scale {
        #[serde(with = "rational::serde_str")]
        factor: Rational,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationReport {
    pub steps: Vec<NormalizationStep>,
}

impl NormalizationReport {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies the recorded steps to `input`.
    pub fn replay(&self, input: &Pcr) -> Result<Pcr, NormalizeError> {
        self.steps.iter().try_fold(input.clone(), |p, s| apply_step(&p, s))
    }
}

fn map_weights(p: &Pcr, f: impl Fn(&WeightedTree, usize, &Rational) -> Rational) -> WeightedTree {
    let t = p.tree();
    let edges = t
        .edges()
        .iter()
        .enumerate()
        .map(|(k, e)| TreeEdge {
            a: e.a,
            b: e.b,
            weight: f(t, k, &e.weight),
        })
        .collect();
    WeightedTree::from_indexed(t.labels().to_vec(), edges).expect("same shape")
}

fn add_to_leaf_edges(p: &Pcr, inc: &Rational) -> WeightedTree {
    map_weights(p, |t, k, w| if t.is_leaf_edge(k) { w + inc } else { w.clone() })
}

pub fn apply_step(p: &Pcr, step: &NormalizationStep) -> Result<Pcr, NormalizeError> {
    let replay = |m: &str| NormalizeError::Replay(m.to_string());
    Ok(match step {
        NormalizationStep::ShrinkZeroEdges { contracted } => {
            let mut tree = p.tree().clone();
            for (keep, gone) in contracted {
                let (a, b) = (tree.require(keep)?, tree.require(gone)?);
                let k = tree
                    .edge_between(a, b)
                    .ok_or_else(|| replay("contracted pair is not an edge"))?;
                if tree.is_leaf_edge(k) || !tree.edges()[k].weight.is_zero() {
                    return Err(replay("contracted edge is a leaf edge or has positive weight"));
                }
                if a > b {
                    return Err(replay("kept vertex must precede the removed one"));
                }
                tree = tree.contract_edge(k);
            }
            Pcr::new(tree, p.d_min().clone(), p.d_max().clone())?
        }
        NormalizationStep::SubdivideTwoVertex { label } => {
            let t = p.tree();
            if t.len() != 2 {
                return Err(replay("tree does not have exactly two vertices"));
            }
            let e = &t.edges()[0];
            let tree = t.subdivide_at_point(t.label(e.a), t.label(e.b), &rational::half(&e.weight), label)?;
            Pcr::new(tree, p.d_min().clone(), p.d_max().clone())?
        }
        NormalizationStep::RaiseLeafWeights { delta } => {
            let two = delta * rational::int(2);
            Pcr::new(add_to_leaf_edges(p, delta), p.d_min() + &two, p.d_max() + &two)?
        }
        NormalizationStep::WidenDmax { epsilon } => Pcr::new(p.tree().clone(), p.d_min().clone(), p.d_max() + epsilon)?,
        NormalizationStep::AddDelta { delta } => Pcr::new(
            add_to_leaf_edges(p, &rational::half(delta)),
            p.d_min() + delta,
            p.d_max() + delta,
        )?,
        NormalizationStep::Scale { factor } => Pcr::new(
            map_weights(p, |_, _, w| w * factor),
            p.d_min() * factor,
            p.d_max() * factor,
        )?,
    })
}

fn check_leaves(p: &Pcr) -> Result<(), NormalizeError> {
    let leaves = p.tree().leaves().len();
    if leaves < 2 {
        return Err(NormalizeError::TooFewLeaves(leaves));
    }
    Ok(())
}

/// Runs the four non-singularity steps: contract zero inner edges, split a
/// two-vertex tree, raise leaf edges when some leaf edge or `d_min` is zero,
/// and open up `d_max` when it equals `d_min`. An input that is already
/// non-singular comes back unchanged with an empty report.
pub fn make_nonsingular(p: &Pcr) -> Result<(Pcr, NormalizationReport), NormalizeError> {
    check_leaves(p)?;
    let mut report = NormalizationReport::default();
    if p.is_nonsingular() {
        return Ok((p.clone(), report));
    }
    let mut cur = p.clone();
    let mut push = |cur: &mut Pcr, step: NormalizationStep| -> Result<(), NormalizeError> {
        *cur = apply_step(cur, &step)?;
        report.steps.push(step);
        Ok(())
    };

    let (_, contracted) = cur.contract_zero_inner_edges();
    if !contracted.is_empty() {
        push(&mut cur, NormalizationStep::ShrinkZeroEdges { contracted })?;
    }

    if cur.tree().len() == 2 {
        let label = cur.tree().fresh_inner_label();
        push(&mut cur, NormalizationStep::SubdivideTwoVertex { label })?;
    }

    let t = cur.tree();
    let zero_leaf_edge = (0..t.edges().len()).any(|k| t.is_leaf_edge(k) && t.edges()[k].weight.is_zero());
    if zero_leaf_edge || cur.d_min().is_zero() {
        let delta = rational::int(LEAF_RAISE);
        push(&mut cur, NormalizationStep::RaiseLeafWeights { delta })?;
    }

    if cur.d_min() == cur.d_max() {
        let epsilon = widening_epsilon(&cur);
        push(&mut cur, NormalizationStep::WidenDmax { epsilon })?;
    }

    debug_assert!(cur.is_nonsingular());
    Ok((cur, report))
}

/// Half the smallest leaf distance strictly above `d_max`, measured from
/// `d_max`; `d_max / 2` if no distance exceeds it.
fn widening_epsilon(p: &Pcr) -> Rational {
    let d = p.leaf_distances();
    let mut gap: Option<Rational> = None;
    for (i, row) in d.iter().enumerate() {
        for x in &row[i + 1..] {
            if x > p.d_max() {
                let g = x - p.d_max();
                if gap.as_ref().is_none_or(|cur| &g < cur) {
                    gap = Some(g);
                }
            }
        }
    }
    rational::half(gap.as_ref().unwrap_or(p.d_max()))
}

/// c_G = (d_min + d_max) / (2 d_max); any alpha in (c_G, 1) is admissible
/// for normalization.
pub fn critical_alpha(p: &Pcr) -> Result<Rational, NormalizeError> {
    if !p.is_nonsingular() {
        return Err(NormalizeError::NotNonsingular);
    }
    Ok((p.d_min() + p.d_max()) / (p.d_max() * rational::int(2)))
}

/// Midpoint of (c_G, 1).
pub fn auto_alpha(critical: &Rational) -> Rational {
    rational::half(&(critical + Rational::one()))
}

/// Non-singular form first, then shift every leaf-to-leaf distance by delta
/// (half on each leaf edge) so that `(d_min + delta) / (d_max + delta) =
/// alpha`, then scale by `1 / (d_max + delta)`. With `alpha = None` the
/// midpoint of the admissible interval is used.
pub fn make_normalized(p: &Pcr, alpha: Option<&Rational>) -> Result<(Pcr, NormalizationReport), NormalizeError> {
    let (ns, mut report) = make_nonsingular(p)?;
    let critical = critical_alpha(&ns)?;
    let alpha = alpha.cloned().unwrap_or_else(|| auto_alpha(&critical));
    if alpha <= critical || alpha >= Rational::one() {
        return Err(NormalizeError::AlphaOutOfRange {
            alpha: rational::format(&alpha),
            critical: rational::format(&critical),
        });
    }
    let delta = (&alpha * ns.d_max() - ns.d_min()) / (Rational::one() - &alpha);
    debug_assert!(&delta > ns.d_max());
    let factor = Rational::one() / (ns.d_max() + &delta);
    let mut cur = ns;
    for step in [
        NormalizationStep::AddDelta { delta },
        NormalizationStep::Scale { factor },
    ] {
        cur = apply_step(&cur, &step)?;
        report.steps.push(step);
    }
    debug_assert!(cur.is_normalized() && cur.d_min() == &alpha);
    Ok((cur, report))
}

/// The critical alpha of `p` after making it non-singular.
pub fn critical_alpha_of(p: &Pcr) -> Result<Rational, NormalizeError> {
    critical_alpha(&make_nonsingular(p)?.0)
}
