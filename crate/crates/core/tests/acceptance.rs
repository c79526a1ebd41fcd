//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. All arithmetic is exact, so every
//! comparison uses tolerance 0.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::Instant;

use common::{random_cactus, random_pcr, rename, Built};
use pcg_core::compose::{add_false_twin, add_true_twin, cycle, generate, join_at_cut_vertex, join_components, Family};
use pcg_core::graph::{find_twins, parse_graph, Format, Graph};
use pcg_core::normalize::{critical_alpha_of, make_nonsingular, make_normalized};
use pcg_core::oracle::{exact_search, Budget, SearchOutcome};
use pcg_core::pcr::Pcr;
use pcg_core::rational;
use pcg_core::reduce::{
    grow_non_pcg, kernel_witness, recognize, reduce_graph, replay_graph, replay_witness, GrowDirective, KernelStatus,
    RecognizeOptions, ReductionRules, Verdict,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn budget() -> Budget {
    Budget {
        jobs: 4,
        ..Budget::default()
    }
}

fn graph_from_mask(n: usize, mask: u32) -> Graph {
    let mut g = Graph::numbered(n);
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge_idx(i, j).unwrap();
            }
            bit += 1;
        }
    }
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class, by minimum edge mask over all
/// vertex permutations.
fn graphs_up_to_iso(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let bit: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .fold(0u32, |acc, (_, &(i, j))| {
                        let (a, b) = (p[i].min(p[j]), p[i].max(p[j]));
                        acc | 1 << bit[&(a, b)]
                    })
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter().map(|m| graph_from_mask(n, m)).collect()
}

fn small_graphs() -> Vec<Graph> {
    (1..=5).flat_map(graphs_up_to_iso).collect()
}

fn oracle_witness(g: &Graph) -> Result<Pcr, String> {
    match exact_search(g, &budget()).map_err(|e| e.to_string())? {
        SearchOutcome::Pcg { witness, .. } => Ok(witness),
        other => Err(format!("oracle on {} edges {:?}: {other:?}", g.n(), g.edge_labels())),
    }
}

fn criterion_1() -> Outcome {
    let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_iso(n).len()).collect();
    check(counts == [1, 2, 4, 11, 34], || format!("class counts {counts:?}"))?;
    let graphs = small_graphs();
    for g in &graphs {
        let w = oracle_witness(g)?;
        check(w.verify(g).unwrap(), || {
            format!("witness for {:?} does not verify", g.edge_labels())
        })?;
    }
    Ok(format!(
        "{} classes on 1..=5 vertices {counts:?}, every one has a verified witness",
        graphs.len()
    ))
}

fn criterion_2() -> Outcome {
    let graphs = small_graphs();
    let opts = RecognizeOptions {
        oracle: Some(budget()),
        ..Default::default()
    };
    for g in &graphs {
        let exact = oracle_witness(g)?;
        let Verdict::Pcg { witness } = recognize(g, &opts).map_err(|e| e.to_string())? else {
            return Err(format!("recognize disagrees on {:?}", g.edge_labels()));
        };
        check(exact.verify(g).unwrap() && witness.verify(g).unwrap(), || {
            format!("unverified witness for {:?}", g.edge_labels())
        })?;
    }
    Ok(format!(
        "recognize and the exhaustive oracle agree (PCG) on all {} classes",
        graphs.len()
    ))
}

fn criterion_3() -> Outcome {
    const TRIALS: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let quarter = rational::ratio(1, 4);
    for t in 0..TRIALS {
        let p = random_pcr(&mut rng, 10);
        let g = p.induced_graph();
        let leaves = p.leaf_labels();

        let k = rng.gen_range(1..=leaves.len());
        let x: Vec<String> = leaves.choose_multiple(&mut rng, k).cloned().collect();
        let r = p.restrict(&x).map_err(|e| e.to_string())?;
        check(r.induced_graph() == g.induced(&x).unwrap(), || {
            format!("restriction, trial {t}")
        })?;

        let (ns, _) = make_nonsingular(&p).map_err(|e| e.to_string())?;
        check(ns.is_nonsingular() && ns.induced_graph() == g, || {
            format!("non-singular form, trial {t}")
        })?;
        let critical = critical_alpha_of(&p).map_err(|e| e.to_string())?;
        let alpha = &critical + (rational::one() - &critical) * rational::ratio(rng.gen_range(1..10), 10);
        let (q, _) = make_normalized(&p, Some(&alpha)).map_err(|e| e.to_string())?;
        let leaf_weights_ok = (0..q.tree().edges().len())
            .filter(|&e| q.tree().is_leaf_edge(e))
            .all(|e| q.tree().edges()[e].weight > quarter);
        check(
            q.is_normalized() && q.d_min() == &alpha && leaf_weights_ok && q.induced_graph() == g,
            || format!("normalized form, trial {t}"),
        )?;

        let other = rename(&random_pcr(&mut rng, 8), "y", None);
        let v = leaves.choose(&mut rng).unwrap().clone();
        let w = other.leaf_labels().choose(&mut rng).unwrap().clone();
        let other = rename(&other, "", Some((&w, &v)));
        let glued = join_at_cut_vertex(&p, &other, &v).map_err(|e| e.to_string())?;
        check(glued.induced_graph() == g.union(&other.induced_graph()), || {
            format!("cut-vertex join, trial {t}")
        })?;
        let apart = rename(&other, "z", None);
        let joined = join_components(&[p.clone(), apart.clone()]).map_err(|e| e.to_string())?;
        check(joined.induced_graph() == g.union(&apart.induced_graph()), || {
            format!("component join, trial {t}")
        })?;

        let ft = add_false_twin(&p, &v, "new").map_err(|e| e.to_string())?;
        let h = ft.induced_graph();
        check(
            h.neighborhood("new").unwrap() == h.neighborhood(&v).unwrap()
                && !h.has_edge("new", &v)
                && h.without("new").unwrap() == g,
            || format!("false twin, trial {t}"),
        )?;

        let (bp, a, b) = with_true_twins(&mut rng, &p)?;
        let bg = bp.induced_graph();
        let tt = add_true_twin(&bp, &a, &b, "new").map_err(|e| e.to_string())?;
        let h = tt.induced_graph();
        check(
            h.closed_neighborhood("new").unwrap() == h.closed_neighborhood(&a).unwrap()
                && h.closed_neighborhood(&a).unwrap() == h.closed_neighborhood(&b).unwrap()
                && h.without("new").unwrap() == bg,
            || format!("true twin, trial {t}"),
        )?;
    }
    Ok(format!(
        "{TRIALS} random trials each: restriction, non-singular and normalized forms, both joins, false and true twins"
    ))
}

/// `p` if it has a true-twin pair, otherwise the first random witness that
/// does.
fn with_true_twins(rng: &mut ChaCha8Rng, p: &Pcr) -> Result<(Pcr, String, String), String> {
    let mut q = p.clone();
    for _ in 0..1000 {
        if let Some(c) = find_twins(&q.induced_graph()).true_classes.choose(rng) {
            return Ok((q, c.members[0].clone(), c.members[1].clone()));
        }
        q = random_pcr(rng, 10);
    }
    Err("no random witness with true twins".into())
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    (1..=n.min(max))
        .rev()
        .flat_map(|first| {
            partitions(n - first, first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut largest = 0;
    for t in 0..100 {
        let g = random_cactus(&mut rng, 25, 7);
        largest = largest.max(g.n());
        let (target, w) = generate(&Family::Cactus(g.clone())).map_err(|e| format!("cactus {t}: {e}"))?;
        check(target == g && w.verify(&g).unwrap(), || {
            format!("cactus {t} does not verify")
        })?;
    }
    let mut count = 0;
    let mut all: Vec<Vec<usize>> = (1..=12).flat_map(|n| partitions(n, n)).collect();
    all.push(vec![1, 2, 2]);
    for sizes in &all {
        let (g, w) = generate(&Family::Kpartite(sizes.clone())).map_err(|e| format!("{sizes:?}: {e}"))?;
        check(w.verify(&g).unwrap(), || format!("K{sizes:?} does not verify"))?;
        count += 1;
    }
    check(all.contains(&vec![2, 2, 2]), || "K_{2,2,2} missing".into())?;
    Ok(format!(
        "100 random cacti (up to {largest} vertices, cycles up to 7) and {count} complete multipartite graphs on at most 12 vertices verify"
    ))
}

/// Small kernels with witnesses: every kernel on at most five vertices, and
/// the six- and seven-cycles.
fn kernel_pool() -> Result<Vec<Built>, String> {
    let mut pool = Vec::new();
    for g in small_graphs() {
        if g.is_connected() && reduce_graph(&g, &ReductionRules::default()).kernel_graphs() == vec![g.clone()] {
            let w = oracle_witness(&g)?;
            pool.push(Built::new(g, w));
        }
    }
    for n in [6, 7] {
        let g = Graph::cycle(n);
        let w = cycle(g.labels()).map_err(|e| e.to_string())?;
        pool.push(Built::new(g, w));
    }
    Ok(pool)
}

fn criterion_5() -> Outcome {
    let pool = kernel_pool()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut sizes = Vec::new();
    for t in 0..200 {
        let start = pool.choose(&mut rng).unwrap();
        let mut b = Built::new(start.graph.clone(), start.witness.clone());
        for _ in 0..rng.gen_range(1..=6) {
            match rng.gen_range(0..4) {
                0 => b.false_twin(&mut rng),
                1 => {
                    if !b.true_twin(&mut rng) {
                        b.false_twin(&mut rng);
                    }
                }
                2 => {
                    let other = pool.choose(&mut rng).unwrap();
                    b.glue(&mut rng, other)
                }
                _ => b.disjoint(pool.choose(&mut rng).unwrap()),
            }
        }
        check(b.witness.verify(&b.graph).unwrap(), || {
            format!("composed witness {t} does not verify")
        })?;
        let trace = reduce_graph(&b.graph, &ReductionRules::default());
        check(replay_graph(&trace).map_err(|e| e.to_string())? == b.graph, || {
            format!("replayed graph {t} differs")
        })?;
        let mut witnesses = BTreeMap::new();
        for k in &trace.kernels {
            match kernel_witness(&k.graph, Some(&budget())).map_err(|e| e.to_string())? {
                KernelStatus::Witness { witness } => witnesses.insert(k.id, witness),
                other => return Err(format!("graph {t}: kernel {:?} gave {other:?}", k.graph.edge_labels())),
            };
        }
        let w = replay_witness(&witnesses, &trace).map_err(|e| format!("graph {t}: {e}"))?;
        check(w.verify(&b.graph).unwrap(), || {
            format!("replayed witness {t} does not verify")
        })?;
        sizes.push(b.graph.n());
    }
    Ok(format!(
        "200 composed graphs ({} to {} vertices) reduce and replay to the same labeled graph with a verified witness",
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap()
    ))
}

/// The Petersen graph with a true twin added to `v0`: twin classes of size
/// two and no cut vertex, so it is its own kernel.
fn placeholder_seed() -> Graph {
    let mut g = Graph::numbered(10);
    for i in 0..5 {
        g.add_edge_idx(i, (i + 1) % 5).unwrap();
        g.add_edge_idx(i, i + 5).unwrap();
        g.add_edge_idx(i + 5, (i + 2) % 5 + 5).unwrap();
    }
    let nb = g.closed_neighborhood("v0").unwrap();
    g.add_vertex("t").unwrap();
    for u in nb {
        g.add_edge("t", &u).unwrap();
    }
    g
}

fn attachable() -> Vec<Graph> {
    vec![
        Graph::complete(3),
        Graph::cycle(5),
        Graph::path(3),
        Graph::complete_multipartite(&[1, 2, 2]),
        Graph::cycle(4),
    ]
}

fn criterion_6() -> Outcome {
    let (seed, origin) = match std::env::var("PCG_NONPCG_SEED") {
        Ok(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
            let format = if path.ends_with(".g6") {
                Format::Graph6
            } else {
                Format::EdgeList
            };
            (
                parse_graph(&text, format).map_err(|e| e.to_string())?,
                format!("seed from {path}"),
            )
        }
        Err(_) => (
            placeholder_seed(),
            "placeholder seed, non-PCG status not claimed".to_string(),
        ),
    };
    check(
        reduce_graph(&seed, &ReductionRules::default()).kernel_graphs() == vec![seed.clone()],
        || "seed is not its own kernel".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let extras = attachable();
    for t in 0..100 {
        let mut g = seed.clone();
        let mut ops = Vec::new();
        for _ in 0..rng.gen_range(1..=6) {
            let op = match rng.gen_range(0..3) {
                0 => GrowDirective::AddFalseTwin {
                    of: g.labels().choose(&mut rng).unwrap().clone(),
                    label: None,
                },
                1 => match find_twins(&g).true_classes.choose(&mut rng) {
                    Some(c) => GrowDirective::AddTrueTwin {
                        pair: (c.members[0].clone(), c.members[1].clone()),
                        label: None,
                    },
                    None => GrowDirective::AddFalseTwin {
                        of: g.label(0).to_string(),
                        label: None,
                    },
                },
                _ => {
                    let h = extras.choose(&mut rng).unwrap().clone();
                    let via = h.labels().choose(&mut rng).unwrap().clone();
                    GrowDirective::Attach {
                        at: g.labels().choose(&mut rng).unwrap().clone(),
                        graph: h,
                        via,
                    }
                }
            };
            g = grow_non_pcg(&g, std::slice::from_ref(&op)).map_err(|e| format!("sequence {t}: {e}"))?;
            ops.push(op);
        }
        check(grow_non_pcg(&seed, &ops).map_err(|e| e.to_string())? == g, || {
            format!("sequence {t} is not replayable")
        })?;
        let kernels = reduce_graph(&g, &ReductionRules::default()).kernel_graphs();
        check(kernels.contains(&seed), || {
            format!("sequence {t}: seed not among the kernels")
        })?;
    }
    Ok(format!(
        "100 random growth sequences reduce back to the seed ({origin})"
    ))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pool = kernel_pool()?;
    let mut found = 0;
    let mut attempts = 0;
    while found < 100 {
        attempts += 1;
        if attempts > 10_000 {
            return Err(format!("only {found} multifurcating witnesses in {attempts} attempts"));
        }
        let family = match rng.gen_range(0..3) {
            0 => Family::Clique(rng.gen_range(4..=9)),
            1 => Family::Kpartite((0..rng.gen_range(2..=4)).map(|_| rng.gen_range(1..=3)).collect()),
            _ => Family::Cactus(random_cactus(&mut rng, 15, 7)),
        };
        let (g, w) = generate(&family).map_err(|e| e.to_string())?;
        let mut b = Built::new(g, w);
        for _ in 0..rng.gen_range(0..=3) {
            match rng.gen_range(0..3) {
                0 => b.false_twin(&mut rng),
                1 => {
                    b.true_twin(&mut rng);
                }
                _ => {
                    let other = pool.choose(&mut rng).unwrap();
                    b.glue(&mut rng, other)
                }
            }
        }
        if b.witness.tree().max_degree() < 4 {
            continue;
        }
        let bin = b.witness.binarize();
        check(bin.tree().max_degree() <= 3 && bin.verify(&b.graph).unwrap(), || {
            format!("binarized witness {found} fails")
        })?;
        found += 1;
    }
    Ok(format!(
        "100 witnesses with an inner vertex of degree >= 4 still verify after binarizing ({attempts} drawn)"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("small graphs are PCGs", criterion_1),
        ("recognize agrees with the oracle", criterion_2),
        ("construction properties", criterion_3),
        ("cactus and multipartite witnesses", criterion_4),
        ("reduce and replay", criterion_5),
        ("grown graphs reduce to the seed", criterion_6),
        ("binarized witnesses", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
