mod io;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use pcg_core::compose::{build_cycle_cache, cycle_cache, generate, Family, CACHE_VERSION};
use pcg_core::graph::{write_edge_list, write_graph6, Graph};
use pcg_core::normalize::{make_nonsingular, make_normalized};
use pcg_core::oracle::{exact_search, Budget, SearchOutcome};
use pcg_core::pcr::{to_dot, Pcr};
use pcg_core::rational;
use pcg_core::reduce::{
    grow_non_pcg, recognize, reduce_graph, replay_graph, replay_witness, GraphId, GrowDirective, RecognizeOptions,
    ReductionRules, Verdict,
};

use io::{checked_pcr_json, read_graph, read_json, read_pcr, to_json, write_text, Failure, GraphFormat};

const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;

/// Pairwise compatibility graphs: evaluate, normalize, compose, reduce and
/// recognize tree representations.
#[derive(Parser, Debug)]
#[command(name = "pcg")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the graph induced by a PCR.
    Eval {
        pcr: PathBuf,
        /// Output format.
        #[arg(long, value_enum, default_value = "graph6")]
        output: GraphFormat,
    },
    /// Check that a PCR induces a graph. Exit 0 if it does, 1 if not.
    Verify {
        pcr: PathBuf,
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
    /// Rewrite a PCR in normalized form, keeping its graph.
    Normalize {
        pcr: PathBuf,
        /// Ratio d_min / d_max of the result, e.g. 7/8. Defaults to the
        /// midpoint of the admissible range.
        #[arg(long)]
        alpha: Option<String>,
        /// Stop after the non-singular form.
        #[arg(long)]
        nonsingular_only: bool,
        /// Write the list of applied steps here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Apply the reduction rules and print the kernels.
    Reduce {
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        /// Write the reduction trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Decide whether a graph is a PCG. Exit 0 with a witness, 1 if a kernel
    /// was refuted, 2 with the open kernels otherwise.
    Recognize {
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        /// Most topologies the oracle may try per kernel; 0 disables it.
        #[arg(long)]
        oracle_budget: Option<u64>,
        #[command(flatten)]
        oracle: OracleFlags,
        #[command(flatten)]
        rules: RuleFlags,
    },
    /// Rebuild a graph, or a witness for it, from a reduction trace.
    Replay {
        trace: PathBuf,
        /// JSON object mapping kernel ids to PCRs.
        #[arg(long)]
        witnesses: Option<PathBuf>,
    },
    /// Search every tree topology for a witness.
    Oracle {
        /// Graph to decide. Optional with --emit-cache.
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        /// Stop after this many topologies.
        #[arg(long)]
        max_topologies: Option<u64>,
        #[command(flatten)]
        oracle: OracleFlags,
        /// Rebuild the cycle witness cache and write it here.
        #[arg(long)]
        emit_cache: Option<PathBuf>,
    },
    /// Build a witness for a graph family.
    Generate {
        #[command(subcommand)]
        family: FamilyArg,
    },
    /// Grow a larger graph from a seed with a JSON list of directives.
    Grow {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        ops: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long, value_enum, default_value = "edgelist")]
        output: GraphFormat,
    },
    /// Render the tree of a PCR in Graphviz DOT.
    Dot { pcr: PathBuf },
}

#[derive(Subcommand, Debug)]
enum FamilyArg {
    /// Complete graph on v0..v{k-1}.
    Clique { k: usize },
    /// Complete multipartite graph with the given part sizes, e.g. 1,2,2.
    Kpartite {
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Cycle v0 - v1 - ... - v{n-1} - v0.
    Cycle { n: usize },
    /// A cactus read from a file.
    Cactus {
        graph: PathBuf,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
}

#[derive(Args, Debug)]
struct OracleFlags {
    /// Largest graph the oracle will attempt.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Worker threads for the topology search.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Give up after this many seconds.
    #[arg(long)]
    time_limit: Option<u64>,
}

impl OracleFlags {
    fn budget(&self, max_topologies: Option<u64>) -> Budget {
        Budget {
            max_n: self.max_n,
            max_topologies,
            time_limit: self.time_limit.map(Duration::from_secs),
            jobs: self.jobs,
        }
    }
}

#[derive(Args, Debug)]
struct RuleFlags {
    #[arg(long)]
    no_components: bool,
    #[arg(long)]
    no_cut_vertices: bool,
    #[arg(long)]
    no_false_twins: bool,
    #[arg(long)]
    no_true_twins: bool,
}

impl RuleFlags {
    fn rules(&self) -> ReductionRules {
        ReductionRules {
            components: !self.no_components,
            cut_vertices: !self.no_cut_vertices,
            false_twins: !self.no_false_twins,
            true_twins: !self.no_true_twins,
        }
    }
}

fn write_graph(g: &Graph, f: GraphFormat) -> String {
    match f {
        GraphFormat::Graph6 => write_graph6(g),
        GraphFormat::Edgelist => write_edge_list(g),
    }
}

fn emit(s: &str) {
    if s.ends_with('\n') {
        print!("{s}");
    } else {
        println!("{s}");
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Eval { pcr, output } => {
            let p = read_pcr(&pcr)?;
            emit(&write_graph(&p.induced_graph(), output));
            Ok(0)
        }
        Command::Verify { pcr, graph, format } => {
            let p = read_pcr(&pcr)?;
            let g = read_graph(&graph, format)?;
            let ok = p.verify(&g).map_err(Failure::data)?;
            emit(&to_json(&serde_json::json!({ "verified": ok })));
            Ok(if ok { 0 } else { EXIT_NEGATIVE })
        }
        Command::Normalize {
            pcr,
            alpha,
            nonsingular_only,
            report,
        } => {
            let p = read_pcr(&pcr)?;
            let alpha = alpha
                .map(|a| rational::parse(&a).map_err(|e| Failure::Usage(format!("--alpha: {e}"))))
                .transpose()?;
            let (q, steps) = if nonsingular_only {
                make_nonsingular(&p)
            } else {
                make_normalized(&p, alpha.as_ref())
            }
            .map_err(Failure::data)?;
            if let Some(path) = report {
                write_text(&path, &to_json(&steps))?;
            }
            emit(&checked_pcr_json(&q, &p.induced_graph())?);
            Ok(0)
        }
        Command::Reduce {
            graph,
            format,
            trace,
            rules,
        } => {
            let g = read_graph(&graph, format)?;
            let t = reduce_graph(&g, &rules.rules());
            if let Some(path) = trace {
                write_text(&path, &to_json(&t))?;
            }
            emit(&to_json(&t.kernels));
            Ok(0)
        }
        Command::Recognize {
            graph,
            format,
            oracle_budget,
            oracle,
            rules,
        } => {
            let g = read_graph(&graph, format)?;
            let opts = RecognizeOptions {
                rules: rules.rules(),
                oracle: match oracle_budget {
                    Some(0) => None,
                    cap => Some(oracle.budget(cap)),
                },
            };
            match recognize(&g, &opts).map_err(Failure::data)? {
                Verdict::Pcg { witness } => {
                    emit(&checked_pcr_json(&witness, &g)?);
                    Ok(0)
                }
                v @ Verdict::NonPcg { .. } => {
                    emit(&to_json(&v));
                    Ok(EXIT_NEGATIVE)
                }
                Verdict::Unknown { kernels, .. } => {
                    emit(&to_json(&kernels));
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Replay { trace, witnesses } => {
            let t = read_json(&trace)?;
            let g = replay_graph(&t).map_err(Failure::data)?;
            match witnesses {
                None => emit(&write_edge_list(&g)),
                Some(path) => {
                    let ws: BTreeMap<GraphId, Pcr> = read_json(&path)?;
                    let p = replay_witness(&ws, &t).map_err(Failure::data)?;
                    emit(&checked_pcr_json(&p, &g)?);
                }
            }
            Ok(0)
        }
        Command::Oracle {
            graph,
            format,
            max_topologies,
            oracle,
            emit_cache,
        } => {
            if let Some(path) = emit_cache {
                let cache = build_cycle_cache(oracle.jobs).map_err(Failure::data)?;
                write_text(&path, &(cache.to_json() + "\n"))?;
                eprintln!("wrote {} cycle witnesses to {}", cache.cycles.len(), path.display());
                if graph.is_none() {
                    return Ok(0);
                }
            }
            let path = graph.ok_or_else(|| Failure::Usage("a graph file is required".into()))?;
            let g = read_graph(&path, format)?;
            match exact_search(&g, &oracle.budget(max_topologies)).map_err(Failure::data)? {
                SearchOutcome::Pcg { witness, .. } => {
                    emit(&checked_pcr_json(&witness, &g)?);
                    Ok(0)
                }
                SearchOutcome::NonPcg { topologies } => {
                    emit(&format!("NON-PCG (exhausted {topologies} topologies)"));
                    Ok(EXIT_NEGATIVE)
                }
                SearchOutcome::Inconclusive { reason, .. } => {
                    eprintln!("{reason}");
                    emit("INCONCLUSIVE (budget)");
                    Ok(EXIT_UNKNOWN)
                }
            }
        }
        Command::Generate { family } => {
            let family = match family {
                FamilyArg::Clique { k } => Family::Clique(k),
                FamilyArg::Kpartite { sizes } => Family::Kpartite(sizes),
                FamilyArg::Cycle { n } => Family::Cycle(n),
                FamilyArg::Cactus { graph, format } => Family::Cactus(read_graph(&graph, format)?),
            };
            if matches!(family, Family::Clique(0)) {
                return Err(Failure::Usage("clique size must be positive".into()));
            }
            let (g, p) = generate(&family).map_err(Failure::data)?;
            emit(&checked_pcr_json(&p, &g)?);
            Ok(0)
        }
        Command::Grow {
            seed,
            ops,
            format,
            output,
        } => {
            let s = read_graph(&seed, format)?;
            let ops: Vec<GrowDirective> = read_json(&ops)?;
            let g = grow_non_pcg(&s, &ops).map_err(Failure::data)?;
            emit(&write_graph(&g, output));
            Ok(0)
        }
        Command::Dot { pcr } => {
            emit(&to_dot(read_pcr(&pcr)?.tree()));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let version: &'static str =
        Box::leak(format!("{} (cycle cache v{CACHE_VERSION})", env!("CARGO_PKG_VERSION")).into_boxed_str());
    let matches = match Cli::command().version(version).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Err(e) = cycle_cache() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_DATA);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
    }
}
