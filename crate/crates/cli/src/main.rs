use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use reassembly::reductions::{self, LemmaParams};
use reassembly::solvers::{self, Objective, Sense};
use reassembly::{generate, oracles, parse_graph, Graph, ReassemblingTree, VertexSet};

const DEFAULT_SEED: u64 = 20;

#[derive(Parser)]
#[command(
    name = "reassembly",
    version,
    about = "Balanced graph reassembling: measures, solvers, oracles, gadgets"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// α and β of a tree (JSON cluster array) over a graph.
    Measure { graph: PathBuf, tree: PathBuf },
    /// Optimal balanced tree.
    Optimize {
        graph: PathBuf,
        #[arg(long, value_enum, default_value = "beta")]
        objective: ObjectiveArg,
        #[arg(long, value_enum, default_value = "min")]
        sense: SenseArg,
        /// Use the top-down local-search heuristic (minimization only).
        #[arg(long)]
        greedy: bool,
    },
    /// Brute-force oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Gadget constructions; prints an edge list.
    #[command(subcommand)]
    Reduce(ReduceCommand),
    /// Check a lemma on seeded random instances. Exits 1 unless it passes.
    VerifyLemma {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        lemma: u8,
        #[arg(long, default_value_t = 20)]
        instances: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Vertex counts to cycle through (comma-separated).
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
    },
    /// Generate a graph; prints an edge list.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Edge probability (random) or cross-edge probability (planted-cover).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// All minimum bisections.
    Minbisect { graph: PathBuf },
    /// A 4-clique cover with the given block sizes (default: equal sizes).
    Cliquecover4 {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// Partitions of n into four positive parts.
    Partitions4 { n: usize },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// G joined to two cliques H and I.
    Augment { graph: PathBuf },
    /// G plus four cliques forcing an equal-size cover.
    EqualSizeGadget {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Alpha,
    Beta,
}

#[derive(Clone, Copy, ValueEnum)]
enum SenseArg {
    Min,
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cycle,
    Clique,
    Random,
    PlantedCover,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct MeasureOutput {
    alpha: usize,
    beta: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta_via_heights: Option<usize>,
}

#[derive(Serialize)]
struct BisectionOutput {
    value: usize,
    optima: Vec<[VertexSet; 2]>,
}

#[derive(Serialize)]
struct CoverOutput {
    sizes: [usize; 4],
    cover: Option<Vec<VertexSet>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PartitionsOutput {
    count: usize,
    closed_form: u64,
    partitions: Vec<[usize; 4]>,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_graph(&read_input(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

fn four(sizes: &[usize]) -> Result<[usize; 4]> {
    match sizes.try_into() {
        Ok(s) => Ok(s),
        Err(_) => bail!("--sizes takes exactly four comma-separated values, got {}", sizes.len()),
    }
}

fn json<T: Serialize>(value: &T, pretty: bool) -> Result<String> {
    let text = if pretty {
        serde_json::to_string_pretty(value)?
    } else {
        serde_json::to_string(value)?
    };
    Ok(text + "\n")
}

fn set_list(s: &VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Returns the text to print and whether the command succeeded.
fn run(cli: Cli) -> Result<(String, bool)> {
    let pretty = cli.pretty;
    let out = match cli.command {
        Command::Measure { graph, tree } => {
            let g = load_graph(&graph)?;
            let text = read_input(&tree)?;
            let t = ReassemblingTree::from_json(g.n(), &text).context("parsing tree")?;
            let t = ReassemblingTree::validate(&g, t.clusters().iter().cloned())?;
            let m = t.measures(&g)?;
            let beta_via_heights = t.beta_via_edge_heights(&g).ok();
            json(
                &MeasureOutput {
                    alpha: m.alpha,
                    beta: m.beta,
                    beta_via_heights,
                },
                pretty,
            )?
        }
        Command::Optimize {
            graph,
            objective,
            sense,
            greedy,
        } => {
            let g = load_graph(&graph)?;
            let objective = match objective {
                ObjectiveArg::Alpha => Objective::Alpha,
                ObjectiveArg::Beta => Objective::Beta,
            };
            let sense = match sense {
                SenseArg::Min => Sense::Minimize,
                SenseArg::Max => Sense::Maximize,
            };
            let best = if greedy {
                if sense == Sense::Maximize {
                    bail!("--greedy only minimizes");
                }
                solvers::greedy_balanced_heuristic(&g, objective)?
            } else {
                solvers::optimize_balanced(&g, objective, sense)?
            };
            json(&best, pretty)?
        }
        Command::Oracle(OracleCommand::Minbisect { graph }) => {
            let g = load_graph(&graph)?;
            let best = oracles::min_bisections(&g)?;
            let optima = best.optima.into_iter().map(|b| [b.a, b.b]).collect();
            json(
                &BisectionOutput {
                    value: best.value,
                    optima,
                },
                pretty,
            )?
        }
        Command::Oracle(OracleCommand::Cliquecover4 { graph, sizes }) => {
            let g = load_graph(&graph)?;
            let sizes = match sizes {
                Some(s) => four(&s)?,
                None => {
                    if g.n() == 0 || g.n() % 4 != 0 {
                        bail!("n = {} is not divisible by 4; pass --sizes", g.n());
                    }
                    [g.n() / 4; 4]
                }
            };
            let cover = oracles::fixed_size_clique_cover4(&g, sizes)?;
            json(&CoverOutput { sizes, cover }, pretty)?
        }
        Command::Oracle(OracleCommand::Partitions4 { n }) => {
            let partitions = oracles::partitions4(n)?;
            let closed_form = oracles::p4_closed_form(n)?;
            json(
                &PartitionsOutput {
                    count: partitions.len(),
                    closed_form,
                    partitions,
                },
                pretty,
            )?
        }
        Command::Reduce(ReduceCommand::Augment { graph }) => {
            let ag = reductions::augment(&load_graph(&graph)?)?;
            format!(
                "# augmented graph: r = {}, q = {}\n# G: {}\n# H: {}\n# I: {}\n{}",
                ag.r,
                ag.q,
                set_list(&ag.g_part),
                set_list(&ag.h_part),
                set_list(&ag.i_part),
                ag.graph.to_edge_list()
            )
        }
        Command::Reduce(ReduceCommand::EqualSizeGadget { graph, sizes }) => {
            let sizes = four(&sizes)?;
            let gadget = reductions::equal_size_gadget(&load_graph(&graph)?, sizes)?;
            let mut text = format!("# equal-size gadget for sizes {sizes:?}\n");
            for (i, a) in gadget.added.iter().enumerate() {
                text.push_str(&format!("# A{}: {}\n", i + 1, set_list(a)));
            }
            text + &gadget.graph.to_edge_list()
        }
        Command::VerifyLemma {
            lemma,
            instances,
            seed,
            n,
        } => {
            let report = reductions::verify_lemma(lemma, &LemmaParams { instances, seed, n })?;
            return Ok((json(&report, pretty)?, report.passed));
        }
        Command::Gen { family, n, seed, p } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("--p must lie in [0, 1], got {p}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match family {
                Family::Cycle => Graph::cycle(n)?.to_edge_list(),
                Family::Clique => Graph::complete(n)?.to_edge_list(),
                Family::Random => generate::random_graph(&mut rng, n, p).to_edge_list(),
                Family::PlantedCover => {
                    if n == 0 || n % 4 != 0 {
                        bail!("planted covers need n divisible by 4, got {n}");
                    }
                    let (g, blocks) = generate::planted_clique_cover(&mut rng, n, p);
                    let mut text = String::new();
                    for (i, b) in blocks.iter().enumerate() {
                        text.push_str(&format!("# block {}: {}\n", i + 1, set_list(b)));
                    }
                    text + &g.to_edge_list()
                }
            }
        }
    };
    Ok((out, true))
}

fn configure_workers() {
    if let Some(workers) = std::env::var("REASSEMBLY_WORKERS")
        .ok()
        .and_then(|w| w.parse::<usize>().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_workers();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
