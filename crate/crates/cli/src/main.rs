//! `posetdim`: generate posets, inspect their blocks, compute dimension and
//! build or check realizers. Documents are JSON; `-` (the default) reads
//! standard input.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 timeout.

mod document;

use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use posetdim::blocks::{block_decomposition, cover_graph, BlockDecomposition};
use posetdim::error::{GeneratorError, MergeError, SolverError};
use posetdim::generators as gen;
use posetdim::merge::{dimension_upper_bound, BoundOptions};
use posetdim::solver::{exact_dimension, greedy_realizer, SolverConfig, DEFAULT_LEVEL_TIMEOUT};
use posetdim::{verify_realizer, Counterexample, Poset, Verdict};

use document::{to_json, DocumentError, PosetDocument, RealizerDocument};

#[derive(Parser)]
#[command(name = "posetdim", version, about = "Order dimension of finite posets")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated poset as JSON.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// List the blocks of the cover graph in merge order.
    Blocks {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Emit Graphviz DOT instead of text.
        #[arg(long)]
        dot: bool,
    },
    /// Exact dimension; prints a witness realizer.
    Dim {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Largest dimension to try.
        #[arg(long, default_value_t = 16)]
        max: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Realizer of size at most d+2 built from block realizers, where d is
    /// the largest block dimension.
    Realizer {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// Use realizers of this size for every block instead of exact
        /// block dimensions.
        #[arg(long)]
        block_dim_override: Option<usize>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check a realizer against a poset.
    Verify { poset: PathBuf, realizer: PathBuf },
}

#[derive(clap::Args)]
struct SolverArgs {
    /// Seconds allowed per decision level.
    #[arg(long, default_value_t = DEFAULT_LEVEL_TIMEOUT.as_secs_f64())]
    timeout: f64,
    /// Levels probed in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SolverArgs {
    fn config(&self, max_dim: usize) -> Result<SolverConfig, CliError> {
        let timeout = Duration::try_from_secs_f64(self.timeout)
            .map_err(|_| CliError::Usage(format!("invalid timeout {}", self.timeout)))?;
        Ok(SolverConfig { max_dim, timeout: Some(timeout), jobs: self.jobs.max(1), shuffle_seed: None })
    }
}

#[derive(Subcommand)]
enum Family {
    Chain { n: usize },
    StandardExample { d: usize },
    Grid { n: usize, d: usize },
    BlockGrid { n: usize, d: usize },
    Fig1Left { n: usize },
    Fig1Right { n: usize },
    Fig3Trees {
        #[arg(value_enum)]
        which: Tree,
    },
    Fig4Diamonds { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum Tree {
    Left,
    Right,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Merge(MergeError),
    #[error(transparent)]
    Solver(SolverError),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Solver(SolverError::Timeout { .. })
            | CliError::Merge(MergeError::Solver(SolverError::Timeout { .. })) => 3,
            _ => 2,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load_poset(path: &PathBuf) -> Result<(PosetDocument, Poset), CliError> {
    let doc = PosetDocument::parse(&read_input(path)?)?;
    let p = doc.to_poset().map_err(DocumentError::from)?;
    Ok((doc, p))
}

fn generate(family: &Family) -> Result<(String, Poset), CliError> {
    Ok(match *family {
        Family::Chain { n } => (format!("chain({n})"), gen::gen_chain(n)?),
        Family::StandardExample { d } => (format!("standard-example({d})"), gen::gen_standard_example(d)?),
        Family::Grid { n, d } => (format!("grid({n},{d})"), gen::gen_grid(n, d)?),
        Family::BlockGrid { n, d } => (format!("block-grid({n},{d})"), gen::gen_block_grid(n, d)?),
        Family::Fig1Left { n } => (format!("fig1-left({n})"), gen::gen_fig1_left(n)?),
        Family::Fig1Right { n } => (format!("fig1-right({n})"), gen::gen_fig1_right(n)?),
        Family::Fig3Trees { which } => {
            let (l, r) = gen::gen_fig3_trees();
            match which {
                Tree::Left => ("fig3-trees(left)".into(), l),
                Tree::Right => ("fig3-trees(right)".into(), r),
            }
        }
        Family::Fig4Diamonds { n } => (format!("fig4-diamonds({n})"), gen::gen_fig4_diamonds(n)?),
    })
}

fn names(p: &Poset, vs: &[usize]) -> String {
    vs.iter().map(|&v| p.name(v)).collect::<Vec<_>>().join(" ")
}

fn blocks_text(p: &Poset, dec: &BlockDecomposition) -> String {
    let mut out = String::new();
    writeln!(out, "blocks: {}", dec.len()).unwrap();
    for (i, block) in dec.blocks().iter().enumerate() {
        match dec.root(i) {
            Some(r) => writeln!(out, "B{i} (root {}): {}", p.name(r), names(p, block)),
            None => writeln!(out, "B{i}: {}", names(p, block)),
        }
        .unwrap();
    }
    writeln!(out, "cut vertices: {}", names(p, dec.cut_vertices())).unwrap();
    out
}

const PALETTE: [&str; 8] =
    ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"];

fn blocks_dot(p: &Poset, dec: &BlockDecomposition, title: &str) -> String {
    let color = |i: usize| PALETTE[i % PALETTE.len()];
    let mut out = String::new();
    writeln!(out, "graph {title:?} {{").unwrap();
    writeln!(out, "  node [style=filled, fontcolor=white];").unwrap();
    for v in 0..p.len() {
        let shape = if dec.is_cut_vertex(v) { "doublecircle" } else { "circle" };
        writeln!(out, "  {:?} [shape={shape}, fillcolor={:?}];", p.name(v), color(dec.home(v))).unwrap();
    }
    let g = cover_graph(p);
    for (a, b) in g.edges() {
        let block = dec.blocks_of(a).iter().copied().find(|&i| dec.contains(i, b)).expect("edges lie in a block");
        writeln!(out, "  {:?} -- {:?} [color={:?}, label=\"B{block}\"];", p.name(a), p.name(b), color(block)).unwrap();
    }
    out.push_str("}\n");
    out
}

fn describe(p: &Poset, c: Counterexample) -> String {
    match c {
        Counterexample::BrokenComparability { x, y, extension } => format!(
            "extension {} puts {} before {} although {} < {}",
            extension + 1,
            p.name(y),
            p.name(x),
            p.name(x),
            p.name(y)
        ),
        Counterexample::NotReversed { x, y } => {
            format!("no extension puts {} below {}", p.name(y), p.name(x))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Command::Gen { family } => {
            let (name, p) = generate(&family)?;
            print!("{}", to_json(&PosetDocument::from_poset(name, &p)));
        }
        Command::Blocks { input, dot } => {
            let (doc, p) = load_poset(&input)?;
            let dec = block_decomposition(&p).map_err(|e| CliError::Usage(e.to_string()))?;
            if dot {
                print!("{}", blocks_dot(&p, &dec, &doc.name));
            } else {
                print!("{}", blocks_text(&p, &dec));
            }
        }
        Command::Dim { input, max, solver } => {
            let (doc, p) = load_poset(&input)?;
            let config = solver.config(max)?;
            match exact_dimension(&p, &config) {
                Ok(res) => {
                    eprintln!(
                        "dimension: {} ({} nodes, {:.3}s)",
                        res.dim,
                        res.stats.nodes,
                        res.stats.elapsed.as_secs_f64()
                    );
                    print!("{}", to_json(&RealizerDocument::from_realizer(doc.name, &p, &res.witness)));
                }
                Err(SolverError::Timeout { level, lower_bound, .. }) => {
                    let upper = greedy_realizer(&p).len();
                    eprintln!(
                        "timeout deciding dimension <= {level}; {lower_bound} <= dimension <= {upper}"
                    );
                    return Ok(3);
                }
                Err(e @ SolverError::ExceedsMax(_)) => return Err(CliError::Usage(e.to_string())),
                Err(e) => return Err(CliError::Solver(e)),
            }
        }
        Command::Realizer { input, block_dim_override, solver } => {
            let (doc, p) = load_poset(&input)?;
            let opts = BoundOptions {
                block_dim_override,
                solver: solver.config(SolverConfig::default().max_dim)?,
            };
            let bound = dimension_upper_bound(&p, &opts).map_err(|e| match e {
                MergeError::Block(b) => CliError::Usage(b.to_string()),
                e => CliError::Merge(e),
            })?;
            if !verify_realizer(&p, &bound.witness).map_err(DocumentError::from)?.is_valid() {
                return Err(CliError::Merge(MergeError::Unsound));
            }
            eprintln!("max block dimension: {}", bound.d);
            eprintln!("realizer size: {}", bound.bound);
            print!("{}", to_json(&RealizerDocument::from_realizer(doc.name, &p, &bound.witness)));
        }
        Command::Verify { poset, realizer } => {
            let (_, p) = load_poset(&poset)?;
            let r = RealizerDocument::parse(&read_input(&realizer)?)?.to_realizer(&p)?;
            match verify_realizer(&p, &r).map_err(DocumentError::from)? {
                Verdict::Valid => println!("valid realizer of size {}", r.len()),
                Verdict::Invalid(c) => {
                    println!("invalid: {}", describe(&p, c));
                    return Ok(1);
                }
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
