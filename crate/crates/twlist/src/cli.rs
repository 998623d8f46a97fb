//! The `twlist` command line.
//!
//! Exit codes: 0 success, 1 negative answer (invalid, unsatisfiable),
//! 2 input error, 3 resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use twlist_core::chromatic::{
    ch_edge, ch_edge_exact, ch_total, ch_total_exact, choosability_exact, ChromaticError, DispatchConfig, WidthSource,
    DEFAULT_ORACLE_LIMIT,
};
use twlist_core::construct::{peel_and_color, ConstructError};
use twlist_core::decomp::{normalize, root_and_annotate, DecompError, TreeDecomposition};
use twlist_core::generate::{random_lists, random_mcc, random_partial_ktree, random_tree, KTreeParams};
use twlist_core::listcolor::DEFAULT_BUDGET;
use twlist_core::reduction::{
    build_reduction, normalize_mcc, solve_lhp, validate_lhp, witness_from_clique, Lhp, ReductionError,
};
use twlist_core::treewidth::{treewidth_exact, treewidth_heuristic, ExactTreewidth, DEFAULT_EXACT_LIMIT};
use twlist_core::{check_coloring, Graph, Mode};

use crate::format::{self, FormatError};

pub const ORACLE_LIMIT_VAR: &str = "TWLIST_ORACLE_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "twlist", version, about = "List colouring and list Hamilton path tools for bounded treewidth")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tree decomposition of a graph.
    Decomp(DecompArgs),
    /// List edge chromatic number.
    ChEdge(ChArgs),
    /// List total chromatic number.
    ChTotal(ChArgs),
    /// Constructive list edge colouring.
    ColorEdges(ColorArgs),
    /// Constructive list total colouring.
    ColorTotal(ColorArgs),
    /// Exact choosability by adversary enumeration.
    Oracle(OracleArgs),
    /// Multicolour Clique instance to List Hamilton Path instance.
    Reduce(ReduceArgs),
    /// Hamilton path of a reduction built from a multicolour clique.
    Witness(WitnessArgs),
    /// Check a Hamilton path against graph and position lists.
    VerifyLhp(VerifyLhpArgs),
    /// Exhaustive List Hamilton Path search for small instances.
    SolveLhp(SolveLhpArgs),
    /// Check a colouring against graph and lists.
    VerifyColoring(VerifyColoringArgs),
    /// Seeded random instances.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Vertex,
    Edge,
    Total,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Vertex => Mode::Vertex,
            ModeArg::Edge => Mode::Edge,
            ModeArg::Total => Mode::Total,
        }
    }
}

#[derive(Debug, Args)]
struct DecompArgs {
    graph: PathBuf,
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    #[arg(long)]
    heuristic: bool,
    #[arg(long)]
    normalize: bool,
    /// Root node (1-indexed); adds height annotations.
    #[arg(long)]
    root: Option<usize>,
    /// Largest graph the exact search accepts.
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    exact_limit: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChArgs {
    graph: PathBuf,
    /// Treewidth bound; confirmed by computing a decomposition of that width.
    #[arg(long, conflicts_with = "decomp")]
    tw: Option<usize>,
    /// Decomposition file to take the treewidth bound from.
    #[arg(long)]
    decomp: Option<PathBuf>,
    #[arg(long)]
    oracle_only: bool,
    /// Where to write the hard list assignment, if any.
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ColorArgs {
    graph: PathBuf,
    lists: PathBuf,
    /// Trusted treewidth bound; min-fill is used when absent.
    #[arg(long, conflicts_with = "decomp")]
    tw: Option<usize>,
    #[arg(long)]
    decomp: Option<PathBuf>,
    /// Where to write the peel as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct OracleArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Edge)]
    mode: ModeArg,
    #[arg(long)]
    cmax: Option<usize>,
    #[arg(long)]
    certificate: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ReduceArgs {
    mcc: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    dir: PathBuf,
    /// One vertex per class, 1-indexed ids of the input instance.
    #[arg(long, value_delimiter = ',', required = true)]
    clique: Vec<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyLhpArgs {
    path: PathBuf,
    /// Reduction directory holding the graph and lists.
    #[arg(long, conflicts_with_all = ["graph", "lists"], required_unless_present_all = ["graph", "lists"])]
    dir: Option<PathBuf>,
    #[arg(long, requires = "lists")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    lists: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SolveLhpArgs {
    graph: PathBuf,
    lists: PathBuf,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyColoringArgs {
    graph: PathBuf,
    coloring: PathBuf,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    lists: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Random partial k-tree, optionally with its decomposition.
    Ktree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0.0)]
        hub_bias: f64,
        #[arg(long, default_value_t = 1.0)]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        decomp: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random tree whose first vertex has a given degree.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        hub: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random lists for a graph.
    Lists {
        graph: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        universe: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Random Multicolour Clique instance.
    Mcc {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Plant a multicolour clique.
        #[arg(long)]
        plant: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Negative(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Negative(_) => 1,
            CliError::Format(_) | CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<ChromaticError> for CliError {
    fn from(e: ChromaticError) -> Self {
        match e {
            ChromaticError::InvalidDecomposition(_) => CliError::Input(e.to_string()),
            _ => CliError::Resource(e.to_string()),
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::TooLarge { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "twlist: {e}");
            e.code()
        }
    }
}

fn emit(output: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(p) => format::write_file(p, text)?,
        None => out.write_all(text.as_bytes()).map_err(input)?,
    }
    Ok(())
}

fn read_graph(p: &Path) -> Result<Graph, CliError> {
    Ok(format::parse_graph(&format::read_file(p)?)?)
}

fn oracle_limit() -> Result<usize, CliError> {
    match std::env::var(ORACLE_LIMIT_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Input(format!("{ORACLE_LIMIT_VAR}={v} is not a count"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Decomp(a) => decomp(a, out),
        Command::ChEdge(a) => ch(a, Mode::Edge, out),
        Command::ChTotal(a) => ch(a, Mode::Total, out),
        Command::ColorEdges(a) => color(a, Mode::Edge, out),
        Command::ColorTotal(a) => color(a, Mode::Total, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Reduce(a) => reduce(a, out),
        Command::Witness(a) => witness(a, out),
        Command::VerifyLhp(a) => verify_lhp(a, out),
        Command::SolveLhp(a) => solve(a, out),
        Command::VerifyColoring(a) => verify_coloring(a, out),
        Command::Gen(g) => generate(g, out),
    }
}

fn decomp(a: DecompArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let mut td = if a.exact {
        match treewidth_exact(&g, g.n(), a.exact_limit)? {
            ExactTreewidth::Found { decomposition, .. } => decomposition,
            ExactTreewidth::ExceedsBound => unreachable!("treewidth never exceeds n"),
        }
    } else {
        treewidth_heuristic(&g).1
    };
    if a.normalize {
        td = normalize(&g, &td)?;
    }
    let text = match a.root {
        Some(r) => {
            let root = r.checked_sub(1).ok_or_else(|| input("nodes are numbered from 1"))?;
            format::write_rooted(&root_and_annotate(&td, root)?)
        }
        None => format::write_decomposition(&td),
    };
    emit(a.output.as_deref(), &text, out)
}

/// A validated decomposition of width at most `k`, if one can be found.
fn decomposition_within(g: &Graph, k: usize) -> Result<TreeDecomposition, CliError> {
    if g.n() <= DEFAULT_EXACT_LIMIT {
        match treewidth_exact(g, k, DEFAULT_EXACT_LIMIT)? {
            ExactTreewidth::Found { decomposition, .. } => Ok(decomposition),
            ExactTreewidth::ExceedsBound => Err(CliError::Input(format!("treewidth exceeds {k}"))),
        }
    } else {
        let (w, td) = treewidth_heuristic(g);
        if w <= k {
            Ok(td)
        } else {
            Err(CliError::Input(format!("could not confirm treewidth {k} (min-fill gives {w}); pass --decomp")))
        }
    }
}

fn ch(a: ChArgs, mode: Mode, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let cfg = DispatchConfig { oracle_limit: oracle_limit()?, oracle_only: a.oracle_only, ..Default::default() };
    let td = match (a.tw, &a.decomp) {
        (Some(k), _) if !a.oracle_only => Some(decomposition_within(&g, k)?),
        (_, Some(p)) => Some(format::parse_decomposition(&format::read_file(p)?)?),
        _ => None,
    };
    let source = td.as_ref().map_or(WidthSource::Compute, WidthSource::Decomposition);
    let result = match mode {
        Mode::Edge => ch_edge(&g, source, &cfg)?,
        _ => ch_total(&g, source, &cfg)?,
    };
    if let (Some(p), Some(cert)) = (&a.certificate, &result.certificate) {
        format::write_file(p, &format::write_lists(&g, cert))?;
    }
    writeln!(out, "{} {}", result.value, result.method).map_err(input)
}

fn color(a: ColorArgs, mode: Mode, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let lists = format::parse_lists(&g, &format::read_file(&a.lists)?)?;
    let k = match (a.tw, &a.decomp) {
        (Some(k), _) => k,
        (None, Some(p)) => format::read_valid_decomposition(&g, &format::read_file(p)?)?.1,
        (None, None) => treewidth_heuristic(&g).0,
    };
    let built = peel_and_color(&g, k, &lists, mode).map_err(|e| match e {
        ConstructError::Stuck { .. } => CliError::Input(format!("{e}; the treewidth bound is wrong")),
        _ => input(e),
    })?;
    if let Err(e) = check_coloring(&g, mode, &built.coloring, Some(&lists)) {
        panic!("constructed colouring failed verification: {e}");
    }
    if let Some(p) = &a.trace {
        format::write_file(p, &format::write_trace(&g, &built.stack))?;
    }
    emit(a.output.as_deref(), &format::write_coloring(&g, &built.coloring), out)
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let limit = oracle_limit()?;
    let d = g.max_degree();
    let result = match a.mode {
        ModeArg::Vertex => choosability_exact(&g, a.cmax.unwrap_or(d + 1), limit)?,
        ModeArg::Edge => ch_edge_exact(&g, a.cmax.unwrap_or((2 * d).saturating_sub(1).max(1)), limit)?,
        ModeArg::Total => ch_total_exact(&g, a.cmax.unwrap_or(2 * d + 1), limit)?,
    };
    if let (Some(p), Some(cert)) = (&a.certificate, &result.certificate) {
        format::write_file(p, &format::write_lists(&g, cert))?;
    }
    writeln!(out, "{} oracle", result.value).map_err(input)
}

fn reduce(a: ReduceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let m = format::parse_mcc(&format::read_file(&a.mcc)?)?;
    let r = build_reduction(&normalize_mcc(&m)?)?;
    format::write_reduction_dir(&a.output, &r)?;
    writeln!(
        out,
        "k={} p={} q={} n={} vertices={} edges={} width={}",
        r.k(),
        r.mcc.p,
        r.mcc.q,
        r.n(),
        r.h.n(),
        r.h.m(),
        r.pdecomp.width()
    )
    .map_err(input)
}

fn witness(a: WitnessArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let mcc = format::read_provenance(&a.dir)?.to_mcc()?;
    let r = build_reduction(&mcc)?;
    let clique: Vec<usize> = a
        .clique
        .iter()
        .map(|&v| match v.checked_sub(1).and_then(|v| mcc.label.get(v)) {
            Some(&x) => Ok(x),
            None => Err(CliError::Input(format!("vertex {v} is not in the instance"))),
        })
        .collect::<Result<_, _>>()?;
    let path = witness_from_clique(&r, &clique)?;
    emit(a.output.as_deref(), &format::write_path(&path), out)
}

fn verify_lhp(a: VerifyLhpArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (g, lists) = match (&a.dir, &a.graph, &a.lists) {
        (Some(d), _, _) => format::read_lhp_dir(d)?,
        (None, Some(gp), Some(lp)) => {
            let g = read_graph(gp)?;
            let lists = format::parse_lists(&g, &format::read_file(lp)?)?;
            (g, lists)
        }
        _ => return Err(input("give --dir or both --graph and --lists")),
    };
    let path = format::parse_path(&format::read_file(&a.path)?)?;
    match validate_lhp(&g, &lists, &path) {
        Ok(()) => writeln!(out, "valid").map_err(input),
        Err(v) => Err(CliError::Negative(format!("invalid: {v}"))),
    }
}

fn solve(a: SolveLhpArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let lists = format::parse_lists(&g, &format::read_file(&a.lists)?)?;
    match solve_lhp(&g, &lists, a.budget) {
        Ok(Lhp::Path(p)) => emit(a.output.as_deref(), &format::write_path(&p), out),
        Ok(Lhp::Unsat) => Err(CliError::Negative("unsat".into())),
        Err(b) => Err(CliError::Resource(b.to_string())),
    }
}

fn verify_coloring(a: VerifyColoringArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let g = read_graph(&a.graph)?;
    let c = format::parse_coloring(&g, &format::read_file(&a.coloring)?)?;
    let lists = match &a.lists {
        Some(p) => Some(format::parse_lists(&g, &format::read_file(p)?)?),
        None => None,
    };
    match check_coloring(&g, a.mode.into(), &c, lists.as_ref()) {
        Ok(()) => writeln!(out, "valid").map_err(input),
        Err(e) if e.is_violation() || matches!(e, twlist_core::graph::ColoringError::Uncolored(_)) => {
            Err(CliError::Negative(format!("invalid: {e}")))
        }
        Err(e) => Err(input(e)),
    }
}

fn probability(name: &str, p: f64) -> Result<f64, CliError> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(CliError::Input(format!("--{name} must lie in [0, 1]")))
    }
}

fn generate(cmd: GenCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        GenCommand::Ktree { n, k, hub_bias, keep, seed, decomp, output } => {
            if n <= k {
                return Err(input("--n must exceed --k"));
            }
            let params = KTreeParams { n, k, hub_bias: probability("hub-bias", hub_bias)?, keep: probability("keep", keep)? };
            let (g, td) = random_partial_ktree(&mut ChaCha8Rng::seed_from_u64(seed), params);
            if let Some(p) = decomp {
                format::write_file(&p, &format::write_decomposition(&td))?;
            }
            emit(output.as_deref(), &format::write_graph(&g), out)
        }
        GenCommand::Tree { n, hub, seed, output } => {
            if hub >= n.max(1) {
                return Err(input("--hub must be below --n"));
            }
            let g = random_tree(&mut ChaCha8Rng::seed_from_u64(seed), n, hub);
            emit(output.as_deref(), &format::write_graph(&g), out)
        }
        GenCommand::Lists { graph, mode, len, universe, seed, output } => {
            if len == 0 || len > universe {
                return Err(input("need 1 <= --len <= --universe"));
            }
            let g = read_graph(&graph)?;
            let l = random_lists(&mut ChaCha8Rng::seed_from_u64(seed), &g, mode.into(), len, universe);
            emit(output.as_deref(), &format::write_lists(&g, &l), out)
        }
        GenCommand::Mcc { k, p, density, plant, seed, output } => {
            if k == 0 || p == 0 {
                return Err(input("--k and --p must be positive"));
            }
            let m = random_mcc(&mut ChaCha8Rng::seed_from_u64(seed), k, p, probability("density", density)?, plant);
            emit(output.as_deref(), &format::write_mcc(&m), out)
        }
    }
}
