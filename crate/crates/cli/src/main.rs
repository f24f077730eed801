//! `chromagame` command-line front end.

mod play;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chromagame::game::{parse_trace, GameError, GameSpec, MarkedSelection, MovePrefix, Player, TraceError, Variant};
use chromagame::graph::{generate, parse_graph6, Family, Graph, GraphError};
use chromagame::solver::{solve_fixed_k_with_stats, stats_line, win_profile, SolveError};
use chromagame::verify::{CacheError, Invariant, InvariantCache, Query, TheoremReport, Verifier, VerifyError, CSV_HEADER};
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Play(#[from] play::PlayError),
    #[error(transparent)]
    Output(#[from] io::Error),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

#[derive(Parser)]
#[command(name = "chromagame", version, about = "Exact solver for vertex colouring games and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named graph as graph6.
    Gen(GenArgs),
    /// Solve one game, at a fixed palette size or for every size.
    Solve(SolveArgs),
    /// Tabulate an invariant over every graph of one order, as CSV.
    Enumerate(EnumerateArgs),
    /// Run verification suites and print text reports.
    Verify(SuiteArgs),
    /// Run verification suites and print CSV witness rows.
    Report(SuiteArgs),
    /// Play against the solver in the terminal.
    Play(PlayArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Empty,
    Complete,
    Path,
    Cycle,
    Bipartite,
    Turan,
    Multipartite,
    KrrMinusMatching,
    /// Four-cycle with a pendant edge and an isolated vertex.
    #[value(name = "section5", alias = "separating")]
    Separating,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: FamilyName,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Part sizes for `multipartite`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantName {
    Plain,
    Blanks,
    Marking,
}

impl From<VariantName> for Variant {
    fn from(v: VariantName) -> Variant {
        match v {
            VariantName::Plain => Variant::Plain,
            VariantName::Blanks => Variant::WithBlanks,
            VariantName::Marking => Variant::Marking,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// Graph in graph6.
    #[arg(value_name = "GRAPH6")]
    positional: Option<String>,
    #[arg(long = "graph", value_name = "GRAPH6")]
    graph: Option<String>,
    /// Edge-list file: one `u v` pair per line, optional leading vertex count.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

impl GraphInput {
    fn load(&self) -> Result<Graph, CliError> {
        match (&self.positional, &self.graph, &self.edges) {
            (Some(g), None, None) | (None, Some(g), None) => Ok(parse_graph6(g.trim())?),
            (None, None, Some(path)) => Ok(Graph::from_edge_list(&read_file(path)?)?),
            (None, None, None) => Err(usage("give a graph: positional graph6, --graph or --edges")),
            _ => Err(usage("give exactly one of positional graph6, --graph, --edges")),
        }
    }
}

#[derive(Args)]
struct GameArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, default_value = "plain")]
    variant: VariantName,
    /// Classes marked for blanks, e.g. "0,1;2,3".
    #[arg(long)]
    marked: Option<String>,
    /// Palette size.
    #[arg(long)]
    k: Option<usize>,
}

impl GameArgs {
    fn spec(&self, k: usize) -> Result<GameSpec, CliError> {
        let g = self.input.load()?;
        let variant = Variant::from(self.variant);
        let mut spec = GameSpec::new(g, variant, k)?;
        if let Some(text) = &self.marked {
            if variant != Variant::WithBlanks {
                return Err(usage("--marked needs --variant blanks"));
            }
            spec = spec.with_marked(MarkedSelection::parse(&g, text)?)?;
        }
        Ok(spec)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    game: GameArgs,
    /// Trace file with the forced opening moves.
    #[arg(long, value_name = "FILE")]
    prefix: Option<PathBuf>,
    /// Print search statistics.
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "chi_g")]
    invariant: String,
    #[arg(long)]
    jobs: Option<usize>,
    /// Invariant cache file, created if absent.
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Basic,
    Equality,
    Main,
    Greedy,
    Base,
    Annotated,
    Imagination,
    Marking,
    Separation,
    All,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(long, default_value = "all")]
    suite: SuiteName,
    /// Graph order (or largest order) for the suite; defaults per suite.
    #[arg(long)]
    n: Option<usize>,
    /// Largest palette size for the greedy suite.
    #[arg(long)]
    k: Option<usize>,
    /// Turán parameter for the annotated and marking suites.
    #[arg(long)]
    r: Option<usize>,
    /// Single base-case part, 1 to 7.
    #[arg(long)]
    part: Option<u8>,
    /// Include the order-7 runs in the default ranges.
    #[arg(long)]
    extended: bool,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sample count for sampled suites.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_name = "FILE")]
    cache: Option<PathBuf>,
    /// Also write CSV witness rows to this file.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    Maker,
    Breaker,
}

#[derive(Args)]
struct PlayArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value = "breaker")]
    human: Role,
}

fn gen(args: &GenArgs) -> Result<(), CliError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("this family needs --{flag}")));
    let family = match args.family {
        FamilyName::Empty => Family::Empty(need(args.n, "n")?),
        FamilyName::Complete => Family::Complete(need(args.n, "n")?),
        FamilyName::Path => Family::Path(need(args.n, "n")?),
        FamilyName::Cycle => Family::Cycle(need(args.n, "n")?),
        FamilyName::Bipartite => Family::CompleteBipartite(need(args.a, "a")?, need(args.b, "b")?),
        FamilyName::Turan => Family::Turan(need(args.n, "n")?, need(args.r, "r")?),
        FamilyName::Multipartite => {
            if args.sizes.is_empty() {
                return Err(usage("multipartite needs --sizes"));
            }
            Family::CompleteMultipartite(args.sizes.clone())
        }
        FamilyName::KrrMinusMatching => Family::KrrMinusMatching(need(args.r, "r")?),
        FamilyName::Separating => Family::SeparatingExample,
    };
    println!("{}", generate(&family)?);
    Ok(())
}

fn value_name(variant: Variant) -> &'static str {
    match variant {
        Variant::Plain => "chi_g",
        Variant::WithBlanks => "chi_gb",
        Variant::Marking => "m",
    }
}

fn solve(args: &SolveArgs) -> Result<(), CliError> {
    let prefix = match &args.prefix {
        Some(path) => parse_trace(&read_file(path)?)?,
        None => MovePrefix::empty(),
    };
    match args.game.k {
        Some(k) => {
            let spec = args.game.spec(k)?;
            let (winner, stats) = solve_fixed_k_with_stats(&spec, &prefix)?;
            println!("{} wins with k = {k}", winner.name());
            if args.stats {
                println!("{}", stats_line(&spec, winner, &stats));
            }
        }
        None => {
            let spec = args.game.spec(0)?;
            let result = win_profile(&spec, &prefix)?;
            let value = result.value.map_or_else(|| "none".to_string(), |v| v.to_string());
            println!("{} = {value}", value_name(spec.variant()));
            let cells: Vec<String> = result
                .profile
                .iter()
                .enumerate()
                .map(|(k, &w)| format!("{k}:{}", if w { 'M' } else { 'B' }))
                .collect();
            println!("profile: {}", cells.join(" "));
            if args.stats {
                println!("nodes={} memo_hits={}", result.stats.nodes, result.stats.memo_hits);
            }
        }
    }
    Ok(())
}

fn set_jobs(jobs: Option<usize>) -> Result<(), CliError> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| usage(format!("cannot set up {j} workers: {e}")))?;
    }
    Ok(())
}

fn verifier(cache: &Option<PathBuf>) -> Result<Verifier, CliError> {
    Ok(Verifier::new(match cache {
        Some(path) => InvariantCache::open(path)?,
        None => InvariantCache::in_memory(),
    }))
}

fn enumerate(args: &EnumerateArgs) -> Result<(), CliError> {
    let invariant = Invariant::parse(&args.invariant)
        .ok_or_else(|| usage(format!("unknown invariant {:?}; use chi, chi_g, chi_gb or m", args.invariant)))?;
    set_jobs(args.jobs)?;
    let graphs = chromagame::graph::enumerate_graphs(args.n)?;
    let mut v = verifier(&args.cache)?;
    let queries: Vec<Query> = graphs.iter().map(|&g| Query::new(g, invariant)).collect();
    let values = v.evaluate(&queries)?;
    let mut out = io::stdout().lock();
    writeln!(out, "graph6,invariant,params,value")?;
    for (g, value) in graphs.iter().zip(values) {
        let key = chromagame::graph::canonical_key(g)?;
        let value = value.map_or_else(|| "none".to_string(), |x| x.to_string());
        writeln!(out, "{},{},,{value}", key.as_str(), invariant.name())?;
    }
    Ok(())
}

fn run_suites(args: &SuiteArgs) -> Result<Vec<TheoremReport>, CliError> {
    set_jobs(args.jobs)?;
    let mut v = verifier(&args.cache)?;
    let top = if args.extended { 7 } else { 6 };
    let orders = |from: usize| -> Vec<usize> { args.n.map_or_else(|| (from..=top).collect(), |n| vec![n]) };
    let wanted = |s: SuiteName| args.suite == s || args.suite == SuiteName::All;
    let mut reports = Vec::new();
    if wanted(SuiteName::Basic) {
        for n in orders(2) {
            reports.push(v.check_basic_bound(n)?);
        }
    }
    if wanted(SuiteName::Equality) {
        for n in orders(4) {
            reports.push(v.classify_equality(n)?);
        }
    }
    if wanted(SuiteName::Main) {
        for n in orders(2) {
            reports.push(v.check_main_theorem(n, args.budget.unwrap_or(500), args.seed)?);
        }
    }
    if wanted(SuiteName::Greedy) {
        reports.push(v.check_lemma_greedy(args.n.unwrap_or(6), args.k.unwrap_or(6))?);
    }
    if wanted(SuiteName::Base) {
        let parts: Vec<u8> = match args.part {
            Some(p) => vec![p],
            None => (1..=7).filter(|&p| p != 2 || args.extended).collect(),
        };
        for p in parts {
            reports.push(v.check_lemma_base(p)?);
        }
    }
    if wanted(SuiteName::Annotated) {
        reports.push(v.check_annotated_turan(args.r.unwrap_or(3))?);
    }
    if wanted(SuiteName::Imagination) {
        reports.push(v.check_imagination(args.budget.unwrap_or(200), args.seed)?);
    }
    if wanted(SuiteName::Marking) {
        let rs: Vec<usize> = match args.r {
            Some(r) => vec![r],
            None => (2..=if args.extended { 4 } else { 3 }).collect(),
        };
        for r in rs {
            reports.push(v.check_marking(r)?);
        }
    }
    if wanted(SuiteName::Separation) {
        reports.push(v.separation_report(args.n.unwrap_or(top))?);
    }
    Ok(reports)
}

fn csv_text(reports: &[TheoremReport]) -> String {
    let mut text = format!("{CSV_HEADER}\n");
    for row in reports.iter().flat_map(TheoremReport::csv_rows) {
        text.push_str(&row);
        text.push('\n');
    }
    text
}

fn verify(args: &SuiteArgs, as_csv: bool) -> Result<bool, CliError> {
    let reports = run_suites(args)?;
    let mut out = io::stdout().lock();
    if as_csv {
        out.write_all(csv_text(&reports).as_bytes())?;
    } else {
        for r in &reports {
            writeln!(out, "{}", r.render_text())?;
        }
        let failed = reports.iter().filter(|r| !r.passed).count();
        writeln!(out, "{} of {} reports pass", reports.len() - failed, reports.len())?;
    }
    if let Some(path) = &args.csv {
        fs::write(path, csv_text(&reports)).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Gen(args) => gen(&args).map(|_| true),
        Command::Solve(args) => solve(&args).map(|_| true),
        Command::Enumerate(args) => enumerate(&args).map(|_| true),
        Command::Verify(args) => verify(&args, false),
        Command::Report(args) => verify(&args, true),
        Command::Play(args) => {
            let k = args.game.k.ok_or_else(|| usage("play needs --k"))?;
            let spec = args.game.spec(k)?;
            let human = match args.human {
                Role::Maker => Player::Maker,
                Role::Breaker => Player::Breaker,
            };
            play::play(&spec, human, io::stdin().lock(), io::stdout().lock())?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
