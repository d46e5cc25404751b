use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use flowcut::io::{self as graph_io, GraphFormat};
use flowcut::metrics::{evaluate_order, SearchSpaceMode};
use flowcut::{
    compute_order, pareto_cuts, pareto_separators, run_multi, separator_pareto, Error, MultiRunConfig, OrderConfig,
    UndirectedGraph,
};

#[derive(Parser)]
#[command(name = "flowcut", version, about = "Balanced cuts, node separators and contraction orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pareto set of balanced edge cuts as CSV.
    Cut(CutArgs),
    /// Pareto set of balanced node separators as CSV.
    Separator(CutArgs),
    /// Nested-dissection contraction order plus its quality report.
    Order(OrderArgs),
    /// Quality report of an existing order.
    EvaluateOrder(EvaluateArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    input: PathBuf,
    /// metis, dimacs or edgelist.
    #[arg(long, default_value = "metis")]
    format: GraphFormat,
}

#[derive(Args)]
struct CutArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Imbalance bound at which every instance stops.
    #[arg(long, default_value_t = 0.03)]
    epsilon: f64,
    /// Number of random terminal pairs.
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Explicit source node (0-based); repeat for several.
    #[arg(long = "source")]
    sources: Vec<usize>,
    /// Explicit target node (0-based); repeat for several.
    #[arg(long = "target")]
    targets: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// CSV destination; side files are written next to it.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OrderArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 20)]
    pairs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Estimate search spaces from K random start nodes.
    #[arg(long, value_name = "K")]
    sample_search_spaces: Option<usize>,
    /// Order destination; the report then goes to standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Order file, one node id per line.
    #[arg(long)]
    order: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "K")]
    sample_search_spaces: Option<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(io) => Failure::Io(io.to_string()),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Cut(args) => cmd_cut(&args),
        Command::Separator(args) => cmd_separator(&args),
        Command::Order(args) => cmd_order(&args),
        Command::EvaluateOrder(args) => cmd_evaluate_order(&args),
    };
    eprintln!("wall_clock_seconds={:.3}", start.elapsed().as_secs_f64());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_input(args: &InputArgs) -> CliResult<UndirectedGraph> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", args.input.display())))?;
    let parsed = graph_io::parse_graph(&text, args.format)?;
    if parsed.repaired_arcs > 0 {
        eprintln!("warning: added {} missing reverse arcs", parsed.repaired_arcs);
    }
    if parsed.dropped_arcs > 0 {
        eprintln!("warning: dropped {} duplicate or looping arcs", parsed.dropped_arcs);
    }
    let g = parsed.graph;
    eprintln!("graph: {} nodes, {} edges", g.node_count(), g.edge_count());
    Ok(g)
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

/// Writes to `path` if given, else to standard output.
fn with_output(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> CliResult<()>) -> CliResult<()> {
    match path {
        Some(p) => {
            let mut out = create(p)?;
            write(&mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write(&mut out)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn side_path(output: &Path, index: usize) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(format!(".side{index}"));
    PathBuf::from(name)
}

fn write_labels(path: &Path, labels: impl Iterator<Item = u8>) -> CliResult<()> {
    let mut out = create(path)?;
    for l in labels {
        writeln!(out, "{l}")?;
    }
    out.flush()?;
    Ok(())
}

impl CutArgs {
    fn validate(&self) -> CliResult<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Failure::Config(format!("--epsilon must lie in [0, 1], got {}", self.epsilon)));
        }
        if self.pairs < 1 || self.threads < 1 {
            return Err(Failure::Config("--pairs and --threads must be at least 1".into()));
        }
        if self.sources.is_empty() != self.targets.is_empty() {
            return Err(Failure::Config("--source and --target must be given together".into()));
        }
        Ok(())
    }

    fn explicit_terminals(&self) -> bool {
        !self.sources.is_empty()
    }

    fn config(&self) -> MultiRunConfig {
        MultiRunConfig { pairs: self.pairs, epsilon: self.epsilon, seed: self.seed, threads: self.threads }
    }
}

fn cmd_cut(args: &CutArgs) -> CliResult<()> {
    args.validate()?;
    let g = read_input(&args.input)?;
    let set = if args.explicit_terminals() {
        pareto_cuts(&g, &args.sources, &args.targets, args.epsilon)?
    } else {
        run_multi(&g, &args.config())?
    };
    with_output(args.output.as_deref(), |out| Ok(graph_io::write_pareto_csv(&set, out)?))?;
    if let Some(output) = &args.output {
        for (i, cut) in set.iter().enumerate() {
            write_labels(&side_path(output, i), cut.source_side().into_iter().map(|s| u8::from(!s)))?;
        }
    }
    Ok(())
}

fn cmd_separator(args: &CutArgs) -> CliResult<()> {
    args.validate()?;
    let g = read_input(&args.input)?;
    let set = if args.explicit_terminals() {
        pareto_separators(&g, &args.sources, &args.targets, args.epsilon)?
    } else {
        separator_pareto(&g, &args.config())?
    };
    with_output(args.output.as_deref(), |out| Ok(graph_io::write_pareto_csv(&set, out)?))?;
    if let Some(output) = &args.output {
        for (i, sep) in set.iter().enumerate() {
            write_labels(&side_path(output, i), sep.assignment().into_iter())?;
        }
    }
    Ok(())
}

fn search_mode(sample: Option<usize>, seed: u64) -> SearchSpaceMode {
    match sample {
        Some(k) => SearchSpaceMode::Sampled { k, seed },
        None => SearchSpaceMode::Exact,
    }
}

fn cmd_order(args: &OrderArgs) -> CliResult<()> {
    if args.pairs < 1 || args.threads < 1 {
        return Err(Failure::Config("--pairs and --threads must be at least 1".into()));
    }
    let g = read_input(&args.input)?;
    let order = compute_order(&g, &OrderConfig { pairs: args.pairs, seed: args.seed, threads: args.threads })?;
    let report = evaluate_order(&g, &order.permutation, search_mode(args.sample_search_spaces, args.seed))?;
    match &args.output {
        Some(path) => {
            with_output(Some(path), |out| Ok(graph_io::write_order(&order.permutation, out)?))?;
            print!("{report}");
        }
        None => {
            with_output(None, |out| Ok(graph_io::write_order(&order.permutation, out)?))?;
            eprint!("{report}");
        }
    }
    Ok(())
}

fn cmd_evaluate_order(args: &EvaluateArgs) -> CliResult<()> {
    let g = read_input(&args.input)?;
    let text = std::fs::read_to_string(&args.order)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", args.order.display())))?;
    let order = graph_io::parse_order(&text)?;
    let report = evaluate_order(&g, &order, search_mode(args.sample_search_spaces, args.seed))?;
    with_output(args.output.as_deref(), |out| Ok(write!(out, "{report}")?))
}
