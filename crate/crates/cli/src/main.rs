//! `routezip`: generate instances, preprocess graphs, compress and
//! reconstruct routes, and benchmark the compression methods.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O or format, 3 integrity (a route
//! that cannot be reconstructed exactly).

mod bench;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use routezip::ch::{build, read_hierarchy, write_hierarchy, BuildParams};
use routezip::codec::{decode, encode};
use routezip::dimacs::{load_dimacs, read_path, write_dimacs, write_path};
use routezip::split::{split_non_unique_edges, SplitMapping};
use routezip::synth::{self, WeightSpec};
use routezip::{Graph, Hierarchy, Path, RouteContext, RouteError, Scheme};

#[derive(Parser)]
#[command(name = "routezip", version, about = "Compact route descriptions for road graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a synthetic graph in DIMACS format.
    Gen(GenArgs),
    /// Write a seeded path over a graph.
    Genpath(GenpathArgs),
    /// Precompute the split graph or a contraction hierarchy.
    Preprocess(PreprocessArgs),
    /// Compress a path into a route message.
    Compress(CompressArgs),
    /// Rebuild a path from a route message.
    Decompress(DecompressArgs),
    /// Compress and reconstruct paths with every method; TSV on stdout.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Grid,
    Chain,
    Diamond,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GraphKind,
    /// Grid width, or number of chain nodes.
    #[arg(long, default_value_t = 10)]
    width: usize,
    #[arg(long, default_value_t = 10)]
    height: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// `unit` or `random:LO..HI`.
    #[arg(long, default_value = "unit")]
    weights: WeightSpec,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathKind {
    Walk,
    PerturbedSp,
}

#[derive(Args)]
struct GenpathArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    len: usize,
    #[arg(long, value_enum, default_value = "walk")]
    kind: PathKind,
    /// Random detours spliced into a perturbed shortest path.
    #[arg(long, default_value_t = 0)]
    detours: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preprocessing {
    /// Split non-unique edges; writes the split graph and `<out>.map`.
    Split,
    /// Build a contraction hierarchy.
    Ch,
}

#[derive(Args)]
struct PreprocessArgs {
    #[arg(value_enum)]
    what: Preprocessing,
    #[arg(long)]
    graph: PathBuf,
    /// Defaults to `<graph>.split.gr` or `<graph>.chr`.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Shared map data: the graph plus optional preprocessing.
#[derive(Args)]
struct MapArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Contraction hierarchy from `preprocess ch`.
    #[arg(long)]
    ch: Option<PathBuf>,
    /// Split graph from `preprocess split`; its mapping is read from
    /// `<split>.map`.
    #[arg(long)]
    split: Option<PathBuf>,
}

#[derive(Args)]
struct CompressArgs {
    #[arg(long)]
    method: Scheme,
    #[command(flatten)]
    map: MapArgs,
    #[arg(long)]
    path: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DecompressArgs {
    #[arg(long)]
    message: PathBuf,
    #[command(flatten)]
    map: MapArgs,
    /// Output path file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Run all six methods.
    #[arg(long, conflicts_with = "method")]
    all: bool,
    /// Methods to run (repeatable).
    #[arg(long)]
    method: Vec<Scheme>,
    /// Graph to use instead of a generated grid.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Path files to use instead of generated paths (repeatable).
    #[arg(long)]
    path: Vec<PathBuf>,
    #[arg(long, default_value_t = 30)]
    width: usize,
    #[arg(long, default_value_t = 30)]
    height: usize,
    #[arg(long, default_value = "random:1..100")]
    weights: WeightSpec,
    /// Number of generated paths.
    #[arg(long, default_value_t = 100)]
    paths: usize,
    /// Length of generated paths.
    #[arg(long, default_value_t = 200)]
    len: usize,
    #[arg(long, default_value_t = 2)]
    detours: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Format(String),
    Integrity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Format(_) => 2,
            Failure::Integrity(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Format(m) | Failure::Integrity(m) => m,
        }
    }
}

impl From<RouteError> for Failure {
    fn from(e: RouteError) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else if e.is_integrity() {
            Failure::Integrity(e.to_string())
        } else {
            Failure::Format(e.to_string())
        }
    }
}

fn format_err(file: &FsPath, e: impl std::fmt::Display) -> Failure {
    Failure::Format(format!("{}: {e}", file.display()))
}

fn open(file: &FsPath) -> Result<BufReader<File>, Failure> {
    File::open(file).map(BufReader::new).map_err(|e| format_err(file, e))
}

fn with_output<F>(out: Option<&FsPath>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    let shown = out.map_or_else(|| PathBuf::from("<stdout>"), FsPath::to_path_buf);
    let result = match out {
        Some(file) => File::create(file).and_then(|f| {
            let mut w = BufWriter::new(f);
            write(&mut w)?;
            w.flush()
        }),
        None => {
            let mut w = io::stdout().lock();
            write(&mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| format_err(&shown, e))
}

fn load_graph(file: &FsPath) -> Result<Graph, Failure> {
    load_dimacs(open(file)?).map_err(|e| format_err(file, e))
}

fn load_path(file: &FsPath) -> Result<Path, Failure> {
    read_path(open(file)?).map_err(|e| format_err(file, e))
}

fn map_file(split: &FsPath) -> PathBuf {
    let mut name = split.as_os_str().to_owned();
    name.push(".map");
    PathBuf::from(name)
}

struct Map {
    graph: Graph,
    split: Option<(Graph, SplitMapping)>,
    hierarchy: Option<Hierarchy>,
}

impl Map {
    fn load(args: &MapArgs) -> Result<Self, Failure> {
        let graph = load_graph(&args.graph)?;
        let split = match &args.split {
            Some(file) => {
                let sg = load_graph(file)?;
                let mf = map_file(file);
                let mapping = SplitMapping::read(open(&mf)?).map_err(|e| format_err(&mf, e))?;
                if mapping.original_nodes() != graph.node_count()
                    || sg.node_count() != graph.node_count() + mapping.len()
                {
                    return Err(Failure::Integrity(format!(
                        "{} was not split from {}",
                        file.display(),
                        args.graph.display()
                    )));
                }
                Some((sg, mapping))
            }
            None => None,
        };
        let hierarchy = match &args.ch {
            Some(file) => {
                let h: Hierarchy = read_hierarchy(open(file)?).map_err(|e| format_err(file, e))?;
                if h.node_count() != graph.node_count() {
                    return Err(Failure::Integrity(format!(
                        "{} has {} nodes, the graph {}",
                        file.display(),
                        h.node_count(),
                        graph.node_count()
                    )));
                }
                Some(h)
            }
            None => None,
        };
        Ok(Map {
            graph,
            split,
            hierarchy,
        })
    }

    fn context(&self) -> RouteContext<'_, u64> {
        let mut ctx = RouteContext::new(&self.graph);
        if let Some((sg, mapping)) = &self.split {
            ctx = ctx.split(sg, mapping);
        }
        if let Some(h) = &self.hierarchy {
            ctx = ctx.hierarchy(h);
        }
        ctx
    }
}

fn gen(args: GenArgs) -> Result<(), Failure> {
    let graph = match args.kind {
        GraphKind::Grid => {
            if args.width == 0 || args.height == 0 {
                return Err(Failure::Usage("grid needs positive --width and --height".into()));
            }
            synth::grid(args.width, args.height, args.weights, args.seed)
        }
        GraphKind::Chain => {
            if args.width == 0 {
                return Err(Failure::Usage("chain needs a positive --width".into()));
            }
            synth::chain(args.width, args.weights, args.seed)
        }
        GraphKind::Diamond => Ok(synth::diamond()),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    with_output(args.out.as_deref(), |w| write_dimacs(&graph, w))
}

fn genpath(args: GenpathArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    let mut rng = synth::rng(args.seed);
    let p = match args.kind {
        PathKind::Walk => synth::random_walk(&g, args.len, &mut rng),
        PathKind::PerturbedSp => synth::perturbed_sp(&g, args.len, args.detours, &mut rng),
    }
    .map_err(|e| Failure::Usage(e.to_string()))?;
    with_output(args.out.as_deref(), |w| write_path(&p, w))
}

fn derived(graph: &FsPath, suffix: &str) -> PathBuf {
    let mut name = graph.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn preprocess(args: PreprocessArgs) -> Result<(), Failure> {
    let g = load_graph(&args.graph)?;
    match args.what {
        Preprocessing::Split => {
            let out = args.out.unwrap_or_else(|| derived(&args.graph, ".split.gr"));
            let (sg, mapping) =
                split_non_unique_edges(&g).map_err(|e| format_err(&args.graph, e))?;
            with_output(Some(&out), |w| write_dimacs(&sg, w))?;
            with_output(Some(&map_file(&out)), |w| mapping.write(w))?;
            eprintln!("split {} of {} edges", mapping.len(), g.edge_count());
        }
        Preprocessing::Ch => {
            let out = args.out.unwrap_or_else(|| derived(&args.graph, ".chr"));
            let h = build(&g, &BuildParams::default()).map_err(|e| format_err(&args.graph, e))?;
            let file = File::create(&out).map_err(|e| format_err(&out, e))?;
            write_hierarchy(&h, BufWriter::new(file)).map_err(|e| format_err(&out, e))?;
            eprintln!("{} shortcuts", h.shortcuts().len());
        }
    }
    Ok(())
}

fn compress(args: CompressArgs) -> Result<(), Failure> {
    if args.method == Scheme::ViaNodes && args.map.split.is_none() {
        return Err(Failure::Usage(
            "via-nodes needs --split (run `preprocess split` first)".into(),
        ));
    }
    if matches!(args.method, Scheme::Ch | Scheme::Combined) && args.map.ch.is_none() {
        return Err(Failure::Usage(format!(
            "{} needs --ch (run `preprocess ch` first)",
            args.method
        )));
    }
    let map = Map::load(&args.map)?;
    let p = load_path(&args.path)?;
    let ctx = map.context();
    let msg = ctx.compress(args.method, p.edges())?;
    let bytes = encode(&msg);
    with_output(Some(&args.out), |w| w.write_all(&bytes))?;
    eprintln!(
        "{}: {} edges -> {} entries, {} bytes, {} queries",
        args.method,
        p.len(),
        msg.body.len(),
        bytes.len(),
        ctx.query_count()
    );
    Ok(())
}

fn decompress(args: DecompressArgs) -> Result<(), Failure> {
    let bytes = std::fs::read(&args.message).map_err(|e| format_err(&args.message, e))?;
    let msg = decode(&bytes).map_err(|e| format_err(&args.message, e))?;
    let map = Map::load(&args.map)?;
    let p = map.context().decompress(&msg)?;
    with_output(args.out.as_deref(), |w| write_path(&p, w))
}

fn bench_cmd(args: BenchArgs) -> Result<(), Failure> {
    let methods: Vec<Scheme> = if args.all || args.method.is_empty() {
        Scheme::ALL.to_vec()
    } else {
        args.method.clone()
    };
    let graph = match &args.graph {
        Some(file) => load_graph(file)?,
        None => {
            if args.width == 0 || args.height == 0 {
                return Err(Failure::Usage("grid needs positive --width and --height".into()));
            }
            synth::grid(args.width, args.height, args.weights, args.seed)
                .map_err(|e| Failure::Usage(e.to_string()))?
        }
    };
    let paths: Vec<Path> = if args.path.is_empty() {
        (0..args.paths as u64)
            .map(|i| {
                let mut rng = synth::rng(args.seed.wrapping_add(i));
                synth::perturbed_sp(&graph, args.len, args.detours, &mut rng)
            })
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(e.to_string()))?
    } else {
        args.path.iter().map(|f| load_path(f)).collect::<Result<_, _>>()?
    };

    let split = split_non_unique_edges(&graph).map_err(|e| Failure::Format(e.to_string()))?;
    let hierarchy = build(&graph, &BuildParams::default()).map_err(|e| Failure::Format(e.to_string()))?;
    let version = routezip::dimacs::map_version(&graph);
    let rows = bench::run(&paths, &methods, || {
        RouteContext::with_version(&graph, version)
            .split(&split.0, &split.1)
            .hierarchy(&hierarchy)
    })
    .map_err(|e| {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Integrity(e.to_string())
        }
    })?;
    with_output(None, |w| {
        writeln!(w, "{}", bench::HEADER)?;
        rows.iter().try_for_each(|r| r.write_tsv(&mut *w))
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Genpath(a) => genpath(a),
        Command::Preprocess(a) => preprocess(a),
        Command::Compress(a) => compress(a),
        Command::Decompress(a) => decompress(a),
        Command::Bench(a) => bench_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("routezip: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
