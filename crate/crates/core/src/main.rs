use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qgraph::graph::{complement, named_graph, parse_graph, to_text, ColoredGraph, NAMED_GRAPHS};
use qgraph::planar::{Arithmetic, ClosureConfig};
use qgraph::report::{
    analyze, enumerate, render_analysis, render_enumeration, render_series, series_table, to_canonical_json,
    AnalyzeOptions, ReportError, SeriesKind,
};

const EXIT_USAGE: u8 = 2;
const EXIT_CAPPED: u8 = 3;

/// Quantum symmetry analysis of small colored graphs.
#[derive(Parser)]
#[command(name = "qgraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a graph file ("-" reads standard input).
    Analyze(AnalyzeArgs),
    /// Print coefficients and radius of a closed-form series.
    Series {
        #[arg(value_enum)]
        kind: SeriesKindArg,
        /// Loop parameter, color count or vertex count; omitted for `cube`.
        parameter: Option<u64>,
        #[arg(long, default_value_t = 8)]
        terms: usize,
        #[arg(long)]
        json: bool,
    },
    /// List vertex-transitive graphs up to isomorphism.
    Enumerate {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        /// Classify each graph (no closure computation).
        #[arg(long)]
        classify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print a named graph in the text format.
    Graph {
        /// Graph name; omit to list the available names.
        name: Option<String>,
        /// Print the complement instead.
        #[arg(long)]
        complement: bool,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Graph file in the text format.
    #[arg(required_unless_present = "named")]
    file: Option<PathBuf>,
    /// Analyze a built-in graph instead of a file.
    #[arg(long, conflicts_with = "file")]
    named: Option<String>,
    #[arg(long, default_value_t = 4)]
    max_level: usize,
    #[arg(long, default_value_t = 1)]
    buffer: usize,
    /// Stop growing a level once its basis reaches this size.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = ArithmeticArg::Auto)]
    arithmetic: ArithmeticArg,
    /// Rerun the closure with a larger buffer and report agreement.
    #[arg(long)]
    check_convergence: bool,
    #[arg(long)]
    no_closure: bool,
    #[arg(long)]
    json: bool,
    /// Include per-stage timings (output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum SeriesKindArg {
    Tl,
    Fc,
    Dihedral,
    Cyclic,
    Cube,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ArithmeticArg {
    Exact,
    Modular,
    Auto,
}

enum Failure {
    Usage(String),
    Report(ReportError),
}

impl From<ReportError> for Failure {
    fn from(e: ReportError) -> Self {
        Failure::Report(e)
    }
}

fn load(args: &AnalyzeArgs) -> Result<ColoredGraph, Failure> {
    if let Some(name) = &args.named {
        return named_graph(name).ok_or_else(|| Failure::Usage(format!("unknown graph name {name:?}")));
    }
    let path = args.file.as_ref().expect("clap requires a file or a name");
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    parse_graph(&text).map_err(|e| Failure::Report(e.into()))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze(args) => {
            let g = load(&args)?;
            let closure = (!args.no_closure).then(|| {
                let mut cfg = ClosureConfig { max_level: args.max_level, buffer: args.buffer, ..ClosureConfig::default() };
                cfg.cap = args.cap;
                cfg.check_convergence = args.check_convergence;
                cfg.with_arithmetic(match args.arithmetic {
                    ArithmeticArg::Exact => Arithmetic::Exact,
                    ArithmeticArg::Modular => Arithmetic::Modular,
                    ArithmeticArg::Auto => Arithmetic::Auto,
                })
            });
            let report = analyze(&g, &AnalyzeOptions { closure, timings: args.timings })?;
            if args.json {
                print!("{}", to_canonical_json(&report)?);
            } else {
                print!("{}", render_analysis(&report));
            }
            Ok(if report.capped() { EXIT_CAPPED } else { 0 })
        }
        Command::Series { kind, parameter, terms, json } => {
            let kind = match kind {
                SeriesKindArg::Tl => SeriesKind::Tl,
                SeriesKindArg::Fc => SeriesKind::Fc,
                SeriesKindArg::Dihedral => SeriesKind::Dihedral,
                SeriesKindArg::Cyclic => SeriesKind::Cyclic,
                SeriesKindArg::Cube => SeriesKind::Cube,
            };
            let table = series_table(kind, parameter, terms)?;
            print!("{}", if json { to_canonical_json(&table)? } else { render_series(&table) });
            Ok(0)
        }
        Command::Enumerate { max_vertices, classify, json } => {
            let summary = enumerate(max_vertices, classify)?;
            print!("{}", if json { to_canonical_json(&summary)? } else { render_enumeration(&summary) });
            Ok(0)
        }
        Command::Graph { name: None, .. } => {
            for name in NAMED_GRAPHS {
                println!("{name}");
            }
            println!("point, edgeless-N, complete-N, ngon-N, oriented-N, simplex-A-B-...");
            Ok(0)
        }
        Command::Graph { name: Some(name), complement: c } => {
            let g = named_graph(&name).ok_or_else(|| Failure::Usage(format!("unknown graph name {name:?}")))?;
            let g = if c { complement(&g).map_err(|e| Failure::Report(e.into()))? } else { g };
            print!("{}", to_text(&g));
            Ok(0)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("QGRAPH_THREADS") else {
        return Ok(());
    };
    let n: usize = value.parse().map_err(|_| format!("QGRAPH_THREADS must be a positive integer, got {value:?}"))?;
    if n == 0 {
        return Err("QGRAPH_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Report(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
