use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use protrusion_kernel::engine::{check_trivial_instances, meta_kernelize, sweep, verify_kernel, write_sweep_csv, EngineConfig};
use protrusion_kernel::families::{generate, FamilySpec};
use protrusion_kernel::graph::Graph;
use protrusion_kernel::io::{parse_dimacs, parse_edge_list, write_edge_list};
use protrusion_kernel::problems::{OracleCaps, Problem, ProblemInstance};
use protrusion_kernel::replace::RepCache;

const EXIT_PARSE: u8 = 2;
const EXIT_HARD: u8 = 3;

#[derive(Parser)]
#[command(name = "protkern", about = "Protrusion-replacement kernelization on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ProblemArgs {
    /// One of vc, ds, is, scattered, cyclepacking, sct.
    #[arg(long)]
    problem: String,
    /// Distance for `scattered`.
    #[arg(long)]
    r: Option<u32>,
    /// Cycle length bound for `sct`.
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce one instance and report every step.
    Kernelize {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Edge-list or DIMACS file.
        #[arg(long, conflicts_with = "family", required_unless_present = "family")]
        input: Option<PathBuf>,
        /// Family spec such as `grid:3,4`.
        #[arg(long)]
        family: Option<String>,
        /// Persistent representative cache.
        #[arg(long)]
        cache: Option<PathBuf>,
        /// JSON report path; printed to stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Writes the kernel graph as an edge list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide both instances with the exact oracle and compare.
    Verify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        kernel: PathBuf,
        /// Parameter of the kernel; defaults to `--k`.
        #[arg(long, allow_negative_numbers = true)]
        kernel_k: Option<i64>,
    },
    /// Kernelize a family template for each k and write a CSV table.
    Sweep {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Template in which a standalone `k` is substituted, e.g. `star-of-paths:k,50`.
        #[arg(long)]
        family: String,
        #[arg(long, value_delimiter = ',')]
        k_list: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write a family member as an edge list.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
}

/// A failure carrying its exit code.
struct Failure(u8, String);

fn parse_fail(msg: impl ToString) -> Failure {
    Failure(EXIT_PARSE, msg.to_string())
}

fn hard_fail(msg: impl ToString) -> Failure {
    Failure(EXIT_HARD, msg.to_string())
}

fn problem_of(args: &ProblemArgs) -> Result<Problem, Failure> {
    Problem::from_id(&args.problem, args.r, args.s).map_err(parse_fail)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| parse_fail(format!("{}: {e}", path.display())))?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    let parsed = if first.starts_with('c') || first.starts_with('p') { parse_dimacs(&text) } else { parse_edge_list(&text) };
    parsed.map_err(|e| parse_fail(format!("{}: {e}", path.display())))
}

fn family_graph(spec: &str) -> Result<Graph, Failure> {
    let spec: FamilySpec = spec.parse().map_err(parse_fail)?;
    generate(&spec).map_err(parse_fail)
}

fn open_cache(path: Option<&Path>) -> Result<RepCache, Failure> {
    match path {
        Some(p) => RepCache::open(p).map_err(hard_fail),
        None => Ok(RepCache::in_memory()),
    }
}

fn engine_config(t: usize) -> Result<EngineConfig, Failure> {
    let cfg = EngineConfig::for_t(t);
    cfg.validate().map_err(parse_fail)?;
    Ok(cfg)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| hard_fail(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    check_trivial_instances(&OracleCaps::default()).map_err(hard_fail)?;
    match cli.command {
        Command::Kernelize { problem, k, t, input, family, cache, report, out } => {
            let problem = problem_of(&problem)?;
            let cfg = engine_config(t)?;
            let graph = match (input, family) {
                (Some(path), _) => read_graph(&path)?,
                (None, Some(spec)) => family_graph(&spec)?,
                (None, None) => return Err(parse_fail("either --input or --family is required")),
            };
            let cache = open_cache(cache.as_deref())?;
            let inst = ProblemInstance::new(graph, k, problem);
            let start = Instant::now();
            let (kernel, log) = meta_kernelize(&inst, &cfg, &cache);
            let wall_ms = start.elapsed().as_millis();
            let doc = json!({
                "input": {"n": inst.graph.n(), "m": inst.graph.m(), "k": inst.k},
                "output": {"n": kernel.graph.n(), "m": kernel.graph.m(), "k": kernel.k},
                "outcome": log.outcome,
                "steps": log.steps,
                "stuck": log.stuck,
                "warnings": log.warnings,
                "wall_ms": wall_ms,
            });
            let text = serde_json::to_string_pretty(&doc).map_err(hard_fail)?;
            match report {
                Some(path) => write_file(&path, &text)?,
                None => println!("{text}"),
            }
            if let Some(path) = out {
                write_file(&path, &write_edge_list(&kernel.graph))?;
            }
            Ok(())
        }
        Command::Verify { problem, k, input, kernel, kernel_k } => {
            let problem = problem_of(&problem)?;
            let original = ProblemInstance::new(read_graph(&input)?, k, problem);
            let reduced = ProblemInstance::new(read_graph(&kernel)?, kernel_k.unwrap_or(k), problem);
            let report = verify_kernel(&original, &reduced, &OracleCaps::default());
            println!("{}", serde_json::to_string_pretty(&report).map_err(hard_fail)?);
            match report.agree {
                Some(true) => Ok(()),
                Some(false) => Err(hard_fail("kernel and original disagree")),
                None => Err(hard_fail(report.note.unwrap_or_else(|| "unverifiable".into()))),
            }
        }
        Command::Sweep { problem, family, k_list, t, cache, report } => {
            let problem = problem_of(&problem)?;
            let cfg = engine_config(t)?;
            let cache = open_cache(cache.as_deref())?;
            let rows = sweep(problem, &family, &k_list, &cfg, &cache).map_err(parse_fail)?;
            let file = fs::File::create(&report).map_err(|e| hard_fail(format!("{}: {e}", report.display())))?;
            write_sweep_csv(&rows, file).map_err(hard_fail)
        }
        Command::Gen { family, out } => {
            let g = family_graph(&family)?;
            write_file(&out, &write_edge_list(&g))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("protkern: {msg}");
            ExitCode::from(code)
        }
    }
}
