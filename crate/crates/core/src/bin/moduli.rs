//! Command-line front end: every subsystem as a subcommand with JSON/CSV
//! output, plus a `verify` meta-command running the cross-module oracle
//! equivalences.
//!
//! Exit codes: 0 ok, 1 verification mismatch, 2 usage error, 3 numeric
//! failure. `MODULI_SEED` overrides the default RNG seed where no `--seed`
//! is given.

use clap::{Args, Parser, Subcommand};
use moduli_core::graphs::{geometric_graph, LabeledGraph, PointConfig, SignCondition, DEFAULT_TOL};
use moduli_core::quadrics::{index_value_census, QuadricFamily, DEFAULT_EPSILON};
use moduli_core::realize::{isotopy_witness, realize, DEFAULT_WITNESS_STEPS};
use moduli_core::verify::{run_verify, VerifyLevel};
use moduli_core::{bounds, euler, family, line, poincare, series};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "moduli", version, about = "Invariants of moduli spaces of geometric graphs")]
struct Cli {
    /// Cap the worker-thread count for sampling and family expansion.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Realize a labeled graph as a geometric graph in R^d.
    Realize(RealizeArgs),
    /// Verified rigid-isotopy witness between two realizations.
    Witness(WitnessArgs),
    /// Geometric graph of a point configuration.
    GraphOf(GraphOfArgs),
    /// Enumerate the chambers of the line discriminant complement.
    LineEnum(LineEnumArgs),
    /// Exact counting series and their asymptotics.
    Egf(EgfArgs),
    /// Euler-characteristic recount of the line chamber number.
    Euler(EulerArgs),
    /// Sample the positive-inertia index decomposition.
    IndexCheck(IndexCheckArgs),
    /// Poincare polynomials and Floer numbers.
    Poincare(PoincareArgs),
    /// Log-scale bounds on class counts.
    Bounds(BoundsArgs),
    /// Generate a family of pairwise non-isomorphic geometric graphs.
    Family(FamilyArgs),
    /// Run the cross-module oracle equivalences.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RealizeArgs {
    /// Path to a LabeledGraph JSON file `{"n":..,"edges":[[i,j],..]}`.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Path to the first PointConfig JSON file.
    #[arg(long)]
    p0: PathBuf,
    /// Path to the second PointConfig JSON file.
    #[arg(long)]
    p1: PathBuf,
    #[arg(long, default_value_t = DEFAULT_WITNESS_STEPS)]
    steps: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphOfArgs {
    /// Path to a PointConfig JSON file {"d":..,"points":[[..],..]}.
    #[arg(long)]
    points: PathBuf,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct LineEnumArgs {
    #[arg(long)]
    n: usize,
    /// Emit the distinct-graph census instead of the chamber list.
    #[arg(long)]
    graphs: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EgfArgs {
    /// Which sequence: "semiorders" or "uig".
    #[arg(long, conflicts_with = "asymptotic")]
    what: Option<String>,
    #[arg(long)]
    n: usize,
    /// Emit a CSV of (n, exact, asymptotic, ratio) up to n.
    #[arg(long)]
    asymptotic: bool,
}

#[derive(Args)]
struct EulerArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct IndexCheckArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    /// Path to a SignCondition JSON file {"n":..,"signs":[..]}.
    #[arg(long)]
    sigma: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct PoincareArgs {
    /// Configuration-space polynomial for n points.
    #[arg(long, conflicts_with_all = ["table4", "complement"])]
    config_space: bool,
    /// Table row of a labeled graph on four vertices.
    #[arg(long, requires = "graph", conflicts_with = "complement")]
    table4: bool,
    /// Aggregated polynomial of the whole complement (n = 3 or 4).
    #[arg(long)]
    complement: bool,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Substitute a concrete dimension into the complement polynomial.
    #[arg(long)]
    eval_d: Option<i64>,
    /// JSON list of labeled graphs whose types are unrealizable at eval-d.
    #[arg(long)]
    drop: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    d: u64,
    /// Comma-separated list of vertex counts.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    eps0: Option<f64>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// quick or full
    #[arg(long, default_value = "quick")]
    level: String,
    #[arg(long)]
    seed: Option<u64>,
}

enum Failure {
    /// Bad input: malformed files, unreadable paths, invalid flag values.
    Usage(String),
    /// A computation refused or broke down.
    Numeric(String),
    /// Verification ran and found a mismatch.
    Mismatch,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numeric(_) => 3,
            Failure::Mismatch => 1,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn numeric<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Numeric(e.to_string())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(usage),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn resolve_seed(cli: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = cli {
        return Ok(seed);
    }
    match std::env::var("MODULI_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| usage(format!("MODULI_SEED must be an integer, got {text:?}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(usage)?;
    }
    match cli.command {
        Command::Realize(args) => {
            let graph: LabeledGraph = read_json(&args.graph)?;
            let p = realize(&graph, args.dim, args.eps).map_err(numeric)?;
            emit(&args.out, &serde_json::to_string(&p).map_err(numeric)?)
        }
        Command::Witness(args) => {
            let p0: PointConfig = read_json(&args.p0)?;
            let p1: PointConfig = read_json(&args.p1)?;
            let gg = geometric_graph(&p0, DEFAULT_TOL);
            if gg.degenerate {
                return Err(Failure::Numeric("p0 is degenerate".into()));
            }
            let n = p0.n();
            let eps = (0.8 / (n.max(2) - 1) as f64).min(0.1);
            let r = realize(&gg.graph, n, eps).map_err(numeric)?;
            let report = isotopy_witness(&p0, &p1, &r, args.steps).map_err(numeric)?;
            emit(&args.out, &serde_json::to_string(&report).map_err(numeric)?)
        }
        Command::GraphOf(args) => {
            let p: PointConfig = read_json(&args.points)?;
            let gg = geometric_graph(&p, args.tol);
            if gg.degenerate {
                eprintln!(
                    "warning: configuration within {} of the discriminant (margin {})",
                    args.tol, gg.margin
                );
            }
            println!("{}", serde_json::to_string(&gg.graph).map_err(numeric)?);
            Ok(())
        }
        Command::LineEnum(args) => {
            if args.graphs {
                let census = line::realizable_graphs_line(args.n).map_err(numeric)?;
                println!("{}", serde_json::to_string(&census).map_err(numeric)?);
                return Ok(());
            }
            let chambers = line::enumerate_chambers(args.n).map_err(numeric)?;
            let mut lines = String::new();
            for chamber in &chambers {
                let witness = line::witness_point(args.n, chamber).map_err(numeric)?;
                let record = serde_json::json!({
                    "assignment": chamber,
                    "witness": witness,
                });
                lines.push_str(&record.to_string());
                lines.push('\n');
            }
            match &args.out {
                Some(path) => std::fs::write(path, lines).map_err(usage),
                None => {
                    print!("{lines}");
                    Ok(())
                }
            }
        }
        Command::Egf(args) => {
            if args.asymptotic {
                let table = series::asymptotic_table(args.n).map_err(numeric)?;
                let mut writer = std::io::stdout().lock();
                writeln!(writer, "n,exact,asymptotic,ratio").map_err(numeric)?;
                for row in table {
                    writeln!(
                        writer,
                        "{},{},{:e},{}",
                        row.n,
                        row.exact,
                        row.asymptotic_log.exp(),
                        row.ratio
                    )
                    .map_err(numeric)?;
                }
                return Ok(());
            }
            let what = args
                .what
                .as_deref()
                .ok_or_else(|| usage("pass --what semiorders|uig or --asymptotic"))?;
            let count = match what {
                "semiorders" => series::semiorder_count(args.n, args.n).map_err(numeric)?,
                "uig" => series::uig_count(args.n, args.n).map_err(numeric)?,
                other => return Err(usage(format!("unknown sequence {other:?}"))),
            };
            println!("{count}");
            Ok(())
        }
        Command::Euler(args) => {
            let report = euler::euler_report(args.n).map_err(numeric)?;
            let value = serde_json::json!({
                "chi": report.chi,
                "chambers": report.chambers,
                "e1": report.table.as_rows(),
            });
            println!("{value}");
            Ok(())
        }
        Command::IndexCheck(args) => {
            let sigma: SignCondition = read_json(&args.sigma)?;
            if sigma.n() != args.n {
                return Err(usage(format!(
                    "--n {} disagrees with the sign condition on {} vertices",
                    args.n,
                    sigma.n()
                )));
            }
            let fam = QuadricFamily::new(args.d, sigma, args.epsilon).map_err(numeric)?;
            let seed = resolve_seed(args.seed)?;
            let report = index_value_census(&fam, args.samples, seed);
            println!("{}", serde_json::to_string(&report).map_err(numeric)?);
            Ok(())
        }
        Command::Poincare(args) => {
            if args.config_space {
                let n = args.n.ok_or_else(|| usage("--config-space needs --n"))?;
                let p = poincare::poincare_config(n);
                println!("{}", serde_json::to_string(&p).map_err(numeric)?);
                return Ok(());
            }
            if args.table4 {
                let path = args.graph.as_ref().ok_or_else(|| usage("--table4 needs --graph"))?;
                let graph: LabeledGraph = read_json(path)?;
                let poly = poincare::poincare_table4(&graph).map_err(numeric)?;
                let floer = poincare::floer_number(&graph).map_err(numeric)?;
                let value = serde_json::json!({
                    "poly": poly,
                    "floer": floer,
                });
                println!("{value}");
                return Ok(());
            }
            if args.complement {
                let n = args.n.ok_or_else(|| usage("--complement needs --n"))?;
                let poly = poincare::complement_poincare(n).map_err(numeric)?;
                if let Some(d) = args.eval_d {
                    let drop: Option<Vec<LabeledGraph>> = match &args.drop {
                        Some(path) => Some(read_json(path)?),
                        None => None,
                    };
                    let evaluated =
                        poincare::evaluate_at_d(&poly, d, drop.as_deref()).map_err(numeric)?;
                    let total: i64 = evaluated.iter().map(|(_, c)| c).sum();
                    let value = serde_json::json!({
                        "d": d,
                        "poly": evaluated,
                        "total": total,
                    });
                    println!("{value}");
                } else {
                    println!("{}", serde_json::to_string(&poly).map_err(numeric)?);
                }
                return Ok(());
            }
            Err(usage("pass one of --config-space, --table4, --complement"))
        }
        Command::Bounds(args) => {
            if args.n.is_empty() {
                return Err(usage("--n needs at least one vertex count"));
            }
            let rows = bounds::log_equivalence_report(&args.n, args.d).map_err(numeric)?;
            let mut writer = std::io::stdout().lock();
            writeln!(writer, "n,lower_log,upper_log,ratio").map_err(numeric)?;
            for row in rows {
                writeln!(writer, "{},{},{},{}", row.n, row.lower_log, row.upper_log, row.ratio)
                    .map_err(numeric)?;
            }
            Ok(())
        }
        Command::Family(args) => {
            let seed = resolve_seed(args.seed)?;
            let mut cfg = family::FamilyConfig::new(args.d, args.n, seed).map_err(numeric)?;
            if let Some(eps0) = args.eps0 {
                cfg.eps0 = eps0;
            }
            if let Some(budget) = args.budget {
                cfg.member_budget = budget;
            }
            cfg.validate().map_err(numeric)?;
            let members = family::generate_family(&cfg).map_err(numeric)?;
            let mut lines = String::new();
            for member in &members {
                lines.push_str(&serde_json::to_string(member).map_err(numeric)?);
                lines.push('\n');
            }
            match &args.out {
                Some(path) => std::fs::write(path, lines).map_err(usage),
                None => {
                    print!("{lines}");
                    Ok(())
                }
            }
        }
        Command::Verify(args) => {
            let level = match args.level.as_str() {
                "quick" => VerifyLevel::Quick,
                "full" => VerifyLevel::Full,
                other => return Err(usage(format!("unknown level {other:?}"))),
            };
            let seed = resolve_seed(args.seed)?;
            let report = run_verify(level, seed);
            println!("{}", serde_json::to_string_pretty(&report).map_err(numeric)?);
            if report.ok {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Numeric(msg) => eprintln!("error: {msg}"),
                Failure::Mismatch => eprintln!("verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
