use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use subsetlab::boxprocess::{
    detect_jump, estimate_pmf_parallel, exact_pmf, make_box, probability_of_A, rational_grid,
    scan_csv, scan_family, Approach, FamilyRule, RationalQ,
};
use subsetlab::inputsearch::find_s_t;
use subsetlab::solvers::solve;
use subsetlab::trace::{build_chains, validate_chain, validate_trace, EventId};
use subsetlab::{AlgorithmId, Error, InputSet, Trace};

/// Instrumented subset-sum solvers, trace analysis and box simulation.
///
/// Exit codes: 0 success, 1 violations found, 2 usage or input error,
/// 3 capacity limit or exhausted search.
#[derive(Parser)]
#[command(name = "subsetlab", version)]
struct Cli {
    /// Seed for every randomized subcommand.
    #[arg(long, global = true, env = "SUBSETLAB_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and print the witness with a trace summary.
    Solve(SolveArgs),
    /// Write the full padded trace as JSON.
    Trace {
        #[command(flatten)]
        solve: SolveArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a trace file and report its distribution and property.
    Analyze { file: PathBuf },
    /// Reconstruct the dependency chains ending at one event.
    Chains {
        file: PathBuf,
        #[arg(long)]
        event: u32,
    },
    /// Search one input class for an S/T pair at a main step.
    FindSt {
        #[arg(long)]
        alg: AlgorithmId,
        #[arg(long)]
        n: usize,
        /// Value bound M: elements are drawn from [-M, M].
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        step: u32,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
    },
    /// Exact P(A) and outcome probabilities of a box.
    Box(BoxArgs),
    /// Monte Carlo frequencies of a box.
    BoxSim {
        #[command(flatten)]
        r#box: BoxArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Exact outcome probabilities of a family over a Farey grid.
    FamilyScan {
        /// const, paper-f or jump:<a/b>
        #[arg(long)]
        family: FamilyRule,
        #[arg(long)]
        max_den: u32,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare pi1 at a point with its limit along an approach sequence.
    Jump {
        #[arg(long)]
        family: FamilyRule,
        #[arg(long)]
        q0: RationalQ,
        #[arg(long, default_value_t = 64)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Side::Below)]
        side: Side,
    },
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    alg: AlgorithmId,
    /// Comma-separated distinct integers, e.g. 1,2,-3,5
    #[arg(long, allow_hyphen_values = true)]
    set: InputSet,
    /// Value bound for dp; defaults to max |x|.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(clap::Args)]
struct BoxArgs {
    /// place:count pairs, e.g. 1:2,0:1
    #[arg(long)]
    counts: String,
    /// Number of places; defaults to the largest place given (at least 1).
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Below,
    Above,
}

enum Failure {
    Violations,
    Core(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_capacity() { 3 } else { 2 })
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let seed = cli.seed;
    match cli.command {
        Command::Solve(args) => {
            let trace = solve(args.alg, &args.set, args.bound)?;
            print_json(&solve_summary(&trace));
        }
        Command::Trace { solve: args, out } => {
            let trace = solve(args.alg, &args.set, args.bound)?;
            let text = trace.to_json_pretty();
            match out {
                Some(path) => fs::write(&path, text + "\n").map_err(|e| Failure::Io(path, e))?,
                None => println!("{text}"),
            }
        }
        Command::Analyze { file } => {
            let trace = read_trace(&file)?;
            let report = validate_trace(&trace);
            let distribution = trace.distribution();
            print_json(&json!({
                "algorithm": trace.algorithm.name(),
                "n": trace.n(),
                "step_count": trace.step_count,
                "passed": report.passed(),
                "violations": report.violations,
                "distribution": distribution,
                "main_steps": trace.main_steps(),
                "property": trace.property().to_string(),
            }));
            if !report.passed() {
                return Err(Failure::Violations);
            }
        }
        Command::Chains { file, event } => {
            let trace = read_trace(&file)?;
            let chains = match build_chains(&trace, EventId(event)) {
                Ok(c) => c,
                Err(e @ Error::InfiniteChain { .. }) => {
                    eprintln!("{e}");
                    return Err(Failure::Violations);
                }
                Err(e) => return Err(e.into()),
            };
            let mut bad = false;
            let rows: Vec<Value> = chains
                .iter()
                .map(|c| {
                    let violations = validate_chain(c, trace.n());
                    bad |= !violations.is_empty();
                    json!({ "length": c.len(), "nodes": c.nodes, "violations": violations })
                })
                .collect();
            print_json(&json!({ "target": event, "chains": rows }));
            if bad {
                return Err(Failure::Violations);
            }
        }
        Command::FindSt {
            alg,
            n,
            bound,
            step,
            budget,
        } => {
            let pair = find_s_t(alg, n, bound, step, budget, seed)?;
            println!("{}", pair.to_json(bound));
        }
        Command::Box(args) => {
            let b = parse_box(&args)?;
            print_json(&json!({
                "box": b.to_string(),
                "total": b.total(),
                "P_A": probability_of_A(&b),
                "pmf": pmf_map(&exact_pmf(&b)),
            }));
        }
        Command::BoxSim {
            r#box,
            trials,
            workers,
        } => {
            let b = parse_box(&r#box)?;
            println!(
                "{}",
                estimate_pmf_parallel(&b, trials, seed, workers)?.to_json()
            );
        }
        Command::FamilyScan {
            family,
            max_den,
            format,
        } => {
            let rows = scan_family(&family, &rational_grid(max_den)?)?;
            match format {
                Format::Csv => print!("{}", scan_csv(&rows)),
                Format::Json => {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "q": r.q,
                                "pi0": r.pi(0),
                                "pi1": r.pi(1),
                                "pi2": r.pi(2),
                            })
                        })
                        .collect();
                    print_json(&Value::Array(rows));
                }
            }
        }
        Command::Jump {
            family,
            q0,
            depth,
            side,
        } => {
            let approach = match side {
                Side::Below => Approach::Below { depth },
                Side::Above => Approach::Above { depth },
            };
            let report = detect_jump(&family, q0, &approach)?;
            print_json(&serde_json::to_value(&report).expect("report serializes"));
        }
    }
    Ok(())
}

fn solve_summary(trace: &Trace) -> Value {
    let witness = trace.solutions().into_iter().next();
    json!({
        "algorithm": trace.algorithm.name(),
        "input": trace.input,
        "solution_exists": witness.is_some(),
        "witness": witness,
        "witness_elements": witness.map(|m| trace.input.pick(m)),
        "step_count": trace.step_count,
        "checked": trace.checked_count(),
        "collateral": trace.collateral_count(),
        "main_steps": trace.main_steps().len(),
        "property": trace.property().to_string(),
    })
}

fn read_trace(path: &Path) -> Result<Trace, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    Ok(Trace::from_json(&text)?)
}

fn parse_box(args: &BoxArgs) -> Result<subsetlab::boxprocess::InputBox, Error> {
    let mut pairs = Vec::new();
    for part in args
        .counts
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
    {
        let bad = || Error::Parse(format!("expected place:count, got {part:?}"));
        let (place, count) = part.split_once(':').ok_or_else(bad)?;
        let place: u32 = place.trim().parse().map_err(|_| bad())?;
        let count: u64 = count.trim().parse().map_err(|_| bad())?;
        pairs.push((place, count));
    }
    let ell = args
        .ell
        .unwrap_or_else(|| pairs.iter().map(|p| p.0).max().unwrap_or(1).max(1));
    make_box(&pairs, ell)
}

fn pmf_map(pmf: &subsetlab::boxprocess::Pmf) -> Value {
    pmf.iter()
        .map(|(k, p)| (k.to_string(), Value::String(p.fraction())))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn print_json(v: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("value serializes")
    );
}
