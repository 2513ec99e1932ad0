//! `rankforge` command-line front end.
//!
//! Exit status of `solve`: 0 solved, 1 failed, 2 infeasible or refused.
//! Other subcommands exit 0 on success and 1 on error.

mod bench;
mod report;

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rankforge::attack_algebraic::{export_polynomial_system, hybrid_attack, lin_attack, HybridConfig};
use rankforge::attack_support::{es_attack, SupportGuessConfig, SupportVariant};
use rankforge::estimator::{estimate_all, render_tables, EstimateParams, DEFAULT_OMEGA};
use rankforge::oracle::{brute_force, OracleError};
use rankforge::report::AttackReport;
use rankforge::rsd::{read_instance, write_instance};
use rankforge::{CodeKind, CodeParams, RsdInstance};

use report::RunReport;

#[derive(Parser)]
#[command(name = "rankforge", version, about = "Generic decoding attacks on rank-metric codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Run an attack on an instance file.
    Solve(SolveArgs),
    /// Print cost estimates.
    Estimate(EstimateArgs),
    /// Write the annihilator polynomial system of an instance.
    Export(ExportArgs),
    /// Run a desk-scale benchmark suite.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Random,
    Gabidulin,
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "random")]
    mode: Mode,
    #[arg(long, env = "RANKFORGE_SEED", default_value_t = 0)]
    seed: u64,
    /// Keep the planted solution in the file.
    #[arg(long)]
    with_solution: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AttackName {
    Es1,
    Es2,
    Lin,
    Hybrid,
    Brute,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    attack: AttackName,
    /// Guessed zero-error combinations (hybrid).
    #[arg(long)]
    t: Option<usize>,
    /// Guessed support dimension (es1, es2).
    #[arg(long)]
    r_prime: Option<usize>,
    /// Trial or round cap.
    #[arg(long)]
    max_trials: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, env = "RANKFORGE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(clap::Args)]
struct EstimateArgs {
    #[arg(long, required_unless_present = "paper_tables")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "paper_tables")]
    k: Option<usize>,
    #[arg(long, required_unless_present = "paper_tables")]
    r: Option<usize>,
    #[arg(long, required_unless_present = "paper_tables")]
    m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = DEFAULT_OMEGA)]
    omega: f64,
    /// Regenerate the published attack tables.
    #[arg(long, conflicts_with_all = ["n", "k", "r", "m"])]
    paper_tables: bool,
}

#[derive(clap::Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Substitute a message coordinate, e.g. `--guess c1=5`.
    #[arg(long = "guess", value_parser = parse_guess)]
    guesses: Vec<(usize, u64)>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Smoke,
    PaperDesk,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "smoke")]
    suite: Suite,
    #[arg(long, env = "RANKFORGE_SEED", default_value_t = 0)]
    seed: u64,
}

fn parse_guess(s: &str) -> Result<(usize, u64), String> {
    let (var, val) = s.split_once('=').ok_or("expected c<i>=<value>")?;
    let i = var
        .trim()
        .strip_prefix('c')
        .and_then(|i| i.parse().ok())
        .ok_or("expected c<i>=<value>")?;
    let v = val.trim().parse().map_err(|_| "value must be a non-negative integer")?;
    Ok((i, v))
}

fn load(path: &Path) -> Result<RsdInstance> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_instance(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn gen(args: GenArgs) -> Result<()> {
    let params = CodeParams::new(args.q, args.m, args.n, args.k, args.r)?;
    if let Some(w) = params.uniqueness_warning() {
        eprintln!("warning: {w}");
    }
    let kind = match args.mode {
        Mode::Random => CodeKind::Random,
        Mode::Gabidulin => CodeKind::Gabidulin,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut inst = RsdInstance::generate(params, kind, &mut rng)?;
    if !args.with_solution {
        inst = inst.public();
    }
    let file = File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut out = BufWriter::new(file);
    write_instance(&inst, &mut out)?;
    out.flush()?;
    Ok(())
}

fn run_attack(inst: &RsdInstance, args: &SolveArgs) -> (AttackReport, Option<usize>) {
    match args.attack {
        AttackName::Es1 | AttackName::Es2 => {
            let variant = if args.attack == AttackName::Es1 {
                SupportVariant::V1
            } else {
                SupportVariant::V2
            };
            let mut cfg = SupportGuessConfig::new(variant, args.seed);
            cfg.r_prime = args.r_prime;
            cfg.max_trials = args.max_trials;
            cfg.workers = args.workers;
            (es_attack(inst, &cfg), None)
        }
        AttackName::Lin => (lin_attack(inst), None),
        AttackName::Hybrid => {
            let mut cfg = HybridConfig::new(args.seed);
            cfg.t = args.t;
            cfg.max_rounds = args.max_trials;
            cfg.workers = args.workers;
            (hybrid_attack(inst, &cfg), None)
        }
        AttackName::Brute => {
            let start = std::time::Instant::now();
            match brute_force(inst) {
                Ok(sols) => {
                    let count = sols.len();
                    let outcome = match sols.into_iter().next() {
                        Some(s) => rankforge::AttackOutcome::Solved(s),
                        None => rankforge::AttackOutcome::Failed("no solution of exact rank r".into()),
                    };
                    let report = AttackReport {
                        attack: "brute",
                        outcome,
                        trials: 1,
                        trials_executed: 1,
                        elapsed: start.elapsed(),
                        predicted_trials: None,
                        details: Vec::new(),
                    };
                    (report, Some(count))
                }
                Err(e @ OracleError::TooManySubspaces { .. }) | Err(e @ OracleError::KernelTooLarge { .. }) => {
                    (AttackReport::infeasible("brute", e.to_string()), None)
                }
            }
        }
    }
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let inst = load(&args.input)?;
    let (mut attack, count) = run_attack(&inst, &args);
    if let Some(c) = count {
        attack.detail("solutions_found", c);
    }
    let run = RunReport::new(&inst, attack, args.seed, args.workers);
    print!("{}", run.render());
    Ok(ExitCode::from(run.exit_code()))
}

fn estimate(args: EstimateArgs) -> Result<()> {
    if args.paper_tables {
        let t = render_tables(args.omega);
        print!("{}", t.to_text());
        println!();
        print!("{}", t.to_records());
        return Ok(());
    }
    let (Some(n), Some(k), Some(r), Some(m)) = (args.n, args.k, args.r, args.m) else {
        bail!("--n, --k, --r and --m are required");
    };
    let s = estimate_all(EstimateParams::new(n, k, r, m, args.q), args.omega);
    println!("params: q={} m={m} n={n} k={k} r={r}", args.q);
    println!("omega: {}", args.omega);
    let line = |name: &str, c: &rankforge::estimator::CostEstimate| {
        let branch = c.branch.map(|b| format!(" branch={b}")).unwrap_or_default();
        if c.feasible {
            println!(
                "{name}: {:.2} (poly {:.2} + exp {:.2}) {}{branch}",
                c.log2_ops, c.polynomial_part, c.exponent_part, c.unit
            );
        } else {
            println!("{name}: inf{branch}");
        }
    };
    line("chabaud_stern", &s.chabaud_stern);
    line("oj_basis", &s.oj_basis);
    line("oj_coords", &s.oj_coords);
    line("es_v1", &s.es_v1);
    line("es_v2", &s.es_v2);
    line("es", &s.es);
    line("linearization", &s.linearization);
    println!("hybrid_t: {}", s.hybrid_t);
    line("hybrid", &s.hybrid);
    Ok(())
}

fn export(args: ExportArgs) -> Result<()> {
    let inst = load(&args.input)?;
    let guesses: BTreeMap<usize, u64> = args.guesses.into_iter().collect();
    let sys = export_polynomial_system(&inst, &guesses)?;
    std::fs::write(&args.out, sys.to_text()).with_context(|| format!("writing {}", args.out.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a).map(|_| ExitCode::SUCCESS),
        Command::Solve(a) => solve(a),
        Command::Estimate(a) => estimate(a).map(|_| ExitCode::SUCCESS),
        Command::Export(a) => export(a).map(|_| ExitCode::SUCCESS),
        Command::Bench(a) => Ok(bench::run(
            match a.suite {
                Suite::Smoke => bench::Suite::Smoke,
                Suite::PaperDesk => bench::Suite::PaperDesk,
            },
            a.seed,
        )),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
