use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eternal_core::game::{play_trace, strategy_from_neocolonization};
use eternal_core::greedy::attacker_sequence;
use eternal_core::interval_model::{random_model, validate_model_graph, ModelKind};
use eternal_core::oracle::{OracleError, OracleLimits};
use eternal_core::verify::{verify_instance, verify_random, InstanceReport, VerifyOptions};
use eternal_core::{
    normalize, scaling, solve, CanonicalModel, Certificate, Execution, GameParams, Graph,
    IntervalModel, Oracle,
};

/// Eternal domination on interval graphs.
#[derive(Parser, Debug)]
#[command(name = "eternal-dom", version)]
struct Cli {
    /// Worker threads for oracle and batch verification (0 = one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute k and, optionally, the full certificate for an interval model.
    Solve(SolveArgs),
    /// Exhaustive game and graph parameters of a small graph.
    Oracle(OracleArgs),
    /// Cross-check the sweep against the oracle and the defender strategy.
    Verify(VerifyArgs),
    /// Print a random canonical interval model.
    Gen(GenArgs),
    /// Time the sweep and block decomposition on growing inputs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Print the full certificate instead of k alone.
    #[arg(long)]
    emit_certificate: bool,
    /// Also check that this graph is the intersection graph of the model.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Play the attacker sequence against the block strategy, one line per turn on stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true))]
struct OracleArgs {
    #[arg(long, group = "input")]
    graph: Option<PathBuf>,
    #[arg(long, group = "input")]
    model: Option<PathBuf>,
    /// all-multi, all-simple, single-simple, single-multi, or `all` for the
    /// first three; without it the full parameter report is printed.
    #[arg(long)]
    game: Option<String>,
    /// Vertex limit for every exhaustive computation.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true))]
struct VerifyArgs {
    #[arg(long, group = "input")]
    model: Option<PathBuf>,
    /// Number of intervals in each random model.
    #[arg(long, group = "input")]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// State budget for strategy exploration.
    #[arg(long, default_value_t = 1_000_000)]
    budget: usize,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "general")]
    kind: ModelKind,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated sizes in ascending order.
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
}

const EXIT_INPUT: u8 = 1;
const EXIT_BUDGET: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// A message for stderr and the exit code that goes with it.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::LimitExceeded { .. } | OracleError::TooManyConfigs { .. } => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<CanonicalModel, Failure> {
    let text = read(path)?;
    let model = IntervalModel::parse(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(normalize(&model))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read(path)?;
    Graph::parse_dimacs(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn cmd_solve(args: &SolveArgs) -> Outcome {
    let model = load_model(&args.model)?;
    if let Some(path) = &args.graph {
        let graph = load_graph(path)?;
        let same =
            validate_model_graph(&model, &graph).map_err(|e| Failure::input(e.to_string()))?;
        if !same {
            return Err(Failure::input(format!(
                "{}: not the intersection graph of the model",
                path.display()
            )));
        }
    }
    let solution = solve(&model);
    if args.trace && !model.is_empty() {
        let graph = model.intersection_graph();
        let (strategy, initial) = strategy_from_neocolonization(&solution.neocolonization, &graph);
        let attacks = attacker_sequence(&solution.greedy);
        let records = play_trace(
            &graph,
            &strategy,
            &initial,
            GameParams::ALL_SIMPLE,
            &attacks,
        )
        .map_err(|e| Failure::input(e.to_string()))?;
        let mut err = std::io::stderr().lock();
        for r in &records {
            let _ = writeln!(err, "{}", r.render(&graph));
        }
    }
    let k = solution.greedy.k();
    let out = match (args.emit_certificate, args.format) {
        (true, Format::Json) => Certificate::new(&model, &solution).to_json() + "\n",
        (true, Format::Text) => Certificate::new(&model, &solution).to_text(),
        (false, Format::Json) => format!("{{\"k\": {k}}}\n"),
        (false, Format::Text) => format!("k = {k}\n"),
    };
    Ok((out, 0))
}

fn cmd_oracle(args: &OracleArgs) -> Outcome {
    let graph = match (&args.graph, &args.model) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(path)) => load_model(path)?.intersection_graph(),
        (None, None) => unreachable!("clap requires one input"),
    };
    let mut limits = OracleLimits::default();
    if let Some(n) = args.limit {
        limits.exhaustive = n;
        limits.cover = n;
        limits.game = n;
    }
    let oracle = Oracle::new(limits);

    let games: Vec<GameParams> = match args.game.as_deref() {
        None => {
            let report = oracle.parameter_report(&graph)?;
            let out = match args.format {
                Format::Json => {
                    serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
                }
                Format::Text => {
                    let mut out = String::new();
                    writeln!(out, "n {}", report.n).unwrap();
                    writeln!(out, "gamma {}", report.gamma).unwrap();
                    match report.gamma_c {
                        Some(v) => writeln!(out, "gamma_c {v}").unwrap(),
                        None => writeln!(out, "gamma_c undefined").unwrap(),
                    }
                    writeln!(out, "alpha {}", report.alpha).unwrap();
                    writeln!(out, "theta {}", report.theta).unwrap();
                    writeln!(out, "theta_c {}", report.theta_c).unwrap();
                    for (params, v) in &report.eternal {
                        writeln!(out, "eternal {params} {v}").unwrap();
                    }
                    writeln!(
                        out,
                        "domination chain {}",
                        holds(report.domination_chain_holds)
                    )
                    .unwrap();
                    writeln!(out, "cover chain {}", holds(report.cover_chain_holds)).unwrap();
                    out
                }
            };
            return Ok((out, 0));
        }
        Some("all") => vec![
            GameParams::ALL_MULTI,
            GameParams::ALL_SIMPLE,
            GameParams::SINGLE_SIMPLE,
        ],
        Some(name) => vec![name.parse().map_err(Failure::input)?],
    };
    let values = games
        .iter()
        .map(|&p| oracle.eternal_domination_number(&graph, p))
        .collect::<Result<Vec<_>, _>>()?;
    let out = match args.format {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = games
                .iter()
                .zip(&values)
                .map(|(p, &v)| (p.to_string(), v.into()))
                .collect();
            serde_json::to_string_pretty(&map).expect("map serializes") + "\n"
        }
        Format::Text => {
            let parts: Vec<String> = values.iter().map(usize::to_string).collect();
            parts.join(" ") + "\n"
        }
    };
    Ok((out, 0))
}

fn holds(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "VIOLATED"
    }
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let opts = VerifyOptions {
        budget: args.budget,
        oracle: Oracle::default(),
    };
    let reports: Vec<InstanceReport> = match (&args.model, args.random) {
        (Some(path), _) => {
            let model = load_model(path)?;
            vec![verify_instance(path.display().to_string(), &model, &opts)]
        }
        (None, Some(n)) => verify_random(n, args.seed, args.trials, &opts, Execution::default()),
        (None, None) => unreachable!("clap requires one input"),
    };
    let mut out = String::new();
    for r in &reports {
        writeln!(out, "{r}").unwrap();
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let failed = reports.iter().filter(|r| r.failed()).count();
    writeln!(out, "{passed}/{} pass", reports.len()).unwrap();
    let code = if failed > 0 {
        EXIT_MISMATCH
    } else if passed < reports.len() {
        EXIT_BUDGET
    } else {
        0
    };
    Ok((out, code))
}

fn cmd_gen(args: &GenArgs) -> Outcome {
    if args.n > CanonicalModel::MAX_LEN {
        return Err(Failure::input(format!(
            "--n is at most {}",
            CanonicalModel::MAX_LEN
        )));
    }
    Ok((random_model(args.n, args.seed, args.kind).to_text(), 0))
}

fn parse_sizes(list: &str) -> Result<Vec<usize>, Failure> {
    let sizes = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| Failure::input(format!("--sizes: `{s}` is not a size")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.is_empty() {
        return Err(Failure::input("--sizes: empty size list"));
    }
    if sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Failure::input("--sizes: sizes must be in ascending order"));
    }
    if sizes.iter().any(|&s| s > CanonicalModel::MAX_LEN) {
        return Err(Failure::input(format!(
            "--sizes: at most {} intervals",
            CanonicalModel::MAX_LEN
        )));
    }
    Ok(sizes)
}

fn cmd_bench(args: &BenchArgs) -> Outcome {
    let sizes = parse_sizes(&args.sizes)?;
    let timings = scaling::measure(&sizes, args.seed, args.repeats);
    let mut out = String::from("size median_secs ns_per_interval\n");
    for t in &timings {
        writeln!(
            out,
            "{} {:.6} {:.2}",
            t.size, t.median_secs, t.ns_per_interval
        )
        .unwrap();
    }
    Ok((out, 0))
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let Some(n) = threads else { return Ok(()) };
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::input(format!("--threads: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = configure_threads(cli.threads).and_then(|()| match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Bench(a) => cmd_bench(a),
    });
    match result {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
