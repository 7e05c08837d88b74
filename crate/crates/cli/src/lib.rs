//! Command-line front end for `runcorr`.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when an identity
//! or consistency check fails.

use std::io::{self, Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use runcorr::autocorr::{aperiodic_direct, aperiodic_direct_counted};
use runcorr::par::Parallelism;
use runcorr::runvector::{
    autocorr_fast, autocorr_fast_counted, run_vector, run_vector_additions, run_vector_counted,
    run_vector_prefix_formula,
};
use runcorr::search::{exhaustive_search, pruned_search, Objective, SearchResult, SearchSpec};
use runcorr::skew::{classify, skew_autocorr_facts, skew_symmetric_rles};
use runcorr::verify::{
    exhaustive_identities, random_identities, repetition_law, skew_equivalence, uniform_sequence,
    RunVectorFn, SuiteReport,
};

pub mod input;
pub mod report;

pub use input::{InputFormat, OutputFormat};
pub use report::{analyze, analyze_with, AnalysisReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] runcorr::Error),
    #[error("malformed records: {0}")]
    Records(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INCONSISTENT: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "runcorr",
    version,
    about = "Autocorrelations of binary sequences via run vectors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Report {
    #[default]
    Text,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full autocorrelation and run vector report for a sequence
    Analyze(AnalyzeArgs),
    /// Run the identity suites
    Selftest(SelftestArgs),
    /// Operation counts and timings of the direct and run-vector paths
    Bench(BenchArgs),
    /// Search for sequences with low autocorrelation
    Search(SearchArgs),
    /// Skew-symmetric sequences and balanced run length encodings
    #[command(subcommand)]
    Skew(SkewCommand),
    /// Convert between sign, bit and run length notation
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Sequence or run length encoding; one per line on stdin when omitted
    #[arg(allow_hyphen_values = true)]
    pub input: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    pub format: InputFormat,
    #[arg(long, value_enum, default_value_t)]
    pub output: Report,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Largest length checked exhaustively
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
    /// Number of random samples
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Largest length of the random samples
    #[arg(long, default_value_t = 256)]
    pub random_max_n: usize,
    /// Run on the calling thread only
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum BenchMode {
    #[default]
    All,
    Direct,
    Runvector,
    PrefixFormula,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Sequence lengths
    #[arg(long, value_delimiter = ',', default_values_t = [256usize, 1024, 4096])]
    pub n: Vec<usize>,
    /// Random sequences per length
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t)]
    pub mode: BenchMode,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum ObjectiveArg {
    #[default]
    Psl,
    Merit,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    /// Sequence length
    pub n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub objective: ObjectiveArg,
    #[arg(long)]
    pub restrict_skew: bool,
    /// Largest admissible peak sidelobe level
    #[arg(long)]
    pub bound: Option<u64>,
    /// Border width up to which branches are tested
    #[arg(long)]
    pub prune_depth: Option<usize>,
    /// Score every candidate instead of pruning
    #[arg(long)]
    pub exhaustive: bool,
    /// Also identify sequences with their reversal
    #[arg(long)]
    pub quotient_reversal: bool,
    /// Override the default length limit
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long)]
    pub sequential: bool,
    /// Notation for the optimal sequences
    #[arg(long, value_enum, default_value = "signs")]
    pub format: OutputFormat,
    #[arg(long, value_enum, default_value_t)]
    pub output: Report,
}

#[derive(Debug, Subcommand)]
pub enum SkewCommand {
    /// List the balanced run length encodings with the given number of runs
    Enum {
        #[arg(long)]
        gamma: usize,
        /// Print sequences instead of run length encodings
        #[arg(long)]
        expand: bool,
        /// Start expanded sequences with '-'
        #[arg(long)]
        negative: bool,
    },
    /// Classify a sequence
    Check {
        #[arg(allow_hyphen_values = true)]
        input: String,
        #[arg(long, value_enum, default_value_t)]
        format: InputFormat,
    },
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(allow_hyphen_values = true)]
    pub input: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: InputFormat,
    /// Target notation; rle by default, signs for run length input
    #[arg(long, value_enum)]
    pub to: Option<OutputFormat>,
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdin, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn parallelism(sequential: bool) -> Parallelism {
    if sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Analyze(args) => cmd_analyze(&args, stdin, out),
        Command::Selftest(args) => cmd_selftest(&args, run_vector, out),
        Command::Bench(args) => cmd_bench(&args, out),
        Command::Search(args) => cmd_search(&args, out),
        Command::Skew(cmd) => cmd_skew(cmd, out),
        Command::Convert(args) => cmd_convert(&args, out),
    }
}

pub fn cmd_analyze(
    args: &AnalyzeArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    let inputs: Vec<String> = match &args.input {
        Some(text) => vec![text.clone()],
        None => {
            let mut buf = String::new();
            stdin.read_to_string(&mut buf)?;
            buf.lines()
                .filter(|l| !l.trim().is_empty())
                .map(str::to_string)
                .collect()
        }
    };
    if inputs.is_empty() {
        return Err(CliError::Usage("no input".into()));
    }
    let mut code = EXIT_OK;
    for (i, text) in inputs.iter().enumerate() {
        let report = analyze(text, args.format)?;
        if i > 0 {
            writeln!(out)?;
        }
        match args.output {
            Report::Text => write!(out, "{}", report.to_text())?,
            Report::Records => write!(out, "{}", report.to_records())?,
        }
        if !report.consistent() {
            code = EXIT_INCONSISTENT;
        }
    }
    Ok(code)
}

fn write_suite(out: &mut dyn Write, title: &str, report: &SuiteReport) -> io::Result<()> {
    writeln!(
        out,
        "{title}: {} cases, {} failures",
        report.cases,
        report.failures()
    )?;
    for (id, t) in &report.tallies {
        writeln!(
            out,
            "  {:<28}{:>10} checked  {} failed",
            id.name(),
            t.checked,
            t.failed
        )?;
    }
    Ok(())
}

/// Runs the suites with `rv_fn` as the run vector under test.
pub fn cmd_selftest(
    args: &SelftestArgs,
    rv_fn: RunVectorFn,
    out: &mut dyn Write,
) -> Result<u8, CliError> {
    if !(3..=24).contains(&args.max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must be in 3..=24, got {}",
            args.max_n
        )));
    }
    if args.random_max_n == 0 || args.random_max_n > 4096 {
        return Err(CliError::Usage("--random-max-n must be in 1..=4096".into()));
    }
    let mode = parallelism(args.sequential);
    let exhaustive = exhaustive_identities(3, args.max_n, rv_fn, mode);
    write_suite(
        out,
        &format!("exhaustive n = 3..={}", args.max_n),
        &exhaustive,
    )?;
    let random = random_identities(args.samples, args.random_max_n, args.seed, rv_fn, mode);
    write_suite(
        out,
        &format!("random n <= {} (seed {})", args.random_max_n, args.seed),
        &random,
    )?;
    let repetition = repetition_law(args.samples, 64, 4, args.seed);
    write_suite(out, "repetition", &repetition)?;
    let skew_max = args.max_n.min(19);
    let skew_bad: Vec<usize> = (1..=skew_max)
        .step_by(2)
        .filter(|&n| !skew_equivalence(n).holds())
        .collect();
    writeln!(
        out,
        "skew/balanced/tree odd n <= {skew_max}: {}",
        if skew_bad.is_empty() {
            "agree".to_string()
        } else {
            format!("differ at {skew_bad:?}")
        }
    )?;

    let violation = [&exhaustive, &random, &repetition]
        .into_iter()
        .find_map(|r| r.first_violation.as_ref());
    if let Some(v) = violation {
        writeln!(out, "counterexample: {v}")?;
    }
    let pass = violation.is_none() && skew_bad.is_empty();
    writeln!(out, "result: {}", if pass { "pass" } else { "FAIL" })?;
    Ok(if pass { EXIT_OK } else { EXIT_INCONSISTENT })
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    if args.trials == 0 || args.n.iter().any(|&n| !(2..=1 << 16).contains(&n)) {
        return Err(CliError::Usage(
            "need --trials >= 1 and lengths in 2..=65536".into(),
        ));
    }
    let show = |m: BenchMode| args.mode == BenchMode::All || args.mode == m;
    writeln!(
        out,
        "{:>6} {:>8} {:>12} {:>12} {:>12} {:>12} {:>7} {:>11} {:>11} {:>11}",
        "n",
        "gamma",
        "direct_mul",
        "direct_add",
        "rv_add",
        "fast_add",
        "ratio",
        "direct_us",
        "runvec_us",
        "prefix_us"
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut formula_ok = true;
    for &n in &args.n {
        let (mut gamma, mut dmul, mut dadd, mut rv_add, mut fast_add) =
            (0u64, 0u64, 0u64, 0u64, 0u64);
        let (mut t_direct, mut t_rv, mut t_prefix) = (0f64, 0f64, 0f64);
        for _ in 0..args.trials {
            let a = uniform_sequence(&mut rng, n);
            let rle = a.to_rle();
            let (_, ops) = run_vector_counted(&rle);
            formula_ok &=
                ops.additions == run_vector_additions(rle.gamma()) && ops.multiplications == 0;
            gamma += rle.gamma() as u64;
            rv_add += ops.additions;
            let (c_direct, direct_ops) = aperiodic_direct_counted(&a);
            let (c_fast, fast_ops) = autocorr_fast_counted(&a, true)?;
            formula_ok &= c_direct == c_fast;
            dmul += direct_ops.multiplications;
            dadd += direct_ops.additions;
            fast_add += fast_ops.additions;
            if show(BenchMode::Direct) {
                let t = Instant::now();
                std::hint::black_box(aperiodic_direct(&a));
                t_direct += t.elapsed().as_secs_f64();
            }
            if show(BenchMode::Runvector) {
                let t = Instant::now();
                std::hint::black_box(autocorr_fast(&a, true)?);
                t_rv += t.elapsed().as_secs_f64();
            }
            if show(BenchMode::PrefixFormula) {
                let t = Instant::now();
                std::hint::black_box(run_vector_prefix_formula(&rle));
                t_prefix += t.elapsed().as_secs_f64();
            }
        }
        let k = args.trials as u64;
        let us = |t: f64, on: bool| {
            if on {
                format!("{:.1}", t * 1e6 / k as f64)
            } else {
                "-".into()
            }
        };
        writeln!(
            out,
            "{:>6} {:>8} {:>12} {:>12} {:>12} {:>12} {:>7.2} {:>11} {:>11} {:>11}",
            n,
            gamma / k,
            dmul / k,
            dadd / k,
            rv_add / k,
            fast_add / k,
            (dmul + dadd) as f64 / fast_add.max(1) as f64,
            us(t_direct, show(BenchMode::Direct)),
            us(t_rv, show(BenchMode::Runvector)),
            us(t_prefix, show(BenchMode::PrefixFormula)),
        )?;
    }
    writeln!(
        out,
        "run vector additions = (gamma-1)(gamma+2): {}",
        if formula_ok { "yes" } else { "NO" }
    )?;
    Ok(if formula_ok {
        EXIT_OK
    } else {
        EXIT_INCONSISTENT
    })
}

fn search_spec(args: &SearchArgs) -> SearchSpec {
    let objective = match args.objective {
        ObjectiveArg::Psl => Objective::MinPsl,
        ObjectiveArg::Merit => Objective::MaxMerit,
    };
    SearchSpec::new(args.n, objective)
        .restrict_skew(args.restrict_skew)
        .bound(args.bound)
        .prune_depth(args.prune_depth)
        .quotient_reversal(args.quotient_reversal)
        .limit(args.limit)
        .parallelism(parallelism(args.sequential))
}

pub fn cmd_search(args: &SearchArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let spec = search_spec(args);
    let result: SearchResult = if args.exhaustive {
        exhaustive_search(&spec)?
    } else {
        pruned_search(&spec)?
    };
    let best = result
        .best
        .map_or_else(|| "none".to_string(), |b| b.to_string());
    let objective = match args.objective {
        ObjectiveArg::Psl => "psl",
        ObjectiveArg::Merit => "merit",
    };
    let method = if args.exhaustive {
        "exhaustive"
    } else {
        "pruned"
    };
    match args.output {
        Report::Records => {
            writeln!(out, "n={}", result.n)?;
            writeln!(out, "objective={objective}")?;
            writeln!(out, "method={method}")?;
            writeln!(out, "restrict_skew={}", args.restrict_skew)?;
            writeln!(
                out,
                "bound={}",
                args.bound
                    .map_or_else(|| "none".to_string(), |b| b.to_string())
            )?;
            writeln!(out, "best={best}")?;
            writeln!(out, "optima={}", result.optima.len())?;
            for a in &result.optima {
                writeln!(out, "optimum={}", input::render(a, args.format))?;
            }
            writeln!(out, "nodes_visited={}", result.nodes_visited)?;
            writeln!(out, "nodes_pruned={}", result.nodes_pruned)?;
        }
        Report::Text => {
            writeln!(
                out,
                "n = {}, objective {objective}, {method} search",
                result.n
            )?;
            writeln!(out, "best: {best}")?;
            writeln!(out, "optimal sequences: {}", result.optima.len())?;
            for a in &result.optima {
                writeln!(out, "  {}", input::render(a, args.format))?;
            }
            writeln!(
                out,
                "nodes visited: {}, pruned: {}",
                result.nodes_visited, result.nodes_pruned
            )?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_skew(cmd: SkewCommand, out: &mut dyn Write) -> Result<u8, CliError> {
    match cmd {
        SkewCommand::Enum {
            gamma,
            expand,
            negative,
        } => {
            for rle in skew_symmetric_rles(gamma)? {
                let rle = if negative { rle.negate() } else { rle };
                if expand {
                    writeln!(out, "{}", rle.to_sequence())?;
                } else {
                    writeln!(out, "{rle}")?;
                }
            }
            Ok(EXIT_OK)
        }
        SkewCommand::Check { input, format } => {
            let a = input::parse_sequence(&input, format)?;
            let c = classify(&a);
            writeln!(out, "sequence      {a}")?;
            writeln!(out, "rle           {}", a.to_rle())?;
            writeln!(out, "skew          {}", c.is_skew)?;
            writeln!(out, "balanced      {}", c.is_balanced)?;
            writeln!(out, "reducible     {}", c.is_reducible)?;
            if let Some(r) = &c.reduction {
                writeln!(out, "reduction     {r}")?;
            }
            if !c.is_skew {
                return Ok(if c.is_balanced {
                    EXIT_INCONSISTENT
                } else {
                    EXIT_OK
                });
            }
            let f = skew_autocorr_facts(&a)?;
            writeln!(out, "odd lags vanish        {}", f.odd_lags_vanish)?;
            writeln!(out, "even lags R_k = C_k    {}", f.even_lags_match)?;
            writeln!(out, "odd lags R_k from C    {}", f.odd_lags_match)?;
            writeln!(out, "gamma = (n+1)/2        {}", f.gamma_is_half)?;
            if let Some(b) = f.barker_run_vector {
                writeln!(out, "Barker run vector      {b}")?;
            }
            Ok(if f.all_hold() && c.is_balanced {
                EXIT_OK
            } else {
                EXIT_INCONSISTENT
            })
        }
    }
}

pub fn cmd_convert(args: &ConvertArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let detected = match args.format {
        InputFormat::Auto => InputFormat::detect(&args.input),
        f => f,
    };
    let a = input::parse_sequence(&args.input, detected)?;
    let to = args.to.unwrap_or(if detected == InputFormat::Rle {
        OutputFormat::Signs
    } else {
        OutputFormat::Rle
    });
    writeln!(out, "{}", input::render(&a, to))?;
    Ok(EXIT_OK)
}
