use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rsinterp::code::{add_error, encode, random_error, CodeParams, Codeword, Message};
use rsinterp::decoder::{decode_with, DecodeOptions, RecurrenceEngine};
use rsinterp::harness::{
    bench_point, example_golden, loglog_slope, run_roundtrip, run_selftest, BenchConfig, BenchRecord,
    DecodeReport, CSV_HEADER,
};
use rsinterp::oracle::run_oracle_suite;
use rsinterp::toeplitz::SolverKind;
use rsinterp::transform::{DomainOptions, EngineChoice, DEFAULT_SMOOTHNESS_BOUND, SMOOTHNESS_ENV};

mod wire;

use wire::{parse_vector, plain, WireVector};

const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "rsinterp", version, about = "Interpolation-based Reed-Solomon codec over GF(q), n = q - 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message of k residues.
    Encode {
        #[command(flatten)]
        common: Common,
        /// Comma-separated residues or a JSON vector; read from stdin when absent.
        vector: Option<String>,
    },
    /// Decode a received word of n residues.
    Decode {
        #[command(flatten)]
        common: Common,
        vector: Option<String>,
    },
    /// Add t random errors to a codeword.
    Corrupt {
        #[command(flatten)]
        common: Common,
        vector: Option<String>,
    },
    /// Seeded encode, corrupt, decode trials.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Median decode time per (q, k) point at t = t_max, with the log-log slope.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Points as q:k pairs, e.g. 257:128,65537:32768. Defaults to
        /// q in {257, 7681, 65537} with k = n/2, or the single --q/--k point.
        #[arg(long, value_delimiter = ',')]
        sweep: Vec<String>,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Golden vectors and the exhaustive GF(5) comparison.
    Selftest {
        #[command(flatten)]
        common: Common,
        /// Negative control: perturb one golden constant.
        #[arg(long, hide = true)]
        corrupt_golden: bool,
    },
    /// Circulant-rank and subresultant property suites.
    OracleCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Engine::Auto)]
    engine: Engine,
    #[arg(long, value_enum, default_value_t = Solver::Structured)]
    solver: Solver,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Largest prime allowed in n for the fast engine.
    #[arg(long, env = SMOOTHNESS_ENV, default_value_t = DEFAULT_SMOOTHNESS_BOUND)]
    smoothness_bound: u64,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Engine {
    Auto,
    Fast,
    Naive,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Solver {
    Structured,
    Dense,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Plain,
    Json,
}

/// Validated settings shared by every subcommand.
struct RunConfig {
    params: CodeParams,
    t: Option<usize>,
    seed: u64,
    engine: EngineChoice,
    smoothness_bound: u64,
    solver: SolverKind,
    format: Format,
}

impl RunConfig {
    fn options(&self) -> DecodeOptions {
        DecodeOptions { solver: self.solver, recurrence: RecurrenceEngine::default() }
    }
}

/// Exit with a message and a code.
struct Fail(u8, String);

type Outcome = Result<(), Fail>;

fn input(msg: impl std::fmt::Display) -> Fail {
    Fail(EXIT_INPUT, msg.to_string())
}

fn engine_choice(e: Engine) -> EngineChoice {
    match e {
        Engine::Auto => EngineChoice::Auto,
        Engine::Fast => EngineChoice::Fast,
        Engine::Naive => EngineChoice::Naive,
    }
}

fn solver_kind(s: Solver) -> SolverKind {
    match s {
        Solver::Structured => SolverKind::Structured,
        Solver::Dense => SolverKind::Dense,
    }
}

fn config(c: &Common, q: Option<u64>, k: Option<usize>) -> Result<RunConfig, Fail> {
    let q = c.q.or(q).ok_or_else(|| input("--q is required"))?;
    let k = c.k.or(k).ok_or_else(|| input("--k is required"))?;
    let engine = engine_choice(c.engine);
    let options = DomainOptions { engine, smoothness_bound: c.smoothness_bound };
    let params = CodeParams::with_options(q, k, options).map_err(input)?;
    if let Some(t) = c.t {
        if t > params.n() {
            return Err(input(format!("t = {t} exceeds n = {}", params.n())));
        }
    }
    Ok(RunConfig {
        params,
        t: c.t,
        seed: c.seed,
        engine,
        smoothness_bound: c.smoothness_bound,
        solver: solver_kind(c.solver),
        format: c.format,
    })
}

/// Config plus the vector from the argument or stdin. JSON vectors may
/// supply `q` and `k`; explicit flags must agree with them.
fn config_with_vector(c: &Common, arg: Option<String>) -> Result<(RunConfig, Vec<u64>), Fail> {
    let text = match arg {
        Some(t) => t,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| input(format!("reading stdin: {e}")))?;
            s
        }
    };
    let parsed = parse_vector(&text).map_err(input)?;
    if let (Some(a), Some(b)) = (c.q, parsed.q) {
        if a != b {
            return Err(input(format!("--q {a} disagrees with vector q = {b}")));
        }
    }
    if let (Some(a), Some(b)) = (c.k, parsed.k) {
        if a != b {
            return Err(input(format!("--k {a} disagrees with vector k = {b}")));
        }
    }
    let cfg = config(c, parsed.q, parsed.k)?;
    Ok((cfg, parsed.data))
}

fn emit_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serialisable"));
}

fn emit_vector(cfg: &RunConfig, data: Vec<u64>) {
    match cfg.format {
        Format::Plain => println!("{}", plain(&data)),
        Format::Json => emit_json(&WireVector { q: cfg.params.q(), k: cfg.params.k(), data }),
    }
}

fn cmd_encode(c: &Common, v: Option<String>) -> Outcome {
    let (cfg, data) = config_with_vector(c, v)?;
    let cw = encode(&Message(data), &cfg.params).map_err(input)?;
    emit_vector(&cfg, cw.0);
    Ok(())
}

fn cmd_decode(c: &Common, v: Option<String>) -> Outcome {
    let (cfg, data) = config_with_vector(c, v)?;
    let out = decode_with(&data, &cfg.params, cfg.options()).map_err(input)?;
    let report = DecodeReport::new(&cfg.params, &out);
    match cfg.format {
        Format::Json => emit_json(&report),
        Format::Plain => {
            if report.success {
                println!("status: success");
                println!("codeword: {}", plain(report.codeword.as_deref().unwrap_or_default()));
                println!("error: {}", plain(report.error.as_deref().unwrap_or_default()));
                println!("message: {}", plain(report.message.as_deref().unwrap_or_default()));
                println!("t_hat: {}", report.error_count.unwrap_or(0));
            } else {
                println!("status: failure");
                println!("reason: {}", report.reason.expect("failure has a reason"));
            }
        }
    }
    if report.success {
        Ok(())
    } else {
        Err(Fail(EXIT_FAILURE, String::new()))
    }
}

fn cmd_corrupt(c: &Common, v: Option<String>) -> Outcome {
    let (cfg, data) = config_with_vector(c, v)?;
    let t = cfg.t.unwrap_or(cfg.params.t_max());
    let e = random_error(&cfg.params, t, cfg.seed).map_err(input)?;
    let r = add_error(&Codeword(data), &e, &cfg.params).map_err(input)?;
    emit_vector(&cfg, r.0);
    Ok(())
}

fn cmd_roundtrip(c: &Common, trials: usize) -> Outcome {
    let cfg = config(c, None, None)?;
    let t = cfg.t.unwrap_or(cfg.params.t_max());
    let s = run_roundtrip(&cfg.params, t, trials, cfg.seed, cfg.options()).map_err(input)?;
    match cfg.format {
        Format::Json => emit_json(&s),
        Format::Plain => {
            let what = if t <= s.t_max { "recovered" } else { "honest" };
            let count = if t <= s.t_max { s.recovered } else { s.honest };
            println!(
                "q={} k={} t={} t_max={}: {count}/{} {what}, {} decode failures",
                s.q, s.k, s.t, s.t_max, s.trials, s.failures
            );
        }
    }
    if s.passed() {
        Ok(())
    } else {
        Err(Fail(EXIT_FAILURE, format!("first miss at trial {:?}", s.first_miss)))
    }
}

fn parse_point(s: &str) -> Result<(u64, usize), Fail> {
    let (q, k) = s.split_once(':').ok_or_else(|| input(format!("sweep point {s:?} is not q:k")))?;
    let q = q.trim().parse().map_err(|_| input(format!("bad q in {s:?}")))?;
    let k = k.trim().parse().map_err(|_| input(format!("bad k in {s:?}")))?;
    Ok((q, k))
}

#[derive(Serialize)]
struct SlopeLine {
    slope: Option<f64>,
}

fn cmd_bench(c: &Common, sweep: &[String], trials: usize) -> Outcome {
    if trials == 0 {
        return Err(input("--trials must be at least 1"));
    }
    let points: Vec<(u64, usize)> = if !sweep.is_empty() {
        sweep.iter().map(|s| parse_point(s)).collect::<Result<_, _>>()?
    } else if c.q.is_some() || c.k.is_some() {
        let cfg = config(c, None, None)?;
        vec![(cfg.params.q(), cfg.params.k())]
    } else {
        vec![(257, 128), (7681, 3840), (65537, 32768)]
    };
    // validate every point before timing anything
    let mut configs = Vec::new();
    for &(q, k) in &points {
        let cfg = config(&Common { q: Some(q), k: Some(k), ..c.clone() }, None, None)?;
        if let Some(t) = cfg.t {
            if t > cfg.params.t_max() {
                return Err(input(format!("t = {t} exceeds t_max = {} for q={q} k={k}", cfg.params.t_max())));
            }
        }
        let mut b = BenchConfig::new(q, k);
        b.t = cfg.t;
        b.trials = trials;
        b.seed = cfg.seed;
        b.engine = cfg.engine;
        b.smoothness_bound = cfg.smoothness_bound;
        b.solver = cfg.solver;
        configs.push(b);
    }
    if c.format == Format::Plain {
        println!("{CSV_HEADER}");
    }
    let mut records: Vec<BenchRecord> = Vec::new();
    for b in &configs {
        let r = bench_point(b).map_err(|e| Fail(EXIT_FAILURE, e.to_string()))?;
        match c.format {
            Format::Plain => println!("{}", r.csv_row()),
            Format::Json => emit_json(&r),
        }
        let _ = io::stdout().flush();
        records.push(r);
    }
    let slope = loglog_slope(&records);
    match c.format {
        Format::Plain => match slope {
            Some(s) => println!("# slope {s:.4}"),
            None => println!("# slope undefined"),
        },
        Format::Json => emit_json(&SlopeLine { slope }),
    }
    Ok(())
}

fn cmd_selftest(c: &Common, corrupt_golden: bool) -> Outcome {
    let mut golden = example_golden();
    if corrupt_golden {
        golden.eta[0] = (golden.eta[0] + 1) % golden.q;
    }
    let report = run_selftest(&golden);
    match c.format {
        Format::Json => emit_json(&report),
        Format::Plain => {
            let word = |ok: bool| if ok { "pass" } else { "fail" };
            println!("golden: {}, exhaustive: {}", word(report.golden.passed), word(report.exhaustive.passed));
            for d in [&report.golden.detail, &report.exhaustive.detail].into_iter().flatten() {
                println!("  mismatch: {d}");
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Fail(EXIT_FAILURE, String::new()))
    }
}

fn cmd_oracle_check(c: &Common, trials: usize) -> Outcome {
    let cfg = config(c, None, None)?;
    let report = run_oracle_suite(&cfg.params, trials, cfg.seed);
    match cfg.format {
        Format::Json => emit_json(&report),
        Format::Plain => {
            for p in &report.properties {
                let verdict = if p.passed() { "pass" } else { "FAIL" };
                println!("{}: {verdict} ({} cases, {} violations)", p.name, p.cases, p.violations);
                if let Some(d) = &p.detail {
                    println!("  first counterexample: {d}");
                }
            }
        }
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Fail(EXIT_FAILURE, String::new()))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Encode { common, vector } => cmd_encode(common, vector.clone()),
        Command::Decode { common, vector } => cmd_decode(common, vector.clone()),
        Command::Corrupt { common, vector } => cmd_corrupt(common, vector.clone()),
        Command::Roundtrip { common, trials } => cmd_roundtrip(common, *trials),
        Command::Bench { common, sweep, trials } => cmd_bench(common, sweep, *trials),
        Command::Selftest { common, corrupt_golden } => cmd_selftest(common, *corrupt_golden),
        Command::OracleCheck { common, trials } => cmd_oracle_check(common, *trials),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
