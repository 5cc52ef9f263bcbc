//! Round trips, benchmarks and self-tests shared by the CLI, the Python
//! bindings and the acceptance suite. All reports are serde types.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::code::{
    add_error, encode, hamming_distance, is_codeword, random_error, random_message, CodeError,
    CodeParams, ErrorVector, Message,
};
use crate::decoder::{
    decode_traced, decode_with, reference_decode_bruteforce, DecodeError, DecodeOptions,
    DecodeOutcome, FailureReason, RecurrenceEngine,
};
use crate::rng::SplitMix64;
use crate::toeplitz::SolverKind;
use crate::transform::{DomainOptions, EngineChoice};

/// Seeds for the message and the error pattern of trial `index`.
pub fn trial_seeds(seed: u64, index: u64) -> (u64, u64) {
    let mut rng = SplitMix64::new(seed.wrapping_add(index));
    (rng.next_u64(), rng.next_u64())
}

/// Encoded message, received word and injected error of one seeded trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub message: Message,
    pub received: Vec<u64>,
    pub error: ErrorVector,
}

pub fn make_trial(params: &CodeParams, t: usize, seed: u64, index: u64) -> Result<Trial, CodeError> {
    let (ms, es) = trial_seeds(seed, index);
    let message = random_message(params, ms);
    let c = encode(&message, params)?;
    let error = random_error(params, t, es)?;
    let received = add_error(&c, &error, params)?.0;
    Ok(Trial { message, received, error })
}

/// Decode outcome flattened for printing and JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeReport {
    pub q: u64,
    pub k: usize,
    pub success: bool,
    pub codeword: Option<Vec<u64>>,
    pub error: Option<Vec<u64>>,
    pub message: Option<Vec<u64>>,
    pub error_count: Option<usize>,
    pub reason: Option<FailureReason>,
}

impl DecodeReport {
    pub fn new(params: &CodeParams, outcome: &DecodeOutcome) -> Self {
        let (q, k) = (params.q(), params.k());
        match outcome {
            DecodeOutcome::Success { codeword, error, message, error_count } => DecodeReport {
                q,
                k,
                success: true,
                codeword: Some(codeword.0.clone()),
                error: Some(error.0.clone()),
                message: Some(message.0.clone()),
                error_count: Some(*error_count),
                reason: None,
            },
            DecodeOutcome::Failure { reason } => DecodeReport {
                q,
                k,
                success: false,
                codeword: None,
                error: None,
                message: None,
                error_count: None,
                reason: Some(*reason),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundtripSummary {
    pub q: u64,
    pub k: usize,
    pub t: usize,
    pub t_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Decodes returning the original message with `t̂ = t`.
    pub recovered: usize,
    /// Decodes that failed cleanly or returned a codeword within `t_max`.
    pub honest: usize,
    pub failures: usize,
    /// Index of the first trial that was not recovered.
    pub first_miss: Option<usize>,
}

impl RoundtripSummary {
    /// Within the radius every trial must be recovered; beyond it every
    /// outcome must be honest.
    pub fn passed(&self) -> bool {
        if self.t <= self.t_max {
            self.recovered == self.trials
        } else {
            self.honest == self.trials
        }
    }
}

/// Success holds only valid codewords within distance `t_max` of `r`.
pub fn outcome_is_honest(r: &[u64], outcome: &DecodeOutcome, params: &CodeParams) -> bool {
    match outcome {
        DecodeOutcome::Failure { .. } => true,
        DecodeOutcome::Success { codeword, error, error_count, .. } => {
            let f = params.field();
            let sums_up = r.len() == codeword.len()
                && r.iter()
                    .zip(codeword.0.iter().zip(&error.0))
                    .all(|(&ri, (&ci, &ei))| f.add(ci, ei) == ri);
            let dist = hamming_distance(r, &codeword.0).unwrap_or(usize::MAX);
            sums_up
                && is_codeword(&codeword.0, params).unwrap_or(false)
                && dist == *error_count
                && error.weight() == *error_count
                && dist <= params.t_max()
        }
    }
}

pub fn run_roundtrip(
    params: &CodeParams,
    t: usize,
    trials: usize,
    seed: u64,
    options: DecodeOptions,
) -> Result<RoundtripSummary, DecodeError> {
    let mut s = RoundtripSummary {
        q: params.q(),
        k: params.k(),
        t,
        t_max: params.t_max(),
        trials,
        seed,
        recovered: 0,
        honest: 0,
        failures: 0,
        first_miss: None,
    };
    for i in 0..trials {
        let trial = make_trial(params, t, seed, i as u64)?;
        let out = decode_with(&trial.received, params, options)?;
        if !out.is_success() {
            s.failures += 1;
        }
        if outcome_is_honest(&trial.received, &out, params) {
            s.honest += 1;
        }
        let ok = matches!(&out, DecodeOutcome::Success { message, error_count, .. }
            if *message == trial.message && *error_count == t);
        if ok {
            s.recovered += 1;
        } else if s.first_miss.is_none() {
            s.first_miss = Some(i);
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// benchmarks

pub const CSV_HEADER: &str = "q,n,k,t,trials,median_seconds,engine,solver";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub trials: usize,
    pub median_seconds: f64,
    pub engine: String,
    pub solver: String,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.9},{},{}",
            self.q, self.n, self.k, self.t, self.trials, self.median_seconds, self.engine, self.solver
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub q: u64,
    pub k: usize,
    /// Defaults to `t_max`.
    pub t: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub engine: EngineChoice,
    pub smoothness_bound: u64,
    pub solver: SolverKind,
    pub recurrence: RecurrenceEngine,
}

impl BenchConfig {
    pub fn new(q: u64, k: usize) -> Self {
        BenchConfig {
            q,
            k,
            t: None,
            trials: 20,
            seed: 1,
            engine: EngineChoice::Auto,
            smoothness_bound: crate::transform::DEFAULT_SMOOTHNESS_BOUND,
            solver: SolverKind::Structured,
            recurrence: RecurrenceEngine::Series,
        }
    }
}

#[derive(Debug)]
pub enum BenchError {
    Decode(DecodeError),
    /// A benchmark decode did not return the injected message.
    Miscorrection { trial: usize },
}

impl std::fmt::Display for BenchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BenchError::Decode(e) => e.fmt(f),
            BenchError::Miscorrection { trial } => write!(f, "trial {trial} did not decode correctly"),
        }
    }
}

impl std::error::Error for BenchError {}

impl From<DecodeError> for BenchError {
    fn from(e: DecodeError) -> Self {
        BenchError::Decode(e)
    }
}

impl From<CodeError> for BenchError {
    fn from(e: CodeError) -> Self {
        BenchError::Decode(e.into())
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

/// Median decode time at one parameter point. Domain construction and input
/// generation are outside the timed region; each decode is checked.
pub fn bench_point(cfg: &BenchConfig) -> Result<BenchRecord, BenchError> {
    let options = DomainOptions { engine: cfg.engine, smoothness_bound: cfg.smoothness_bound };
    let params = CodeParams::with_options(cfg.q, cfg.k, options)?;
    let t = cfg.t.unwrap_or(params.t_max());
    let trials = cfg.trials.max(1);
    let decode_options = DecodeOptions { solver: cfg.solver, recurrence: cfg.recurrence };
    let inputs: Vec<Trial> =
        (0..trials).map(|i| make_trial(&params, t, cfg.seed, i as u64)).collect::<Result<_, _>>()?;
    // build the lazily initialised polynomial ring outside the timed region
    let _ = params.domain().ring();
    let mut times = Vec::with_capacity(trials);
    for (i, trial) in inputs.iter().enumerate() {
        let start = Instant::now();
        let out = decode_with(&trial.received, &params, decode_options)?;
        times.push(start.elapsed().as_secs_f64());
        if t <= params.t_max() && out.message() != Some(&trial.message) {
            return Err(BenchError::Miscorrection { trial: i });
        }
    }
    Ok(BenchRecord {
        q: cfg.q,
        n: params.n(),
        k: params.k(),
        t,
        trials,
        median_seconds: median(&mut times),
        engine: params.domain().engine().to_string(),
        solver: cfg.solver.to_string(),
    })
}

/// Least-squares slope of `log(seconds)` against `log(n)`; `None` for fewer
/// than two distinct sizes.
pub fn loglog_slope(records: &[BenchRecord]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        records.iter().map(|r| ((r.n as f64).ln(), r.median_seconds.max(1e-12).ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

// ---------------------------------------------------------------------------
// self-test

/// The worked (10, 4) example over GF(11).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenVectors {
    pub q: u64,
    pub k: usize,
    pub alpha: u64,
    pub received: Vec<u64>,
    pub beta: Vec<u64>,
    pub known_high: Vec<u64>,
    pub t_hat: usize,
    pub eta: Vec<u64>,
    /// `g_0, …, g_{k-1}`.
    pub recovered_low: Vec<u64>,
    pub error: Vec<u64>,
    pub codeword: Vec<u64>,
}

pub fn example_golden() -> GoldenVectors {
    GoldenVectors {
        q: 11,
        k: 4,
        alpha: 2,
        received: vec![8, 0, 4, 3, 6, 10, 1, 8, 4, 3],
        beta: vec![8, 0, 9, 0, 2, 1, 8, 7, 4, 2],
        known_high: vec![2, 1, 8, 7, 4, 2],
        t_hat: 3,
        eta: vec![6, 1, 3],
        recovered_low: vec![1, 8, 7, 4],
        error: vec![0, 0, 0, 0, 5, 0, 4, 0, 1, 0],
        codeword: vec![8, 0, 4, 3, 1, 10, 8, 8, 3, 3],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub passed: bool,
    pub cases: usize,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub golden: CheckResult,
    pub exhaustive: CheckResult,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.golden.passed && self.exhaustive.passed
    }
}

/// Decodes `g.received` and compares every intermediate value.
pub fn check_golden(g: &GoldenVectors) -> CheckResult {
    let mismatch = |what: &str| CheckResult { passed: false, cases: 1, detail: Some(what.to_string()) };
    let Ok(params) = CodeParams::new(g.q, g.k) else {
        return mismatch("parameters");
    };
    if params.alpha() != g.alpha {
        return mismatch("alpha");
    }
    let Ok((out, st)) = decode_traced(&g.received, &params, DecodeOptions::default()) else {
        return mismatch("decode error");
    };
    let checks: [(&str, bool); 6] = [
        ("beta", st.beta == g.beta),
        ("known_high", st.known_high == g.known_high),
        ("t_hat", st.t_hat == g.t_hat),
        ("eta", st.eta == g.eta),
        ("recovered_low", st.recovered_low.as_deref() == Some(&g.recovered_low[..])),
        (
            "outcome",
            matches!(&out, DecodeOutcome::Success { codeword, error, error_count, .. }
                if codeword.0 == g.codeword && error.0 == g.error && *error_count == g.t_hat),
        ),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((what, _)) => mismatch(what),
        None => CheckResult { passed: true, cases: 1, detail: None },
    }
}

/// All `q^k` messages times every error pattern of weight ≤ `t_max`, decoder
/// against the brute-force nearest codeword. Small codes only.
pub fn check_exhaustive(q: u64, k: usize) -> Result<CheckResult, DecodeError> {
    let params = CodeParams::new(q, k)?;
    let n = params.n();
    let mut patterns: Vec<Vec<u64>> = vec![vec![0; n]];
    let mut frontier = patterns.clone();
    for _ in 0..params.t_max() {
        let mut next = Vec::new();
        for p in &frontier {
            let last = p.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
            for pos in last..n {
                for v in 1..q {
                    let mut e = p.clone();
                    e[pos] = v;
                    next.push(e);
                }
            }
        }
        patterns.extend(next.iter().cloned());
        frontier = next;
    }
    let mut cases = 0;
    let mut digits = vec![0u64; k];
    let total = q.pow(k as u32);
    for _ in 0..total {
        let m = Message(digits.clone());
        let c = encode(&m, &params)?;
        for e in &patterns {
            let r = add_error(&c, &ErrorVector(e.clone()), &params)?;
            let fast = decode_with(&r.0, &params, DecodeOptions::default())?;
            let slow = reference_decode_bruteforce(&r.0, &params)?;
            cases += 1;
            if fast != slow || fast.message() != Some(&m) {
                return Ok(CheckResult {
                    passed: false,
                    cases,
                    detail: Some(format!("message {:?}, error {:?}", m.0, e)),
                });
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    Ok(CheckResult { passed: true, cases, detail: None })
}

pub fn run_selftest(golden: &GoldenVectors) -> SelftestReport {
    let exhaustive = check_exhaustive(5, 2).unwrap_or_else(|e| CheckResult {
        passed: false,
        cases: 0,
        detail: Some(e.to_string()),
    });
    SelftestReport { golden: check_golden(golden), exhaustive }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selftest_passes_and_detects_tampering() {
        let rep = run_selftest(&example_golden());
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.exhaustive.cases, 25 * 17);
        let mut bad = example_golden();
        bad.eta[0] = 7;
        let rep = run_selftest(&bad);
        assert!(!rep.passed());
        assert_eq!(rep.golden.detail.as_deref(), Some("eta"));
    }

    #[test]
    fn slope_of_exact_power_law() {
        let rec = |n: usize, s: f64| BenchRecord {
            q: 0,
            n,
            k: 0,
            t: 0,
            trials: 1,
            median_seconds: s,
            engine: String::new(),
            solver: String::new(),
        };
        let recs = [rec(100, 1.0), rec(1000, 100.0), rec(10000, 10000.0)];
        assert!((loglog_slope(&recs).unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(loglog_slope(&recs[..1]), None);
    }

    #[test]
    fn median_of_even_and_odd() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn roundtrip_and_beyond_radius() {
        let p = CodeParams::new(11, 4).unwrap();
        let s = run_roundtrip(&p, 3, 200, 5, DecodeOptions::default()).unwrap();
        assert!(s.passed() && s.recovered == 200, "{s:?}");
        let s = run_roundtrip(&p, 4, 200, 5, DecodeOptions::default()).unwrap();
        assert!(s.passed() && s.honest == 200, "{s:?}");
    }

    #[test]
    fn trials_are_deterministic() {
        let p = CodeParams::new(257, 100).unwrap();
        assert_eq!(make_trial(&p, 10, 3, 7).unwrap(), make_trial(&p, 10, 3, 7).unwrap());
        assert_ne!(make_trial(&p, 10, 3, 7).unwrap(), make_trial(&p, 10, 3, 8).unwrap());
    }
}
