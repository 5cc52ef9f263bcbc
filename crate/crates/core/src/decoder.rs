//! Interpolation-based decoding.
//!
//! With `r = c + e`, the coefficient vector `β = idft(r)` splits as
//! `β = f̃ + g̃` where `f̃` is the padded message and `g̃ = idft(e)`. Since
//! `f̃` vanishes above `k`, the top `n - k` coefficients of `g̃` are known.
//! They satisfy a linear recurrence of order `t = weight(e)`:
//!
//! ```text
//! g_i = η_1·g_{i+1} + … + η_t·g_{i+t}        (indices mod n)
//! ```
//!
//! The decoder:
//!
//! 1. estimates `t̂` from the known coefficients,
//! 2. solves the `t̂ × t̂` Toeplitz system for `η`,
//! 3. runs the recurrence downwards to recover `g_0, …, g_{k-1}`,
//! 4. evaluates `e = dft(g̃)` and returns `c = r - e`.
//!
//! `t̂` is the largest `τ ≤ t_max` whose `τ × τ` top-right block of the
//! circulant of `g̃` is nonsingular. For `t ≤ t_max` errors the `t × t` block
//! is nonsingular while every larger block is a minor of the rank-`t`
//! circulant, so `t̂ = t`. The blocks are Hankel in the known coefficients,
//! so one half-GCD on their generating polynomial yields `t̂` as the degree of
//! a Bezout cofactor ([`estimate_error_count_by_scan`] is the literal
//! definition, kept as a test reference).
//!
//! Every result is checked before it is returned: the recurrence must hold
//! on all known rows it did not use, `e` must have weight exactly `t̂`, and
//! `c` must be a codeword. Beyond `t_max` errors the decoder either fails
//! with a typed reason or returns a codeword within distance `t_max`, which
//! is then indistinguishable from a correct decode.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{encode, CodeError, CodeParams, Codeword, ErrorVector, Message};
use crate::field::PrimeField;
use crate::linalg;
use crate::poly::{deg, trim, PolyRing};
use crate::toeplitz::{self, SolverKind, ToeplitzMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeError {
    Code(CodeError),
    /// The connection-vector solve needs at least one error.
    ZeroErrorCount,
    /// `t̂` outside `1..=t_max`, or an `η` of the wrong length.
    InvalidErrorCount { t_hat: usize, t_max: usize },
    /// The brute-force reference refuses more than 10^6 candidates.
    ParameterSpaceTooLarge { q: u64, k: usize },
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeError::Code(e) => e.fmt(f),
            DecodeError::ZeroErrorCount => f.write_str("error count must be at least 1"),
            DecodeError::InvalidErrorCount { t_hat, t_max } => {
                write!(f, "error count {t_hat} outside 1..={t_max}")
            }
            DecodeError::ParameterSpaceTooLarge { q, k } => {
                write!(f, "q^k = {q}^{k} exceeds the brute-force limit of {BRUTEFORCE_LIMIT}")
            }
        }
    }
}

impl std::error::Error for DecodeError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            DecodeError::Code(e) => Some(e),
            _ => None,
        }
    }
}

impl From<CodeError> for DecodeError {
    fn from(e: CodeError) -> Self {
        DecodeError::Code(e)
    }
}

pub const BRUTEFORCE_LIMIT: u64 = 1_000_000;

/// How the unknown low coefficients are recovered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecurrenceEngine {
    /// Direct back-substitution, `O(k·t̂)`.
    #[default]
    Sequential,
    /// Truncated power-series division, quasi-linear. Same output.
    Series,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecodeOptions {
    pub solver: SolverKind,
    pub recurrence: RecurrenceEngine,
}

/// Intermediate values of one decode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterpolationState {
    pub beta: Vec<u64>,
    /// `g_k, …, g_{n-1}`, equal to `beta[k..]`.
    pub known_high: Vec<u64>,
    /// `g_0, …, g_{k-1}` once the recurrence ran.
    pub recovered_low: Option<Vec<u64>>,
    /// `η_1, …, η_{t̂}`; empty when `t̂ = 0` or the solve failed.
    pub eta: Vec<u64>,
    pub t_hat: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FailureReason {
    TooManyErrors,
    InconsistentRecurrence,
    NotACodeword,
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailureReason::TooManyErrors => "TooManyErrors",
            FailureReason::InconsistentRecurrence => "InconsistentRecurrence",
            FailureReason::NotACodeword => "NotACodeword",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecodeOutcome {
    Success {
        codeword: Codeword,
        error: ErrorVector,
        message: Message,
        error_count: usize,
    },
    Failure {
        reason: FailureReason,
    },
}

impl DecodeOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, DecodeOutcome::Success { .. })
    }

    pub fn message(&self) -> Option<&Message> {
        match self {
            DecodeOutcome::Success { message, .. } => Some(message),
            DecodeOutcome::Failure { .. } => None,
        }
    }

    pub fn codeword(&self) -> Option<&Codeword> {
        match self {
            DecodeOutcome::Success { codeword, .. } => Some(codeword),
            DecodeOutcome::Failure { .. } => None,
        }
    }

    pub fn failure_reason(&self) -> Option<FailureReason> {
        match self {
            DecodeOutcome::Failure { reason } => Some(*reason),
            DecodeOutcome::Success { .. } => None,
        }
    }
}

pub fn decode(r: &[u64], params: &CodeParams) -> Result<DecodeOutcome, DecodeError> {
    decode_with(r, params, DecodeOptions::default())
}

pub fn decode_with(
    r: &[u64],
    params: &CodeParams,
    options: DecodeOptions,
) -> Result<DecodeOutcome, DecodeError> {
    decode_traced(r, params, options).map(|(outcome, _)| outcome)
}

/// [`decode_with`] that also returns the intermediate state.
pub fn decode_traced(
    r: &[u64],
    params: &CodeParams,
    options: DecodeOptions,
) -> Result<(DecodeOutcome, InterpolationState), DecodeError> {
    params.check_word(r)?;
    let (n, k) = (params.n(), params.k());
    let f = params.field();
    let domain = params.domain();
    let ring = domain.ring();

    let beta = domain.idft(r).map_err(CodeError::from)?;
    let known_high = beta[k..].to_vec();
    let t_hat = error_count_with(ring, &known_high, params);
    let mut state =
        InterpolationState { beta, known_high, recovered_low: None, eta: Vec::new(), t_hat };
    let fail = |reason, state| Ok((DecodeOutcome::Failure { reason }, state));

    if t_hat == 0 {
        if state.known_high.iter().any(|&x| x != 0) {
            return fail(FailureReason::TooManyErrors, state);
        }
        let message = Message(state.beta[..k].to_vec());
        let outcome = DecodeOutcome::Success {
            codeword: Codeword(r.to_vec()),
            error: ErrorVector(vec![0; n]),
            message,
            error_count: 0,
        };
        return Ok((outcome, state));
    }
    assert!(n - 2 * t_hat >= k, "error count above the decoding radius");

    let (t, b) = build_step2_system(&state.known_high, t_hat, params)?;
    let solved = match options.solver {
        SolverKind::Dense => toeplitz::solve_dense(&t, &b),
        SolverKind::Structured => toeplitz::solve_structured_with(ring, &t, &b),
    };
    let Ok(solution) = solved else {
        return fail(FailureReason::TooManyErrors, state);
    };
    state.eta = solution.x;

    let low = match options.recurrence {
        RecurrenceEngine::Sequential => recover_sequential(f, &state.eta, &state.known_high, k),
        RecurrenceEngine::Series => recover_series(ring, &state.eta, &state.known_high, k),
    };
    let mut g = low.clone();
    g.extend_from_slice(&state.known_high);
    state.recovered_low = Some(low);
    if !consistency_with(ring, &g, &state.eta, params) {
        return fail(FailureReason::InconsistentRecurrence, state);
    }

    let e = domain.dft(&g).map_err(CodeError::from)?;
    let error = ErrorVector(e);
    if error.weight() != t_hat {
        return fail(FailureReason::TooManyErrors, state);
    }
    let c: Vec<u64> = r.iter().zip(&error.0).map(|(&x, &y)| f.sub(x, y)).collect();
    let coeffs = domain.idft(&c).map_err(CodeError::from)?;
    if coeffs[k..].iter().any(|&x| x != 0) {
        return fail(FailureReason::NotACodeword, state);
    }
    let outcome = DecodeOutcome::Success {
        codeword: Codeword(c),
        error,
        message: Message(coeffs[..k].to_vec()),
        error_count: t_hat,
    };
    Ok((outcome, state))
}

fn check_known(known_high: &[u64], params: &CodeParams) -> Result<(), DecodeError> {
    let expected = params.n() - params.k();
    if known_high.len() != expected {
        return Err(CodeError::LengthMismatch { expected, got: known_high.len() }.into());
    }
    Ok(())
}

/// Estimated number of errors from `g_k, …, g_{n-1}`, in `[0, t_max]`.
pub fn estimate_error_count(known_high: &[u64], params: &CodeParams) -> Result<usize, DecodeError> {
    check_known(known_high, params)?;
    Ok(error_count_with(params.domain().ring(), known_high, params))
}

fn error_count_with(ring: &PolyRing, known_high: &[u64], params: &CodeParams) -> usize {
    let tm = params.t_max();
    if tm == 0 {
        return 0;
    }
    // s(x) = Σ_{i=n-2T}^{n-1} g_i x^{i-(n-2T)}; its remainder sequence against
    // x^{2T} tracks the ranks of the nested blocks
    let start = known_high.len() - 2 * tm;
    let mut s = known_high[start..].to_vec();
    trim(&mut s);
    if s.is_empty() {
        return 0;
    }
    let mut top = vec![0u64; 2 * tm + 1];
    top[2 * tm] = 1;
    let h = ring.hgcd(&top, &s);
    deg(&h.mat[1][1]).max(0) as usize
}

/// The literal definition: scan `τ = t_max, …, 1` and return the first size
/// whose top-right block is nonsingular by elimination. `O(t_max^4)`.
pub fn estimate_error_count_by_scan(
    known_high: &[u64],
    params: &CodeParams,
) -> Result<usize, DecodeError> {
    check_known(known_high, params)?;
    let f = params.field();
    for tau in (1..=params.t_max()).rev() {
        let (t, _) = build_step2_system(known_high, tau, params)?;
        if linalg::rank(f, &t.to_dense()) == tau {
            return Ok(tau);
        }
    }
    Ok(0)
}

/// `T·η = b` with row `i` of `T` equal to `(g_{n-t̂-i}, …, g_{n-1-i})` and
/// `b_i = g_{n-t̂-1-i}`.
pub fn build_step2_system(
    known_high: &[u64],
    t_hat: usize,
    params: &CodeParams,
) -> Result<(ToeplitzMatrix, Vec<u64>), DecodeError> {
    check_known(known_high, params)?;
    if t_hat == 0 {
        return Err(DecodeError::ZeroErrorCount);
    }
    if t_hat > params.t_max() {
        return Err(DecodeError::InvalidErrorCount { t_hat, t_max: params.t_max() });
    }
    let (n, k) = (params.n(), params.k());
    let g = |i: usize| known_high[i - k];
    // diagonals[d] = g_{n-1-d}
    let diagonals: Vec<u64> = (0..2 * t_hat - 1).map(|d| g(n - 1 - d)).collect();
    let b: Vec<u64> = (0..t_hat).map(|i| g(n - t_hat - 1 - i)).collect();
    let t = ToeplitzMatrix::new(params.field(), t_hat, t_hat, diagonals)
        .expect("diagonal count matches");
    Ok((t, b))
}

/// `g_{k-1}, …, g_0` from the recurrence, returned as `g_0, …, g_{k-1}`.
pub fn recover_low_coefficients(
    eta: &[u64],
    known_high: &[u64],
    params: &CodeParams,
    engine: RecurrenceEngine,
) -> Result<Vec<u64>, DecodeError> {
    check_known(known_high, params)?;
    if eta.is_empty() || eta.len() > params.t_max() {
        return Err(DecodeError::InvalidErrorCount { t_hat: eta.len(), t_max: params.t_max() });
    }
    let k = params.k();
    Ok(match engine {
        RecurrenceEngine::Sequential => recover_sequential(params.field(), eta, known_high, k),
        RecurrenceEngine::Series => recover_series(params.domain().ring(), eta, known_high, k),
    })
}

fn recover_sequential(f: PrimeField, eta: &[u64], known_high: &[u64], k: usize) -> Vec<u64> {
    let mut g = vec![0u64; k];
    g.extend_from_slice(known_high);
    for i in (0..k).rev() {
        let mut acc = 0u64;
        for (j, &e) in eta.iter().enumerate() {
            acc = f.mul_add(e, g[i + j + 1], acc);
        }
        g[i] = acc;
    }
    g.truncate(k);
    g
}

/// Writing `u_s = g_{k-1-s}`, the recurrence reads `U(x)·Λ(x) = C(x)` with
/// `Λ = 1 - Σ η_j x^j` and `c_s = Σ_m η_{s+1+m}·g_{k+m}` for `s < t̂`, so
/// `U = C / Λ mod x^k`.
fn recover_series(ring: &PolyRing, eta: &[u64], known_high: &[u64], k: usize) -> Vec<u64> {
    let f = ring.field();
    let t = eta.len();
    let rev_eta: Vec<u64> = eta.iter().rev().copied().collect();
    let prod = ring.mul(&rev_eta, &known_high[..t]);
    let c: Vec<u64> = (0..t.min(k)).map(|s| prod.get(t - 1 - s).copied().unwrap_or(0)).collect();
    let mut lambda = vec![1u64];
    lambda.extend(eta.iter().map(|&e| f.neg(e)));
    let inv = ring.series_inverse(&lambda, k);
    let mut u = ring.mul_trunc(&c, &inv, k);
    u.resize(k, 0);
    u.reverse();
    u
}

/// True iff `g_i = Σ_j η_j·g_{i+j}` for every `i ∈ [k, n - 2t̂ - 1]`.
pub fn verify_recurrence_consistency(
    g: &[u64],
    eta: &[u64],
    t_hat: usize,
    params: &CodeParams,
) -> Result<bool, DecodeError> {
    params.check_word(g)?;
    if eta.len() != t_hat {
        return Err(DecodeError::InvalidErrorCount { t_hat: eta.len(), t_max: params.t_max() });
    }
    Ok(consistency_with(params.domain().ring(), g, eta, params))
}

fn consistency_with(ring: &PolyRing, g: &[u64], eta: &[u64], params: &CodeParams) -> bool {
    let f = params.field();
    let (n, k, t) = (params.n(), params.k(), eta.len());
    if n < 2 * t + 1 || n - 2 * t - 1 < k {
        return true;
    }
    let rows = n - 2 * t - k;
    if rows.saturating_mul(t) <= 1 << 16 {
        return (k..n - 2 * t).all(|i| {
            let rhs = eta.iter().enumerate().fold(0, |acc, (j, &e)| f.mul_add(e, g[i + j + 1], acc));
            rhs == g[i]
        });
    }
    // residual_i = Σ_j λ_j g_{i+j} with λ = (1, -η); against reversed g it is
    // coefficient n-1-i of the product
    let mut lambda = vec![1u64];
    lambda.extend(eta.iter().map(|&e| f.neg(e)));
    let h: Vec<u64> = g[k..].iter().rev().copied().collect();
    let prod = ring.mul(&lambda, &h);
    (2 * t..n - k).all(|s| prod.get(s).copied().unwrap_or(0) == 0)
}

/// Nearest-codeword search over all `q^k` messages.
pub fn reference_decode_bruteforce(r: &[u64], params: &CodeParams) -> Result<DecodeOutcome, DecodeError> {
    params.check_word(r)?;
    let (q, k) = (params.q(), params.k());
    let total = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&v| v <= BRUTEFORCE_LIMIT));
    let Some(total) = total else {
        return Err(DecodeError::ParameterSpaceTooLarge { q, k });
    };
    let mut best: Option<(usize, Message, Codeword)> = None;
    let mut ties = 0usize;
    let mut digits = vec![0u64; k];
    for _ in 0..total {
        let m = Message(digits.clone());
        let c = encode(&m, params)?;
        let d = r.iter().zip(&c.0).filter(|(a, b)| a != b).count();
        match &best {
            Some((bd, _, _)) if d > *bd => {}
            Some((bd, _, _)) if d == *bd => ties += 1,
            _ => {
                best = Some((d, m, c));
                ties = 0;
            }
        }
        for digit in digits.iter_mut() {
            *digit += 1;
            if *digit < q {
                break;
            }
            *digit = 0;
        }
    }
    let (d, message, codeword) = best.expect("at least one message");
    if d > params.t_max() || ties > 0 {
        return Ok(DecodeOutcome::Failure { reason: FailureReason::TooManyErrors });
    }
    let f = params.field();
    let error = ErrorVector(r.iter().zip(&codeword.0).map(|(&x, &y)| f.sub(x, y)).collect());
    Ok(DecodeOutcome::Success { codeword, error, message, error_count: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{corrupt, is_codeword, random_message};

    const EX_R: [u64; 10] = [8, 0, 4, 3, 6, 10, 1, 8, 4, 3];

    fn ex() -> CodeParams {
        CodeParams::new(11, 4).unwrap()
    }

    #[test]
    fn worked_example_trace() {
        let p = ex();
        let (out, st) = decode_traced(&EX_R, &p, DecodeOptions::default()).unwrap();
        assert_eq!(st.beta, vec![8, 0, 9, 0, 2, 1, 8, 7, 4, 2]);
        assert_eq!(st.known_high, vec![2, 1, 8, 7, 4, 2]);
        assert_eq!(st.t_hat, 3);
        assert_eq!(st.eta, vec![6, 1, 3]);
        assert_eq!(st.recovered_low, Some(vec![1, 8, 7, 4]));
        match out {
            DecodeOutcome::Success { codeword, error, error_count, .. } => {
                assert_eq!(codeword.0, vec![8, 0, 4, 3, 1, 10, 8, 8, 3, 3]);
                assert_eq!(error.0, vec![0, 0, 0, 0, 5, 0, 4, 0, 1, 0]);
                assert_eq!(error_count, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn step_functions_on_worked_example() {
        let p = ex();
        let kh = [2, 1, 8, 7, 4, 2];
        assert_eq!(estimate_error_count(&kh, &p).unwrap(), 3);
        assert_eq!(estimate_error_count_by_scan(&kh, &p).unwrap(), 3);
        assert_eq!(estimate_error_count(&[0; 6], &p).unwrap(), 0);
        let (t, b) = build_step2_system(&kh, 3, &p).unwrap();
        assert_eq!(t.to_dense(), vec![vec![7, 4, 2], vec![8, 7, 4], vec![1, 8, 7]]);
        assert_eq!(b, vec![8, 1, 2]);
        let (t1, b1) = build_step2_system(&kh, 1, &p).unwrap();
        assert_eq!((t1.to_dense(), b1), (vec![vec![2]], vec![4]));
        assert_eq!(build_step2_system(&kh, 0, &p), Err(DecodeError::ZeroErrorCount));
        for engine in [RecurrenceEngine::Sequential, RecurrenceEngine::Series] {
            assert_eq!(recover_low_coefficients(&[6, 1, 3], &kh, &p, engine).unwrap(), vec![1, 8, 7, 4]);
            assert_eq!(recover_low_coefficients(&[5, 9], &[0; 6], &p, engine).unwrap(), vec![0; 4]);
        }
        let g = [1, 8, 7, 4, 2, 1, 8, 7, 4, 2];
        assert!(verify_recurrence_consistency(&g, &[6, 1, 3], 3, &p).unwrap());
    }

    #[test]
    fn perturbed_coefficient_breaks_consistency() {
        // k = 40, t = 20: rows 40..=215 are known on both sides and unused by the solve
        let p = CodeParams::new(257, 40).unwrap();
        let mut hits = 0;
        for seed in 0..50 {
            let c = encode(&random_message(&p, seed), &p).unwrap();
            let (r, _) = corrupt(&c, 20, seed, &p).unwrap();
            let (_, st) = decode_traced(&r.0, &p, DecodeOptions::default()).unwrap();
            let mut g = st.recovered_low.clone().unwrap();
            g.extend_from_slice(&st.known_high);
            assert!(verify_recurrence_consistency(&g, &st.eta, 20, &p).unwrap());
            let i = 40 + (seed as usize % 100);
            g[i] = p.field().add(g[i], 1);
            if !verify_recurrence_consistency(&g, &st.eta, 20, &p).unwrap() {
                hits += 1;
            }
        }
        assert_eq!(hits, 50);
    }

    #[test]
    fn vacuous_consistency_at_maximal_error_count() {
        let p = CodeParams::new(11, 4).unwrap();
        // n - 2·3 - 1 = 3 < k
        assert!(verify_recurrence_consistency(&[1; 10], &[1, 2, 3], 3, &p).unwrap());
    }

    #[test]
    fn small_example_and_codeword_fast_path() {
        let p = CodeParams::new(5, 2).unwrap();
        match decode(&[4, 0, 4, 2], &p).unwrap() {
            DecodeOutcome::Success { codeword, message, error_count, .. } => {
                assert_eq!(codeword.0, vec![3, 0, 4, 2]);
                assert_eq!(message.0, vec![1, 2]);
                assert_eq!(error_count, 1);
            }
            other => panic!("{other:?}"),
        }
        let out = decode(&[3, 0, 4, 2], &p).unwrap();
        assert_eq!(out.message().unwrap().0, vec![1, 2]);
        assert!(matches!(out, DecodeOutcome::Success { error_count: 0, .. }));
    }

    #[test]
    fn length_is_checked() {
        assert!(matches!(
            decode(&[1, 2, 3], &ex()),
            Err(DecodeError::Code(CodeError::LengthMismatch { expected: 10, got: 3 }))
        ));
    }

    #[test]
    fn engines_and_solvers_agree() {
        for (q, k) in [(257u64, 32usize), (257, 200), (47, 20), (7681, 3000)] {
            let p = CodeParams::new(q, k).unwrap();
            for seed in 0..10u64 {
                let c = encode(&random_message(&p, seed), &p).unwrap();
                let t = (seed as usize * 7) % (p.t_max() + 1);
                let (r, e) = corrupt(&c, t, seed, &p).unwrap();
                let mut outs = Vec::new();
                for solver in [SolverKind::Structured, SolverKind::Dense] {
                    for recurrence in [RecurrenceEngine::Sequential, RecurrenceEngine::Series] {
                        if solver == SolverKind::Dense && t > 300 {
                            continue;
                        }
                        outs.push(decode_with(&r.0, &p, DecodeOptions { solver, recurrence }).unwrap());
                    }
                }
                for o in &outs {
                    assert_eq!(o, &outs[0]);
                }
                match &outs[0] {
                    DecodeOutcome::Success { codeword, error, .. } => {
                        assert_eq!(codeword, &c);
                        assert_eq!(error, &e);
                        assert!(is_codeword(&codeword.0, &p).unwrap());
                    }
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn error_count_matches_scan_on_arbitrary_input() {
        let mut rng = crate::rng::SplitMix64::new(8);
        for (q, k) in [(5u64, 1usize), (7, 2), (11, 3), (13, 4), (17, 3)] {
            let p = CodeParams::new(q, k).unwrap();
            for _ in 0..400 {
                let mut kh: Vec<u64> = (0..p.n() - k).map(|_| rng.below(q)).collect();
                // sparse inputs exercise degenerate degree drops
                if rng.below(2) == 0 {
                    for x in kh.iter_mut() {
                        if rng.below(3) != 0 {
                            *x = 0;
                        }
                    }
                }
                assert_eq!(
                    estimate_error_count(&kh, &p).unwrap(),
                    estimate_error_count_by_scan(&kh, &p).unwrap(),
                    "q={q} k={k} kh={kh:?}"
                );
            }
        }
    }

    #[test]
    fn bruteforce_reference() {
        let p = ex();
        let out = reference_decode_bruteforce(&EX_R, &p).unwrap();
        assert_eq!(out.codeword().unwrap().0, vec![8, 0, 4, 3, 1, 10, 8, 8, 3, 3]);
        let c = [8, 0, 4, 3, 1, 10, 8, 8, 3, 3];
        assert!(matches!(
            reference_decode_bruteforce(&c, &p).unwrap(),
            DecodeOutcome::Success { error_count: 0, .. }
        ));
        let big = CodeParams::new(257, 3).unwrap();
        assert!(matches!(
            reference_decode_bruteforce(&vec![0; 256], &big),
            Err(DecodeError::ParameterSpaceTooLarge { q: 257, k: 3 })
        ));
    }
}
