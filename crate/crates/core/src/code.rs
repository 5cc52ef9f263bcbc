//! Reed-Solomon code parameters, encoding, membership and the error channel.
//!
//! A code over GF(q) has length `n = q - 1` and dimension `k`. A message
//! `(f_0, …, f_{k-1})` is padded with `n - k` zeros and transformed, so the
//! codeword is the evaluation of `f(x)` at every power of `α`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::{FieldError, PrimeField};
use crate::rng::SplitMix64;
use crate::transform::{DomainOptions, EvaluationDomain, TransformError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    Field(FieldError),
    Transform(TransformError),
    /// `k` must satisfy `1 ≤ k < n`.
    InvalidDimension { k: usize, n: usize },
    LengthMismatch { expected: usize, got: usize },
    SymbolOutOfRange { index: usize, value: u64, modulus: u64 },
    /// More error positions requested than the word has.
    TooManyErrors { t: usize, n: usize },
}

impl fmt::Display for CodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeError::Field(e) => e.fmt(f),
            CodeError::Transform(e) => e.fmt(f),
            CodeError::InvalidDimension { k, n } => {
                write!(f, "invalid dimension k={k}: need 1 <= k < n = {n}")
            }
            CodeError::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            CodeError::SymbolOutOfRange { index, value, modulus } => {
                write!(f, "symbol {value} at position {index} is not a residue mod {modulus}")
            }
            CodeError::TooManyErrors { t, n } => {
                write!(f, "cannot place {t} errors in a word of length {n}")
            }
        }
    }
}

impl std::error::Error for CodeError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CodeError::Field(e) => Some(e),
            CodeError::Transform(e) => Some(e),
            _ => None,
        }
    }
}

impl From<FieldError> for CodeError {
    fn from(e: FieldError) -> Self {
        CodeError::Field(e)
    }
}

impl From<TransformError> for CodeError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::LengthMismatch { expected, got } => {
                CodeError::LengthMismatch { expected, got }
            }
            TransformError::SymbolOutOfRange { index, value, modulus } => {
                CodeError::SymbolOutOfRange { index, value, modulus }
            }
            other => CodeError::Transform(other),
        }
    }
}

/// An `(n, k)` code over GF(q) with `n = q - 1`.
#[derive(Debug, Clone)]
pub struct CodeParams {
    field: PrimeField,
    n: usize,
    k: usize,
    t_max: usize,
    domain: EvaluationDomain,
}

impl CodeParams {
    pub fn new(q: u64, k: usize) -> Result<Self, CodeError> {
        Self::with_options(q, k, DomainOptions::default())
    }

    pub fn with_options(q: u64, k: usize, options: DomainOptions) -> Result<Self, CodeError> {
        let field = PrimeField::new(q)?;
        let domain = EvaluationDomain::with_options(field, options)?;
        Self::from_domain(domain, k)
    }

    /// Shares an existing domain (and its twiddles) between several codes.
    pub fn from_domain(domain: EvaluationDomain, k: usize) -> Result<Self, CodeError> {
        let n = domain.n();
        if k == 0 || k >= n {
            return Err(CodeError::InvalidDimension { k, n });
        }
        Ok(CodeParams { field: domain.field(), n, k, t_max: (n - k) / 2, domain })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Unique decoding radius `⌊(n - k) / 2⌋`.
    pub fn t_max(&self) -> usize {
        self.t_max
    }

    pub fn domain(&self) -> &EvaluationDomain {
        &self.domain
    }

    pub fn alpha(&self) -> u64 {
        self.domain.alpha().value()
    }

    pub(crate) fn check_word(&self, v: &[u64]) -> Result<(), CodeError> {
        check_symbols(self.field, v, self.n)
    }
}

fn check_symbols(field: PrimeField, v: &[u64], len: usize) -> Result<(), CodeError> {
    if v.len() != len {
        return Err(CodeError::LengthMismatch { expected: len, got: v.len() });
    }
    let q = field.modulus();
    match v.iter().position(|&x| x >= q) {
        Some(index) => Err(CodeError::SymbolOutOfRange { index, value: v[index], modulus: q }),
        None => Ok(()),
    }
}

macro_rules! word_type {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub Vec<u64>);

        impl $name {
            pub fn as_slice(&self) -> &[u64] {
                &self.0
            }

            pub fn into_vec(self) -> Vec<u64> {
                self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }
        }

        impl From<Vec<u64>> for $name {
            fn from(v: Vec<u64>) -> Self {
                $name(v)
            }
        }

        impl AsRef<[u64]> for $name {
            fn as_ref(&self) -> &[u64] {
                &self.0
            }
        }
    };
}

word_type!(
    /// Message coefficients `f_0, …, f_{k-1}`.
    Message
);
word_type!(Codeword);
word_type!(ReceivedWord);
word_type!(ErrorVector);

impl ErrorVector {
    /// Number of nonzero positions.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i).collect()
    }
}

/// `c = (f_0, …, f_{k-1}, 0, …, 0) · G_α`.
pub fn encode(message: &Message, params: &CodeParams) -> Result<Codeword, CodeError> {
    check_symbols(params.field, &message.0, params.k)?;
    let mut padded = message.0.clone();
    padded.resize(params.n, 0);
    Ok(Codeword(params.domain.dft(&padded)?))
}

/// True iff the interpolating polynomial of `v` has degree below `k`.
pub fn is_codeword(v: &[u64], params: &CodeParams) -> Result<bool, CodeError> {
    params.check_word(v)?;
    let coeffs = params.domain.idft(v)?;
    Ok(coeffs[params.k..].iter().all(|&x| x == 0))
}

/// Recovers the message of a codeword, or `None` if `c` is not one.
pub fn unencode(c: &Codeword, params: &CodeParams) -> Result<Option<Message>, CodeError> {
    params.check_word(&c.0)?;
    let mut coeffs = params.domain.idft(&c.0)?;
    if coeffs[params.k..].iter().any(|&x| x != 0) {
        return Ok(None);
    }
    coeffs.truncate(params.k);
    Ok(Some(Message(coeffs)))
}

/// Random error pattern of weight exactly `t`, seeded.
///
/// Positions come first: a partial Fisher-Yates shuffle of `0..n` where step
/// `i` swaps `i` with `i + below(n - i)`; the first `t` entries are the
/// support, in selection order. Values follow, one `1 + below(q - 1)` draw per
/// selected position in the same order.
pub fn random_error(params: &CodeParams, t: usize, seed: u64) -> Result<ErrorVector, CodeError> {
    let n = params.n;
    if t > n {
        return Err(CodeError::TooManyErrors { t, n });
    }
    let mut rng = SplitMix64::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in 0..t {
        let j = i + rng.below((n - i) as u64) as usize;
        order.swap(i, j);
    }
    let mut e = vec![0u64; n];
    for &pos in &order[..t] {
        e[pos] = 1 + rng.below(params.q() - 1);
    }
    Ok(ErrorVector(e))
}

/// `r = c + e` for a fresh [`random_error`] of weight `t`.
pub fn corrupt(
    c: &Codeword,
    t: usize,
    seed: u64,
    params: &CodeParams,
) -> Result<(ReceivedWord, ErrorVector), CodeError> {
    params.check_word(&c.0)?;
    let e = random_error(params, t, seed)?;
    Ok((add_error(c, &e, params)?, e))
}

pub fn add_error(c: &Codeword, e: &ErrorVector, params: &CodeParams) -> Result<ReceivedWord, CodeError> {
    params.check_word(&c.0)?;
    params.check_word(&e.0)?;
    let f = params.field;
    Ok(ReceivedWord(c.0.iter().zip(&e.0).map(|(&x, &y)| f.add(x, y)).collect()))
}

pub fn hamming_distance(a: &[u64], b: &[u64]) -> Result<usize, CodeError> {
    if a.len() != b.len() {
        return Err(CodeError::LengthMismatch { expected: a.len(), got: b.len() });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Seeded random message of length `k`.
pub fn random_message(params: &CodeParams, seed: u64) -> Message {
    let mut rng = SplitMix64::new(seed);
    Message((0..params.k).map(|_| rng.below(params.q())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX_C: [u64; 10] = [8, 0, 4, 3, 1, 10, 8, 8, 3, 3];
    const EX_R: [u64; 10] = [8, 0, 4, 3, 6, 10, 1, 8, 4, 3];
    const EX_E: [u64; 10] = [0, 0, 0, 0, 5, 0, 4, 0, 1, 0];

    #[test]
    fn params_validation() {
        assert!(matches!(CodeParams::new(12, 4), Err(CodeError::Field(FieldError::NotPrime(12)))));
        assert!(matches!(CodeParams::new(11, 0), Err(CodeError::InvalidDimension { .. })));
        assert!(matches!(CodeParams::new(11, 10), Err(CodeError::InvalidDimension { .. })));
        let p = CodeParams::new(11, 4).unwrap();
        assert_eq!((p.n(), p.k(), p.t_max(), p.alpha()), (10, 4, 3, 2));
    }

    #[test]
    fn encode_examples() {
        let p = CodeParams::new(5, 2).unwrap();
        assert_eq!(encode(&Message(vec![1, 2]), &p).unwrap().0, vec![3, 0, 4, 2]);
        assert_eq!(encode(&Message(vec![0, 0]), &p).unwrap().0, vec![0; 4]);
        assert!(matches!(
            encode(&Message(vec![1]), &p),
            Err(CodeError::LengthMismatch { expected: 2, got: 1 })
        ));

        let p = CodeParams::new(11, 4).unwrap();
        let m = unencode(&Codeword(EX_C.to_vec()), &p).unwrap().expect("codeword");
        assert_eq!(encode(&m, &p).unwrap().0, EX_C);
    }

    #[test]
    fn membership() {
        let p = CodeParams::new(11, 4).unwrap();
        assert!(is_codeword(&[0; 10], &p).unwrap());
        assert!(is_codeword(&EX_C, &p).unwrap());
        assert!(!is_codeword(&EX_R, &p).unwrap());
        assert!(unencode(&Codeword(EX_R.to_vec()), &p).unwrap().is_none());
    }

    #[test]
    fn channel_examples() {
        let p = CodeParams::new(11, 4).unwrap();
        let c = Codeword(EX_C.to_vec());
        let (r, e) = corrupt(&c, 0, 9, &p).unwrap();
        assert_eq!((r.0, e.weight()), (EX_C.to_vec(), 0));
        let r = add_error(&c, &ErrorVector(EX_E.to_vec()), &p).unwrap();
        assert_eq!(r.0, EX_R);
        assert!(matches!(corrupt(&c, 11, 0, &p), Err(CodeError::TooManyErrors { t: 11, n: 10 })));
    }

    #[test]
    fn corrupt_is_reproducible_and_exact() {
        let p = CodeParams::new(257, 100).unwrap();
        let c = encode(&random_message(&p, 1), &p).unwrap();
        for t in [0, 1, 5, 78, 256] {
            for seed in 0..20 {
                let (r, e) = corrupt(&c, t, seed, &p).unwrap();
                assert_eq!(e.weight(), t);
                assert_eq!(hamming_distance(&r.0, &c.0).unwrap(), t);
                assert_eq!(corrupt(&c, t, seed, &p).unwrap(), (r, e));
            }
        }
    }

    #[test]
    fn channel_stream_is_pinned() {
        // guards the documented consumption order
        let p = CodeParams::new(11, 4).unwrap();
        let e = random_error(&p, 3, 42).unwrap();
        let mut rng = SplitMix64::new(42);
        let mut order: Vec<usize> = (0..10).collect();
        for i in 0..3 {
            let j = i + rng.below(10 - i as u64) as usize;
            order.swap(i, j);
        }
        let mut expect = vec![0u64; 10];
        for &pos in &order[..3] {
            expect[pos] = 1 + rng.below(10);
        }
        assert_eq!(e.0, expect);
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&[1, 2], &[1, 2]).unwrap(), 0);
        assert_eq!(hamming_distance(&EX_R, &EX_C).unwrap(), 3);
        assert_eq!(hamming_distance(&[3, 0, 4, 2], &[4, 0, 4, 2]).unwrap(), 1);
        assert!(hamming_distance(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn small_code_is_injective_and_mds() {
        let p = CodeParams::new(5, 2).unwrap();
        let mut words = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                words.push(encode(&Message(vec![a, b]), &p).unwrap().0);
            }
        }
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                assert!(hamming_distance(&words[i], &words[j]).unwrap() >= 3);
            }
        }
    }
}
