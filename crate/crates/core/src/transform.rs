//! Forward and inverse DFTs over GF(q) on the full multiplicative group.
//!
//! The domain is `{α^0, …, α^{n-1}}` with `n = q - 1` and `α` the smallest
//! primitive element. The forward transform right-multiplies a coefficient
//! vector by the generator matrix `G[i][j] = α^(i·j)`, i.e. it evaluates the
//! polynomial at every domain point:
//!
//! ```text
//! out[j] = Σ_i coeffs[i] · α^(i·j)
//! ```
//!
//! The inverse multiplies by `(1/n)·G_{α⁻¹}`.
//!
//! Transforms use mixed-radix decimation-in-time Cooley-Tukey over the prime
//! factorization of the length. Each radix-`p` stage costs `O(len·p)`, so
//! prime factors above the smoothness bound turn into naive sub-DFTs inside an
//! otherwise fast plan ([`TransformEngine::Hybrid`]).

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::field::{FieldElement, PrimeField};

/// Largest prime factor of `n` for which a domain still counts as FFT-friendly.
pub const DEFAULT_SMOOTHNESS_BOUND: u64 = 16;

/// Environment variable the CLI consults to override [`DEFAULT_SMOOTHNESS_BOUND`].
pub const SMOOTHNESS_ENV: &str = "RSINTERP_SMOOTHNESS_BOUND";

/// Domains above this size are refused; the twiddle table is `n` words.
pub const MAX_DOMAIN_SIZE: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    LengthMismatch { expected: usize, got: usize },
    SymbolOutOfRange { index: usize, value: u64, modulus: u64 },
    DomainTooLarge(u64),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            TransformError::SymbolOutOfRange { index, value, modulus } => {
                write!(f, "symbol {value} at position {index} is not a residue mod {modulus}")
            }
            TransformError::DomainTooLarge(n) => {
                write!(f, "domain of size {n} exceeds the supported maximum {MAX_DOMAIN_SIZE}")
            }
        }
    }
}

impl std::error::Error for TransformError {}

/// What the caller asks for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    #[default]
    Auto,
    Fast,
    Naive,
}

/// What a domain actually runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformEngine {
    /// Mixed radix, every prime factor within the smoothness bound.
    Fast,
    /// Mixed radix with at least one large-prime stage run naively.
    Hybrid,
    /// Direct `O(n²)` matrix-vector product.
    Naive,
}

impl fmt::Display for TransformEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformEngine::Fast => "fast",
            TransformEngine::Hybrid => "hybrid",
            TransformEngine::Naive => "naive",
        })
    }
}

/// Picks the engine for a transform length with the given factorization.
///
/// `Fast` and `Auto` both resolve by smoothness: a length with a prime factor
/// above `smoothness_bound` cannot run a pure small-radix plan.
pub fn select_engine(
    factorization: &[(u64, u32)],
    choice: EngineChoice,
    smoothness_bound: u64,
) -> TransformEngine {
    match choice {
        EngineChoice::Naive => TransformEngine::Naive,
        EngineChoice::Auto | EngineChoice::Fast => {
            if factorization.iter().all(|&(p, _)| p <= smoothness_bound) {
                TransformEngine::Fast
            } else {
                TransformEngine::Hybrid
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainOptions {
    pub engine: EngineChoice,
    pub smoothness_bound: u64,
}

impl Default for DomainOptions {
    fn default() -> Self {
        DomainOptions {
            engine: EngineChoice::Auto,
            smoothness_bound: DEFAULT_SMOOTHNESS_BOUND,
        }
    }
}

/// Powers of a root of unity `ω` of order `order`, plus the machinery to run
/// length-`L` transforms for every `L | order`.
#[derive(Clone)]
pub(crate) struct RootTable {
    field: PrimeField,
    order: usize,
    powers: Arc<[u64]>,
    primes: Vec<usize>,
}

impl RootTable {
    /// `root` must have multiplicative order exactly `order`.
    pub(crate) fn new(field: PrimeField, root: u64, order: usize) -> Self {
        let mut powers = Vec::with_capacity(order);
        let mut acc = 1u64;
        for _ in 0..order {
            powers.push(acc);
            acc = field.mul(acc, root);
        }
        debug_assert_eq!(acc, 1);
        let primes = crate::field::factorize(order as u64)
            .into_iter()
            .map(|(p, _)| p as usize)
            .collect();
        RootTable { field, order, powers: powers.into(), primes }
    }

    /// Table for the subgroup of order `order / stride`, sharing nothing.
    pub(crate) fn subgroup(&self, sub_order: usize) -> RootTable {
        debug_assert_eq!(self.order % sub_order, 0);
        let stride = self.order / sub_order;
        if stride == 1 {
            return self.clone();
        }
        let powers: Vec<u64> = (0..sub_order).map(|i| self.powers[i * stride]).collect();
        let primes = crate::field::factorize(sub_order as u64)
            .into_iter()
            .map(|(p, _)| p as usize)
            .collect();
        RootTable { field: self.field, order: sub_order, powers: powers.into(), primes }
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn root(&self, idx: usize, inverse: bool) -> u64 {
        debug_assert!(idx < self.order);
        if inverse && idx != 0 {
            self.powers[self.order - idx]
        } else {
            self.powers[idx]
        }
    }

    fn factors_of(&self, mut len: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &p in &self.primes {
            while len % p == 0 {
                out.push(p);
                len /= p;
            }
        }
        debug_assert_eq!(len, 1, "transform length must divide the table order");
        out
    }

    /// Unscaled length-`input.len()` transform with `ω_L = ω^(order/L)`;
    /// `inverse` uses `ω_L⁻¹`.
    pub(crate) fn transform(&self, input: &[u64], inverse: bool) -> Vec<u64> {
        let len = input.len();
        let mut out = vec![0u64; len];
        if len == 0 {
            return out;
        }
        let factors = self.factors_of(len);
        self.dit(input, 0, 1, &mut out, &factors, inverse);
        out
    }

    /// Direct evaluation, `O(L²)`.
    pub(crate) fn transform_naive(&self, input: &[u64], inverse: bool) -> Vec<u64> {
        let len = input.len();
        let scale = self.order / len;
        let f = self.field;
        (0..len)
            .map(|j| {
                input.iter().enumerate().fold(0u64, |acc, (i, &x)| {
                    f.mul_add(x, self.root(scale * ((i * j) % len), inverse), acc)
                })
            })
            .collect()
    }

    fn dit(
        &self,
        input: &[u64],
        offset: usize,
        stride: usize,
        out: &mut [u64],
        factors: &[usize],
        inverse: bool,
    ) {
        let len = out.len();
        if len == 1 {
            out[0] = input[offset];
            return;
        }
        let p = factors[0];
        let m = len / p;
        for r in 0..p {
            self.dit(
                input,
                offset + r * stride,
                stride * p,
                &mut out[r * m..(r + 1) * m],
                &factors[1..],
                inverse,
            );
        }
        let f = self.field;
        let scale = self.order / len;
        if p == 2 {
            let (lo, hi) = out.split_at_mut(m);
            for k1 in 0..m {
                let w = self.root(scale * k1, inverse);
                let a = lo[k1];
                let b = f.mul(hi[k1], w);
                lo[k1] = f.add(a, b);
                hi[k1] = f.sub(a, b);
            }
            return;
        }
        // radix-p butterfly: X[k1 + m·k2] = Σ_r ω_p^(r·k2) · ω_len^(r·k1) · Y_r[k1]
        let p_scale = self.order / p;
        let mut twiddled = vec![0u64; p];
        for k1 in 0..m {
            for (r, t) in twiddled.iter_mut().enumerate() {
                *t = f.mul(out[r * m + k1], self.root(scale * r * k1, inverse));
            }
            for k2 in 0..p {
                let mut acc = 0u64;
                for (r, &t) in twiddled.iter().enumerate() {
                    acc = f.mul_add(t, self.root(p_scale * ((r * k2) % p), inverse), acc);
                }
                out[k1 + m * k2] = acc;
            }
        }
    }
}

/// The evaluation set `{α^0, …, α^{n-1}}`, `n = q - 1`, with its transform plan.
///
/// Cloning is cheap; the twiddle table is shared.
#[derive(Clone)]
pub struct EvaluationDomain {
    inner: Arc<DomainInner>,
}

struct DomainInner {
    field: PrimeField,
    n: usize,
    alpha: u64,
    alpha_inv: u64,
    n_inv: u64,
    factorization: Vec<(u64, u32)>,
    engine: TransformEngine,
    smoothness_bound: u64,
    table: RootTable,
    ring: OnceLock<crate::poly::PolyRing>,
}

impl fmt::Debug for EvaluationDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EvaluationDomain")
            .field("field", &self.inner.field)
            .field("n", &self.inner.n)
            .field("alpha", &self.inner.alpha)
            .field("engine", &self.inner.engine)
            .finish()
    }
}

impl EvaluationDomain {
    pub fn new(field: PrimeField) -> Result<Self, TransformError> {
        Self::with_options(field, DomainOptions::default())
    }

    pub fn with_options(field: PrimeField, options: DomainOptions) -> Result<Self, TransformError> {
        let n64 = field.modulus() - 1;
        if n64 > MAX_DOMAIN_SIZE {
            return Err(TransformError::DomainTooLarge(n64));
        }
        let n = n64 as usize;
        let alpha = field.find_primitive_element().value();
        let alpha_inv = field.inv(alpha).expect("primitive element is nonzero");
        let n_inv = field.inv(field.reduce(n64)).expect("n = q - 1 is a unit");
        let factorization = field.group_order_factorization();
        let engine = select_engine(&factorization, options.engine, options.smoothness_bound);
        let table = RootTable::new(field, alpha, n);
        Ok(EvaluationDomain {
            inner: Arc::new(DomainInner {
                field,
                n,
                alpha,
                alpha_inv,
                n_inv,
                factorization,
                engine,
                smoothness_bound: options.smoothness_bound,
                table,
                ring: OnceLock::new(),
            }),
        })
    }

    pub fn field(&self) -> PrimeField {
        self.inner.field
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    pub fn alpha(&self) -> FieldElement {
        self.inner.field.elem(self.inner.alpha)
    }

    pub fn alpha_inv(&self) -> FieldElement {
        self.inner.field.elem(self.inner.alpha_inv)
    }

    pub fn n_inv(&self) -> FieldElement {
        self.inner.field.elem(self.inner.n_inv)
    }

    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.inner.factorization
    }

    pub fn engine(&self) -> TransformEngine {
        self.inner.engine
    }

    pub fn smoothness_bound(&self) -> u64 {
        self.inner.smoothness_bound
    }

    /// The domain points `α^0, …, α^{n-1}` as residues.
    pub fn points(&self) -> &[u64] {
        &self.inner.table.powers
    }

    pub(crate) fn table(&self) -> &RootTable {
        &self.inner.table
    }

    /// Polynomial arithmetic sharing this domain's twiddles, built on first use.
    pub(crate) fn ring(&self) -> &crate::poly::PolyRing {
        self.inner.ring.get_or_init(|| crate::poly::PolyRing::from_domain(self))
    }

    fn check(&self, v: &[u64]) -> Result<(), TransformError> {
        if v.len() != self.inner.n {
            return Err(TransformError::LengthMismatch { expected: self.inner.n, got: v.len() });
        }
        let q = self.inner.field.modulus();
        if let Some((index, &value)) = v.iter().enumerate().find(|(_, &x)| x >= q) {
            return Err(TransformError::SymbolOutOfRange { index, value, modulus: q });
        }
        Ok(())
    }

    /// Evaluates the coefficient vector at every domain point.
    pub fn dft(&self, coeffs: &[u64]) -> Result<Vec<u64>, TransformError> {
        self.check(coeffs)?;
        Ok(match self.inner.engine {
            TransformEngine::Naive => self.inner.table.transform_naive(coeffs, false),
            _ => self.inner.table.transform(coeffs, false),
        })
    }

    /// Interpolates: the unique coefficient vector whose DFT is `evals`.
    pub fn idft(&self, evals: &[u64]) -> Result<Vec<u64>, TransformError> {
        self.check(evals)?;
        let mut out = match self.inner.engine {
            TransformEngine::Naive => self.inner.table.transform_naive(evals, true),
            _ => self.inner.table.transform(evals, true),
        };
        let f = self.inner.field;
        for x in &mut out {
            *x = f.mul(*x, self.inner.n_inv);
        }
        Ok(out)
    }

    /// Reference `O(n²)` forward product, independent of the configured engine.
    pub fn dft_naive(&self, coeffs: &[u64]) -> Result<Vec<u64>, TransformError> {
        self.check(coeffs)?;
        Ok(self.inner.table.transform_naive(coeffs, false))
    }

    /// `G_root` with entries `root^(i·j)`; `root` is `α` or, with `inverse`, `α⁻¹`.
    pub fn generator_matrix(&self, inverse: bool) -> Vec<Vec<u64>> {
        let n = self.inner.n;
        (0..n)
            .map(|i| (0..n).map(|j| self.inner.table.root((i * j) % n, inverse)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn domain(q: u64) -> EvaluationDomain {
        EvaluationDomain::new(PrimeField::new(q).unwrap()).unwrap()
    }

    fn random_vec(rng: &mut SplitMix64, len: usize, q: u64) -> Vec<u64> {
        (0..len).map(|_| rng.below(q)).collect()
    }

    #[test]
    fn constant_polynomial_evaluates_everywhere() {
        let d = domain(11);
        let mut c = vec![0u64; 10];
        c[0] = 7;
        assert_eq!(d.dft(&c).unwrap(), vec![7; 10]);
        assert_eq!(d.idft(&[7; 10]).unwrap(), c);
    }

    #[test]
    fn error_interpolation_polynomial_of_worked_example() {
        let d = domain(11);
        let g = [1, 8, 7, 4, 2, 1, 8, 7, 4, 2];
        assert_eq!(d.dft(&g).unwrap(), vec![0, 0, 0, 0, 5, 0, 4, 0, 1, 0]);
    }

    #[test]
    fn received_word_of_worked_example_interpolates() {
        let d = domain(11);
        let r = [8, 0, 4, 3, 6, 10, 1, 8, 4, 3];
        assert_eq!(d.idft(&r).unwrap(), vec![8, 0, 9, 0, 2, 1, 8, 7, 4, 2]);
    }

    #[test]
    fn linear_polynomial_over_f5() {
        let d = domain(5);
        assert_eq!(d.alpha().value(), 2);
        assert_eq!(d.dft(&[1, 2, 0, 0]).unwrap(), vec![3, 0, 4, 2]);
    }

    #[test]
    fn engine_selection() {
        let fac = |n: u64| crate::field::factorize(n);
        assert_eq!(select_engine(&fac(256), EngineChoice::Auto, 16), TransformEngine::Fast);
        assert_eq!(select_engine(&fac(10), EngineChoice::Auto, 16), TransformEngine::Fast);
        assert_eq!(select_engine(&fac(46), EngineChoice::Auto, 16), TransformEngine::Hybrid);
        assert_eq!(select_engine(&fac(46), EngineChoice::Fast, 16), TransformEngine::Hybrid);
        assert_eq!(select_engine(&fac(46), EngineChoice::Auto, 23), TransformEngine::Fast);
        assert_eq!(select_engine(&fac(256), EngineChoice::Naive, 16), TransformEngine::Naive);
        assert_eq!(domain(47).engine(), TransformEngine::Hybrid);
        assert_eq!(domain(257).engine(), TransformEngine::Fast);
    }

    #[test]
    fn length_and_range_are_validated() {
        let d = domain(11);
        assert_eq!(
            d.dft(&[1, 2, 3]),
            Err(TransformError::LengthMismatch { expected: 10, got: 3 })
        );
        assert!(matches!(
            d.idft(&[11, 0, 0, 0, 0, 0, 0, 0, 0, 0]),
            Err(TransformError::SymbolOutOfRange { index: 0, value: 11, .. })
        ));
    }

    #[test]
    fn domain_constants_are_consistent() {
        for q in [3u64, 5, 11, 47, 257, 7681] {
            let d = domain(q);
            let f = d.field();
            let n = d.n() as u64;
            assert_eq!(f.pow(d.alpha().value(), n), 1);
            for &(p, _) in d.factorization() {
                assert_ne!(f.pow(d.alpha().value(), n / p), 1);
            }
            assert_eq!(f.mul(d.alpha().value(), d.alpha_inv().value()), 1);
            assert_eq!(f.mul(f.reduce(n), d.n_inv().value()), 1);
        }
    }

    #[test]
    fn generator_matrices_multiply_to_n_identity() {
        for q in [3u64, 5, 7, 11, 13, 17] {
            let d = domain(q);
            let f = d.field();
            let n = d.n();
            let g = d.generator_matrix(false);
            let h = d.generator_matrix(true);
            for i in 0..n {
                for j in 0..n {
                    let v = (0..n).fold(0, |acc, l| f.mul_add(g[i][l], h[l][j], acc));
                    assert_eq!(v, if i == j { f.reduce(n as u64) } else { 0 });
                }
            }
        }
    }

    #[test]
    fn round_trip_and_engine_equivalence() {
        let mut rng = SplitMix64::new(7);
        for q in [3u64, 5, 7, 11, 13, 31, 47, 59, 83, 257, 7681] {
            let fast = domain(q);
            let naive = EvaluationDomain::with_options(
                fast.field(),
                DomainOptions { engine: EngineChoice::Naive, ..Default::default() },
            )
            .unwrap();
            let trials = if q > 1000 { 5 } else { 1000 };
            for _ in 0..trials {
                let x = random_vec(&mut rng, fast.n(), q);
                let y = fast.dft(&x).unwrap();
                assert_eq!(fast.idft(&y).unwrap(), x);
                if q < 1000 {
                    assert_eq!(y, fast.dft_naive(&x).unwrap());
                    assert_eq!(naive.dft(&x).unwrap(), y);
                    assert_eq!(naive.idft(&y).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn linearity() {
        let mut rng = SplitMix64::new(99);
        for q in [11u64, 47, 257] {
            let d = domain(q);
            let f = d.field();
            for _ in 0..200 {
                let (a, b) = (rng.below(q), rng.below(q));
                let x = random_vec(&mut rng, d.n(), q);
                let y = random_vec(&mut rng, d.n(), q);
                let combo: Vec<u64> =
                    x.iter().zip(&y).map(|(&u, &v)| f.add(f.mul(a, u), f.mul(b, v))).collect();
                let lhs = d.dft(&combo).unwrap();
                let (dx, dy) = (d.dft(&x).unwrap(), d.dft(&y).unwrap());
                let rhs: Vec<u64> =
                    dx.iter().zip(&dy).map(|(&u, &v)| f.add(f.mul(a, u), f.mul(b, v))).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn large_smooth_domain_round_trip() {
        let d = domain(65537);
        let mut rng = SplitMix64::new(3);
        let x = random_vec(&mut rng, d.n(), 65537);
        assert_eq!(d.idft(&d.dft(&x).unwrap()).unwrap(), x);
    }
}
