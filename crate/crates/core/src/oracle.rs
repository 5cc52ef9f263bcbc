//! Elimination theory as executable checks: circulants and their ranks,
//! Sylvester matrices, subresultants and Euclidean remainder sequences.
//!
//! Nothing here is on the decoding path. Costs are cubic by design; the
//! functions exist to test the algebra the decoder relies on, at small sizes.
//!
//! Sylvester layout: for `deg b = d ≥ deg a = m` and `0 ≤ l ≤ m`, `S_l(b, a)`
//! has `m + d - 2l` rows for the coefficients of `x^{m+d-l-1}` down to `x^l`.
//! Its first `m - l` columns hold `x^{m-l-1}·b, …, b` and the remaining
//! `d - l` columns hold `x^{d-l-1}·a, …, a`. Row `i` therefore reads
//!
//! ```text
//! b-column c:  b_{d-i+c}        a-column c': a_{m-i+c'}
//! ```
//!
//! with out-of-range coefficients zero. `S_0` is the Sylvester matrix and
//! `det S_l` the `l`-th scalar subresultant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::code::{corrupt, encode, random_error, random_message, CodeParams};
use crate::decoder::{decode_traced, DecodeOptions};
use crate::field::PrimeField;
use crate::linalg;
use crate::poly::Polynomial;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// `deg b < deg a`.
    DegreeOrder { deg_b: Option<usize>, deg_a: Option<usize> },
    /// `l > deg a`.
    IndexOutOfRange { l: usize, deg_a: usize },
    ZeroPolynomial,
    NotSquare { rows: usize, cols: usize },
    FieldMismatch,
    /// Matrix data length is not `rows · cols`.
    Shape { rows: usize, cols: usize, len: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::DegreeOrder { deg_b, deg_a } => {
                write!(f, "need deg b >= deg a, got {deg_b:?} and {deg_a:?}")
            }
            OracleError::IndexOutOfRange { l, deg_a } => {
                write!(f, "subresultant index {l} exceeds deg a = {deg_a}")
            }
            OracleError::ZeroPolynomial => f.write_str("zero polynomial not allowed here"),
            OracleError::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            OracleError::FieldMismatch => f.write_str("operands over different fields"),
            OracleError::Shape { rows, cols, len } => {
                write!(f, "{len} entries cannot form a {rows}x{cols} matrix")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Row-major matrix over GF(q).
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ", self.field)?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl DenseMatrix {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, OracleError> {
        if data.len() != rows * cols {
            return Err(OracleError::Shape { rows, cols, len: data.len() });
        }
        let data = data.into_iter().map(|x| field.reduce(x)).collect();
        Ok(DenseMatrix { field, rows, cols, data })
    }

    /// Panics on ragged input.
    pub fn from_rows(field: PrimeField, rows: Vec<Vec<u64>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let r = rows.len();
        Self::new(field, r, cols, rows.into_iter().flatten().collect()).expect("shape checked")
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        DenseMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u64]>::to_vec).collect()
    }

    /// The `height × width` block starting at `(row, col)`.
    pub fn submatrix(&self, row: usize, col: usize, height: usize, width: usize) -> DenseMatrix {
        assert!(row + height <= self.rows && col + width <= self.cols, "block out of bounds");
        let data = (row..row + height)
            .flat_map(|i| (col..col + width).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        DenseMatrix { field: self.field, rows: height, cols: width, data }
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, OracleError> {
        if self.field != other.field {
            return Err(OracleError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(OracleError::Shape { rows: self.cols, cols: other.rows, len: 0 });
        }
        let f = self.field;
        let mut out = DenseMatrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.mul_add(a, other.get(l, j), out.data[idx]);
                }
            }
        }
        Ok(out)
    }
}

/// `C[i][j] = g[(j - i) mod n]`: row 0 is `g`, each row the right shift of
/// the one above.
pub fn circulant(field: PrimeField, g: &[u64]) -> DenseMatrix {
    let n = g.len();
    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| g[(j + n - i) % n]))
        .collect();
    DenseMatrix::new(field, n, n, data).expect("square")
}

pub fn matrix_rank(m: &DenseMatrix) -> usize {
    linalg::rank(m.field, &m.to_rows())
}

/// Determinant by elimination; 1 for the empty matrix.
pub fn determinant(m: &DenseMatrix) -> Result<u64, OracleError> {
    if m.rows != m.cols {
        return Err(OracleError::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(linalg::determinant(m.field, &m.to_rows()))
}

/// Determinant by cofactor expansion. Exponential; sizes up to about 8.
pub fn determinant_cofactor(m: &DenseMatrix) -> Result<u64, OracleError> {
    if m.rows != m.cols {
        return Err(OracleError::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(linalg::determinant_cofactor(m.field, &m.to_rows()))
}

fn check_pair(b: &Polynomial, a: &Polynomial, l: usize) -> Result<(usize, usize), OracleError> {
    if b.field() != a.field() {
        return Err(OracleError::FieldMismatch);
    }
    let (Some(d), Some(m)) = (b.degree(), a.degree()) else {
        return Err(OracleError::ZeroPolynomial);
    };
    if d < m {
        return Err(OracleError::DegreeOrder { deg_b: Some(d), deg_a: Some(m) });
    }
    if l > m {
        return Err(OracleError::IndexOutOfRange { l, deg_a: m });
    }
    Ok((d, m))
}

/// `S_l(b, a)`; see the module docs for the layout.
pub fn sylvester_submatrix(b: &Polynomial, a: &Polynomial, l: usize) -> Result<DenseMatrix, OracleError> {
    let (d, m) = check_pair(b, a, l)?;
    let size = m + d - 2 * l;
    let coeff = |p: &Polynomial, idx: isize| if idx < 0 { 0 } else { p.coeff(idx as usize) };
    let mut out = DenseMatrix::zeros(b.field(), size, size);
    for i in 0..size {
        for c in 0..size {
            let v = if c < m - l {
                coeff(b, d as isize - i as isize + c as isize)
            } else {
                coeff(a, m as isize - i as isize + (c - (m - l)) as isize)
            };
            out.data[i * size + c] = v;
        }
    }
    Ok(out)
}

pub fn sylvester_matrix(b: &Polynomial, a: &Polynomial) -> Result<DenseMatrix, OracleError> {
    sylvester_submatrix(b, a, 0)
}

/// `det S_l(b, a)`.
pub fn subresultant(b: &Polynomial, a: &Polynomial, l: usize) -> Result<u64, OracleError> {
    determinant(&sylvester_submatrix(b, a, l)?)
}

pub fn resultant(b: &Polynomial, a: &Polynomial) -> Result<u64, OracleError> {
    subresultant(b, a, 0)
}

/// `ρ_{i-2} = q_i·ρ_{i-1} + ρ_i` from `(ρ_{-1}, ρ_0)` until the remainder
/// vanishes.
///
/// `remainders` holds the nonzero `ρ_1, …, ρ_s` (empty when `ρ_0 | ρ_{-1}`);
/// `quotients` holds every quotient, including the final one whose
/// remainder is zero, so it has `s + 1` entries. Remainders are not
/// normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemainderSequence {
    pub rho_minus1: Polynomial,
    pub rho0: Polynomial,
    pub remainders: Vec<Polynomial>,
    pub quotients: Vec<Polynomial>,
}

impl RemainderSequence {
    /// `ρ_s`, or `ρ_0` when there are no remainders. Not monic.
    pub fn last(&self) -> &Polynomial {
        self.remainders.last().unwrap_or(&self.rho0)
    }

    pub fn gcd(&self) -> Polynomial {
        self.last().monic()
    }

    /// Degrees of `ρ_0, ρ_1, …, ρ_s`.
    pub fn degrees(&self) -> Vec<usize> {
        std::iter::once(&self.rho0)
            .chain(&self.remainders)
            .map(|p| p.degree().expect("nonzero"))
            .collect()
    }
}

pub fn euclidean_remainder_sequence(
    rho_minus1: &Polynomial,
    rho0: &Polynomial,
) -> Result<RemainderSequence, OracleError> {
    if rho_minus1.field() != rho0.field() {
        return Err(OracleError::FieldMismatch);
    }
    if rho0.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    let mut remainders = Vec::new();
    let mut quotients = Vec::new();
    let (mut prev, mut cur) = (rho_minus1.clone(), rho0.clone());
    loop {
        let (q, r) = prev.div_rem(&cur).expect("nonzero divisor");
        quotients.push(q);
        if r.is_zero() {
            break;
        }
        remainders.push(r.clone());
        prev = std::mem::replace(&mut cur, r);
    }
    Ok(RemainderSequence { rho_minus1: rho_minus1.clone(), rho0: rho0.clone(), remainders, quotients })
}

/// Monic gcd. Errors when both inputs are zero.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, OracleError> {
    if a.field() != b.field() {
        return Err(OracleError::FieldMismatch);
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(OracleError::ZeroPolynomial),
        (_, true) => Ok(a.monic()),
        (true, false) => Ok(b.monic()),
        _ => Ok(euclidean_remainder_sequence(a, b)?.gcd()),
    }
}

// ---------------------------------------------------------------------------
// property checks

/// Outcome of one property over many cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub violations: usize,
    /// First counterexample, if any.
    pub detail: Option<String>,
}

impl PropertyResult {
    fn new(name: &str) -> Self {
        PropertyResult { name: name.to_string(), cases: 0, violations: 0, detail: None }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.detail.is_none() {
                self.detail = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cases > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub q: u64,
    pub k: usize,
    pub trials: usize,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

/// Exhaustive enumeration is used when there are at most this many polynomials.
pub const EXHAUSTIVE_LIMIT: u64 = 200_000;

fn nonzero_root_count(p: &Polynomial) -> usize {
    (1..p.field().modulus()).filter(|&x| p.eval(x) == 0).count()
}

/// Circulant rank equals `n` minus the number of nonzero roots, for
/// polynomials of degree below `n = q - 1`. Exhaustive when `q^n` is small,
/// otherwise `trials` random polynomials.
pub fn check_koenig_rado_roots(field: PrimeField, trials: usize, seed: u64) -> PropertyResult {
    let q = field.modulus();
    let n = (q - 1) as usize;
    let mut res = PropertyResult::new("koenig_rado_roots");
    let test = |g: &[u64], res: &mut PropertyResult| {
        let p = Polynomial::new(field, g.to_vec());
        let rank = matrix_rank(&circulant(field, g));
        let expect = n - nonzero_root_count(&p);
        res.record(rank == expect, || format!("g={g:?}: rank {rank}, expected {expect}"));
    };
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(q).filter(|&v| v <= EXHAUSTIVE_LIMIT));
    if let Some(total) = total {
        let mut g = vec![0u64; n];
        for _ in 0..total {
            test(&g, &mut res);
            for x in g.iter_mut() {
                *x += 1;
                if *x < q {
                    break;
                }
                *x = 0;
            }
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for _ in 0..trials {
            // bias towards many roots: multiply random factors by a split part
            let roots: Vec<u64> = (0..rng.below(n as u64) as usize).map(|_| 1 + rng.below(q - 1)).collect();
            let split = Polynomial::from_roots(field, &roots);
            let room = n - split.degree().unwrap_or(0);
            let cofactor: Vec<u64> = (0..room).map(|_| rng.below(q)).collect();
            let g = split.mul(&Polynomial::new(field, cofactor));
            let mut v = g.coeffs().to_vec();
            v.resize(n, 0);
            test(&v, &mut res);
        }
    }
    res
}

/// Circulant of `g̃ = idft(e)` has rank `weight(e)`.
pub fn check_koenig_rado_channel(params: &CodeParams, trials: usize, seed: u64) -> PropertyResult {
    let mut res = PropertyResult::new("koenig_rado_channel");
    let mut rng = SplitMix64::new(seed);
    let n = params.n();
    for trial in 0..trials {
        let t = rng.below(n as u64 + 1) as usize;
        let e = random_error(params, t, seed.wrapping_add(trial as u64)).expect("t <= n");
        let g = params.domain().idft(&e.0).expect("length n");
        let rank = matrix_rank(&circulant(params.field(), &g));
        res.record(rank == t, || format!("e={:?}: rank {rank}", e.0));
    }
    res
}

/// A remainder of degree `l` appears among `ρ_0, …, ρ_s` iff `sres_l ≠ 0`,
/// for every `0 ≤ l ≤ deg a`, over random pairs with `deg b ≥ deg a`.
pub fn check_remainder_subresultant(
    field: PrimeField,
    pairs: usize,
    max_degree: usize,
    seed: u64,
) -> PropertyResult {
    let q = field.modulus();
    let mut res = PropertyResult::new("remainder_subresultant");
    let mut rng = SplitMix64::new(seed);
    let random_poly = |deg: usize, rng: &mut SplitMix64| {
        let mut c: Vec<u64> = (0..deg).map(|_| rng.below(q)).collect();
        c.push(1 + rng.below(q - 1));
        Polynomial::new(field, c)
    };
    for _ in 0..pairs {
        let d = 1 + rng.below(max_degree as u64) as usize;
        let m = rng.below(d as u64 + 1) as usize;
        let b = random_poly(d, &mut rng);
        // half the time force a common factor so gcds of positive degree occur
        let a = if m > 0 && rng.below(2) == 0 {
            let h = random_poly(1 + rng.below(m as u64) as usize, &mut rng);
            let hd = h.degree().unwrap();
            let b2 = h.mul(&random_poly(d - hd, &mut rng));
            let a2 = h.mul(&random_poly(m - hd, &mut rng));
            check_pair_case(&b2, &a2, &mut res);
            continue;
        } else {
            random_poly(m, &mut rng)
        };
        check_pair_case(&b, &a, &mut res);
    }
    res
}

fn check_pair_case(b: &Polynomial, a: &Polynomial, res: &mut PropertyResult) {
    let seq = euclidean_remainder_sequence(b, a).expect("a nonzero");
    let degrees = seq.degrees();
    let m = a.degree().expect("nonzero");
    let mut ok = true;
    let mut bad = 0;
    for l in 0..=m {
        let s = subresultant(b, a, l).expect("valid index");
        if degrees.contains(&l) != (s != 0) {
            ok = false;
            bad = l;
        }
    }
    res.record(ok, || format!("b={b}, a={a}: mismatch at l={bad}, degrees {degrees:?}"));
}

/// Res(b, a) = lc(b)^m · ∏ a(β) over the roots β of a split `b`.
pub fn check_resultant_root_product(field: PrimeField, trials: usize, seed: u64) -> PropertyResult {
    let q = field.modulus();
    let mut res = PropertyResult::new("resultant_root_product");
    let mut rng = SplitMix64::new(seed);
    for _ in 0..trials {
        let d = 1 + rng.below(6) as usize;
        let m = rng.below(d as u64 + 1) as usize;
        let roots: Vec<u64> = (0..d).map(|_| rng.below(q)).collect();
        let lc = 1 + rng.below(q - 1);
        let b = Polynomial::from_roots(field, &roots).scale(lc);
        let mut ac: Vec<u64> = (0..m).map(|_| rng.below(q)).collect();
        ac.push(1 + rng.below(q - 1));
        let a = Polynomial::new(field, ac);
        let expect = roots
            .iter()
            .fold(field.pow(lc, m as u64), |acc, &r| field.mul(acc, a.eval(r)));
        let got = resultant(&b, &a).expect("valid");
        res.record(got == expect, || format!("b={b}, a={a}: {got} vs {expect}"));
    }
    res
}

/// For decoder trials with `1 ≤ t ≤ t_max` errors and recovered `g̃`:
/// the gcd with `x^n - 1` is `∏_{e_i = 0}(x - α^i)`, `sres_{n-t} ≠ 0`, and
/// the top-right `t × t` circulant block is nonsingular, equals the
/// lower-right block of `S_{n-t}`, and carries its determinant.
pub fn check_error_locator(params: &CodeParams, trials: usize, seed: u64) -> Vec<PropertyResult> {
    let f = params.field();
    let n = params.n();
    let b = Polynomial::x_pow_minus_one(f, n);
    let points = params.domain().points().to_vec();
    let mut gcd_res = PropertyResult::new("locator_gcd");
    let mut sres_res = PropertyResult::new("locator_subresultant");
    let mut bridge_res = PropertyResult::new("submatrix_bridge");
    let mut rng = SplitMix64::new(seed);
    for trial in 0..trials {
        if params.t_max() == 0 {
            break;
        }
        let t = 1 + rng.below(params.t_max() as u64) as usize;
        let s = seed.wrapping_add(trial as u64);
        let c = encode(&random_message(params, s), params).expect("valid message");
        let (r, e) = corrupt(&c, t, s, params).expect("t <= n");
        let (_, state) = decode_traced(&r.0, params, DecodeOptions::default()).expect("valid word");
        let Some(low) = state.recovered_low.clone() else {
            gcd_res.record(false, || format!("trial {trial}: decode stopped early (t̂={})", state.t_hat));
            continue;
        };
        let mut gv = low;
        gv.extend_from_slice(&state.known_high);
        let g = Polynomial::new(f, gv.clone());

        let zeros: Vec<u64> = (0..n).filter(|&i| e.0[i] == 0).map(|i| points[i]).collect();
        let expect = Polynomial::from_roots(f, &zeros);
        let got = poly_gcd(&b, &g).expect("nonzero");
        gcd_res.record(got == expect, || format!("trial {trial}: gcd {got} vs {expect}"));

        let l = n - t;
        let sylv = sylvester_submatrix(&b, &g, l);
        let Ok(sylv) = sylv else {
            sres_res.record(false, || format!("trial {trial}: deg g̃ below n - t"));
            continue;
        };
        let det_s = determinant(&sylv).expect("square");
        sres_res.record(det_s != 0, || format!("trial {trial}: sres_{l} = 0"));

        let size = sylv.rows();
        let from_sylv = sylv.submatrix(size - t, size - t, t, t);
        let from_circ = circulant(f, &gv).submatrix(0, n - t, t, t);
        let det_block = determinant(&from_circ).expect("square");
        bridge_res.record(from_sylv == from_circ && det_block != 0 && det_block == det_s, || {
            format!("trial {trial}: blocks {from_sylv:?} / {from_circ:?}, dets {det_block} / {det_s}")
        });
    }
    vec![gcd_res, sres_res, bridge_res]
}

/// Every property suite for one code. The remainder and root-product checks
/// run over the code's field.
pub fn run_oracle_suite(params: &CodeParams, trials: usize, seed: u64) -> OracleReport {
    let f = params.field();
    let mut properties = vec![
        check_koenig_rado_roots(f, trials, seed),
        check_koenig_rado_channel(params, trials, seed),
        check_remainder_subresultant(f, trials.max(1), 8, seed),
        check_resultant_root_product(f, trials.max(1), seed),
    ];
    properties.extend(check_error_locator(params, trials, seed));
    OracleReport { q: params.q(), k: params.k(), trials, seed, properties }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f11() -> PrimeField {
        PrimeField::new(11).unwrap()
    }

    const EX_G: [u64; 10] = [1, 8, 7, 4, 2, 1, 8, 7, 4, 2];

    #[test]
    fn circulant_examples() {
        let f = f11();
        assert_eq!(circulant(f, &[1, 0, 0, 0]), DenseMatrix::identity(f, 4));
        assert_eq!(circulant(f, &[3, 5]).to_rows(), vec![vec![3, 5], vec![5, 3]]);
        let c = circulant(f, &EX_G);
        assert_eq!(c.to_rows()[0], EX_G.to_vec());
        assert_eq!(c.to_rows()[1], vec![2, 1, 8, 7, 4, 2, 1, 8, 7, 4]);
        assert_eq!(c.submatrix(0, 7, 3, 3).to_rows(), vec![vec![7, 4, 2], vec![8, 7, 4], vec![1, 8, 7]]);
    }

    #[test]
    fn rank_examples() {
        let f = f11();
        assert_eq!(matrix_rank(&DenseMatrix::identity(f, 6)), 6);
        assert_eq!(matrix_rank(&circulant(f, &EX_G)), 3);
        assert_eq!(matrix_rank(&DenseMatrix::zeros(f, 3, 4)), 0);
    }

    #[test]
    fn sylvester_example() {
        let f = f11();
        let b = Polynomial::x_pow_minus_one(f, 10);
        let a = Polynomial::new(f, EX_G.to_vec());
        let s = sylvester_submatrix(&b, &a, 7).unwrap();
        assert_eq!(
            s.to_rows(),
            vec![
                vec![1, 0, 2, 0, 0],
                vec![0, 1, 4, 2, 0],
                vec![0, 0, 7, 4, 2],
                vec![0, 0, 8, 7, 4],
                vec![0, 0, 1, 8, 7],
            ]
        );
        let block = s.submatrix(2, 2, 3, 3);
        assert_eq!(determinant_cofactor(&block).unwrap(), 3);
        assert_eq!(subresultant(&b, &a, 7).unwrap(), 3);
        assert_eq!(determinant_cofactor(&s).unwrap(), 3);
        assert!(matches!(sylvester_submatrix(&a, &b, 0), Err(OracleError::DegreeOrder { .. })));
        assert!(matches!(sylvester_submatrix(&b, &a, 10), Err(OracleError::IndexOutOfRange { .. })));
    }

    #[test]
    fn sylvester_with_l_equal_deg_a() {
        let f = PrimeField::new(7).unwrap();
        let b = Polynomial::new(f, vec![3, 2, 5, 1]);
        let a = Polynomial::new(f, vec![4, 6, 1]);
        // l = m leaves only a-columns; b monic is not even consulted
        let s = sylvester_submatrix(&b, &a, 2).unwrap();
        assert_eq!(s.to_rows(), vec![vec![1]]);
        let s0 = sylvester_matrix(&b, &a).unwrap();
        assert_eq!((s0.rows(), s0.get(0, 0), s0.get(1, 1)), (5, 1, 1));
        assert_eq!(s0.get(1, 0), 5);
        assert_eq!(s0.get(0, 2), 1);
    }

    #[test]
    fn resultant_of_linear_factors() {
        let f = PrimeField::new(7).unwrap();
        let b = Polynomial::from_roots(f, &[2]);
        let a = Polynomial::from_roots(f, &[5]);
        assert_ne!(resultant(&b, &a).unwrap(), 0);
        assert_eq!(resultant(&b, &b).unwrap(), 0);
    }

    #[test]
    fn remainder_sequence_examples() {
        let f = f11();
        let p = Polynomial::new(f, vec![3, 1, 4]);
        let seq = euclidean_remainder_sequence(&p, &p).unwrap();
        assert!(seq.remainders.is_empty());
        assert_eq!(seq.gcd(), p.monic());

        let b = Polynomial::x_pow_minus_one(f, 10);
        let g = Polynomial::new(f, EX_G.to_vec());
        let seq = euclidean_remainder_sequence(&b, &g).unwrap();
        let degrees = seq.degrees();
        assert!(degrees.windows(2).all(|w| w[1] < w[0]));
        let alpha = 2u64;
        let zeros: Vec<u64> = [0u64, 1, 2, 3, 5, 7, 9].iter().map(|&i| f.pow(alpha, i)).collect();
        assert_eq!(seq.gcd(), Polynomial::from_roots(f, &zeros));
        assert_eq!(seq.last().monic(), seq.gcd());
        assert_eq!(poly_gcd(&b, &g).unwrap().degree(), Some(7));
        assert!(euclidean_remainder_sequence(&b, &Polynomial::zero(f)).is_err());
    }

    #[test]
    fn gcd_examples() {
        let f = PrimeField::new(5).unwrap();
        let p = Polynomial::new(f, vec![2, 0, 3]);
        assert_eq!(poly_gcd(&p, &Polynomial::zero(f)).unwrap(), p.monic());
        assert!(poly_gcd(&Polynomial::zero(f), &Polynomial::zero(f)).is_err());
        // x^2 + 2 and x^2 + x + 1 are irreducible over F_5 and distinct
        let u = Polynomial::new(f, vec![2, 0, 1]);
        let v = Polynomial::new(f, vec![1, 1, 1]);
        assert_eq!(poly_gcd(&u, &v).unwrap(), Polynomial::one(f));
    }

    #[test]
    fn coprime_irreducibles_exhaustive() {
        // all monic irreducible quadratics over F_5 are pairwise coprime
        let f = PrimeField::new(5).unwrap();
        let irreducible: Vec<Polynomial> = (0..5)
            .flat_map(|a| (0..5).map(move |b| Polynomial::new(f, vec![b, a, 1])))
            .filter(|p| (0..5).all(|x| p.eval(x) != 0))
            .collect();
        assert_eq!(irreducible.len(), 10);
        for i in 0..irreducible.len() {
            for j in i + 1..irreducible.len() {
                assert_eq!(poly_gcd(&irreducible[i], &irreducible[j]).unwrap(), Polynomial::one(f));
            }
        }
    }

    #[test]
    fn suites_pass_on_small_codes() {
        for (q, k) in [(5u64, 2usize), (7, 2), (11, 4)] {
            let p = CodeParams::new(q, k).unwrap();
            let rep = run_oracle_suite(&p, 60, 1);
            assert!(rep.passed(), "{rep:?}");
        }
    }
}
