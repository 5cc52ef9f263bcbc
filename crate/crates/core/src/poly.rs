//! Dense univariate polynomials over GF(q).
//!
//! Two layers live here. [`Polynomial`] is the public, canonical-form value type
//! used by the oracle suite; its arithmetic is schoolbook and meant for small
//! degrees. [`PolyRing`] works on raw coefficient vectors (`Vec<u64>`, lowest
//! degree first, no trailing zeros) and carries the fast paths the decoder
//! needs: transform-based multiplication, Newton division and the half-GCD.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::field::PrimeField;
use crate::ntt;
use crate::transform::{EvaluationDomain, RootTable, DEFAULT_SMOOTHNESS_BOUND};

/// Polynomial with canonical coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.field, self.coeffs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Reduces every coefficient mod q and drops trailing zeros.
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        trim(&mut coeffs);
        Polynomial { field, coeffs }
    }

    pub fn from_i64(field: PrimeField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.elem_i64(c).value()).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Polynomial { field, coeffs: vec![1] }
    }

    /// `c · x^degree`.
    pub fn monomial(field: PrimeField, degree: usize, c: u64) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        Self::new(field, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: PrimeField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = field.neg(1);
        coeffs[n] = 1;
        Self::new(field, coeffs)
    }

    /// Monic `∏ (x - r)`.
    pub fn from_roots(field: PrimeField, roots: &[u64]) -> Self {
        let mut acc = vec![1u64];
        for &r in roots {
            let nr = field.neg(field.reduce(r));
            let mut next = vec![0u64; acc.len() + 1];
            for (i, &c) in acc.iter().enumerate() {
                next[i] = field.mul_add(c, nr, next[i]);
                next[i + 1] = field.add(next[i + 1], c);
            }
            acc = next;
        }
        Self::new(field, acc)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u64> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero past the degree.
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coefficient(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Scales to leading coefficient 1; the zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(self.field.inv(lc).expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&x| f.mul(x, f.reduce(c))).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let x = f.reduce(x);
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_add(acc, x, c))
    }

    fn check(&self, other: &Polynomial) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    pub fn add(&self, other: &Polynomial) -> Self {
        self.check(other);
        Self::new(self.field, add_slices(self.field, &self.coeffs, &other.coeffs))
    }

    pub fn sub(&self, other: &Polynomial) -> Self {
        self.check(other);
        Self::new(self.field, sub_slices(self.field, &self.coeffs, &other.coeffs))
    }

    pub fn mul(&self, other: &Polynomial) -> Self {
        self.check(other);
        Self::new(self.field, schoolbook(self.field, &self.coeffs, &other.coeffs))
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        self.check(divisor);
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = divrem_schoolbook(self.field, &self.coeffs, &divisor.coeffs);
        Some((Self::new(self.field, q), Self::new(self.field, r)))
    }
}

// ---------------------------------------------------------------------------
// raw coefficient-vector helpers

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree with `-1` for zero. Ignores trailing zeros.
pub(crate) fn deg(v: &[u64]) -> isize {
    v.iter().rposition(|&c| c != 0).map_or(-1, |i| i as isize)
}

pub(crate) fn add_slices(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(&mut out);
    out
}

pub(crate) fn sub_slices(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(&mut out);
    out
}

pub(crate) fn schoolbook(f: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q = f.modulus();
    if q <= u32::MAX as u64 {
        // products fit in 64 bits; defer the reduction
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        acc.into_iter().map(|v| (v % q as u128) as u64).collect()
    } else {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.mul_add(x, y, out[i + j]);
            }
        }
        out
    }
}

pub(crate) fn divrem_schoolbook(f: PrimeField, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let db = deg(b);
    assert!(db >= 0, "division by the zero polynomial");
    let db = db as usize;
    let mut rem: Vec<u64> = a.to_vec();
    trim(&mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let inv_lc = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut quot = vec![0u64; rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = f.mul(rem[i], inv_lc);
        quot[i - db] = c;
        if c == 0 {
            continue;
        }
        let nc = f.neg(c);
        for (j, &bj) in b[..=db].iter().enumerate() {
            rem[i - db + j] = f.mul_add(nc, bj, rem[i - db + j]);
        }
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

// ---------------------------------------------------------------------------
// fast arithmetic

const SCHOOLBOOK_CUTOFF: usize = 32;
const MIN_NTT_ORDER: usize = 64;
const MAX_NTT_ORDER: usize = 1 << 24;
const NEWTON_CUTOFF: usize = 64;
const HGCD_CUTOFF: usize = 64;

// Auxiliary NTT primes for fields without a large smooth subgroup.
const CRT_PRIMES: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];
const CRT_MAX_LEN: usize = 1 << 23;

/// Which product algorithm [`PolyRing::mul`] would use for a given size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum MulStrategy {
    Schoolbook,
    /// Iterative transform of length `2^log` in GF(q) itself.
    Radix2(u32),
    /// Mixed-radix transform over a smooth subgroup of GF(q)*.
    NativeNtt(usize),
    CrtNtt(usize),
}

/// A 2×2 polynomial matrix, row-major.
pub(crate) type PolyMat = [[Vec<u64>; 2]; 2];

/// Output of [`PolyRing::hgcd`]: `mat · (a, b)ᵀ = (c, d)ᵀ`.
pub(crate) struct Hgcd {
    pub mat: PolyMat,
    pub c: Vec<u64>,
    pub d: Vec<u64>,
}

/// Fast polynomial arithmetic over one field.
#[derive(Clone)]
pub(crate) struct PolyRing {
    field: PrimeField,
    ntt: Option<RootTable>,
    lengths: Vec<usize>,
}

impl PolyRing {
    /// Ring with the largest smooth native transform available in GF(q).
    #[cfg(test)]
    pub(crate) fn new(field: PrimeField) -> Self {
        Self::with_capacity(field, MAX_NTT_ORDER)
    }

    /// Ring whose native transform is just long enough for products of
    /// `max_len` coefficients, when GF(q) has such a subgroup.
    pub(crate) fn with_capacity(field: PrimeField, max_len: usize) -> Self {
        let order = native_order(&field.group_order_factorization(), max_len);
        if order < MIN_NTT_ORDER {
            return PolyRing { field, ntt: None, lengths: Vec::new() };
        }
        let g = field.find_primitive_element().value();
        let root = field.pow(g, (field.modulus() - 1) / order as u64);
        Self::from_table(field, RootTable::new(field, root, order))
    }

    /// Reuses the domain's twiddles; no extra powers are computed when the
    /// domain size is itself smooth.
    pub(crate) fn from_domain(domain: &EvaluationDomain) -> Self {
        let order = native_order(domain.factorization(), usize::MAX);
        if order < MIN_NTT_ORDER {
            return PolyRing { field: domain.field(), ntt: None, lengths: Vec::new() };
        }
        Self::from_table(domain.field(), domain.table().subgroup(order))
    }

    fn from_table(field: PrimeField, table: RootTable) -> Self {
        let lengths = divisors(table.order());
        PolyRing { field, ntt: Some(table), lengths }
    }

    pub(crate) fn field(&self) -> PrimeField {
        self.field
    }

    pub(crate) fn strategy(&self, la: usize, lb: usize) -> MulStrategy {
        if la.min(lb) <= SCHOOLBOOK_CUTOFF {
            return MulStrategy::Schoolbook;
        }
        let need = la + lb - 1;
        let len = need.next_power_of_two();
        let log = len.trailing_zeros();
        if len <= CRT_MAX_LEN && log <= ntt::two_adicity(self.field) {
            return MulStrategy::Radix2(log);
        }
        let q = self.field.modulus() as u128;
        let bound = (la.min(lb) as u128).checked_mul(q - 1).and_then(|x| x.checked_mul(q - 1));
        let modulus_product: u128 = CRT_PRIMES.iter().map(|&p| p as u128).product();
        if len <= CRT_MAX_LEN && bound.is_some_and(|b| b < modulus_product) {
            return MulStrategy::CrtNtt(len);
        }
        if self.ntt.is_some() {
            let i = self.lengths.partition_point(|&l| l < need);
            if let Some(&l) = self.lengths.get(i) {
                return MulStrategy::NativeNtt(l);
            }
        }
        MulStrategy::Schoolbook
    }

    pub(crate) fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let need = a.len() + b.len() - 1;
        let mut out = match self.strategy(a.len(), b.len()) {
            MulStrategy::Schoolbook => schoolbook(self.field, a, b),
            MulStrategy::Radix2(log) => ntt::plan(self.field, log).cyclic_mul(a, b),
            MulStrategy::NativeNtt(len) => {
                cyclic_mul(self.ntt.as_ref().expect("native table"), self.field, a, b, len)
            }
            MulStrategy::CrtNtt(len) => crt_mul(self.field, a, b, len),
        };
        out.truncate(need);
        out
    }

    /// `(a · b) mod x^n`.
    pub(crate) fn mul_trunc(&self, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
        let a = &a[..a.len().min(n)];
        let b = &b[..b.len().min(n)];
        let mut out = self.mul(a, b);
        out.truncate(n);
        out
    }

    /// `1 / f mod x^n` by Newton iteration; `f[0]` must be nonzero.
    pub(crate) fn series_inverse(&self, f: &[u64], n: usize) -> Vec<u64> {
        let fld = self.field;
        let mut g = vec![fld.inv(f[0]).expect("series with zero constant term")];
        let mut prec = 1;
        while prec < n {
            let np = (2 * prec).min(n);
            let mut e = self.mul_trunc(f, &g, np);
            e.resize(np, 0);
            for x in e.iter_mut() {
                *x = fld.neg(*x);
            }
            e[0] = fld.add(e[0], 2 % fld.modulus());
            g = self.mul_trunc(&g, &e, np);
            g.resize(np, 0);
            prec = np;
        }
        g.truncate(n);
        g
    }

    pub(crate) fn divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let db = deg(b);
        assert!(db >= 0, "division by the zero polynomial");
        let db = db as usize;
        let da = deg(a);
        if da < db as isize {
            let mut r = a.to_vec();
            trim(&mut r);
            return (Vec::new(), r);
        }
        let da = da as usize;
        let qlen = da - db + 1;
        if db < NEWTON_CUTOFF || qlen < NEWTON_CUTOFF {
            return divrem_schoolbook(self.field, &a[..=da], &b[..=db]);
        }
        let ra: Vec<u64> = a[..=da].iter().rev().take(qlen).copied().collect();
        let rb: Vec<u64> = b[..=db].iter().rev().copied().collect();
        let inv = self.series_inverse(&rb, qlen);
        let mut quot = self.mul_trunc(&ra, &inv, qlen);
        quot.resize(qlen, 0);
        quot.reverse();
        trim(&mut quot);
        let prod = self.mul(&quot, &b[..=db]);
        let mut rem: Vec<u64> = (0..db).map(|i| self.field.sub(a[i], prod[i])).collect();
        trim(&mut rem);
        (quot, rem)
    }

    fn apply(&self, m: &PolyMat, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let f = self.field;
        let c = add_slices(f, &self.mul(&m[0][0], a), &self.mul(&m[0][1], b));
        let d = add_slices(f, &self.mul(&m[1][0], a), &self.mul(&m[1][1], b));
        (c, d)
    }

    fn mat_mul(&self, x: &PolyMat, y: &PolyMat) -> PolyMat {
        let f = self.field;
        let e = |i: usize, j: usize| {
            add_slices(f, &self.mul(&x[i][0], &y[0][j]), &self.mul(&x[i][1], &y[1][j]))
        };
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    /// Left-multiplies by `[[0, 1], [1, -q]]`, one Euclidean step.
    fn step(&self, m: PolyMat, quot: &[u64]) -> PolyMat {
        let f = self.field;
        let [[m00, m01], [m10, m11]] = m;
        let n0 = sub_slices(f, &m00, &self.mul(quot, &m10));
        let n1 = sub_slices(f, &m01, &self.mul(quot, &m11));
        [[m10, m11], [n0, n1]]
    }

    /// Half-GCD. For `deg a > deg b` with threshold `m = ⌈deg a / 2⌉`, returns
    /// the cofactor matrix of consecutive Euclidean remainders `(c, d)` of
    /// `(a, b)` with `deg c ≥ m > deg d`:
    ///
    /// ```text
    /// mat = [[s_{j-1}, t_{j-1}], [s_j, t_j]],   c = r_{j-1},   d = r_j
    /// ```
    pub(crate) fn hgcd(&self, a: &[u64], b: &[u64]) -> Hgcd {
        let da = deg(a);
        assert!(da >= 0 && da > deg(b), "hgcd needs deg a > deg b");
        let a = &a[..=da as usize];
        let b = &b[..(deg(b) + 1) as usize];
        let m = (da as usize).div_ceil(2);
        if deg(b) < m as isize {
            return Hgcd { mat: identity(), c: a.to_vec(), d: b.to_vec() };
        }
        if (da as usize) <= HGCD_CUTOFF {
            return self.hgcd_naive(a, b, m);
        }
        let first = self.hgcd(&a[m..], &b[m..]);
        let mut mat = first.mat;
        let (c, d) = self.apply(&mat, a, b);
        if deg(&d) < m as isize {
            return Hgcd { mat, c, d };
        }
        let (quot, rem) = self.divrem(&c, &d);
        mat = self.step(mat, &quot);
        let (c, d) = (d, rem);
        if deg(&d) < m as isize {
            return Hgcd { mat, c, d };
        }
        let k = 2 * m - deg(&c) as usize;
        let second = self.hgcd(&c[k..], &d[k..]);
        let (c2, d2) = self.apply(&second.mat, &c, &d);
        let mat = self.mat_mul(&second.mat, &mat);
        Hgcd { mat, c: c2, d: d2 }
    }

    fn hgcd_naive(&self, a: &[u64], b: &[u64], m: usize) -> Hgcd {
        let mut mat = identity();
        let (mut c, mut d) = (a.to_vec(), b.to_vec());
        while deg(&d) >= m as isize {
            let (quot, rem) = divrem_schoolbook(self.field, &c, &d);
            mat = self.step(mat, &quot);
            c = std::mem::replace(&mut d, rem);
        }
        Hgcd { mat, c, d }
    }
}

fn identity() -> PolyMat {
    [[vec![1], Vec::new()], [Vec::new(), vec![1]]]
}

/// Largest divisor of the group order that is `DEFAULT_SMOOTHNESS_BOUND`-smooth
/// and at most `MAX_NTT_ORDER`, shrunk to the smallest such divisor `≥ want`.
fn native_order(factorization: &[(u64, u32)], want: usize) -> usize {
    let mut parts: Vec<u64> = Vec::new();
    for &(p, e) in factorization {
        if p <= DEFAULT_SMOOTHNESS_BOUND {
            parts.extend(std::iter::repeat(p).take(e as usize));
        }
    }
    parts.sort_unstable();
    let mut order: u64 = parts.iter().product();
    while order > MAX_NTT_ORDER as u64 {
        order /= parts.pop().expect("nonempty");
    }
    let order = order as usize;
    let divs = divisors(order);
    let i = divs.partition_point(|&d| d < want);
    divs.get(i).copied().unwrap_or(order)
}

fn divisors(n: usize) -> Vec<usize> {
    let mut out = vec![1usize];
    for (p, e) in crate::field::factorize(n as u64) {
        let p = p as usize;
        let base = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|&d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

fn cyclic_mul(table: &RootTable, f: PrimeField, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    let mut fa = a.to_vec();
    fa.resize(len, 0);
    let mut fb = b.to_vec();
    fb.resize(len, 0);
    let ta = table.transform(&fa, false);
    let tb = table.transform(&fb, false);
    let prod: Vec<u64> = ta.iter().zip(&tb).map(|(&x, &y)| f.mul(x, y)).collect();
    let mut out = table.transform(&prod, true);
    let inv_len = f.inv(f.reduce(len as u64)).expect("length is a unit");
    for x in &mut out {
        *x = f.mul(*x, inv_len);
    }
    out
}

fn crt_mul(f: PrimeField, a: &[u64], b: &[u64], len: usize) -> Vec<u64> {
    let log = len.trailing_zeros();
    let residues: Vec<Vec<u64>> = CRT_PRIMES
        .iter()
        .map(|&p| {
            let pf = PrimeField::new(p).expect("auxiliary prime");
            let ra: Vec<u64> = a.iter().map(|&x| pf.reduce(x)).collect();
            let rb: Vec<u64> = b.iter().map(|&x| pf.reduce(x)).collect();
            ntt::plan(pf, log).cyclic_mul(&ra, &rb)
        })
        .collect();
    let [p1, p2, p3] = CRT_PRIMES;
    let f2 = PrimeField::new(p2).expect("auxiliary prime");
    let f3 = PrimeField::new(p3).expect("auxiliary prime");
    let inv_p1_mod_p2 = f2.inv(p1 % p2).expect("coprime");
    let p1p2_mod_p3 = f3.mul(p1 % p3, p2 % p3);
    let inv_p1p2_mod_p3 = f3.inv(p1p2_mod_p3).expect("coprime");
    let q = f.modulus() as u128;
    (0..len)
        .map(|i| {
            let (x1, x2, x3) = (residues[0][i], residues[1][i], residues[2][i]);
            let v1 = x1;
            let v2 = f2.mul(f2.sub(x2, v1 % p2), inv_p1_mod_p2);
            let partial = (v1 as u128 + v2 as u128 * p1 as u128) % p3 as u128;
            let v3 = f3.mul(f3.sub(x3, partial as u64), inv_p1p2_mod_p3);
            let value = v1 as u128 + v2 as u128 * p1 as u128 + v3 as u128 * (p1 as u128 * p2 as u128);
            (value % q) as u64
        })
        .collect()
}
