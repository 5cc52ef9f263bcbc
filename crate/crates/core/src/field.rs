//! Exact arithmetic in GF(q) for a prime `q < 2^64`.
//!
//! [`PrimeField`] is a small `Copy` handle around the modulus. Hot loops in the
//! rest of the crate work on canonical residues (`u64` in `[0, q)`) through the
//! raw methods on `PrimeField`; [`FieldElement`] is the checked, field-tagged
//! value type used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Errors raised by field construction and checked element arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// The modulus is below 3 or fails the primality test.
    NotPrime(u64),
    /// Two operands belong to different fields.
    FieldMismatch { left: u64, right: u64 },
    /// Inversion (or a negative power) of zero.
    DivisionByZero,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(q) => write!(f, "modulus not prime: {q}"),
            FieldError::FieldMismatch { left, right } => {
                write!(f, "field mismatch: GF({left}) vs GF({right})")
            }
            FieldError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for FieldError {}

/// The prime field GF(q).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    modulus: u64,
    // floor(2^64 / q), used for Barrett reduction when q < 2^32
    barrett: u64,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.modulus)
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = FieldError;

    fn try_from(q: u64) -> Result<Self, Self::Error> {
        PrimeField::new(q)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.modulus
    }
}

impl PrimeField {
    /// Builds GF(q), rejecting `q < 3` and composite moduli.
    pub fn new(modulus: u64) -> Result<Self, FieldError> {
        if modulus < 3 || !is_prime(modulus) {
            return Err(FieldError::NotPrime(modulus));
        }
        let barrett = if modulus <= u32::MAX as u64 { u64::MAX / modulus } else { 0 };
        Ok(PrimeField { modulus, barrett })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The element with residue `value mod q`.
    pub fn elem(&self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.modulus,
            field: *self,
        }
    }

    /// Maps a signed integer to its residue.
    pub fn elem_i64(&self, value: i64) -> FieldElement {
        let m = self.modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        FieldElement { value: v, field: *self }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// Iterates over all q elements in residue order. Only sensible for small q.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.modulus).map(move |v| self.elem(v))
    }

    // Raw residue arithmetic. Inputs must already be canonical.

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.modulus
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.modulus && b < self.modulus);
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= self.modulus {
            s.wrapping_sub(self.modulus)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.modulus && b < self.modulus);
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.modulus)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.modulus <= u32::MAX as u64 {
            let x = a * b;
            let qhat = ((x as u128 * self.barrett as u128) >> 64) as u64;
            let r = x - qhat * self.modulus;
            if r >= self.modulus {
                r - self.modulus
            } else {
                r
            }
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    /// `a * b + c`.
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        self.add(self.mul(a, b), c)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat exponentiation; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.modulus - 2))
        }
    }

    /// Prime factorization of `q - 1` as `(prime, exponent)` pairs, ascending.
    pub fn group_order_factorization(&self) -> Vec<(u64, u32)> {
        factorize(self.modulus - 1)
    }

    /// Smallest `g` in `[2, q-1]` of multiplicative order `q - 1` (or 2 when q = 3).
    pub fn find_primitive_element(&self) -> FieldElement {
        let n = self.modulus - 1;
        let primes: Vec<u64> = factorize(n).into_iter().map(|(p, _)| p).collect();
        (2..self.modulus)
            .find(|&g| primes.iter().all(|&p| self.pow(g, n / p) != 1))
            .map(|g| self.elem(g))
            .expect("the multiplicative group of a prime field is cyclic")
    }
}

/// A canonical residue tagged with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: PrimeField,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &FieldElement) -> Result<PrimeField, FieldError> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(FieldError::FieldMismatch {
                left: self.field.modulus,
                right: other.field.modulus,
            })
        }
    }

    pub fn try_add(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same_field(&other)?;
        Ok(FieldElement { value: f.add(self.value, other.value), field: f })
    }

    pub fn try_sub(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same_field(&other)?;
        Ok(FieldElement { value: f.sub(self.value, other.value), field: f })
    }

    pub fn try_mul(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let f = self.same_field(&other)?;
        Ok(FieldElement { value: f.mul(self.value, other.value), field: f })
    }

    pub fn try_div(self, other: FieldElement) -> Result<FieldElement, FieldError> {
        let inv = other.inv()?;
        self.try_mul(inv)
    }

    pub fn inv(self) -> Result<FieldElement, FieldError> {
        let v = self.field.inv(self.value).ok_or(FieldError::DivisionByZero)?;
        Ok(FieldElement { value: v, field: self.field })
    }

    /// `self^e`; negative exponents invert first.
    pub fn pow(self, e: i64) -> Result<FieldElement, FieldError> {
        let base = if e < 0 { self.inv()? } else { self };
        let v = self.field.pow(base.value, e.unsigned_abs());
        Ok(FieldElement { value: v, field: self.field })
    }

    /// Smallest `m >= 1` with `self^m = 1`. Always divides `q - 1`.
    pub fn multiplicative_order(self) -> Result<u64, FieldError> {
        if self.value == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let f = self.field;
        let mut order = f.modulus - 1;
        for (p, e) in factorize(order) {
            for _ in 0..e {
                if f.pow(self.value, order / p) == 1 {
                    order /= p;
                } else {
                    break;
                }
            }
        }
        Ok(order)
    }
}

// Operator forms panic on a field mismatch; use the `try_*` methods to recover.

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.try_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.try_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.try_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: self.field.neg(self.value), field: self.field }
    }
}

#[inline]
fn mulmod64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod64(acc, base, m);
        }
        base = mulmod64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve primes as witnesses cover all
/// of `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = powmod64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n <= 1 {
        return Vec::new();
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut p = 41;
    while p * p <= n && p < 1 << 16 {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += 2;
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho. `n` must be an odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn add_examples() {
        let f11 = f(11);
        assert_eq!((f11.elem(8) + f11.elem(4)).value(), 1);
        let f5 = f(5);
        assert_eq!((f5.elem(3) + f5.elem(2)).value(), 0);
        for x in f11.elements() {
            assert_eq!(f11.zero() + x, x);
        }
    }

    #[test]
    fn mul_examples() {
        let f11 = f(11);
        assert_eq!((f11.elem(2) * f11.elem(6)).value(), 1);
        assert_eq!((f11.elem(7) * f11.elem(7)).value(), 5);
        for x in f11.elements() {
            assert_eq!(f11.one() * x, x);
            assert_eq!((x - x).value(), 0);
            assert_eq!((x + -x).value(), 0);
        }
    }

    #[test]
    fn inv_examples() {
        let f11 = f(11);
        assert_eq!(f11.one().inv().unwrap().value(), 1);
        assert_eq!(f11.elem(2).inv().unwrap().value(), 6);
        assert_eq!(f11.elem(10).inv().unwrap().value(), 10);
        assert_eq!(f11.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn pow_examples() {
        let f11 = f(11);
        for x in f11.elements() {
            assert_eq!(x.pow(0).unwrap().value(), 1);
        }
        assert_eq!(f11.elem(2).pow(10).unwrap().value(), 1);
        assert_eq!(f11.elem(2).pow(5).unwrap().value(), 10);
        assert_eq!(f11.elem(2).pow(-1).unwrap().value(), 6);
        assert_eq!(f11.zero().pow(-2), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = f(11).elem(3);
        let b = f(13).elem(3);
        assert_eq!(a.try_add(b), Err(FieldError::FieldMismatch { left: 11, right: 13 }));
        assert!(a.try_mul(b).is_err());
        assert!(a.try_sub(b).is_err());
    }

    #[test]
    fn construction_rejects_composites() {
        assert_eq!(PrimeField::new(12), Err(FieldError::NotPrime(12)));
        assert_eq!(PrimeField::new(2), Err(FieldError::NotPrime(2)));
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(561).is_err()); // Carmichael
        assert!(PrimeField::new(786433).is_ok());
        assert!(PrimeField::new(18446744073709551557).is_ok()); // largest 64-bit prime
        assert!(PrimeField::new(3_215_031_751).is_err()); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn primality_matches_sieve() {
        let limit = 20_000usize;
        let mut sieve = vec![true; limit];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..limit {
            if sieve[i] {
                for j in (i * i..limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (n, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(n as u64), p, "n = {n}");
        }
    }

    #[test]
    fn factorization_recombines() {
        for n in [2u64, 10, 46, 256, 7680, 65536, 786432, 600851475143, u64::MAX - 1] {
            let fs = factorize(n);
            let prod: u128 = fs.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(prod, n as u128);
            assert!(fs.iter().all(|&(p, _)| is_prime(p)));
        }
        assert_eq!(factorize(46), vec![(2, 1), (23, 1)]);
    }

    #[test]
    fn primitive_element_examples() {
        assert_eq!(f(11).find_primitive_element().value(), 2);
        assert_eq!(f(5).find_primitive_element().value(), 2);
        assert_eq!(f(3).find_primitive_element().value(), 2);
        assert_eq!(f(7).find_primitive_element().value(), 3);
    }

    #[test]
    fn multiplicative_order_examples() {
        let f11 = f(11);
        assert_eq!(f11.one().multiplicative_order().unwrap(), 1);
        assert_eq!(f11.elem(2).multiplicative_order().unwrap(), 10);
        assert_eq!(f11.elem(10).multiplicative_order().unwrap(), 2);
        assert!(f11.zero().multiplicative_order().is_err());
    }

    #[test]
    fn primitive_elements_have_full_order() {
        for q in [3u64, 5, 7, 11, 13, 47, 257, 7681, 65537, 786433, 998244353] {
            let field = f(q);
            let g = field.find_primitive_element();
            assert_eq!(g.multiplicative_order().unwrap(), q - 1, "q = {q}");
        }
    }

    #[test]
    fn exhaustive_inverse_and_fermat_small_fields() {
        for q in [3u64, 5, 7, 11, 13, 31, 47, 257] {
            let field = f(q);
            for a in field.elements().skip(1) {
                assert_eq!((a * a.inv().unwrap()).value(), 1);
                assert_eq!(a.pow(q as i64 - 1).unwrap().value(), 1);
                let ord = a.multiplicative_order().unwrap();
                assert_eq!((q - 1) % ord, 0);
            }
        }
    }

    proptest! {
        #[test]
        fn inverse_randomized_large_fields(a in 1u64..u64::MAX) {
            for q in [786433u64, 2305843009213693951, 18446744073709551557] {
                let field = f(q);
                let x = field.elem(a);
                prop_assume!(!x.is_zero());
                prop_assert_eq!((x * x.inv().unwrap()).value(), 1);
                prop_assert_eq!(field.pow(x.value(), q - 1), 1);
            }
        }

        #[test]
        fn outputs_are_canonical(a in any::<u64>(), b in any::<u64>()) {
            for q in [5u64, 65537, 18446744073709551557] {
                let field = f(q);
                let (x, y) = (field.elem(a), field.elem(b));
                for v in [x + y, x - y, x * y, -x] {
                    prop_assert!(v.value() < q);
                }
            }
        }
    }
}
