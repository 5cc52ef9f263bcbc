//! Iterative power-of-two cyclic convolution. The forward pass is
//! decimation-in-frequency and leaves its output bit-reversed; the inverse is
//! decimation-in-time from bit-reversed input, so no permutation is needed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::PrimeField;

pub(crate) struct Radix2 {
    field: PrimeField,
    log: u32,
    /// `fwd[h + j] = ω_{2h}^j` for every power of two `h < 2^log`.
    fwd: Vec<u64>,
    inv: Vec<u64>,
    len_inv: u64,
}

/// Two-adic valuation of `q - 1`.
pub(crate) fn two_adicity(field: PrimeField) -> u32 {
    (field.modulus() - 1).trailing_zeros()
}

/// Shared table for length `2^log`; `log` must not exceed [`two_adicity`].
type PlanCache = Mutex<HashMap<(u64, u32), Arc<Radix2>>>;

pub(crate) fn plan(field: PrimeField, log: u32) -> Arc<Radix2> {
    static CACHE: OnceLock<PlanCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (field.modulus(), log);
    if let Some(p) = cache.lock().expect("ntt cache").get(&key) {
        return p.clone();
    }
    let p = Arc::new(Radix2::new(field, log));
    cache.lock().expect("ntt cache").entry(key).or_insert(p).clone()
}

impl Radix2 {
    fn new(field: PrimeField, log: u32) -> Self {
        assert!(log <= two_adicity(field), "2^{log} does not divide q - 1");
        let q = field.modulus();
        let g = field.find_primitive_element().value();
        let n = 1usize << log;
        let omega = field.pow(g, (q - 1) >> log);
        let omega_inv = field.inv(omega).expect("nonzero");
        let table = |w: u64| {
            let mut t = vec![0u64; n.max(2)];
            let mut h = n / 2;
            let mut wh = w;
            // wh has order 2h
            while h >= 1 {
                let mut acc = 1u64;
                for j in 0..h {
                    t[h + j] = acc;
                    acc = field.mul(acc, wh);
                }
                wh = field.mul(wh, wh);
                h /= 2;
            }
            t
        };
        let len_inv = field.inv(field.reduce(n as u64)).expect("unit");
        Radix2 { field, log, fwd: table(omega), inv: table(omega_inv), len_inv }
    }

    pub(crate) fn len(&self) -> usize {
        1 << self.log
    }

    fn forward(&self, a: &mut [u64]) {
        let f = self.field;
        let mut h = a.len() / 2;
        while h >= 1 {
            let w = &self.fwd[h..2 * h];
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for ((x, y), &wj) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
                    let (u, v) = (*x, *y);
                    *x = f.add(u, v);
                    *y = f.mul(f.sub(u, v), wj);
                }
            }
            h /= 2;
        }
    }

    fn inverse(&self, a: &mut [u64]) {
        let f = self.field;
        let mut h = 1;
        while h < a.len() {
            let w = &self.inv[h..2 * h];
            for block in a.chunks_exact_mut(2 * h) {
                let (lo, hi) = block.split_at_mut(h);
                for ((x, y), &wj) in lo.iter_mut().zip(hi.iter_mut()).zip(w) {
                    let u = *x;
                    let v = f.mul(*y, wj);
                    *x = f.add(u, v);
                    *y = f.sub(u, v);
                }
            }
            h *= 2;
        }
    }

    /// `a · b mod (x^len - 1)` for inputs already reduced mod q.
    pub(crate) fn cyclic_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.len();
        let f = self.field;
        let mut fa = a.to_vec();
        fa.resize(n, 0);
        self.forward(&mut fa);
        if std::ptr::eq(a, b) {
            for x in fa.iter_mut() {
                *x = f.mul(*x, *x);
            }
        } else {
            let mut fb = b.to_vec();
            fb.resize(n, 0);
            self.forward(&mut fb);
            for (x, &y) in fa.iter_mut().zip(&fb) {
                *x = f.mul(*x, y);
            }
        }
        self.inverse(&mut fa);
        for x in fa.iter_mut() {
            *x = f.mul(*x, self.len_inv);
        }
        fa
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::schoolbook;
    use crate::rng::SplitMix64;

    #[test]
    fn matches_schoolbook() {
        let mut rng = SplitMix64::new(4);
        for q in [17u64, 257, 65_537, 998_244_353, 18_446_744_069_414_584_321] {
            let f = PrimeField::new(q).unwrap();
            for log in 1..=8u32.min(two_adicity(f)) {
                let n = 1usize << log;
                let la = 1 + rng.below(n as u64 / 2) as usize;
                let lb = 1 + rng.below(n as u64 / 2) as usize;
                let a: Vec<u64> = (0..la).map(|_| rng.below(q)).collect();
                let b: Vec<u64> = (0..lb).map(|_| rng.below(q)).collect();
                let mut want = schoolbook(f, &a, &b);
                want.resize(n, 0);
                assert_eq!(plan(f, log).cyclic_mul(&a, &b), want, "q={q} log={log}");
            }
        }
    }
}
