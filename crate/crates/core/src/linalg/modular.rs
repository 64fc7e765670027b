//! Rank lower bounds by reduction modulo a prime.
//!
//! For a prime p ≡ 1 (mod N) below 2³¹ and a primitive N-th root of unity ω in 𝔽_p,
//! ζ_N ↦ ω is a ring map from the p-integral part of ℚ(ζ_N) onto 𝔽_p. The rank
//! of the reduced matrix never exceeds the rank over ℚ(ζ_N), so a full rank
//! modulo p certifies a zero kernel exactly.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::Scalar;

// moduli stay below 2^32, so products fit in a u64
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime p ≡ 1 (mod conductor) together with a primitive conductor-th root of unity.
#[derive(Clone, Copy, Debug)]
pub(crate) struct ModularField {
    pub p: u64,
    pub omega: u64,
}

impl ModularField {
    pub fn for_conductor(n: u32) -> ModularField {
        static CACHE: OnceLock<RwLock<HashMap<u32, ModularField>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.read().unwrap().get(&n) {
            return *f;
        }
        let n64 = n as u64;
        let mut k = ((1u64 << 31) - 1) / n64;
        let p = loop {
            let cand = k * n64 + 1;
            if is_prime_u64(cand) {
                break cand;
            }
            k -= 1;
        };
        let factors = prime_factors(n64);
        let omega = (2..)
            .map(|g| pow_mod(g, (p - 1) / n64, p))
            .find(|&w| factors.iter().all(|&q| pow_mod(w, n64 / q, p) != 1))
            .expect("primitive root exists");
        let field = ModularField { p, omega };
        cache.write().unwrap().insert(n, field);
        field
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = v % &p;
        if r < BigInt::zero() {
            r += &p;
        }
        r.to_u64().expect("residue fits")
    }

    /// Image of a scalar in 𝔽_p, or `None` when a denominator vanishes mod p.
    pub fn reduce(&self, s: &Scalar, conductor: u32) -> Option<u64> {
        if s.is_zero() {
            return Some(0);
        }
        let s = s.lift(conductor);
        let mut acc = 0u64;
        let mut w = 1u64;
        let step = if s.is_rational() { 0 } else { 1 };
        for c in s.coeffs() {
            if !c.is_zero() {
                let num = self.reduce_int(c.numer());
                let den = self.reduce_int(c.denom());
                if den == 0 {
                    return None;
                }
                let v = mul_mod(num, pow_mod(den, self.p - 2, self.p), self.p);
                acc = (acc + mul_mod(v, w, self.p)) % self.p;
            }
            if step == 1 {
                w = mul_mod(w, self.omega, self.p);
            }
        }
        Some(acc)
    }
}

/// Rank modulo a prime of the sparse rows, each given as (column, value) pairs
/// over `ncols` columns. `None` if some entry cannot be reduced.
pub(crate) fn rank_mod_p(rows: &[Vec<(usize, Scalar)>], ncols: usize, conductor: u32) -> Option<usize> {
    let field = ModularField::for_conductor(conductor);
    let p = field.p;
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut pivot_of = vec![usize::MAX; ncols];
    for row in rows {
        let mut v = vec![0u64; ncols];
        for (c, s) in row {
            v[*c] = (v[*c] + field.reduce(s, conductor)?) % p;
        }
        for col in 0..ncols {
            if v[col] == 0 {
                continue;
            }
            let b = pivot_of[col];
            if b == usize::MAX {
                let inv = pow_mod(v[col], p - 2, p);
                for x in v.iter_mut() {
                    *x = mul_mod(*x, inv, p);
                }
                pivot_of[col] = basis.len();
                basis.push((col, v));
                break;
            }
            let f = v[col];
            let brow = &basis[b].1;
            for (x, y) in v.iter_mut().zip(brow) {
                if *y != 0 {
                    *x = (*x + p - mul_mod(f, *y, p)) % p;
                }
            }
        }
        if basis.len() == ncols {
            break;
        }
    }
    Some(basis.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_field_has_primitive_root() {
        for n in [1u32, 3, 4, 5, 12] {
            let f = ModularField::for_conductor(n);
            assert_eq!((f.p - 1) % n as u64, 0);
            assert_eq!(pow_mod(f.omega, n as u64, f.p), 1);
            // ζ_n reduces to a root of Φ_n
            let z = Scalar::zeta(n);
            let img = f.reduce(&z, crate::scalar::normalize_conductor(n)).unwrap();
            assert_eq!(pow_mod(img, n as u64, f.p), 1);
        }
    }

    #[test]
    fn reduction_is_a_ring_map() {
        let n = 12;
        let f = ModularField::for_conductor(n);
        let a = &Scalar::zeta(3) + &Scalar::from_ratio(2, 7);
        let b = &Scalar::zeta(4) - &Scalar::from_int(5);
        let ab = &a * &b;
        let (ra, rb, rab) = (f.reduce(&a, n).unwrap(), f.reduce(&b, n).unwrap(), f.reduce(&ab, n).unwrap());
        assert_eq!(mul_mod(ra, rb, f.p), rab);
    }
}
