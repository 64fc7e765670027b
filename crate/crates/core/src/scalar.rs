//! Exact scalars: rationals and elements of cyclotomic fields ℚ(ζ_N).
//!
//! An element of ℚ(ζ_N) is stored as its residue modulo the N-th cyclotomic
//! polynomial, i.e. as `φ(N)` rational coefficients in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`. Rational values are always stored at conductor 1,
//! and conductors `N ≡ 2 (mod 4)` are folded to `N/2` because the fields
//! coincide. Operands with different conductors are lifted to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// Operation selector for [`field_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arithmetic(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<Scalar, ScalarError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

/// Coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.as_ref().clone();
    }
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    cache.write().unwrap().insert(n, Arc::new(num.clone()));
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Renders an integer polynomial such as `x^4 - x^2 + 1`.
pub fn format_int_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Folds `n ≡ 2 (mod 4)` onto `n / 2`; ℚ(ζ_{2m}) = ℚ(ζ_m) for odd m.
pub fn normalize_conductor(n: u32) -> u32 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

pub fn lcm_conductor(a: u32, b: u32) -> u32 {
    normalize_conductor(a.lcm(&b))
}

struct FieldData {
    phi: usize,
    /// ζ^k reduced modulo Φ_N for k in 0..N.
    powers: Vec<Vec<Rational>>,
}

fn field_data(n: u32) -> Arc<FieldData> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.read().unwrap().get(&n) {
        return d.clone();
    }
    let modulus = cyclotomic_polynomial(n);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![Rational::zero(); phi];
    cur[0] = Rational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by t and reduce with the monic modulus
        let top = cur[phi - 1].clone();
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1].clone();
        }
        cur[0] = Rational::zero();
        if !top.is_zero() {
            for i in 0..phi {
                cur[i] -= &top * Rational::from_integer(modulus[i].clone());
            }
        }
    }
    let data = Arc::new(FieldData { phi, powers });
    cache.write().unwrap().insert(n, data.clone());
    data
}

/// An exact element of ℚ(ζ_N).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

/// The coefficient field type used throughout the crate.
pub type Scalar = Cyclotomic;

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic { conductor: 1, coeffs: vec![r] }
    }

    /// The primitive root of unity ζ_n = exp(2πi/n).
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        assert!(n >= 1, "conductor must be positive");
        let k = k.rem_euclid(n as i64) as u32;
        let m = normalize_conductor(n);
        if m == n {
            let data = field_data(n);
            return Cyclotomic { conductor: n, coeffs: data.powers[k as usize].clone() }.demoted();
        }
        // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m
        let e = (m as i64 + 1) / 2 * k as i64;
        let base = Self::zeta_pow(m, e);
        if k % 2 == 1 {
            -base
        } else {
            base
        }
    }

    /// Reduces an arbitrary-length coefficient vector modulo Φ_n.
    pub fn from_poly(n: u32, coeffs: &[Rational]) -> Result<Self, ScalarError> {
        if n == 0 {
            return Err(ScalarError::ZeroConductor);
        }
        let mut acc = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(Self::zeta_pow(n, k as i64) * &Self::from_rational(c.clone()));
            }
        }
        Ok(acc)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<&Rational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Least common multiple of the denominators of all coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * Rational::from_integer(k.clone())).collect(),
        }
        .demoted()
    }

    fn demoted(mut self) -> Self {
        if self.conductor != 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            let c0 = std::mem::replace(&mut self.coeffs[0], Rational::zero());
            return Self::from_rational(c0);
        }
        self
    }

    /// Embeds into ℚ(ζ_n); requires `self.conductor() | n`. Rational values
    /// keep their conductor-1 representation.
    pub fn lift(&self, n: u32) -> Self {
        self.lift_raw(n).demoted()
    }

    fn lift_raw(&self, n: u32) -> Self {
        let n = normalize_conductor(n);
        assert!(n % self.conductor == 0, "conductor {} does not divide {}", self.conductor, n);
        if n == self.conductor {
            return self.clone();
        }
        let data = field_data(n);
        let step = (n / self.conductor) as usize;
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, p) in coeffs.iter_mut().zip(&data.powers[(i * step) % n as usize]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        Cyclotomic { conductor: n, coeffs }
    }

    fn with_common(&self, other: &Self) -> (Self, Self, u32) {
        let n = lcm_conductor(self.conductor, other.conductor);
        (self.lift_raw(n), other.lift_raw(n), n)
    }

    /// Applies the Galois automorphism ζ ↦ ζ^a; `a` must be coprime to the conductor.
    pub fn galois(&self, a: i64) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        let n = self.conductor;
        let data = field_data(n);
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (a * i as i64).rem_euclid(n as i64) as usize;
            for (slot, p) in coeffs.iter_mut().zip(&data.powers[k]) {
                if !p.is_zero() {
                    *slot += c * p;
                }
            }
        }
        Cyclotomic { conductor: n, coeffs }.demoted()
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // Dense solve of (multiplication by self) · c = e_0 over ℚ.
        let n = self.conductor;
        let phi = self.coeffs.len();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi);
        for j in 0..phi {
            let basis = Cyclotomic { conductor: n, coeffs: field_data(n).powers[j].clone() };
            cols.push(self.mul_raw(&basis).coeffs);
        }
        let mut aug: Vec<Vec<Rational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<Rational> = (0..phi).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !aug[r][col].is_zero()).expect("field element invertible");
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi {
                        let t = &f * &aug[col][c];
                        aug[r][c] -= t;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|mut r| r.pop().unwrap()).collect();
        Ok(Cyclotomic { conductor: n, coeffs }.demoted())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn add_same(&self, other: &Self, sign: bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| if sign { a + b } else { a - b })
            .collect();
        Cyclotomic { conductor: self.conductor, coeffs }.demoted()
    }

    fn mul_same(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            return Self::from_rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        self.mul_raw(other).demoted()
    }

    /// Product in ℚ(ζ_N) (N > 1) without folding rational results to conductor 1.
    fn mul_raw(&self, other: &Self) -> Self {
        let n = self.conductor;
        let data = field_data(n);
        let mut raw = vec![Rational::zero(); n as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[(i + j) % n as usize] += a * b;
                }
            }
        }
        let mut coeffs = vec![Rational::zero(); data.phi];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < data.phi {
                coeffs[k] += c;
            } else {
                for (slot, p) in coeffs.iter_mut().zip(&data.powers[k]) {
                    if !p.is_zero() {
                        *slot += c * p;
                    }
                }
            }
        }
        Cyclotomic { conductor: n, coeffs }
    }

    /// A total order on representations, used only for deterministic sorting.
    pub fn cmp_repr(&self, other: &Self) -> std::cmp::Ordering {
        self.conductor
            .cmp(&other.conductor)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        if self.conductor == 1 || other.conductor == 1 {
            // a stored non-rational is never equal to a rational
            return false;
        }
        let (a, b, _) = self.with_common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            if self.conductor == 1 {
                return Cyclotomic::from_rational(&self.coeffs[0] + &rhs.coeffs[0]);
            }
            return self.add_same(rhs, true);
        }
        let (a, b, _) = self.with_common(rhs);
        a.add_same(&b, true)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            if self.conductor == 1 {
                return Cyclotomic::from_rational(&self.coeffs[0] - &rhs.coeffs[0]);
            }
            return self.add_same(rhs, false);
        }
        let (a, b, _) = self.with_common(rhs);
        a.add_same(&b, false)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            return self.mul_same(rhs);
        }
        if self.conductor == 1 || rhs.conductor == 1 {
            let (r, c) = if self.conductor == 1 { (self, rhs) } else { (rhs, self) };
            let k = &r.coeffs[0];
            if k.is_zero() {
                return Cyclotomic::zero();
            }
            return Cyclotomic { conductor: c.conductor, coeffs: c.coeffs.iter().map(|x| x * k).collect() };
        }
        let (a, b, _) = self.with_common(rhs);
        a.mul_same(&b)
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on division by zero; use [`Cyclotomic::checked_div`] for a fallible version.
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Cyclotomic> for &'a Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<'a> AddAssign<&'a Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] += &rhs.coeffs[0];
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> SubAssign<&'a Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor == 1 && rhs.conductor == 1 {
            self.coeffs[0] -= &rhs.coeffs[0];
        } else {
            *self = &*self - rhs;
        }
    }
}

impl<'a> MulAssign<&'a Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(mut self) -> Cyclotomic {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::replace(c, Rational::zero());
        }
        self
    }
}

impl<'a> Neg for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conductor == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "zeta({}):[", self.conductor)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Cyclotomic {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        if let Some(rest) = t.strip_prefix("zeta(") {
            let (n, rest) = rest.split_once(')').ok_or_else(bad)?;
            let n: u32 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(ScalarError::ZeroConductor);
            }
            let body = rest
                .trim()
                .strip_prefix(':')
                .map(str::trim)
                .and_then(|r| r.strip_prefix('['))
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(bad)?;
            let coeffs = if body.trim().is_empty() {
                Vec::new()
            } else {
                body.split(',')
                    .map(|c| Rational::from_str(c.trim()).map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?
            };
            return Self::from_poly(n, &coeffs);
        }
        Rational::from_str(t).map(Self::from_rational).map_err(|_| bad())
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
