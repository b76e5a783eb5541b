//! Arithmetic in the prime field GF(p).
//!
//! Residues are stored as canonical least nonnegative `u64` values. Products
//! go through `u128`, which is enough for every modulus up to 2^61.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Largest modulus accepted by [`PrimeModulus::new`].
pub const MAX_MODULUS: u64 = 1 << 61;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} outside the supported range 2..=2^61")]
    OutOfRange(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
}

/// A verified prime `p` with `2 <= p <= 2^61`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..=MAX_MODULUS).contains(&p) {
            return Err(FieldError::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeModulus(p))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    pub fn reduce_i128(self, v: i128) -> u64 {
        v.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm on integers.
    pub fn inv(self, a: u64) -> Option<u64> {
        let a = a % self.0;
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i128, a as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce_i128(s0))
    }

    pub fn elem(self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.0,
            modulus: self,
        }
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every `n < 3.3 * 10^24`, which covers `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// An element of GF(p) carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    pub fn new(value: u64, modulus: PrimeModulus) -> Self {
        modulus.elem(value)
    }

    pub fn zero(modulus: PrimeModulus) -> Self {
        modulus.elem(0)
    }

    pub fn one(modulus: PrimeModulus) -> Self {
        modulus.elem(1)
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn check(self, other: Self) -> Result<PrimeModulus, FieldError> {
        if self.modulus != other.modulus {
            return Err(FieldError::ModulusMismatch(
                self.modulus.get(),
                other.modulus.get(),
            ));
        }
        Ok(self.modulus)
    }

    pub fn checked_add(self, other: Self) -> Result<Self, FieldError> {
        let m = self.check(other)?;
        Ok(m.elem(m.add(self.value, other.value)))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self, FieldError> {
        let m = self.check(other)?;
        Ok(m.elem(m.sub(self.value, other.value)))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self, FieldError> {
        let m = self.check(other)?;
        Ok(m.elem(m.mul(self.value, other.value)))
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        self.modulus
            .inv(self.value)
            .map(|v| self.modulus.elem(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn pow(self, e: u64) -> Self {
        self.modulus.elem(self.modulus.pow(self.value, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on mismatched moduli; use the `checked_*` methods
// where the moduli are not known to agree.
impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs)
            .expect("field elements with different moduli")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs)
            .expect("field elements with different moduli")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs)
            .expect("field elements with different moduli")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        self.modulus.elem(self.modulus.neg(self.value))
    }
}

/// Field operations over an explicit context, so that the same dense
/// routines run over GF(p) and over its extensions.
pub trait Field: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> PrimeModulus;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_base(&self, v: u64) -> Self::Elem;
    /// The base-field value of `a`, when `a` lies in GF(p).
    fn to_base(&self, a: &Self::Elem) -> Option<u64>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

impl Field for PrimeModulus {
    type Elem = u64;

    fn characteristic(&self) -> PrimeModulus {
        *self
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_base(&self, v: u64) -> u64 {
        v % self.0
    }
    fn to_base(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        PrimeModulus::add(*self, *a, *b)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        PrimeModulus::sub(*self, *a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        PrimeModulus::mul(*self, *a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        PrimeModulus::neg(*self, *a)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        PrimeModulus::inv(*self, *a)
    }
}
