use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A residue class modulo a prime.
///
/// The modulus travels with the value; mixing moduli in one operation is a bug
/// and panics in debug builds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElem {
    modulus: u64,
    value: u64,
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl PrimeFieldElem {
    /// Reduces `value` modulo `p`. Primality of `p` is the caller's responsibility.
    pub fn new(value: u64, p: u64) -> Self {
        PrimeFieldElem { modulus: p, value: value % p }
    }

    pub fn from_i64(value: i64, p: u64) -> Self {
        let v = (value as i128).rem_euclid(p as i128) as u64;
        PrimeFieldElem::new(v, p)
    }

    pub fn zero(p: u64) -> Self {
        PrimeFieldElem { modulus: p, value: 0 }
    }

    pub fn one(p: u64) -> Self {
        PrimeFieldElem::new(1, p)
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(acc, base, self.modulus);
            }
            base = mul_mod(base, base, self.modulus);
            e >>= 1;
        }
        PrimeFieldElem { modulus: self.modulus, value: acc }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm.
    pub fn inverse(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.value as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1, "modulus not prime or value not a unit");
        let m = self.modulus as i128;
        Ok(PrimeFieldElem { modulus: self.modulus, value: t0.rem_euclid(m) as u64 })
    }
}

impl Add for PrimeFieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u128 + rhs.value as u128;
        PrimeFieldElem { modulus: self.modulus, value: (s % self.modulus as u128) as u64 }
    }
}

impl Sub for PrimeFieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PrimeFieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        let v = if self.value == 0 { 0 } else { self.modulus - self.value };
        PrimeFieldElem { modulus: self.modulus, value: v }
    }
}

impl Mul for PrimeFieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        PrimeFieldElem { modulus: self.modulus, value: mul_mod(self.value, rhs.value, self.modulus) }
    }
}

impl fmt::Display for PrimeFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(PrimeFieldElem::new(2, 5).inverse().unwrap().value(), 3);
        assert_eq!(PrimeFieldElem::new(1, 13).inverse().unwrap().value(), 1);
        // 6 * 6 = 36 = 5 * 7 + 1
        assert_eq!(PrimeFieldElem::new(6, 7).inverse().unwrap().value(), 6);
        assert!(matches!(PrimeFieldElem::zero(7).inverse(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            for v in 1..p {
                let x = PrimeFieldElem::new(v, p);
                assert_eq!((x * x.inverse().unwrap()).value(), 1);
            }
        }
    }

    #[test]
    fn large_modulus_no_overflow() {
        let p = 18_446_744_073_709_551_557u64; // largest prime below 2^64
        let x = PrimeFieldElem::new(p - 1, p);
        assert_eq!((x * x).value(), 1);
        assert_eq!((x + x).value(), p - 2);
        assert_eq!((x * x.inverse().unwrap()).value(), 1);
    }

    #[test]
    fn signed_construction() {
        assert_eq!(PrimeFieldElem::from_i64(-1, 5).value(), 4);
        assert_eq!(PrimeFieldElem::from_i64(-10, 5).value(), 0);
    }
}
