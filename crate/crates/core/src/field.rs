//! Field contexts for the exact linear algebra.
//!
//! Elements are plain values; the arithmetic lives on a small context object
//! ([`Rationals`] or [`PrimeField`]) that every matrix and polynomial carries.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{is_prime, PrimeFieldElem, Rational};
use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn descriptor(&self) -> FieldDescriptor;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// A random element; over Q an integer in `[-bound, bound]`, over F_p uniform.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// Image in `F_l` for a prime `l` of a characteristic-zero element that is
    /// integral at `l`; `None` otherwise and for every prime field.
    fn residue_mod(&self, _a: &Self::Elem, _l: u64) -> Option<u64> {
        None
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        Rational::from(v)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.recip().ok()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn format_elem(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<Rational> {
        s.parse()
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Rational {
        Rational::from(rng.gen_range(-bound..=bound))
    }
    fn residue_mod(&self, a: &Rational, l: u64) -> Option<u64> {
        let lb = BigInt::from(l);
        let residue = |z: &BigInt| z.mod_floor(&lb).to_u64().expect("residue below l");
        let den = PrimeFieldElem::new(residue(a.denom()), l).inverse().ok()?;
        Some((PrimeFieldElem::new(residue(a.numer()), l) * den).value())
    }
}

/// The prime field `F_p`. Elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::InvalidArgument(format!("{p} is not prime")))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: u64) -> PrimeFieldElem {
        PrimeFieldElem::new(v, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        self.elem(*a).inverse().ok().map(|x| x.value())
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    /// Integers and fractions are both accepted; a fraction needs a unit denominator.
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let r: Rational = s.parse()?;
        let pb = BigInt::from(self.p);
        let residue = |z: &BigInt| z.mod_floor(&pb).to_u64().expect("residue below p");
        let num = residue(r.numer());
        let den = residue(r.denom());
        let den_inv =
            self.inv(&den).ok_or_else(|| Error::Parse(format!("{s:?}: denominator not invertible mod {}", self.p)))?;
        Ok(self.mul(&num, &den_inv))
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u64 {
        rng.gen_range(0..self.p)
    }
}

/// Which field a serialized matrix lives over: `"Q"` or `"Fp:<p>"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => f.write_str("Q"),
            FieldDescriptor::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldDescriptor::Rationals);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|t| t.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field descriptor {s:?}")))?;
        PrimeField::new(p).map_err(|_| Error::Parse(format!("{s:?}: modulus is not prime")))?;
        Ok(FieldDescriptor::Prime(p))
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
