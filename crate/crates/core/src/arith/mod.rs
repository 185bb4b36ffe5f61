//! Exact scalars.
//!
//! p-adic numbers never appear as truncated digit expansions: every quantity in
//! scope is an exact rational, and p-adic questions are answered by valuation
//! queries ([`vp`]) and reduction ([`reduce_mod_p`]).

mod fp;
mod primes;
mod rational;
mod valuation;

pub use fp::PrimeFieldElem;
pub use primes::{factorize, is_prime, is_prime_power_of, largest_prime_factor, mod_pow, prime_divisors};
pub use rational::Rational;
pub use valuation::Valuation;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{p} is not prime")))
    }
}

fn int_valuation(x: &BigInt, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// The exponent of `p` in `x`; `+∞` for zero.
pub fn vp(x: &Rational, p: u64) -> Result<Valuation> {
    require_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(int_valuation(x.numer(), p) - int_valuation(x.denom(), p)))
}

/// Residue of a p-adic integer modulo `p`.
pub fn reduce_mod_p(x: &Rational, p: u64) -> Result<PrimeFieldElem> {
    match vp(x, p)? {
        Valuation::Infinite => Ok(PrimeFieldElem::zero(p)),
        Valuation::Finite(v) if v < 0 => Err(Error::NotPAdicInteger { value: x.to_string(), p, valuation: v }),
        Valuation::Finite(_) => {
            let pb = BigInt::from(p);
            let residue = |z: &BigInt| z.mod_floor(&pb).to_u64().expect("residue below p");
            let num = PrimeFieldElem::new(residue(x.numer()), p);
            let den = PrimeFieldElem::new(residue(x.denom()), p);
            // the denominator is a unit because the valuation is nonnegative
            Ok(num * den.inverse()?)
        }
    }
}
