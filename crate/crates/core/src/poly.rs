//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// Coefficients are stored lowest degree first with no trailing zeros; the
/// zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Polynomial<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Polynomial::new(field, cs)
    }

    pub fn zero(field: F) -> Self {
        Polynomial { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Polynomial::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Polynomial::new(field, vec![c])
    }

    /// `c · x^k`
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Polynomial::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Polynomial::monomial(field, one, 1)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        Polynomial::new(f.clone(), self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(f.clone(), (0..n).map(|k| f.add(&self.coeff(k), &rhs.coeff(k))).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(f.clone(), (0..n).map(|k| f.sub(&self.coeff(k), &rhs.coeff(k))).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Polynomial::new(f.clone(), out)
    }

    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let f = &self.field;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = f.inv(divisor.leading().unwrap()).expect("nonzero");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = f.mul(rem.last().unwrap(), &lc_inv);
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(&rem[k + i], &f.mul(&c, d));
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| f.is_zero(x)) && rem.len() > dd {
                let k = rem.len() - 1 - dd;
                quot[k] = f.zero();
                rem.pop();
            }
        }
        Ok((Polynomial::new(f.clone(), quot), Polynomial::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Polynomial::one(self.field.clone()).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `self(inner) mod modulus`, by Horner's rule.
    pub fn compose_mod(&self, inner: &Self, modulus: &Self) -> Result<Self> {
        let mut acc = Polynomial::zero(self.field.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Polynomial::constant(self.field.clone(), c.clone())).rem(modulus)?;
        }
        Ok(acc)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(A)` by Horner's rule.
    pub fn eval_matrix(&self, a: &Matrix<F>) -> Matrix<F> {
        let n = a.n();
        let mut acc = Matrix::zero(self.field.clone(), n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(a).add_scalar(c);
        }
        acc
    }

    /// Irreducibility over a prime field via `gcd(x^{p^i} − x, m) = 1` for
    /// `1 ≤ i ≤ deg/2`. Returns `None` over the rationals, where the test is
    /// not implemented.
    pub fn is_irreducible(&self) -> Option<bool> {
        let p = self.field.characteristic();
        if p == 0 {
            return None;
        }
        let d = match self.degree() {
            None | Some(0) => return Some(false),
            Some(1) => return Some(true),
            Some(d) => d,
        };
        let m = self.monic();
        let x = Polynomial::x(self.field.clone());
        let mut frob = x.clone();
        for _ in 1..=d / 2 {
            frob = frob.pow_mod(p, &m).expect("nonzero modulus");
            if m.gcd(&frob.sub(&x)).degree() != Some(0) {
                return Some(false);
            }
        }
        Some(true)
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = &self.field;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let formatted = f.format_elem(c);
            let (negative, cs) = match formatted.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, formatted.as_str()),
            };
            match (first, negative) {
                (true, true) => out.write_str("-")?,
                (true, false) => {}
                (false, true) => out.write_str(" - ")?,
                (false, false) => out.write_str(" + ")?,
            }
            first = false;
            let unit = cs == "1";
            match (k, unit) {
                (0, _) => out.write_str(cs)?,
                (1, true) => out.write_str("x")?,
                (1, false) => write!(out, "{cs}*x")?,
                (_, true) => write!(out, "x^{k}")?,
                (_, false) => write!(out, "{cs}*x^{k}")?,
            }
        }
        Ok(())
    }
}
