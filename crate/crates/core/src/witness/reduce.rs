//! Turning a commuting chain over `Q` into one over `F_p`.
//!
//! Scaling a matrix and adding scalars to it never change what it commutes
//! with, so each entry can be moved into `M_n(Z_(p))` with a nonscalar
//! reduction mod p before reducing.

use crate::arith::{reduce_mod_p, vp, Rational, Valuation};
use crate::error::{Error, Result};
use crate::field::{PrimeField, Rationals};
use crate::graph::CommutingChain;
use crate::matrix::Matrix;

fn min_valuation(x: &Matrix<Rationals>, p: u64) -> Result<i64> {
    let mut best = Valuation::Infinite;
    for e in x.entries() {
        best = best.min(vp(e, p)?);
    }
    best.finite().ok_or(Error::ScalarInput)
}

/// Multiply by `p^{−v}` where `v` is the least entry valuation.
fn unit_scale(x: &Matrix<Rationals>, p: u64) -> Result<Matrix<Rationals>> {
    let v = min_valuation(x, p)?;
    Ok(x.scale(&Rational::prime_power(p, -v)))
}

pub fn reduce_matrix(x: &Matrix<Rationals>, p: u64) -> Result<Matrix<PrimeField>> {
    let field = PrimeField::new(p)?;
    let data = x.entries().iter().map(|e| reduce_mod_p(e, p).map(|r| r.value())).collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(field, x.n(), data)
}

/// Normalize a nonscalar rational matrix to one with entries in `Z_(p)`,
/// some entry a unit, and nonscalar reduction mod p, using only scalings and
/// scalar shifts. Each shift `X ↦ (X − λ̂I)/p^ℓ` lowers the least valuation
/// of the off-diagonal entries and diagonal differences by `ℓ ≥ 1`; that
/// quantity is nonnegative after scaling, so the loop terminates.
pub fn normalize_matrix(x: &Matrix<Rationals>, p: u64) -> Result<Matrix<Rationals>> {
    PrimeField::new(p)?;
    if x.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let mut x = unit_scale(x, p)?;
    loop {
        let reduced = reduce_matrix(&x, p)?;
        let Some(lambda) = reduced.scalar_value() else {
            return Ok(x);
        };
        let shifted = x.add_scalar(&Rational::from(-(lambda as i64)));
        let l = min_valuation(&shifted, p)?;
        debug_assert!(l >= 1);
        x = shifted.scale(&Rational::prime_power(p, -l));
    }
}

/// Reduce a commuting chain over `Q` to one over `F_p` of the same length.
/// Endpoints are only rescaled and must already reduce to nonscalars; interior
/// entries are fully normalized.
pub fn reduce_chain(chain: &CommutingChain<Rationals>, p: u64) -> Result<CommutingChain<PrimeField>> {
    PrimeField::new(p)?;
    let last = chain.len().saturating_sub(1);
    let mut out = Vec::with_capacity(chain.len());
    for (i, x) in chain.entries().iter().enumerate() {
        if x.is_scalar() {
            return Err(Error::HypothesisViolated(format!("chain entry {i} is scalar")));
        }
        let reduced = if i == 0 || i == last {
            let r = reduce_matrix(&unit_scale(x, p)?, p)?;
            if r.is_scalar() {
                return Err(Error::HypothesisViolated(format!("endpoint {i} reduces to a scalar modulo {p}")));
            }
            r
        } else {
            reduce_matrix(&normalize_matrix(x, p)?, p)?
        };
        out.push(reduced);
    }
    CommutingChain::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_chain;

    fn rational_matrix(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(Rationals, rows).unwrap()
    }

    fn q(rows: &[&[&str]]) -> Matrix<Rationals> {
        let rows = rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect();
        Matrix::from_rows(Rationals, rows).unwrap()
    }

    #[test]
    fn already_normal() {
        let n = rational_matrix(&[&[0, 1], &[0, 0]]);
        assert_eq!(normalize_matrix(&n, 2).unwrap(), n);
    }

    #[test]
    fn shift_then_divide() {
        let x = rational_matrix(&[&[2, 4], &[0, 2]]);
        let n = rational_matrix(&[&[0, 1], &[0, 0]]);
        assert_eq!(normalize_matrix(&x, 2).unwrap(), n);
        assert_eq!(reduce_matrix(&n, 2).unwrap().entries(), &[0, 1, 0, 0]);
    }

    #[test]
    fn negative_valuation_is_scaled_away() {
        let x = q(&[&["1/3", "0"], &["0", "2"]]);
        let y = normalize_matrix(&x, 3).unwrap();
        assert_eq!(y, rational_matrix(&[&[1, 0], &[0, 6]]));
        assert_eq!(reduce_matrix(&y, 3).unwrap().entries(), &[1, 0, 0, 0]);
    }

    #[test]
    fn repeated_shifts() {
        // the reduction is scalar twice before N appears
        let x = q(&[&["8", "27"], &["0", "8"]]);
        let y = normalize_matrix(&x, 3).unwrap();
        assert!(!reduce_matrix(&y, 3).unwrap().is_scalar());
        assert_eq!(y, rational_matrix(&[&[0, 1], &[0, 0]]));
        let z = q(&[&["1", "1/9"], &["3", "10"]]);
        let w = normalize_matrix(&z, 3).unwrap();
        assert!(!reduce_matrix(&w, 3).unwrap().is_scalar());
        assert!(w.commutes_with(&z).unwrap());
    }

    #[test]
    fn scalar_input_is_rejected() {
        let x = rational_matrix(&[&[3, 0], &[0, 3]]);
        assert!(matches!(normalize_matrix(&x, 3), Err(Error::ScalarInput)));
    }

    #[test]
    fn polynomial_chain() {
        let a = rational_matrix(&[&[1, 2, 0], &[0, 1, 1], &[1, 0, 0]]);
        let a2 = a.mul(&a);
        let chain = CommutingChain::new(vec![a.clone(), a2.clone(), a.add(&a2)]).unwrap();
        let reduced = reduce_chain(&chain, 5).unwrap();
        assert_eq!(reduced.len(), 3);
        assert!(verify_chain(&reduced).valid);
        assert_eq!(reduced.entries()[0], reduce_matrix(&a, 5).unwrap());
    }

    #[test]
    fn interior_perturbation() {
        let n = rational_matrix(&[&[0, 1], &[0, 0]]);
        let x = rational_matrix(&[&[2, 4], &[0, 2]]);
        let chain = CommutingChain::new(vec![n.clone(), x, n.clone()]).unwrap();
        let reduced = reduce_chain(&chain, 2).unwrap();
        assert!(verify_chain(&reduced).valid);
        assert_eq!(reduced.entries()[1].entries(), &[0, 1, 0, 0]);
    }

    #[test]
    fn scalar_entries_and_bad_endpoints_fail() {
        let n = rational_matrix(&[&[0, 1], &[0, 0]]);
        let s = rational_matrix(&[&[2, 0], &[0, 2]]);
        assert!(reduce_chain(&CommutingChain::new(vec![n.clone(), s, n.clone()]).unwrap(), 2).is_err());
        let e = rational_matrix(&[&[1, 2], &[0, 1]]);
        assert!(reduce_chain(&CommutingChain::new(vec![e, n]).unwrap(), 2).is_err());
    }
}
