//! Dense square matrices over an exact field.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::linalg::{self, DependencyTracker};
use crate::poly::Polynomial;
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    n: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn from_vec(field: F, n: usize, data: Vec<F::Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::ShapeMismatch(format!("{} entries for a {n}x{n} matrix", data.len())));
        }
        Ok(Matrix { field, n, data })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("rows must all have length n".into()));
        }
        Matrix::from_vec(field, n, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_rows(field, rows)
    }

    pub fn zero(field: F, n: usize) -> Self {
        let data = vec![field.zero(); n * n];
        Matrix { field, n, data }
    }

    pub fn scalar(field: F, n: usize, c: F::Elem) -> Self {
        let mut m = Matrix::zero(field, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        Matrix::scalar(field, n, one)
    }

    pub fn random<R: Rng + ?Sized>(field: F, n: usize, rng: &mut R, bound: i64) -> Self {
        let data = (0..n * n).map(|_| field.sample(rng, bound)).collect();
        Matrix { field, n, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.n + j] = v;
    }

    /// Row-major entries; also the coordinate vector used by subspaces.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<F::Elem>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn map<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix { field, n: self.n, data: self.data.iter().map(f).collect() }
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n || self.field != rhs.field {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} over {} vs {}x{} over {}",
                self.n,
                self.n,
                self.field.descriptor(),
                rhs.n,
                rhs.n,
                rhs.field.descriptor()
            )));
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect();
        Matrix { field: self.field.clone(), n: self.n, data }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(self.field.clone(), |a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(self.field.clone(), |a| self.field.mul(a, c))
    }

    /// `self + c·I`
    pub fn add_scalar(&self, c: &F::Elem) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] = self.field.add(&out.data[i * self.n + i], c);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let (f, n) = (&self.field, self.n);
        let mut data = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let t = f.mul(a, &rhs.data[k * n + j]);
                    data[i * n + j] = f.add(&data[i * n + j], &t);
                }
            }
        }
        Matrix { field: f.clone(), n, data }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field.clone(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n).map(|k| self.data[(k % n) * n + k / n].clone()).collect();
        Matrix { field: self.field.clone(), n, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// The `λ` with `self = λI`, if any.
    pub fn scalar_value(&self) -> Option<F::Elem> {
        let n = self.n;
        let lambda = self.data[0].clone();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let x = &self.data[i * n + j];
                if i == j {
                    *x == lambda
                } else {
                    self.field.is_zero(x)
                }
            })
        });
        ok.then_some(lambda)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    /// `AB − BA`
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.check_same_shape(rhs)?;
        Ok(self.mul(rhs).sub(&rhs.mul(self)))
    }

    pub fn commutes_with(&self, rhs: &Self) -> Result<bool> {
        Ok(self.commutator(rhs)?.is_zero())
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.field, self.rows(), self.n)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let (f, n) = (&self.field, self.n);
        let aug: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut row = self.data[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                row
            })
            .collect();
        let ech = linalg::rref(f, aug, 2 * n);
        if ech.rank() < n || ech.pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let data = ech.rows.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Ok(Matrix { field: f.clone(), n, data })
    }

    /// `T⁻¹ A T` with `T = self`.
    pub fn conjugate(&self, a: &Self) -> Result<Self> {
        self.check_same_shape(a)?;
        Ok(self.inverse()?.mul(a).mul(self))
    }

    /// Block-diagonal `A ⊕ B`.
    pub fn direct_sum(&self, rhs: &Self) -> Result<Self> {
        if self.field != rhs.field {
            return Err(Error::ShapeMismatch("direct sum across different fields".into()));
        }
        let n = self.n + rhs.n;
        let mut out = Matrix::zero(self.field.clone(), n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.n {
            for j in 0..rhs.n {
                out.set(self.n + i, self.n + j, rhs.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// `k` copies of `self` along the diagonal.
    pub fn repeat_diagonal(&self, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.clone();
        for _ in 1..k {
            out = out.direct_sum(self).expect("same field");
        }
        out
    }

    /// Assembles a block matrix from a square grid of equally sized blocks.
    pub fn from_blocks(blocks: &[Vec<Matrix<F>>]) -> Result<Self> {
        let k = blocks.len();
        let b = blocks.first().and_then(|r| r.first()).ok_or_else(|| Error::ShapeMismatch("no blocks".into()))?;
        let (field, bn) = (b.field.clone(), b.n);
        let mut out = Matrix::zero(field, k * bn);
        for (bi, row) in blocks.iter().enumerate() {
            if row.len() != k {
                return Err(Error::ShapeMismatch("block grid must be square".into()));
            }
            for (bj, blk) in row.iter().enumerate() {
                b.check_same_shape(blk)?;
                for i in 0..bn {
                    for j in 0..bn {
                        out.set(bi * bn + i, bj * bn + j, blk.get(i, j).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `size × size` block at block position `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Self {
        let mut out = Matrix::zero(self.field.clone(), size);
        for i in 0..size {
            for j in 0..size {
                out.set(i, j, self.get(bi * size + i, bj * size + j).clone());
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let (f, n) = (&self.field, self.n);
        (0..n).map(|i| (0..n).fold(f.zero(), |acc, j| f.add(&acc, &f.mul(&self.data[i * n + j], &v[j])))).collect()
    }

    /// The companion matrix of a monic polynomial: ones on the subdiagonal and
    /// the negated low coefficients in the last column.
    pub fn companion(m: &Polynomial<F>) -> Result<Self> {
        let d = match m.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::InvalidArgument("companion needs degree at least 1".into())),
        };
        if !m.is_monic() {
            return Err(Error::InvalidArgument(format!("{m} is not monic")));
        }
        let f = m.field().clone();
        let mut c = Matrix::zero(f.clone(), d);
        for i in 1..d {
            c.set(i, i - 1, f.one());
        }
        for i in 0..d {
            c.set(i, d - 1, f.neg(&m.coeff(i)));
        }
        Ok(c)
    }

    /// Minimal polynomial from the first linear dependency among `I, A, A², …`.
    pub fn min_poly(&self) -> Polynomial<F> {
        let f = &self.field;
        let mut tracker = DependencyTracker::new(f.clone(), self.n * self.n);
        let mut power = Matrix::identity(f.clone(), self.n);
        loop {
            if let Some(rel) = tracker.insert(&power.data) {
                return Polynomial::new(f.clone(), rel);
            }
            power = power.mul(self);
        }
    }

    /// Characteristic polynomial `det(xI − A)`, via reduction to upper
    /// Hessenberg form followed by the standard determinant recurrence.
    pub fn char_poly(&self) -> Polynomial<F> {
        let f = self.field.clone();
        let n = self.n;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
                continue;
            };
            if piv != j + 1 {
                h.swap_rows(piv, j + 1);
                h.swap_cols(piv, j + 1);
            }
            let inv = f.inv(h.get(j + 1, j)).expect("nonzero");
            for k in j + 2..n {
                if f.is_zero(h.get(k, j)) {
                    continue;
                }
                let u = f.mul(h.get(k, j), &inv);
                for c in 0..n {
                    let v = f.sub(h.get(k, c), &f.mul(&u, h.get(j + 1, c)));
                    h.set(k, c, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), &f.mul(&u, h.get(r, k)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_m = (x − h_mm) p_{m−1} − Σ_{i<m} h_im (Π_{i<l≤m} h_{l,l−1}) p_{i−1}
        let x = Polynomial::x(f.clone());
        let mut ps = vec![Polynomial::one(f.clone())];
        for m in 0..n {
            let mut pm = x.sub(&Polynomial::constant(f.clone(), h.get(m, m).clone())).mul(&ps[m]);
            let mut prod = f.one();
            for i in (0..m).rev() {
                prod = f.mul(&prod, h.get(i + 1, i));
                let c = f.mul(h.get(i, m), &prod);
                pm = pm.sub(&ps[i].scale(&c));
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in 0..self.n {
            self.data.swap(r * self.n + a, r * self.n + b);
        }
    }

    /// Basis of the commutant `{X : AX = XA}`.
    pub fn commutant_basis(&self) -> Subspace<F> {
        Subspace::solve_twisted_commutation(&[(self, self)])
    }

    /// Upper bound on the dimension of the joint commutant of `mats` over a
    /// characteristic-zero field, from reduction modulo a large prime: the
    /// defining linear system can only lose rank under reduction. `None` over
    /// prime fields or when an entry is not integral at the prime.
    fn modular_commutant_bound(mats: &[&Self]) -> Option<usize> {
        const L: u64 = (1 << 61) - 1;
        let first = mats.first()?;
        if first.field.characteristic() != 0 {
            return None;
        }
        let fl = PrimeField::new(L).expect("Mersenne prime");
        let reduced = mats
            .iter()
            .map(|m| {
                let data = m.data.iter().map(|e| m.field.residue_mod(e, L)).collect::<Option<Vec<_>>>()?;
                Some(Matrix { field: fl, n: m.n, data })
            })
            .collect::<Option<Vec<_>>>()?;
        let pairs: Vec<_> = reduced.iter().map(|m| (m, m)).collect();
        Some(Subspace::solve_twisted_commutation(&pairs).dim())
    }

    /// Dimension of the commutant. It is at least the degree of the minimal
    /// polynomial; over `Q` a matching modular bound settles it without exact
    /// elimination.
    pub fn commutant_dim(&self) -> usize {
        let lower = self.min_poly().degree().unwrap_or(0);
        if Self::modular_commutant_bound(&[self]) == Some(lower) {
            return lower;
        }
        self.commutant_basis().dim()
    }

    /// Dimension of `{X : AX = XA and BX = XB}`. It is at least 1; over `Q` a
    /// modular bound of 1 settles it without exact elimination.
    pub fn joint_commutant_dim(&self, other: &Self) -> Result<usize> {
        self.check_same_shape(other)?;
        if self == other {
            return Ok(self.commutant_dim());
        }
        if Self::modular_commutant_bound(&[self, other]) == Some(1) {
            return Ok(1);
        }
        Ok(self.joint_commutant_basis(other)?.dim())
    }

    /// Basis of `{X : AX = XA and BX = XB}`.
    pub fn joint_commutant_basis(&self, other: &Self) -> Result<Subspace<F>> {
        self.check_same_shape(other)?;
        Ok(Subspace::solve_twisted_commutation(&[(self, self), (other, other)]))
    }

    /// Decomposes `X = T⁻¹ (C ⊕ ⋯ ⊕ C) T` when the minimal polynomial of `X` is
    /// irreducible of degree `d | n`; returns `(T, C)` with `C` the companion
    /// matrix of that minimal polynomial.
    ///
    /// Over the rationals irreducibility cannot be tested; it is detected
    /// indirectly when a Krylov block fails to reach dimension `d`.
    pub fn identical_cell_form(&self) -> Result<(Self, Self)> {
        let f = self.field.clone();
        let n = self.n;
        let m = self.min_poly();
        let d = m.degree().expect("minimal polynomial is nonzero");
        if m.is_irreducible() == Some(false) {
            return Err(Error::HypothesisViolated(format!("minimal polynomial {m} is reducible")));
        }
        if !n.is_multiple_of(d) {
            return Err(Error::HypothesisViolated(format!("degree {d} does not divide {n}")));
        }
        let mut tracker = DependencyTracker::new(f.clone(), n);
        let mut columns: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
        for start in 0..n {
            if columns.len() == n {
                break;
            }
            let mut v = vec![f.zero(); n];
            v[start] = f.one();
            if tracker.contains(&v) {
                continue;
            }
            for _ in 0..d {
                if tracker.insert(&v).is_some() {
                    return Err(Error::HypothesisViolated(format!(
                        "Krylov block shorter than {d}; minimal polynomial {m} is not irreducible"
                    )));
                }
                columns.push(v.clone());
                v = self.mul_vec(&v);
            }
        }
        // P has the Krylov vectors as columns, and X P = P (C ⊕ ⋯ ⊕ C)
        let mut p = Matrix::zero(f.clone(), n);
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                p.set(i, j, x.clone());
            }
        }
        let t = p.inverse()?;
        let c = Matrix::companion(&m)?;
        Ok((t, c))
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.field.format_elem(self.get(i, j))).collect();
            writeln!(out, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::Rational;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(Rationals, rows).unwrap()
    }

    #[test]
    fn companion_examples() {
        let m = Polynomial::from_i64s(Rationals, &[1, 0, 1]);
        assert_eq!(Matrix::companion(&m).unwrap(), qm(&[&[0, -1], &[1, 0]]));
        let lin = Polynomial::from_i64s(Rationals, &[-5, 1]);
        assert_eq!(Matrix::companion(&lin).unwrap(), qm(&[&[5]]));
        let not_monic = Polynomial::from_i64s(Rationals, &[1, 2]);
        assert!(matches!(Matrix::companion(&not_monic), Err(Error::InvalidArgument(_))));
        let constant = Polynomial::from_i64s(Rationals, &[1]);
        assert!(Matrix::companion(&constant).is_err());
    }

    #[test]
    fn min_poly_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Polynomial::from_i64s(f3, &[2, 1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(Matrix::companion(&m).unwrap().min_poly(), m);
        assert_eq!(Matrix::identity(Rationals, 3).min_poly(), Polynomial::from_i64s(Rationals, &[-1, 1]));
        let c = Matrix::companion(&Polynomial::from_i64s(Rationals, &[1, 1, 1])).unwrap();
        assert_eq!(c.direct_sum(&c).unwrap().min_poly(), c.min_poly());
    }

    #[test]
    fn scalar_and_commute() {
        let a = qm(&[&[1, 2], &[3, 4]]);
        assert!(a.commutes_with(&a.mul(&a)).unwrap());
        assert!(Matrix::identity(Rationals, 4).is_scalar());
        assert!(!Matrix::companion(&Polynomial::from_i64s(Rationals, &[1, 0, 1])).unwrap().is_scalar());
        let e12 = qm(&[&[0, 1], &[0, 0]]);
        let e21 = qm(&[&[0, 0], &[1, 0]]);
        assert!(!e12.commutes_with(&e21).unwrap());
        let other = Matrix::identity(Rationals, 3);
        assert!(matches!(a.commutes_with(&other), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn commutant_dimensions() {
        let c = Matrix::companion(&Polynomial::from_i64s(Rationals, &[-2, 0, 0, 1])).unwrap();
        assert_eq!(c.commutant_basis().dim(), 3);
        assert_eq!(Matrix::scalar(Rationals, 3, 7.into()).commutant_basis().dim(), 9);
        // diag(0,0,1): the commutant is M_2 ⊕ M_1
        assert_eq!(qm(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]).commutant_basis().dim(), 5);
    }

    #[test]
    fn joint_commutant_trivial_cases() {
        let a = qm(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 2]]);
        let i = Matrix::identity(Rationals, 3);
        assert_eq!(a.joint_commutant_basis(&i).unwrap(), a.commutant_basis());
        assert_eq!(a.joint_commutant_basis(&a).unwrap(), a.commutant_basis());
    }

    #[test]
    fn inverse_and_conjugate() {
        let t = qm(&[&[2, 1], &[1, 1]]);
        let a = qm(&[&[0, 1], &[0, 0]]);
        assert_eq!(t.inverse().unwrap().mul(&t), Matrix::identity(Rationals, 2));
        assert_eq!(Matrix::identity(Rationals, 2).conjugate(&a).unwrap(), a);
        assert_eq!(t.conjugate(&a).unwrap().min_poly(), a.min_poly());
        assert!(matches!(qm(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular)));
        assert!(matches!(qm(&[&[1, 2], &[2, 4]]).conjugate(&a), Err(Error::Singular)));
    }

    #[test]
    fn direct_sum_dims() {
        let a = Matrix::identity(Rationals, 2);
        let b = Matrix::identity(Rationals, 3);
        assert_eq!(a.direct_sum(&b).unwrap().n(), 5);
    }

    #[test]
    fn char_poly_small() {
        // [[1,2],[3,4]]: x^2 - 5x - 2
        assert_eq!(qm(&[&[1, 2], &[3, 4]]).char_poly(), Polynomial::from_i64s(Rationals, &[-2, -5, 1]));
        let m = Polynomial::from_i64s(Rationals, &[3, -1, 0, 2, 1]);
        assert_eq!(Matrix::companion(&m).unwrap().char_poly(), m);
    }

    #[test]
    fn cayley_hamilton_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let a = Matrix::random(Rationals, n, &mut rng, 5);
            assert!(a.char_poly().eval_matrix(&a).is_zero());
            for p in [2, 3, 5] {
                let f = PrimeField::new(p).unwrap();
                let b = Matrix::random(f, n, &mut rng, 0);
                let chi = b.char_poly();
                assert!(chi.eval_matrix(&b).is_zero());
                assert!(chi.rem(&b.min_poly()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn identical_cells_identity_case() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Polynomial::from_i64s(f3, &[1, 0, 1]);
        let c = Matrix::companion(&m).unwrap();
        let x = c.direct_sum(&c).unwrap();
        let (t, c2) = x.identical_cell_form().unwrap();
        assert_eq!(c2, c);
        assert_eq!(t.conjugate(&c.repeat_diagonal(2)).unwrap(), x);
    }

    #[test]
    fn identical_cells_round_trip_random_conjugate() {
        let f3 = PrimeField::new(3).unwrap();
        let m = Polynomial::from_i64s(f3, &[2, 0, 1, 1]); // x^3 + x^2 + 2, irreducible over F_3
        assert_eq!(m.is_irreducible(), Some(true));
        let c = Matrix::companion(&m).unwrap();
        let block = c.repeat_diagonal(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let p = loop {
                let p = Matrix::random(f3, 6, &mut rng, 0);
                if p.is_invertible() {
                    break p;
                }
            };
            let x = p.conjugate(&block).unwrap();
            let (t, c2) = x.identical_cell_form().unwrap();
            assert_eq!(c2, Matrix::companion(&x.min_poly()).unwrap());
            assert_eq!(t.conjugate(&c2.repeat_diagonal(2)).unwrap(), x);
        }
    }

    #[test]
    fn identical_cells_rejects_reducible() {
        let x = qm(&[&[1, 0], &[0, 2]]);
        assert!(matches!(x.identical_cell_form(), Err(Error::HypothesisViolated(_))));
        let f2 = PrimeField::new(2).unwrap();
        let y = Matrix::from_i64_rows(f2, &[&[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert!(matches!(y.identical_cell_form(), Err(Error::HypothesisViolated(_))));
    }

    #[test]
    fn identical_cells_over_rationals() {
        let m = Polynomial::from_i64s(Rationals, &[-2, 0, 1]);
        let c = Matrix::companion(&m).unwrap();
        let t = qm(&[&[1, 2, 0, 1], &[0, 1, 3, 0], &[1, 0, 1, 0], &[0, 0, 2, 1]]);
        let x = t.conjugate(&c.repeat_diagonal(2)).unwrap();
        let (t2, c2) = x.identical_cell_form().unwrap();
        assert_eq!(c2, c);
        assert_eq!(t2.conjugate(&c.repeat_diagonal(2)).unwrap(), x);
    }

    #[test]
    fn modular_dimension_shortcut_agrees_with_exact_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for trial in 0..60 {
            let n = 2 + trial % 3;
            // low-rank and repeated-eigenvalue shapes make the answer vary
            let a = match trial % 4 {
                0 => Matrix::random(Rationals, n, &mut rng, 3),
                1 => {
                    let x = Matrix::random(Rationals, n, &mut rng, 2);
                    x.mul(&x).add_scalar(&Rational::from(1))
                }
                2 => Matrix::scalar(Rationals, n, Rational::from(2)).add(
                    &Matrix::from_vec(
                        Rationals,
                        n,
                        (0..n * n).map(|k| Rational::from((k % (n + 1) == 0) as i64 * (k as i64 % 3))).collect(),
                    )
                    .unwrap(),
                ),
                _ => Matrix::identity(Rationals, n),
            };
            let b = if trial % 5 == 0 { a.mul(&a) } else { Matrix::random(Rationals, n, &mut rng, 1) };
            assert_eq!(a.commutant_dim(), a.commutant_basis().dim());
            assert_eq!(a.joint_commutant_dim(&b).unwrap(), a.joint_commutant_basis(&b).unwrap().dim());
        }
        let f3 = PrimeField::new(3).unwrap();
        let m = Matrix::random(f3, 3, &mut rng, 0);
        assert_eq!(m.commutant_dim(), m.commutant_basis().dim());
    }
}
