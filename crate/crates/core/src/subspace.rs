//! Subspaces of `M_n(F)` with a canonical basis.

use crate::field::Field;
use crate::linalg;
use crate::matrix::Matrix;

/// A linear subspace of `n × n` matrices.
///
/// The basis is the reduced row-echelon form of the row-major coordinate
/// vectors, so two subspaces are equal exactly when their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    n: usize,
    basis: Vec<Matrix<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn span(field: F, n: usize, generators: &[Matrix<F>]) -> Self {
        let rows = generators.iter().map(|m| m.entries().to_vec()).collect();
        Self::from_coordinate_rows(field, n, rows)
    }

    fn from_coordinate_rows(field: F, n: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let ech = linalg::rref(&field, rows, n * n);
        let basis =
            ech.rows.into_iter().map(|r| Matrix::from_vec(field.clone(), n, r).expect("n*n coordinates")).collect();
        Subspace { field, n, basis }
    }

    /// Solves `L X = X R` simultaneously for every `(L, R)` pair (all `n × n`
    /// over one field). `L = R = A` gives the commutant of `A`.
    pub fn solve_twisted_commutation(pairs: &[(&Matrix<F>, &Matrix<F>)]) -> Self {
        let (l0, _) = pairs[0];
        let field = l0.field().clone();
        let n = l0.n();
        let f = &field;
        let nn = n * n;
        let mut equations = Vec::with_capacity(pairs.len() * nn);
        for (l, r) in pairs {
            for i in 0..n {
                for j in 0..n {
                    let mut row = vec![f.zero(); nn];
                    // (LX)_ij = Σ_k L_ik X_kj ; (XR)_ij = Σ_k X_ik R_kj
                    for k in 0..n {
                        let idx = k * n + j;
                        row[idx] = f.add(&row[idx], l.get(i, k));
                        let idx = i * n + k;
                        row[idx] = f.sub(&row[idx], r.get(k, j));
                    }
                    equations.push(row);
                }
            }
        }
        let ns = linalg::nullspace(f, equations, nn);
        Self::from_coordinate_rows(field, n, ns)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        let mut rows: Vec<Vec<F::Elem>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        rows.push(m.entries().to_vec());
        linalg::rank(&self.field, rows, self.n * self.n) == self.dim()
    }

    /// `Σ c_i B_i` for the given coefficients.
    pub fn combination(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        assert_eq!(coeffs.len(), self.dim());
        let f = &self.field;
        let mut acc = Matrix::zero(f.clone(), self.n);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !f.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}
