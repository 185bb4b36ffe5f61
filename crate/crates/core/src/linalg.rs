//! Gaussian elimination on row vectors over an exact field.
//!
//! Pivots are always the first nonzero entry in row order, so every routine
//! here is deterministic and the reduced row-echelon form is canonical.

use crate::field::Field;

/// Reduced row-echelon form of a list of row vectors, zero rows dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rref<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>, ncols: usize) -> Echelon<F::Elem> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][c]).expect("pivot is nonzero");
        for x in rows[r][c..].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = field.sub(x, &field.mul(&factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

pub fn rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> usize {
    rref(field, rows, ncols).rank()
}

/// Basis of `{x : M x = 0}` for the matrix with the given rows, returned in
/// canonical reduced row-echelon form.
pub fn nullspace<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let ech = rref(field, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    rref(field, basis, ncols).rows
}

/// Incrementally inserted vectors with the combination that produced each
/// reduced row, so a linear dependency can be read off the moment it appears.
#[derive(Clone, Debug)]
pub struct DependencyTracker<F: Field> {
    field: F,
    len: usize,
    inserted: usize,
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> DependencyTracker<F> {
    pub fn new(field: F, len: usize) -> Self {
        DependencyTracker { field, len, inserted: 0, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, returning the remainder and the
    /// combination `c` (over previously inserted vectors, plus a trailing 1 for
    /// `v`) with `remainder = v + Σ c_i v_i`.
    fn reduce(&self, v: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut v = v.to_vec();
        let mut comb = vec![f.zero(); self.inserted + 1];
        comb[self.inserted] = f.one();
        for (pc, row, rc) in &self.rows {
            if f.is_zero(&v[*pc]) {
                continue;
            }
            let factor = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x = f.sub(x, &f.mul(&factor, y));
            }
        }
        (v, comb)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (rem, _) = self.reduce(v);
        rem.iter().all(|x| self.field.is_zero(x))
    }

    /// Inserts `v`. If it depends on the earlier vectors, nothing is stored and
    /// the relation `Σ c_i v_i = 0` (with `c_last = 1`) is returned.
    pub fn insert(&mut self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.len);
        let f = self.field.clone();
        let (mut rem, mut comb) = self.reduce(v);
        let Some(pc) = rem.iter().position(|x| !f.is_zero(x)) else {
            return Some(comb);
        };
        let inv = f.inv(&rem[pc]).expect("nonzero");
        rem.iter_mut().for_each(|x| *x = f.mul(x, &inv));
        comb.iter_mut().for_each(|x| *x = f.mul(x, &inv));
        self.inserted += 1;
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(f.zero());
        }
        self.rows.push((pc, rem, comb));
        None
    }
}
