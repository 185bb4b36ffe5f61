//! Fixed-size kernels for the exhaustive finite-field engine.
//!
//! A vertex is its index `Σ_k a_k p^{N−1−k}` over the row-major entries
//! `a_0 … a_{N−1}` (`N = n²`), so enumeration order is lexicographic in the
//! entries. Over F_2 the index is the bit-packed matrix itself: row `i` sits in
//! bits `N − n(i+1) .. N − n i`, entry `(i, j)` at bit `N − 1 − (i n + j)`.

pub(crate) const MAX_ENTRIES: usize = 20;

#[derive(Clone, Debug)]
pub(crate) enum Kernel {
    Gf2(Gf2Kernel),
    General(GeneralKernel),
}

impl Kernel {
    pub fn new(p: u32, n: usize) -> Self {
        assert!(n * n <= MAX_ENTRIES);
        if p == 2 {
            Kernel::Gf2(Gf2Kernel { n, nn: n * n })
        } else {
            Kernel::General(GeneralKernel::new(p, n))
        }
    }

    pub fn is_scalar(&self, v: u32) -> bool {
        match self {
            Kernel::Gf2(k) => k.is_scalar(v),
            Kernel::General(k) => k.is_scalar(v),
        }
    }

    /// Canonical reduced-echelon basis of the commutant, each basis vector
    /// written as a vertex index.
    pub fn commutant_key(&self, v: u32) -> Vec<u32> {
        match self {
            Kernel::Gf2(k) => k.commutant_key(v),
            Kernel::General(k) => k.commutant_key(v),
        }
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        match self {
            Kernel::Gf2(k) => k.mul(a, b) == k.mul(b, a),
            Kernel::General(k) => k.commute(a, b),
        }
    }

    /// Calls `visit` on every element of the span of `basis` (as vertex indices).
    pub fn for_each_in_span(&self, basis: &[u32], mut visit: impl FnMut(u32)) {
        match self {
            Kernel::Gf2(_) => {
                // Gray code: consecutive elements differ by one basis vector
                let mut cur = 0u32;
                visit(cur);
                for step in 1u64..(1u64 << basis.len()) {
                    cur ^= basis[step.trailing_zeros() as usize];
                    visit(cur);
                }
            }
            Kernel::General(k) => k.for_each_in_span(basis, visit),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Gf2Kernel {
    n: usize,
    nn: usize,
}

impl Gf2Kernel {
    fn entry(&self, a: u32, i: usize, j: usize) -> bool {
        (a >> (self.nn - 1 - (i * self.n + j))) & 1 == 1
    }

    fn row(&self, a: u32, i: usize) -> u32 {
        (a >> (self.nn - self.n * (i + 1))) & ((1 << self.n) - 1)
    }

    fn bit(&self, i: usize, j: usize) -> u32 {
        1 << (self.nn - 1 - (i * self.n + j))
    }

    /// Row-XOR product: row i of AB is the XOR of the rows k of B with A_ik = 1.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in 0..self.n {
            let mut r = 0;
            for k in 0..self.n {
                if self.entry(a, i, k) {
                    r ^= self.row(b, k);
                }
            }
            out |= r << (self.nn - self.n * (i + 1));
        }
        out
    }

    fn is_scalar(&self, a: u32) -> bool {
        let ident: u32 = (0..self.n).map(|i| self.bit(i, i)).sum();
        a == 0 || a == ident
    }

    fn commutant_key(&self, a: u32) -> Vec<u32> {
        let (n, nn) = (self.n, self.nn);
        let mut eqs = Vec::with_capacity(nn);
        for i in 0..n {
            for j in 0..n {
                let mut row = 0u32;
                for k in 0..n {
                    if self.entry(a, i, k) {
                        row ^= self.bit(k, j);
                    }
                    if self.entry(a, k, j) {
                        row ^= self.bit(i, k);
                    }
                }
                eqs.push(row);
            }
        }
        let (rows, pivots) = gf2_rref(eqs, nn);
        let mut is_pivot = 0u32;
        for &pb in &pivots {
            is_pivot |= pb;
        }
        let mut basis = Vec::new();
        for c in 0..nn {
            let fb = 1u32 << c;
            if is_pivot & fb != 0 {
                continue;
            }
            let mut v = fb;
            for (r, &pb) in rows.iter().zip(&pivots) {
                if r & fb != 0 {
                    v |= pb;
                }
            }
            basis.push(v);
        }
        gf2_rref(basis, nn).0
    }
}

/// Reduced row-echelon form over F_2; the pivot of a row is its most
/// significant set bit (the first entry in row-major order).
fn gf2_rref(mut rows: Vec<u32>, width: usize) -> (Vec<u32>, Vec<u32>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in (0..width).rev() {
        let pb = 1u32 << c;
        let Some(pr) = (r..rows.len()).find(|&i| rows[i] & pb != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && *row & pb != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(pb);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

#[derive(Clone, Debug)]
pub(crate) struct GeneralKernel {
    p: u32,
    n: usize,
    nn: usize,
    place: Vec<u32>,
    inv: Vec<u32>,
}

impl GeneralKernel {
    fn new(p: u32, n: usize) -> Self {
        let nn = n * n;
        let place = (0..nn).map(|k| p.pow((nn - 1 - k) as u32)).collect();
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = (1..p).find(|b| a * b % p == 1).expect("p prime");
        }
        GeneralKernel { p, n, nn, place, inv }
    }

    pub fn decode(&self, mut v: u32, out: &mut [u32]) {
        for k in (0..self.nn).rev() {
            out[k] = v % self.p;
            v /= self.p;
        }
    }

    pub fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().zip(&self.place).map(|(d, w)| d * w).sum()
    }

    fn is_scalar(&self, v: u32) -> bool {
        let mut d = [0u32; MAX_ENTRIES];
        self.decode(v, &mut d);
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| if i == j { d[i * n + i] == d[0] } else { d[i * n + j] == 0 }))
    }

    fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let s: u32 = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum();
                out[i * n + j] = s % self.p;
            }
        }
    }

    fn commute(&self, a: u32, b: u32) -> bool {
        let (mut da, mut db) = ([0u32; MAX_ENTRIES], [0u32; MAX_ENTRIES]);
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let (mut ab, mut ba) = ([0u32; MAX_ENTRIES], [0u32; MAX_ENTRIES]);
        self.mul(&da, &db, &mut ab);
        self.mul(&db, &da, &mut ba);
        ab == ba
    }

    fn rref(&self, rows: &mut Vec<[u32; MAX_ENTRIES]>) -> Vec<usize> {
        let (p, nn) = (self.p, self.nn);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nn {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv[rows[r][c] as usize];
            for x in rows[r][..nn].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot_row = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                let factor = row[c];
                if i == r || factor == 0 {
                    continue;
                }
                for k in 0..nn {
                    row[k] = (row[k] + (p - factor) * pivot_row[k]) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        pivots
    }

    fn commutant_key(&self, v: u32) -> Vec<u32> {
        let (p, n, nn) = (self.p, self.n, self.nn);
        let mut a = [0u32; MAX_ENTRIES];
        self.decode(v, &mut a);
        let mut eqs = Vec::with_capacity(nn);
        for i in 0..n {
            for j in 0..n {
                let mut row = [0u32; MAX_ENTRIES];
                for k in 0..n {
                    row[k * n + j] = (row[k * n + j] + a[i * n + k]) % p;
                    row[i * n + k] = (row[i * n + k] + p - a[k * n + j]) % p;
                }
                eqs.push(row);
            }
        }
        let pivots = self.rref(&mut eqs);
        let mut basis = Vec::new();
        for free in (0..nn).filter(|c| !pivots.contains(c)) {
            let mut b = [0u32; MAX_ENTRIES];
            b[free] = 1;
            for (row, &pc) in eqs.iter().zip(&pivots) {
                b[pc] = (p - row[free]) % p;
            }
            basis.push(b);
        }
        self.rref(&mut basis);
        basis.iter().map(|b| self.encode(&b[..nn])).collect()
    }

    fn for_each_in_span(&self, basis: &[u32], mut visit: impl FnMut(u32)) {
        let (p, nn) = (self.p, self.nn);
        let vecs: Vec<[u32; MAX_ENTRIES]> = basis
            .iter()
            .map(|&b| {
                let mut d = [0u32; MAX_ENTRIES];
                self.decode(b, &mut d);
                d
            })
            .collect();
        let mut cur = [0u32; MAX_ENTRIES];
        let mut coeff = vec![0u32; basis.len()];
        visit(0);
        // odometer over coefficient tuples; adding a basis vector p times wraps to zero
        loop {
            let mut i = 0;
            loop {
                if i == basis.len() {
                    return;
                }
                for k in 0..nn {
                    cur[k] = (cur[k] + vecs[i][k]) % p;
                }
                coeff[i] += 1;
                if coeff[i] < p {
                    break;
                }
                coeff[i] = 0;
                i += 1;
            }
            visit(self.encode(&cur[..nn]));
        }
    }
}
