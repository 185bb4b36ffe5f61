//! Cyclic extensions `K = F[C]` of prime degree `q`, with a generator of the
//! Galois action written as a polynomial `g`: `σ(C) = g(C)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{is_prime, mod_pow, prime_divisors, Rational};
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::linalg;
use crate::matrix::Matrix;
use crate::poly::Polynomial;

/// Degree-14 polynomial over `Q_2` whose Galois closure has group `C_2 ≀ C_7`,
/// as listed in the database of local fields; coefficients low to high,
/// `x^14 − x^12 + 2x^11 + 2x^10 + 2x^4 + 2x^3 + 1`. Display only.
pub const WREATH_DEFINING_POLY: [i64; 15] = [1, 0, 0, 2, 2, 0, 0, 0, 0, 0, 2, 2, -1, 0, 1];

pub const WREATH_DEFINING_POLY_SOURCE: &str = "LMFDB local fields database, Galois group C2 wr C7 over Q_2";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFieldData<F: Field> {
    /// Irreducible monic polynomial of prime degree `q`.
    pub m: Polynomial<F>,
    /// Companion matrix of `m`.
    pub c: Matrix<F>,
    /// `σ(C) = g(C)` generates `Gal(K/F)`.
    pub g: Polynomial<F>,
    /// `g(C)`, cached.
    pub gc: Matrix<F>,
    pub source: String,
}

impl<F: Field> CyclicFieldData<F> {
    /// Validates `m` and `g`: `m` monic of prime degree, not detectably
    /// reducible, `g(C)` a root of `m`, and `σ` of order exactly `q`.
    pub fn new(m: Polynomial<F>, g: Polynomial<F>, source: impl Into<String>) -> Result<Self> {
        let q = m.degree().unwrap_or(0);
        if !m.is_monic() || !is_prime(q as u64) {
            return Err(Error::HypothesisViolated(format!("{m} must be monic of prime degree")));
        }
        if m.is_irreducible() == Some(false) {
            return Err(Error::HypothesisViolated(format!("{m} is reducible")));
        }
        let g = g.rem(&m)?;
        let c = Matrix::companion(&m)?;
        let gc = g.eval_matrix(&c);
        if gc.min_poly() != m {
            return Err(Error::HypothesisViolated(format!("g(C) is not a root of {m}")));
        }
        let x = Polynomial::x(m.field().clone());
        let mut iterate = x.clone();
        for k in 1..=q {
            iterate = g.compose_mod(&iterate, &m)?;
            if (iterate == x) != (k == q) {
                return Err(Error::HypothesisViolated(format!("σ: x ↦ {g} does not have order {q}")));
            }
        }
        Ok(CyclicFieldData { m, c, g, gc, source: source.into() })
    }

    pub fn field(&self) -> &F {
        self.m.field()
    }

    pub fn q(&self) -> usize {
        self.c.n()
    }

    /// The element `a(C)` of `K` for a coefficient vector `a` (low to high).
    pub fn element(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        Polynomial::new(self.field().clone(), coeffs.to_vec()).eval_matrix(&self.c)
    }

    /// `σ(a(C)) = a(g(C))`.
    pub fn sigma(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        Polynomial::new(self.field().clone(), coeffs.to_vec()).eval_matrix(&self.gc)
    }
}

impl CyclicFieldData<PrimeField> {
    /// `F_{p^q}` over `F_p`, with `m` the first irreducible monic polynomial of
    /// degree `q` in lexicographic order of coefficients and `g = x^p mod m`.
    pub fn over_prime_field(p: u64, q: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if !is_prime(q as u64) {
            return Err(Error::InvalidArgument(format!("degree q = {q} must be prime")));
        }
        let count = p
            .checked_pow(q as u32)
            .filter(|&c| c <= 1 << 32)
            .ok_or_else(|| Error::BudgetExceeded(format!("search space p^q = {p}^{q}")))?;
        for index in 0..count {
            let mut coeffs = Vec::with_capacity(q + 1);
            let mut rest = index;
            for _ in 0..q {
                coeffs.push(rest % p);
                rest /= p;
            }
            coeffs.reverse();
            coeffs.push(1);
            let m = Polynomial::new(field, coeffs);
            if m.is_irreducible() == Some(true) {
                let g = Polynomial::x(field).pow_mod(p, &m)?;
                return CyclicFieldData::new(m, g, format!("first irreducible degree-{q} polynomial over F_{p}"));
            }
        }
        Err(Error::NotFound(format!("no irreducible polynomial of degree {q} over F_{p}")))
    }
}

impl CyclicFieldData<Rationals> {
    /// The degree-`q` subfield of `Q(ζ_N)` for the least prime `N ≡ 1 (mod q)`,
    /// generated by a Gaussian period. Everything is computed exactly in
    /// `Z[ζ_N]`.
    pub fn period_field(q: usize) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::InvalidArgument(format!("degree q = {q} must be prime")));
        }
        let q64 = q as u64;
        let n = (1..).map(|k| k * q64 + 1).find(|&n| is_prime(n)).expect("Dirichlet");
        let (m, g) = gaussian_periods(q, n)?;
        CyclicFieldData::new(m, g, format!("Gaussian period field of degree {q} in Q(ζ_{n})"))
    }
}

fn primitive_root(n: u64) -> u64 {
    let factors = prime_divisors(n - 1);
    (2..n)
        .find(|&r| factors.iter().all(|&l| mod_pow(r, (n - 1) / l, n) != 1))
        .expect("prime moduli have primitive roots")
}

/// Elements of `Z[ζ_N]` as coefficient vectors on `1, ζ, …, ζ^{N−1}`,
/// normalized so the constant coefficient is zero (using `1 + ζ + ⋯ + ζ^{N−1} = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cyclo(Vec<BigInt>);

impl Cyclo {
    fn normalized(mut v: Vec<BigInt>) -> Self {
        let c0 = v[0].clone();
        for x in v.iter_mut() {
            *x -= &c0;
        }
        Cyclo(v)
    }

    fn integer(n: usize, c: BigInt) -> Self {
        let mut v = vec![BigInt::zero(); n];
        v[0] = c;
        Cyclo::normalized(v)
    }

    fn add(&self, rhs: &Cyclo) -> Cyclo {
        Cyclo::normalized(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    fn neg(&self) -> Cyclo {
        Cyclo(self.0.iter().map(|a| -a).collect())
    }

    fn mul(&self, rhs: &Cyclo) -> Cyclo {
        let n = self.0.len();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in rhs.0.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[(i + j) % n] += a * b;
            }
        }
        Cyclo::normalized(out)
    }

    /// The rational integer this element equals, if it is one.
    fn as_integer(&self) -> Option<BigInt> {
        let c = &self.0[1];
        self.0[1..].iter().all(|x| x == c).then(|| -c)
    }
}

/// Minimal polynomial of `η_0` and the polynomial `g` with `g(η_0) = η_1`,
/// where `η_j = Σ_t ζ^{r^{j + q t}}` for a primitive root `r` mod `N`.
fn gaussian_periods(q: usize, n: u64) -> Result<(Polynomial<Rationals>, Polynomial<Rationals>)> {
    let nn = n as usize;
    let r = primitive_root(n);
    let f = (n - 1) / q as u64;
    let periods: Vec<Cyclo> = (0..q as u64)
        .map(|j| {
            let mut v = vec![BigInt::zero(); nn];
            for t in 0..f {
                v[mod_pow(r, j + q as u64 * t, n) as usize] += 1;
            }
            Cyclo::normalized(v)
        })
        .collect();

    // Π (x − η_j), coefficients low to high
    let mut prod = vec![Cyclo::integer(nn, BigInt::one())];
    for eta in &periods {
        let mut next = vec![Cyclo::integer(nn, BigInt::zero()); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = next[k + 1].add(c);
            next[k] = next[k].add(&c.mul(&eta.neg()));
        }
        prod = next;
    }
    let m_coeffs = prod
        .iter()
        .map(|c| c.as_integer().map(Rational::from_integer))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Soundness("period polynomial has non-rational coefficients".into()))?;
    let m = Polynomial::new(Rationals, m_coeffs);

    // solve Σ a_k η_0^k = η_1 over Q on the ζ^1 … ζ^{N−1} coordinates
    let mut powers = vec![Cyclo::integer(nn, BigInt::one())];
    for k in 1..q {
        powers.push(powers[k - 1].mul(&periods[0]));
    }
    let rows: Vec<Vec<Rational>> = (1..nn)
        .map(|i| {
            powers
                .iter()
                .map(|pw| Rational::from_integer(pw.0[i].clone()))
                .chain(std::iter::once(Rational::from_integer(periods[1].0[i].clone())))
                .collect()
        })
        .collect();
    let kernel = linalg::nullspace(&Rationals, rows, q + 1);
    let sol = match kernel.as_slice() {
        [v] if !v[q].is_zero() => v,
        _ => return Err(Error::Soundness("η_1 is not a unique polynomial in η_0".into())),
    };
    let scale = -&sol[q];
    let g_coeffs = sol[..q].iter().map(|a| a.checked_div(&scale)).collect::<Result<Vec<_>>>()?;
    Ok((m, Polynomial::new(Rationals, g_coeffs)))
}
