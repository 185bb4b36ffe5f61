//! The twist matrix `U`, the block matrix `S = [[I, U], [U, −U³]]`, randomized
//! probes of the non-commutation property they drive, and chain reduction mod p.
//!
//! `K = F[C]` is a cyclic extension of prime degree `q`, realized inside
//! `M_q(F)`; `M_2(K)` sits inside `M_{2q}(F)` as 2×2 block matrices whose
//! blocks are polynomials in `C`.

mod cyclic;
mod reduce;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cyclic::{CyclicFieldData, WREATH_DEFINING_POLY, WREATH_DEFINING_POLY_SOURCE};
pub use reduce::{normalize_matrix, reduce_chain, reduce_matrix};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::format::MatrixJson;
use crate::linalg;
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::subspace::Subspace;

/// Integer range for random coefficients over `Q`.
const SAMPLE_BOUND: i64 = 2;

const U_SEARCH_STREAM: u64 = u64::MAX;
const A1_SEARCH_STREAM: u64 = u64::MAX - 1;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// All `U` with `U C = g(C) U`.
pub fn frobenius_twist_space<F: Field>(c: &Matrix<F>, g: &Polynomial<F>) -> Result<Subspace<F>> {
    let gc = g.eval_matrix(c);
    let space = Subspace::solve_twisted_commutation(&[(&gc, c)]);
    if space.dim() == 0 {
        return Err(Error::HypothesisViolated("no nonzero U satisfies U C = g(C) U".into()));
    }
    Ok(space)
}

/// The properties required of `U`, each evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UChecks {
    /// `U C^i = g(C)^i U` for `0 ≤ i < q`.
    pub twist_relation: bool,
    pub invertible: bool,
    /// `a` when `U^q = a I`.
    pub power_scalar: Option<String>,
    pub one_plus_u_invertible: bool,
    /// Rank of the `q²` coordinate vectors of `C^i U^j`.
    pub direct_sum_rank: usize,
    pub direct_sum_expected: usize,
}

impl UChecks {
    pub fn passes(&self) -> bool {
        self.twist_relation
            && self.invertible
            && self.power_scalar.is_some()
            && self.one_plus_u_invertible
            && self.direct_sum_rank == self.direct_sum_expected
    }
}

fn direct_sum_rank<F: Field>(data: &CyclicFieldData<F>, u: &Matrix<F>) -> usize {
    let q = data.q();
    let field = data.field().clone();
    let mut rows = Vec::with_capacity(q * q);
    let mut u_power = Matrix::identity(field.clone(), q);
    for _ in 0..q {
        let mut term = u_power.clone();
        for _ in 0..q {
            rows.push(term.entries().to_vec());
            term = data.c.mul(&term);
        }
        u_power = u_power.mul(u);
    }
    linalg::rank(&field, rows, q * q)
}

pub fn check_u<F: Field>(data: &CyclicFieldData<F>, u: &Matrix<F>) -> UChecks {
    let q = data.q();
    let f = data.field();
    let mut twist_relation = true;
    let (mut ci, mut gci) = (Matrix::identity(f.clone(), q), Matrix::identity(f.clone(), q));
    for _ in 0..q {
        twist_relation &= u.mul(&ci) == gci.mul(u);
        ci = ci.mul(&data.c);
        gci = gci.mul(&data.gc);
    }
    let one_plus_u = u.add_scalar(&f.one());
    UChecks {
        twist_relation,
        invertible: u.is_invertible(),
        power_scalar: u.pow(q as u64).scalar_value().map(|a| f.format_elem(&a)),
        one_plus_u_invertible: u.mul(&one_plus_u).is_invertible(),
        direct_sum_rank: direct_sum_rank(data, u),
        direct_sum_expected: q * q,
    }
}

/// Why rejected candidates were rejected, by first failing check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureCounts {
    pub not_invertible: u64,
    pub power_not_scalar: u64,
    pub one_plus_u_singular: u64,
    pub sum_not_direct: u64,
}

impl FailureCounts {
    pub fn most_frequent(&self) -> &'static str {
        let counts = [
            (self.not_invertible, "U invertible"),
            (self.power_not_scalar, "U^q scalar"),
            (self.one_plus_u_singular, "U(I+U) invertible"),
            (self.sum_not_direct, "direct sum"),
        ];
        counts.iter().max_by_key(|(c, _)| *c).map(|(_, name)| *name).unwrap_or("none")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UWitness<F: Field> {
    pub u: Matrix<F>,
    pub checks: UChecks,
    pub twist_dim: usize,
    pub attempts: u64,
    pub failures: FailureCounts,
}

/// Seeded search through random elements of the twist space for a `U` passing
/// every check of [`check_u`].
pub fn find_u<F: Field>(data: &CyclicFieldData<F>, seed: u64, max_attempts: u64) -> Result<UWitness<F>> {
    let f = data.field();
    if f.characteristic() == 2 {
        return Err(Error::HypothesisViolated("U requires characteristic other than 2".into()));
    }
    let q = data.q();
    let space = frobenius_twist_space(&data.c, &data.g)?;
    let mut rng = rng_for(seed, U_SEARCH_STREAM);
    let mut failures = FailureCounts::default();
    for attempt in 1..=max_attempts {
        let coeffs: Vec<F::Elem> = (0..space.dim()).map(|_| f.sample(&mut rng, SAMPLE_BOUND)).collect();
        let u = space.combination(&coeffs);
        if !u.is_invertible() {
            failures.not_invertible += 1;
            continue;
        }
        if !u.pow(q as u64).is_scalar() {
            failures.power_not_scalar += 1;
            continue;
        }
        if !u.mul(&u.add_scalar(&f.one())).is_invertible() {
            failures.one_plus_u_singular += 1;
            continue;
        }
        let checks = check_u(data, &u);
        if !checks.passes() {
            failures.sum_not_direct += 1;
            continue;
        }
        return Ok(UWitness { u, checks, twist_dim: space.dim(), attempts: attempt, failures });
    }
    Err(Error::NotFound(format!(
        "no valid U in {max_attempts} attempts; most frequent failure: {} ({failures:?})",
        failures.most_frequent()
    )))
}

/// `S = [[I, U], [U, −U³]]`.
pub fn build_s<F: Field>(u: &Matrix<F>) -> Result<Matrix<F>> {
    let id = Matrix::identity(u.field().clone(), u.n());
    let s = Matrix::from_blocks(&[vec![id, u.clone()], vec![u.clone(), u.pow(3).neg()]])?;
    if !s.is_invertible() {
        return Err(Error::HypothesisViolated("S is singular, so U is invalid".into()));
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessBundle<F: Field> {
    pub data: CyclicFieldData<F>,
    pub u: Matrix<F>,
    pub s: Matrix<F>,
    pub s_inv: Matrix<F>,
    c_powers: Vec<Matrix<F>>,
}

impl<F: Field> WitnessBundle<F> {
    pub fn new(data: CyclicFieldData<F>, u: Matrix<F>) -> Result<Self> {
        let checks = check_u(&data, &u);
        if !checks.passes() {
            return Err(Error::HypothesisViolated(format!("U fails its checks: {checks:?}")));
        }
        let s = build_s(&u)?;
        let s_inv = s.inverse()?;
        let q = data.q();
        let mut c_powers = vec![Matrix::identity(data.field().clone(), q)];
        for i in 1..q {
            c_powers.push(c_powers[i - 1].mul(&data.c));
        }
        Ok(WitnessBundle { data, u, s, s_inv, c_powers })
    }

    pub fn q(&self) -> usize {
        self.data.q()
    }

    /// `Σ a_i C^i`.
    pub fn k_element(&self, coeffs: &[F::Elem]) -> Matrix<F> {
        let f = self.data.field();
        let mut out = Matrix::zero(f.clone(), self.q());
        for (a, ci) in coeffs.iter().zip(&self.c_powers) {
            if !f.is_zero(a) {
                out = out.add(&ci.scale(a));
            }
        }
        out
    }

    pub fn random_k_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<F> {
        let f = self.data.field();
        let coeffs: Vec<F::Elem> = (0..self.q()).map(|_| f.sample(rng, SAMPLE_BOUND)).collect();
        self.k_element(&coeffs)
    }

    /// The image of `[[a, b], [c, d]] ∈ M_2(K)` in `M_{2q}(F)`.
    pub fn embed(&self, a: Matrix<F>, b: Matrix<F>, c: Matrix<F>, d: Matrix<F>) -> Matrix<F> {
        Matrix::from_blocks(&[vec![a, b], vec![c, d]]).expect("equal block sizes")
    }

    /// Whether a `2q × 2q` matrix lies in the image of `M_2(K)`, i.e. commutes with `C ⊕ C`.
    pub fn in_m2k(&self, x: &Matrix<F>) -> bool {
        let cc = self.data.c.direct_sum(&self.data.c).expect("same field");
        x.n() == 2 * self.q() && x.commutes_with(&cc).expect("same size")
    }

    /// `S⁻¹ X S`.
    pub fn twist(&self, x: &Matrix<F>) -> Matrix<F> {
        self.s_inv.mul(x).mul(&self.s)
    }
}

/// Outcome of testing random nonscalar `F, G ∈ M_2(K)` for `[F, S⁻¹GS] ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma33Report {
    pub seed: u64,
    pub trials: u64,
    /// Trials in which `F` commuted with `S⁻¹GS`.
    pub commuting_pairs: u64,
    pub commuting_trials: Vec<u64>,
    /// Trials in which `F` commuted with `S⁻¹FS`.
    pub self_conjugate_commuting: u64,
    /// Samples of the form `a ⊕ a` with `a ∈ K \ F`.
    pub k_scalar_samples: u64,
    /// Samples discarded for lying in `F·I`.
    pub scalar_rejections: u64,
}

struct TrialOutcome {
    commuting: bool,
    self_commuting: bool,
    k_scalars: u64,
    rejections: u64,
}

/// Draws a nonscalar element of `M_2(K)`; one draw in eight is a `K`-scalar `a ⊕ a`.
fn sample_m2k<F: Field, R: Rng>(
    bundle: &WitnessBundle<F>,
    rng: &mut R,
    k_scalars: &mut u64,
    rejections: &mut u64,
) -> Matrix<F> {
    loop {
        let x = if rng.gen_ratio(1, 8) {
            let a = bundle.random_k_element(rng);
            let zero = Matrix::zero(a.field().clone(), a.n());
            let x = bundle.embed(a.clone(), zero.clone(), zero, a);
            if !x.is_scalar() {
                *k_scalars += 1;
            }
            x
        } else {
            let blocks: Vec<Matrix<F>> = (0..4).map(|_| bundle.random_k_element(rng)).collect();
            let [a, b, c, d]: [Matrix<F>; 4] = blocks.try_into().expect("four blocks");
            bundle.embed(a, b, c, d)
        };
        if x.is_scalar() {
            *rejections += 1;
        } else {
            return x;
        }
    }
}

/// Trial `t` draws from its own stream of the seeded generator, so the report
/// does not depend on how trials are scheduled across threads.
pub fn lemma33_probe<F: Field>(bundle: &WitnessBundle<F>, trials: u64, seed: u64) -> Lemma33Report {
    let outcomes: Vec<TrialOutcome> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_for(seed, t);
            let (mut k_scalars, mut rejections) = (0, 0);
            let f = sample_m2k(bundle, &mut rng, &mut k_scalars, &mut rejections);
            let g = sample_m2k(bundle, &mut rng, &mut k_scalars, &mut rejections);
            let commuting = f.commutes_with(&bundle.twist(&g)).expect("same size");
            let self_commuting = f.commutes_with(&bundle.twist(&f)).expect("same size");
            TrialOutcome { commuting, self_commuting, k_scalars, rejections }
        })
        .collect();
    Lemma33Report {
        seed,
        trials,
        commuting_pairs: outcomes.iter().filter(|o| o.commuting).count() as u64,
        commuting_trials: (0..trials).filter(|&t| outcomes[t as usize].commuting).collect(),
        self_conjugate_commuting: outcomes.iter().filter(|o| o.self_commuting).count() as u64,
        k_scalar_samples: outcomes.iter().map(|o| o.k_scalars).sum(),
        scalar_rejections: outcomes.iter().map(|o| o.rejections).sum(),
    }
}

/// Samples `A₁ = [[0, a], [I, b]] ∈ M_2(K)` until it is nonderogatory over `F`
/// (commutant of dimension `2q`).
pub fn sample_adapted_a1<F: Field>(
    bundle: &WitnessBundle<F>,
    seed: u64,
    max_attempts: u64,
) -> Result<(Matrix<F>, u64)> {
    let mut rng = rng_for(seed, A1_SEARCH_STREAM);
    let q = bundle.q();
    let f = bundle.data.field().clone();
    for attempt in 1..=max_attempts {
        let a = bundle.random_k_element(&mut rng);
        let b = bundle.random_k_element(&mut rng);
        let a1 = bundle.embed(Matrix::zero(f.clone(), q), a, Matrix::identity(f.clone(), q), b);
        if a1.min_poly().degree() == Some(2 * q) {
            return Ok((a1, attempt));
        }
    }
    Err(Error::NotFound(format!("no nonderogatory A₁ in {max_attempts} attempts")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceProbeReport {
    pub a1_commutant_dim: usize,
    pub a1_in_m2k: bool,
    pub b1_nonscalar: bool,
    /// Dimension of the joint commutant of `A₁` and `B₁ = S⁻¹A₁S`.
    pub joint_commutant_dim: usize,
    pub distance_at_most_2: bool,
    /// Joint commutant dimension of `(A₁, A₁)`; equals `2q`.
    pub self_joint_dim: usize,
    /// `A₁` commutes with `A₁² + A₁`.
    pub polynomial_commutes: bool,
}

/// For nonderogatory `A₁ ∈ M_2(K)`, checks that `A₁` and `S⁻¹A₁S` share no
/// nonscalar commuting neighbour, so their distance is at least 3.
pub fn distance_lower_probe<F: Field>(bundle: &WitnessBundle<F>, a1: &Matrix<F>) -> Result<DistanceProbeReport> {
    let q = bundle.q();
    if a1.n() != 2 * q {
        return Err(Error::ShapeMismatch(format!("A₁ must be {0}×{0}", 2 * q)));
    }
    let a1_commutant_dim = a1.commutant_dim();
    if a1_commutant_dim != 2 * q {
        return Err(Error::HypothesisViolated(format!("A₁ is derogatory (commutant dimension {a1_commutant_dim})")));
    }
    let a1_in_m2k = bundle.in_m2k(a1);
    if !a1_in_m2k {
        return Err(Error::HypothesisViolated("A₁ does not commute with C ⊕ C".into()));
    }
    let b1 = bundle.twist(a1);
    let joint = a1.joint_commutant_dim(&b1)?;
    Ok(DistanceProbeReport {
        a1_commutant_dim,
        a1_in_m2k,
        b1_nonscalar: !b1.is_scalar(),
        joint_commutant_dim: joint,
        distance_at_most_2: joint >= 2,
        self_joint_dim: a1.joint_commutant_dim(a1)?,
        polynomial_commutes: a1.commutes_with(&a1.mul(a1).add(a1))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSuiteReport {
    pub field: FieldDescriptor,
    pub q: usize,
    pub seed: u64,
    pub m: String,
    pub g: String,
    pub source: String,
    pub twist_space_dim: usize,
    pub u_attempts: u64,
    pub u_failures: FailureCounts,
    pub u: MatrixJson,
    pub u_checks: UChecks,
    pub s_invertible: bool,
    pub s_inverse_checked: bool,
    pub lemma33: Lemma33Report,
    pub a1_attempts: u64,
    pub distance: DistanceProbeReport,
    pub wreath_polynomial: String,
    pub wreath_polynomial_source: String,
}

impl WitnessSuiteReport {
    /// Every property the suite checks holds.
    pub fn all_pass(&self) -> bool {
        self.u_checks.passes()
            && self.s_invertible
            && self.s_inverse_checked
            && self.lemma33.commuting_pairs == 0
            && self.lemma33.self_conjugate_commuting == 0
            && self.distance.joint_commutant_dim == 1
            && !self.distance.distance_at_most_2
    }
}

pub const DEFAULT_MAX_ATTEMPTS: u64 = 10_000;

pub fn run_suite<F: Field>(data: CyclicFieldData<F>, trials: u64, seed: u64) -> Result<WitnessSuiteReport> {
    let found = find_u(&data, seed, DEFAULT_MAX_ATTEMPTS)?;
    let field = data.field().descriptor();
    let (m, g, source) = (data.m.to_string(), data.g.to_string(), data.source.clone());
    let q = data.q();
    let bundle = WitnessBundle::new(data, found.u.clone())?;
    let s_inverse_checked = bundle.s_inv.mul(&bundle.s) == Matrix::identity(bundle.s.field().clone(), 2 * q);
    let lemma33 = lemma33_probe(&bundle, trials, seed);
    let (a1, a1_attempts) = sample_adapted_a1(&bundle, seed, DEFAULT_MAX_ATTEMPTS)?;
    let distance = distance_lower_probe(&bundle, &a1)?;
    let wreath = Polynomial::from_i64s(Rationals, &WREATH_DEFINING_POLY);
    Ok(WitnessSuiteReport {
        field,
        q,
        seed,
        m,
        g,
        source,
        twist_space_dim: found.twist_dim,
        u_attempts: found.attempts,
        u_failures: found.failures,
        u: (&found.u).into(),
        u_checks: found.checks,
        s_invertible: true,
        s_inverse_checked,
        lemma33,
        a1_attempts,
        distance,
        wreath_polynomial: wreath.to_string(),
        wreath_polynomial_source: WREATH_DEFINING_POLY_SOURCE.into(),
    })
}

/// The full suite over `F_p` (`characteristic = p`, odd) or over `Q`
/// (`characteristic = 0`, Gaussian period field).
pub fn witness_suite(characteristic: u64, q: usize, trials: u64, seed: u64) -> Result<WitnessSuiteReport> {
    match characteristic {
        0 => run_suite(CyclicFieldData::period_field(q)?, trials, seed),
        2 => Err(Error::HypothesisViolated("U requires characteristic other than 2".into())),
        p => run_suite(CyclicFieldData::<PrimeField>::over_prime_field(p, q)?, trials, seed),
    }
}
