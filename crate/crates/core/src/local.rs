//! Finite extensions of `Q_p`, described only through their numerical invariants.
//!
//! Nothing here manipulates elements of an extension. Every decision needed by
//! the classifier reduces to divisibility and congruences among small integers.

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_prime_power_of, largest_prime_factor, mod_pow, prime_divisors};
use crate::error::{Error, Result};

fn require_prime(p: u64, what: &str) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{what} = {p} is not prime")))
    }
}

fn require_degree(n: u64) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("degree n = {n} must be at least 2")))
    }
}

/// Invariants of a tower `K ⊆ K′ ⊆ K″ ⊆ L` over `Q_p`.
///
/// `K` has degree `h` over `Q_p` and residue field of size `p^h`; `K′/K` is
/// unramified of degree `f`; `K″ = K′(ζ, (πζ^r)^{1/e})` is tamely ramified of
/// index `e` over `K′`, where ζ is a primitive `(p^{hf} − 1)`-st root of unity and
/// π a uniformizer of `K`; `L/K″` is wild of degree `p^k`. Up to conjugation the
/// tame part is determined by `(f, e, r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionInvariants {
    pub p: u64,
    pub base_degree: u64,
    pub f: u64,
    pub e: u64,
    pub wild_exponent: u32,
    pub tame_parameter: u64,
}

impl ExtensionInvariants {
    pub fn new(p: u64, base_degree: u64, f: u64, e: u64, wild_exponent: u32, tame_parameter: u64) -> Result<Self> {
        require_prime(p, "p")?;
        if base_degree == 0 || f == 0 || e == 0 {
            return Err(Error::InvalidArgument("h, f and e must be positive".into()));
        }
        if e.is_multiple_of(p) {
            return Err(Error::InvalidArgument(format!("tame index e = {e} is divisible by p = {p}")));
        }
        let hf = base_degree.checked_mul(f).ok_or_else(|| Error::InvalidArgument("h·f overflows".into()))?;
        // gcd(e, p^{hf} − 1) only depends on p^{hf} mod e
        let residue = mod_pow(p, hf, e);
        let bound = e.gcd(&((residue + e - 1) % e));
        if tame_parameter >= bound {
            return Err(Error::InvalidArgument(format!(
                "tame parameter r = {tame_parameter} must be below gcd(e, p^(hf) - 1) = {bound}"
            )));
        }
        p.checked_pow(wild_exponent)
            .and_then(|w| w.checked_mul(f))
            .and_then(|d| d.checked_mul(e))
            .ok_or_else(|| Error::InvalidArgument("degree overflows".into()))?;
        Ok(ExtensionInvariants { p, base_degree, f, e, wild_exponent, tame_parameter })
    }

    /// `[L : K] = f · e · p^k`.
    pub fn total_degree(&self) -> u64 {
        self.f * self.e * self.p.pow(self.wild_exponent)
    }

    /// `[L : Q_p]`.
    pub fn absolute_degree(&self) -> Option<u64> {
        self.total_degree().checked_mul(self.base_degree)
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1 && self.wild_exponent == 0
    }

    pub fn is_tame(&self) -> bool {
        self.wild_exponent == 0
    }
}

/// `Q_p` has an extension of degree `n` with no proper intermediate field
/// exactly when `n` is prime or a power of `p`.
pub fn primitive_extension_exists(p: u64, n: u64) -> Result<bool> {
    require_prime(p, "p")?;
    require_degree(n)?;
    Ok(is_prime(n) || is_prime_power_of(n, p))
}

/// Connectivity of `Γ(Q_p, n)`.
pub fn is_connected(p: u64, n: u64) -> Result<bool> {
    let primitive = primitive_extension_exists(p, n)?;
    Ok(n != 2 && !primitive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionTag {
    A,
    B,
    C,
}

impl std::fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ConditionTag::A => "a",
            ConditionTag::B => "b",
            ConditionTag::C => "c",
        })
    }
}

/// One checked congruence: `quantity ≡ residue (mod modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub quantity: String,
    pub modulus: u64,
    pub residue: u64,
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ≡ {} (mod {})", self.quantity, self.residue, self.modulus)
    }
}

/// One of the three conditions guaranteeing a subextension of prime degree `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubextensionCondition {
    pub tag: ConditionTag,
    pub p: u64,
    pub n: Option<u64>,
    pub q: Option<u64>,
    pub holds: bool,
    pub evidence: Vec<Congruence>,
}

impl SubextensionCondition {
    /// Decide the condition again from the evidence alone.
    pub fn recompute(&self) -> bool {
        match self.tag {
            ConditionTag::A => self.evidence.iter().all(|c| c.residue != 0),
            ConditionTag::B => self.evidence.iter().all(|c| c.residue == 1),
            ConditionTag::C => self.evidence.iter().all(|c| c.residue != 0),
        }
    }

    pub fn describe(&self) -> String {
        match self.tag {
            ConditionTag::A => {
                format!("q = {} does not divide p^f - 1 for any divisor f of n coprime to q", self.q.unwrap_or(0))
            }
            ConditionTag::B => format!("p ≡ 1 (mod {})", self.q.unwrap_or(0)),
            ConditionTag::C => "p does not divide n".to_string(),
        }
    }
}

/// Condition (a): for every divisor `f` of `n` with `q ∤ f`, `q ∤ p^f − 1`.
pub fn condition_a(p: u64, n: u64, q: u64) -> Result<SubextensionCondition> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    require_degree(n)?;
    if !n.is_multiple_of(q) || q == p || q * q >= n {
        return Err(Error::InvalidArgument(format!(
            "condition (a) needs a prime q | n with q != p and q^2 < n; got p = {p}, n = {n}, q = {q}"
        )));
    }
    let evidence: Vec<Congruence> = (1..=n)
        .filter(|f| n.is_multiple_of(*f) && f % q != 0)
        .map(|f| Congruence { quantity: format!("{p}^{f} - 1"), modulus: q, residue: (mod_pow(p, f, q) + q - 1) % q })
        .collect();
    let holds = evidence.iter().all(|c| c.residue != 0);
    Ok(SubextensionCondition { tag: ConditionTag::A, p, n: Some(n), q: Some(q), holds, evidence })
}

/// Condition (b): `p ≡ 1 (mod q)`.
pub fn condition_b(p: u64, q: u64) -> Result<SubextensionCondition> {
    require_prime(p, "p")?;
    require_prime(q, "q")?;
    let residue = p % q;
    Ok(SubextensionCondition {
        tag: ConditionTag::B,
        p,
        n: None,
        q: Some(q),
        holds: residue == 1,
        evidence: vec![Congruence { quantity: p.to_string(), modulus: q, residue }],
    })
}

/// Condition (c): `p ∤ n`.
pub fn condition_c(p: u64, n: u64) -> Result<SubextensionCondition> {
    require_prime(p, "p")?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let residue = n % p;
    Ok(SubextensionCondition {
        tag: ConditionTag::C,
        p,
        n: Some(n),
        q: None,
        holds: residue != 0,
        evidence: vec![Congruence { quantity: n.to_string(), modulus: p, residue }],
    })
}

/// Outcome of searching the prime divisors `q` of `n` (with `q ≠ p`, `q² < n`)
/// for one satisfying condition (a), (b) or (c).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceSearch {
    pub candidates: Vec<u64>,
    pub checked: Vec<SubextensionCondition>,
    pub success: Option<(u64, SubextensionCondition)>,
}

pub fn congruence_search(p: u64, n: u64) -> Result<CongruenceSearch> {
    require_prime(p, "p")?;
    require_degree(n)?;
    let candidates: Vec<u64> = prime_divisors(n).into_iter().filter(|&q| q != p && q * q < n).collect();
    let mut checked = Vec::new();
    for &q in &candidates {
        for cond in [condition_a(p, n, q)?, condition_b(p, q)?, condition_c(p, n)?] {
            let holds = cond.holds;
            checked.push(cond.clone());
            if holds {
                return Ok(CongruenceSearch { candidates, checked, success: Some((q, cond)) });
            }
        }
    }
    Ok(CongruenceSearch { candidates, checked, success: None })
}

/// The largest prime factor of `n` is below `√n` and `n` is not a power of `p`.
pub fn small_prime_factor_criterion(p: u64, n: u64) -> Result<bool> {
    require_prime(p, "p")?;
    require_degree(n)?;
    let largest = largest_prime_factor(n).expect("n >= 2 has a prime factor");
    Ok(largest * largest < n && !is_prime_power_of(n, p))
}

/// Number of ramified quadratic extensions of the unramified extension of `Q_2`
/// of degree `d`: `|K*/(K*)²| − 2 = 2^{d+2} − 2`.
pub fn count_ramified_quadratic(d: u32) -> Result<BigUint> {
    if d < 1 {
        return Err(Error::InvalidArgument("base degree must be at least 1".into()));
    }
    Ok((BigUint::from(1u8) << (d as usize + 2)) - BigUint::from(2u8))
}

/// Subgroup data `H ≤ K ≤ G` supplied by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order_g: u64,
    pub index_k: u64,
    pub index_h_in_k: u64,
    pub k_normal: bool,
    /// `H` lies in no proper subgroup of `G` other than `K`.
    pub h_only_under_k: bool,
}

/// Bookkeeping check of the subgroup hypotheses in the diameter-six criterion:
/// `[G:K] = q` prime with `q ≥ 7`, `[K:H] = 2`, `K` normal, and `H` contained
/// in no proper subgroup except `K`.
pub fn theorem31_group_hypotheses(data: GroupData) -> Result<bool> {
    let GroupData { order_g, index_k, index_h_in_k, k_normal, h_only_under_k } = data;
    if order_g == 0 || index_k == 0 || index_h_in_k == 0 {
        return Err(Error::InvalidArgument("group orders and indices must be positive".into()));
    }
    let chain = index_k.checked_mul(index_h_in_k).ok_or_else(|| Error::InvalidArgument("index overflow".into()))?;
    if order_g % chain != 0 {
        return Err(Error::InvalidArgument(format!("|G| = {order_g} is not divisible by [G:K][K:H] = {chain}")));
    }
    Ok(is_prime(index_k) && index_k >= 7 && index_h_in_k == 2 && k_normal && h_only_under_k)
}
