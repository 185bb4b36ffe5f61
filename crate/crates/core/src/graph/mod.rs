//! Commuting graphs over prime fields, and distance tools over any exact field.
//!
//! The exhaustive engine groups vertices by their commutant subspace. Two
//! matrices with the same commutant commute with each other and with exactly
//! the same third matrices, so BFS runs on the (much smaller) class graph.

mod chain;
mod engine;
mod small;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use chain::{verify_chain, ChainCheck, ChainFailure, CommutingChain};
pub use engine::{
    ff_distance, ff_distance_with_budget, ff_graph_summary, Budget, CommutingGraph, CommutingGraphSummary,
    ComponentSummary,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A graph distance; serialized as an integer or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u32(*d),
            Distance::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Distance::Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Distance::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

/// Whether `d(A, B) ≤ 2`, decided by linear algebra alone: a common nonscalar
/// neighbour exists iff the joint commutant (which always contains `I`) has
/// dimension at least 2.
pub fn distance_at_most_2<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Result<bool> {
    if a.is_scalar() || b.is_scalar() {
        return Err(Error::ScalarInput);
    }
    Ok(a.joint_commutant_dim(b)? >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn distance_serde() {
        assert_eq!(serde_json::to_string(&Distance::Finite(4)).unwrap(), "4");
        assert_eq!(serde_json::to_string(&Distance::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Distance>("\"inf\"").unwrap(), Distance::Infinite);
        assert_eq!(serde_json::from_str::<Distance>("6").unwrap(), Distance::Finite(6));
        assert!(serde_json::from_str::<Distance>("\"six\"").is_err());
    }

    #[test]
    fn dist2_commuting_pair() {
        let a = Matrix::from_i64_rows(Rationals, &[&[1, 2], &[3, 4]]).unwrap();
        assert!(distance_at_most_2(&a, &a.mul(&a).add_scalar(&5.into())).unwrap());
    }

    #[test]
    fn dist2_separate_cliques_f2() {
        let f = PrimeField::new(2).unwrap();
        let a = Matrix::from_i64_rows(f, &[&[0, 1], &[0, 0]]).unwrap();
        let b = Matrix::from_i64_rows(f, &[&[0, 0], &[1, 0]]).unwrap();
        assert!(!distance_at_most_2(&a, &b).unwrap());
        assert_eq!(ff_distance(&a, &b).unwrap(), Distance::Infinite);
        assert!(matches!(distance_at_most_2(&a, &Matrix::identity(f, 2)), Err(Error::ScalarInput)));
    }
}
