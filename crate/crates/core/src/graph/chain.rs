use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

/// A sequence `X_0 − X_1 − ⋯ − X_m` of same-shape matrices. Whether it is a
/// genuine commuting chain is checked by [`verify_chain`], not enforced here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingChain<F: Field> {
    entries: Vec<Matrix<F>>,
}

impl<F: Field> CommutingChain<F> {
    pub fn new(entries: Vec<Matrix<F>>) -> Result<Self> {
        if let Some(first) = entries.first() {
            if entries.iter().any(|m| m.n() != first.n() || m.field() != first.field()) {
                return Err(Error::ShapeMismatch("chain entries must share size and field".into()));
            }
        }
        Ok(CommutingChain { entries })
    }

    pub fn entries(&self) -> &[Matrix<F>] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn into_entries(self) -> Vec<Matrix<F>> {
        self.entries
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "kebab-case")]
pub enum ChainFailure {
    /// Entry `index` is scalar.
    Scalar { index: usize },
    /// Entries `index` and `index + 1` do not commute.
    NotCommuting { index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub valid: bool,
    pub first_failure: Option<ChainFailure>,
}

impl ChainCheck {
    pub fn failure_index(&self) -> Option<usize> {
        self.first_failure.as_ref().map(|f| match f {
            ChainFailure::Scalar { index } | ChainFailure::NotCommuting { index } => *index,
        })
    }
}

/// Checks that every entry is nonscalar and every adjacent pair commutes,
/// reporting the first failure in chain order.
pub fn verify_chain<F: Field>(chain: &CommutingChain<F>) -> ChainCheck {
    let entries = chain.entries();
    for (i, m) in entries.iter().enumerate() {
        if m.is_scalar() {
            return ChainCheck { valid: false, first_failure: Some(ChainFailure::Scalar { index: i }) };
        }
        if let Some(next) = entries.get(i + 1) {
            if !m.commutes_with(next).expect("shapes checked at construction") {
                return ChainCheck { valid: false, first_failure: Some(ChainFailure::NotCommuting { index: i }) };
            }
        }
    }
    ChainCheck { valid: true, first_failure: None }
}
