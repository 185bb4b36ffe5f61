//! JSON formats for matrices and chains.
//!
//! A matrix is `{"field": "Q" | "Fp:<p>", "n": <n>, "entries": [[<string>, …], …]}`
//! with entries written as decimal integers or fractions `a/b`. A chain is a
//! JSON array of matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::graph::CommutingChain;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub field: FieldDescriptor,
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl<F: Field> From<&Matrix<F>> for MatrixJson {
    fn from(m: &Matrix<F>) -> Self {
        let f = m.field();
        MatrixJson {
            field: f.descriptor(),
            n: m.n(),
            entries: m.rows().iter().map(|row| row.iter().map(|x| f.format_elem(x)).collect()).collect(),
        }
    }
}

impl MatrixJson {
    fn check_shape(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Parse("matrix size must be positive".into()));
        }
        if self.entries.len() != self.n || self.entries.iter().any(|row| row.len() != self.n) {
            return Err(Error::Parse(format!("entries must form a {0}×{0} array", self.n)));
        }
        Ok(())
    }

    /// Decode over a field chosen by the caller, which must match `self.field`.
    pub fn decode<F: Field>(&self, field: F) -> Result<Matrix<F>> {
        if field.descriptor() != self.field {
            return Err(Error::Parse(format!("expected a matrix over {}, found {}", field.descriptor(), self.field)));
        }
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|s| field.parse_elem(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, rows)
    }

    /// Decode over the field named in the document.
    pub fn decode_any(&self) -> Result<AnyMatrix> {
        match self.field {
            FieldDescriptor::Rationals => self.decode(Rationals).map(AnyMatrix::Rational),
            FieldDescriptor::Prime(p) => self.decode(PrimeField::new(p)?).map(AnyMatrix::Prime),
        }
    }
}

/// A matrix over whichever field its JSON named.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatrix {
    Rational(Matrix<Rationals>),
    Prime(Matrix<PrimeField>),
}

impl AnyMatrix {
    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyMatrix::Rational(m) => m.field().descriptor(),
            AnyMatrix::Prime(m) => m.field().descriptor(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            AnyMatrix::Rational(m) => m.n(),
            AnyMatrix::Prime(m) => m.n(),
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        match self {
            AnyMatrix::Rational(m) => m.into(),
            AnyMatrix::Prime(m) => m.into(),
        }
    }
}

pub fn parse_matrix_json(s: &str) -> Result<AnyMatrix> {
    serde_json::from_str::<MatrixJson>(s)?.decode_any()
}

pub fn parse_chain_json(s: &str) -> Result<Vec<AnyMatrix>> {
    let docs: Vec<MatrixJson> = serde_json::from_str(s)?;
    let chain = docs.iter().map(MatrixJson::decode_any).collect::<Result<Vec<_>>>()?;
    if let Some(first) = chain.first() {
        if chain.iter().any(|m| m.descriptor() != first.descriptor() || m.n() != first.n()) {
            return Err(Error::Parse("chain entries must share field and size".into()));
        }
    }
    Ok(chain)
}

/// Parse a chain whose entries must all be rational.
pub fn parse_rational_chain_json(s: &str) -> Result<CommutingChain<Rationals>> {
    let entries = parse_chain_json(s)?
        .into_iter()
        .map(|m| match m {
            AnyMatrix::Rational(m) => Ok(m),
            AnyMatrix::Prime(m) => {
                Err(Error::Parse(format!("expected a matrix over Q, found {}", m.field().descriptor())))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CommutingChain::new(entries)
}

pub fn matrix_to_json<F: Field>(m: &Matrix<F>) -> String {
    serde_json::to_string(&MatrixJson::from(m)).expect("matrix documents always serialize")
}

pub fn chain_to_json<F: Field>(chain: &CommutingChain<F>) -> String {
    let docs: Vec<MatrixJson> = chain.entries().iter().map(MatrixJson::from).collect();
    serde_json::to_string(&docs).expect("chain documents always serialize")
}
