//! Commuting graphs of matrix rings over p-adic and prime fields.
//!
//! The crate is split along the lines of the mathematics:
//!
//! * [`arith`]: exact scalars (rationals with p-adic valuations, prime-field residues).
//! * [`field`], [`poly`], [`matrix`], [`subspace`]: dense exact linear algebra over an
//!   abstract field, including commutants and identical-cell rational forms.
//! * [`graph`]: exhaustive connectivity and diameter of `Γ(F_p, n)` at desk scale.
//! * [`local`]: decidable predicates about finite extensions of `Q_p`.
//! * [`classify`]: connectivity and diameter bounds of `Γ(Q_p, n)` by rule application.
//! * [`witness`]: the twist matrix `U`, the block matrix `S`, and chain reduction mod p.
//! * [`format`]: JSON and text formats shared with the command line.

pub mod arith;
pub mod classify;
pub mod error;
pub mod field;
pub mod format;
pub mod graph;
pub mod linalg;
pub mod local;
pub mod matrix;
pub mod poly;
pub mod subspace;
pub mod witness;

pub use arith::{is_prime, reduce_mod_p, vp, PrimeFieldElem, Rational, Valuation};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, PrimeField, Rationals};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use subspace::Subspace;
