//! Exact semantics, consistency operators and proof checking for logics of
//! formal inconsistency over MTL-chains.
//!
//! Everything is generic over a [`scalar::Scalar`]; the aliases below fix it
//! to arbitrary-precision rationals.

pub mod catalog;
pub mod chain;
pub mod files;
pub mod formula;
pub mod hilbert;
pub mod operators;
pub mod scalar;
pub mod semantics;
pub mod suite;
pub mod workspace;

pub type Rational = num_rational::BigRational;
pub type Chain = chain::Chain<Rational>;
pub type ConsistencyOp = operators::ConsistencyOp<Rational>;
pub type InconsistencyOp = operators::InconsistencyOp<Rational>;
pub type Structure<'a> = semantics::Structure<'a, Rational>;
pub type Evaluation<'a> = semantics::Evaluation<'a, Rational>;
pub type Workspace = workspace::Workspace<Rational>;
