//! Exact computational experiments around polynomial identities of matrix
//! algebras over prime fields.
//!
//! The library has three layers:
//!
//! * algebra: prime fields, words, sparse noncommutative polynomials, and
//!   matrix evaluation ([`field`], [`words`], [`poly`], [`matrix`]);
//! * censuses: exact (and seeded sampled) point counts of vanishing loci,
//!   fibers, nilpotent / characteristic-polynomial / rank-deficient loci,
//!   with dimension and codimension estimation ([`census`]);
//! * combinatorics: consecutive-pattern avoidance counting with transfer
//!   matrices, the score-ordered rewriting system, and dimension series of
//!   free Lie and Jordan algebras ([`avoidance`], [`score`], [`growth`]).
//!
//! All algebraic arithmetic is exact; floating point only appears in
//! dimension estimates and spectral-radius reports derived from exact
//! counts.

pub mod avoidance;
pub mod census;
pub mod error;
pub mod field;
pub mod growth;
pub mod matrix;
pub mod parse;
pub mod poly;
pub mod score;
pub mod words;

pub use error::{Error, Result};
pub use field::{FieldElement, PrimeField, Rational};
pub use matrix::{Matrix, MatrixTuple};
pub use poly::{FieldPoly, NcPoly, RatPoly};
pub use words::Word;
