//! Polynomial evaluation over finite fields using the Frobenius automorphism.
//!
//! The crate provides instrumented arithmetic in F_{p^m} ([`field`]), dense
//! polynomials with radix-p and subfield-basis decompositions ([`poly`]),
//! baseline and automorphic evaluators that report exact operation counts
//! ([`eval`]), closed-form cost formulas and depth selection ([`cost`]), and
//! a syndrome pipeline for the [255, 223, 33] Reed-Solomon code ([`rs`]).

pub mod cost;
pub mod error;
pub mod eval;
pub mod field;
pub mod poly;
pub mod rs;
pub mod sample;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement, Meter, OpCounter, Subfield};
pub use poly::DensePoly;
