//! Exact computer algebra for linearized polynomials over finite fields.
//!
//! A linearized polynomial `L(x) = sum a_i x^(q^i)` over GF(q^n) induces a
//! GF(q)-linear map of GF(q^n). This crate provides the surrounding algebra:
//! the field tower itself, composition and rank of linearized polynomials,
//! their Dickson (sigma-circulant) matrices with determinant, adjugate and
//! inverse, the skew-polynomial ring with right division and right gcd,
//! Moore matrices, dual bases and trace-form representations, and the
//! block-circulant structure of polynomials with coefficients in a subfield.
//!
//! Everything is exact. Small fields can be enumerated, and [`laws`] uses that
//! to cross-check every algebraic identity the library relies on.

pub mod dickson;
pub mod elementary;
pub mod error;
pub mod field;
pub mod laws;
pub mod linearized;
pub mod matrix;
pub mod moore;
pub mod poly;
pub mod serial;
pub mod skew;
pub mod subfield;

pub use dickson::DicksonMatrix;
pub use error::{Error, Result, TowerLevel};
pub use field::{BaseField, Field, FieldTower, Fq, FqnElement, PrimeField};
pub use linearized::LinPoly;
pub use matrix::Matrix;
pub use moore::{MooreMatrix, TraceForm};
pub use skew::SkewPoly;
pub use subfield::SubfieldContext;
