//! Exact computations with Macaulay inverse systems of graded artinian
//! algebras: derivative spaces and h-vectors, annihilators, level
//! constructions from points and generic forms, and Weak Lefschetz
//! certification by generic rank.

pub mod arith;
pub mod constructions;
pub mod error;
pub mod field;
pub mod hvector;
pub mod inverse;
pub mod matrix;
pub mod param;
pub mod points;
pub mod poly;
pub mod seed;
pub mod wlp;

pub use error::{ArithError, Error, Result};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME, SECOND_PRIME};
pub use matrix::ExactMatrix;
pub use poly::{Form, Monomial, MonomialOrder};
pub use arith::Arithmetic;
pub use hvector::HVector;
pub use inverse::InverseSystem;
