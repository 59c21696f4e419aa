//! Exact arithmetic over Z and finite fields.

pub mod arith;
pub mod field;
pub mod intmat;
pub mod matrix;

pub use field::{ExtensionField, Field, FiniteField, PrimeField};
pub use intmat::{IntMatrix, Smith};
pub use matrix::{EchelonBasis, FieldMatrix};
