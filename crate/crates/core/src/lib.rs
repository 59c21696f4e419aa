//! Faithful dimensions of finite p-groups attached to nilpotent Lie rings.

pub mod acceptance;
pub mod bch;
pub mod classifier;
pub mod commutator;
pub mod constructors;
pub mod error;
pub mod engine;
pub mod exact;
pub mod lie;

pub use error::{Error, ErrorKind, Result};
