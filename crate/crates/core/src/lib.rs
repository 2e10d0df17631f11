//! Exact group-theoretic machinery for studying isolated points with rational
//! j-invariant on the modular curves `X_1(ell^n)`.

pub mod arith;
pub mod error;
pub mod gl2;
pub mod atlas;
pub mod curves;
pub mod degrees;
pub mod facts;
pub mod lattice;
pub mod criteria;
pub mod classify;

pub use error::{Error, Result};
