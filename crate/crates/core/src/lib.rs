//! Bernoulli convolutions and finite orbits of the doubling-like maps `x -> βx`, `x -> βx + 1 - β`.

pub mod algebraics;
pub mod curves;
pub mod density;
pub mod error;
pub mod orbits;
pub mod unique;
pub mod words;

pub use error::{Error, Result};
