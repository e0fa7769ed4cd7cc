//! Counting parts in residue classes.
//!
//! Exact counts of parts `= r (mod N)` over all partitions of `n`, their
//! differences and the zero class, together with high-precision asymptotic
//! evaluators built on the circle method and Wright's saddle-point expansion.

pub mod arith;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod exact;
pub mod numerics;
pub mod rademacher;
pub mod wright;

pub use error::{Error, Result};
