//! Derived functors of non-additive functors over the integers.

pub mod budget;
pub mod chain;
pub mod curtis;
pub mod derived;
pub mod error;
pub mod functors;
pub mod parse;
pub mod simplicial;
pub mod suites;
pub mod zlinalg;

pub use budget::Budget;
pub use error::{Error, Result};
