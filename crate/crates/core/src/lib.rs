//! Exact arithmetic for nilpotent Lie algebras, integer lattices and the
//! growth of finitely generated groups.

pub mod error;
pub mod groups;
pub mod harmonious;
pub mod lattice;
pub mod lie;
pub mod rational;
pub mod suites;

pub use error::{Error, Result};
pub use rational::Q;
