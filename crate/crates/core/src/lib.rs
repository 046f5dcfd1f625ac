//! q-stable simplicial complexes, exact homology certification of their
//! connectivity, and exact search for Tverberg-type partitions of affine
//! point configurations.

pub mod cli;
pub mod complex;
pub mod error;
pub mod family;
pub mod homology;
pub mod lp;
pub mod planner;
pub mod rational;
pub mod tverberg;

pub use complex::{Face, RotationAction, SimplicialComplex, Vertex};
pub use error::{Error, Result};
