//! Maximal independent sets in grid-like graphs.
//!
//! Builds rectangular grids, fat and thin grid cylinders, grid Möbius strips
//! and tori; enumerates and counts their maximal independent sets by two
//! independent engines; partitions them into automorphism orbits; and
//! evaluates the closed-form counts for the `2×n` and `3×n` families in exact
//! arithmetic.

pub mod encodings;
pub mod error;
pub mod graph;
pub mod harness;
pub mod formulas;
pub mod mis;
pub mod symmetry;

pub use error::{Error, Result};
pub use graph::{GridFamily, GridGraph, Vertex};
pub use mis::{Budgets, MisSet, MisVerdict, SizePolynomial};
