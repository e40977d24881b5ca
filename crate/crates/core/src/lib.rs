//! Weak and strong K_s^r saturation in random uniform hypergraphs.
//!
//! The crate provides a canonical r-uniform hypergraph type with a colex edge
//! codec, a pinned-seed binomial sampler, the bootstrap activation engine
//! (closure, saturation verifiers, exact exhaustive oracles), the
//! core-assignment construction of weakly saturated subhypergraphs, and the
//! staged construction of strongly saturated subhypergraphs.

pub mod bootstrap;
pub mod combinatorics;
pub mod error;
pub mod hgio;
pub mod hypergraph;
pub mod oracle;
pub mod randmodel;
pub mod strongbuilder;
pub mod weakbuilder;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, VertexSet};
