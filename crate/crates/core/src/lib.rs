//! Chordal graphs, 1-planar drawings, the 4-join family of 1-planar 4-trees,
//! and constructive Hamiltonian paths, with brute-force oracles for checking.

pub mod canon;
pub mod chordal;
pub mod connectivity;
pub mod embedding;
pub mod error;
pub mod families;
pub mod graph;
pub mod hamiltonian;
pub mod io;
pub mod oneplanar;
pub mod phi;
pub mod planarity;
pub mod verify;

pub use error::{GraphError, ScaleExceeded};
pub use graph::{Graph, IsoCertificate};
