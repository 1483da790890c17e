//! Exact computation with Coxeter graphs and their symmetries.
//!
//! Given a Coxeter graph and a group of label-preserving vertex
//! permutations, this crate computes the folded Coxeter graph, enumerates
//! root systems by reflection breadth-first search in exact arithmetic
//! over ℚ(√2,√3,√5), partitions roots into symmetry orbits, and decides
//! whether the folded positive roots are in bijection with the root
//! orbits (the equivariant basis property), both by direct verification
//! with certificates/witnesses and by pattern classification against the
//! catalog of known graph/symmetry pairs.

pub mod acceptance;
pub mod catalog;
pub mod cli;
pub mod folding;
pub mod form;
pub mod graph;
pub mod matrix;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod verify;

pub use graph::{CoxeterGraph, Label, OrbitPartition, Symmetry, SymmetryGroup, VertexId};
pub use scalar::{Scalar, Sign};
