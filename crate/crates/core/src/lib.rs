//! Conflict graphs of ordered graphs.
//!
//! An ordered graph has integer vertex positions; a conflict matrix `M` and a
//! threshold `p` decide which pairs of its edges conflict. This crate builds
//! those conflict graphs, computes their independence, clique and chromatic
//! numbers, evaluates the closed forms known for complete ordered graphs,
//! constructs extremal embeddings, and checks the closed forms exhaustively
//! on small instances.

pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod io;
pub mod model;
pub mod params;
pub mod solvers;
pub mod transforms;
pub mod verify;

pub use graph::{BitSet, Graph};
pub use model::{
    build_conflict_graph, cross_matrix, is_conflicting, nest_matrix, shift_matrix, ConflictGraph,
    ConflictMatrix, ConflictSpec, Edge, ModelError, OrderedGraph,
};
pub use solvers::{SolveBudget, SolveError};
