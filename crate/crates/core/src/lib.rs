//! Exact solvers for the vertex colouring game, the colouring game with
//! blanks (optionally with classes marked for blanks and a forced opening),
//! and the marking game, together with executable Maker strategies and
//! exhaustive verification suites over small graphs.

pub mod game;
pub mod graph;
pub mod solver;
pub mod strategies;
pub mod verify;

pub use graph::{Graph, GraphError, VertexSet};
