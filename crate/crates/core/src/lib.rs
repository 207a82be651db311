//! Oriented colorings of recursively defined oriented graphs.
//!
//! The crate parses di-co, msp and directed clique-width expressions,
//! evaluates them to digraphs and computes the oriented chromatic number
//! with engines specialised to each class, plus an exact backtracking
//! search for arbitrary small digraphs.

pub mod coloring;
pub mod cograph;
pub mod cw_solver;
pub mod digraph;
pub mod error;
pub mod expr;
pub mod ilp;
pub mod instances;
pub mod io;
pub mod msp_solver;
pub mod oracle;
pub mod tournament;

pub use coloring::{
    bounds, greedy_coloring, is_oriented_coloring, transitive_dag_coloring,
    verify_oriented_coloring, Coloring, Violation,
};
pub use digraph::{Digraph, UndirectedGraph};
pub use error::{OcnError, Pos, Result};
