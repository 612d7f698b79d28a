//! Square-root graph solvers.
//!
//! A graph `H` is a *square root* of `G` when `H` and `G` share a vertex set
//! and two distinct vertices are adjacent in `G` exactly when they are at
//! distance one or two in `H`. This crate decides and constructs square
//! roots under edge budgets:
//!
//! - [`minroot`] finds a root with at most `n - 1 + k` edges (few edges
//!   beyond a spanning tree) via reduction to a kernel of size bounded in
//!   `k`, an exact labeled search on the kernel, and a lift back to the
//!   input graph.
//! - [`maxroot`] finds a root with at least `m - k` edges (few edge
//!   deletions), either by bounded branching on conflict pairs or by exact
//!   enumeration of maximal independent sets in an auxiliary graph.
//! - [`treeroot`] recognizes squares of trees directly.
//! - [`oracle`] solves both problems by exhaustive search, as a slow but
//!   independent reference for testing.
//! - [`gen`] produces seeded test graphs, including planted square
//!   instances with known root sizes.
//! - [`graph`] and [`dense`] provide the underlying graph representations:
//!   a sorted adjacency-set graph with stable labels, and a bitset form for
//!   tight inner loops.

pub mod dense;
pub mod gen;
pub mod graph;
pub mod maxroot;
pub mod minroot;
pub mod oracle;
pub mod treeroot;

pub use graph::{is_square_root, Edge, Graph, GraphError, Vertex};
