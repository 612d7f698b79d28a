//! Brute-force reference solver: enumerate every admissible spanning subgraph
//! and test it. Deliberately unoptimized so it stays obviously correct; every
//! other solver in this crate is validated against it at desk scale.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dense::{self, Dense};
use crate::graph::{is_square_root, Edge, Graph};

/// Hard limit on the edge count of oracle inputs. Enumeration is `2^m`; the
/// oracle exists for tests, not production, so anything bigger is refused
/// loudly instead of grinding silently.
pub const EDGE_CAP: usize = 24;

/// Errors from the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// The input is too large for `2^m` enumeration.
    #[error("graph has {edges} edges, above the brute-force cap of {EDGE_CAP}")]
    EdgeCapExceeded { edges: usize },
    /// Minimum-root search is defined for connected inputs only.
    #[error("minimum-root oracle requires a connected graph ({components} components)")]
    Disconnected { components: usize },
}

/// A constrained root-enumeration request: find spanning subgraphs `H` of
/// `graph` with `H² = graph`, `required ⊆ E_H`, `blocked ∩ E_H = ∅` and
/// `min_edges ≤ |E_H| ≤ max_edges`.
#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub graph: Graph,
    pub min_edges: usize,
    pub max_edges: usize,
    pub required: BTreeSet<Edge>,
    pub blocked: BTreeSet<Edge>,
}

impl OracleQuery {
    /// Unconstrained query: any root of `graph`, of any size.
    pub fn unconstrained(graph: Graph) -> Self {
        let max_edges = graph.m();
        OracleQuery {
            graph,
            min_edges: 0,
            max_edges,
            required: BTreeSet::new(),
            blocked: BTreeSet::new(),
        }
    }
}

/// Enumerates every admissible root of the query in deterministic
/// lexicographic subset order, together with the number of subsets visited
/// (always exactly `2^{|E ∖ B ∖ R|}`; the counter is a sanity check that no
/// accidental pruning sneaks into this reference path).
///
/// # Panics
/// Panics if `min_edges > max_edges` or `required ∩ blocked ≠ ∅`; those are
/// malformed queries, not answerable ones.
pub fn oracle_enumerate_roots_with_stats(
    q: &OracleQuery,
) -> Result<(Vec<Graph>, u64), OracleError> {
    assert!(
        q.min_edges <= q.max_edges,
        "malformed query: min_edges {} > max_edges {}",
        q.min_edges,
        q.max_edges
    );
    assert!(
        q.required.is_disjoint(&q.blocked),
        "malformed query: required and blocked overlap"
    );
    if q.graph.m() > EDGE_CAP {
        return Err(OracleError::EdgeCapExceeded { edges: q.graph.m() });
    }

    let target = Dense::from_graph(&q.graph).expect("edge cap keeps n well under 128");
    let edge_set: BTreeSet<Edge> = q.graph.edges().into_iter().collect();
    // Required edges outside the graph can never be satisfied by a spanning
    // subgraph; the answer is an empty list, not an error.
    if !q.required.is_subset(&edge_set) {
        return Ok((Vec::new(), 0));
    }

    let free: Vec<(usize, usize)> = q
        .graph
        .edges()
        .into_iter()
        .filter(|e| !q.required.contains(e) && !q.blocked.contains(e))
        .map(|e| (target.index_of(e.u()), target.index_of(e.v())))
        .collect();

    let mut rows = target.zero_rows();
    for e in &q.required {
        dense::set_pair(&mut rows, target.index_of(e.u()), target.index_of(e.v()));
    }

    let mut state = Enumeration {
        target_rows: target.rows().to_vec(),
        free,
        rows,
        size: q.required.len(),
        min_edges: q.min_edges,
        max_edges: q.max_edges,
        visited: 0,
        found: Vec::new(),
    };
    state.visit_subsets(0);
    assert_eq!(
        state.visited,
        1u64 << state.free.len(),
        "enumeration must visit every subset exactly once"
    );

    let roots: Vec<Graph> = state
        .found
        .iter()
        .map(|rows| target.to_graph(rows))
        .collect();
    for h in &roots {
        // Re-verify through the independent Graph-level implementation.
        assert_eq!(is_square_root(h, &q.graph), Ok(true));
    }
    Ok((roots, state.visited))
}

/// [`oracle_enumerate_roots_with_stats`] without the subset counter.
pub fn oracle_enumerate_roots(q: &OracleQuery) -> Result<Vec<Graph>, OracleError> {
    oracle_enumerate_roots_with_stats(q).map(|(roots, _)| roots)
}

struct Enumeration {
    target_rows: Vec<u128>,
    free: Vec<(usize, usize)>,
    rows: Vec<u128>,
    size: usize,
    min_edges: usize,
    max_edges: usize,
    visited: u64,
    found: Vec<Vec<u128>>,
}

impl Enumeration {
    /// Pre-order walk over all subsets of `free[start..]` added to the current
    /// edge selection: visiting a node before extending it yields exactly the
    /// lexicographic subset order (∅, {e₁}, {e₁,e₂}, …, {e₂}, …).
    fn visit_subsets(&mut self, start: usize) {
        self.visited += 1;
        if self.size >= self.min_edges
            && self.size <= self.max_edges
            && dense::square_rows(&self.rows) == self.target_rows
        {
            self.found.push(self.rows.clone());
        }
        for idx in start..self.free.len() {
            let (i, j) = self.free[idx];
            dense::set_pair(&mut self.rows, i, j);
            self.size += 1;
            self.visit_subsets(idx + 1);
            self.size -= 1;
            dense::clear_pair(&mut self.rows, i, j);
        }
    }
}

/// Walks all `size`-subsets of `edges` in lexicographic order and returns
/// the first whose graph squares to `target_rows`, as rows.
fn first_root_of_size(
    target_rows: &[u128],
    edges: &[(usize, usize)],
    size: usize,
) -> Option<Vec<u128>> {
    fn rec(
        target_rows: &[u128],
        edges: &[(usize, usize)],
        rows: &mut Vec<u128>,
        start: usize,
        remaining: usize,
    ) -> bool {
        if remaining == 0 {
            return dense::square_rows(rows) == target_rows;
        }
        // Not enough edges left to fill the subset: cut this branch.
        if edges.len() - start < remaining {
            return false;
        }
        for idx in start..edges.len() {
            let (i, j) = edges[idx];
            dense::set_pair(rows, i, j);
            if rec(target_rows, edges, rows, idx + 1, remaining - 1) {
                return true;
            }
            dense::clear_pair(rows, i, j);
        }
        false
    }

    let mut rows = vec![0u128; target_rows.len()];
    rec(target_rows, edges, &mut rows, 0, size).then_some(rows)
}

/// The minimum-edge-count root of a connected graph, provided that minimum is
/// at most `n − 1 + k`; absent otherwise. Ties are broken by lexicographic
/// edge order (the first hit of the size-ascending scan).
pub fn oracle_min_root(g: &Graph, k: usize) -> Result<Option<Graph>, OracleError> {
    if g.m() > EDGE_CAP {
        return Err(OracleError::EdgeCapExceeded { edges: g.m() });
    }
    let profile = g.connectivity_profile();
    if !profile.is_connected {
        return Err(OracleError::Disconnected {
            components: profile.components.len(),
        });
    }

    let target = Dense::from_graph(g).expect("edge cap keeps n well under 128");
    let edges = target.edge_indices();
    // Any root of a connected graph on n ≥ 2 vertices is itself connected and
    // spanning, so no root has fewer than n − 1 edges.
    let lower = g.n().saturating_sub(1);
    for size in lower..=g.m() {
        // Budget test in overflow-safe form: size ≤ n − 1 + k ⟺ size + 1 ≤ n + k.
        if size + 1 > g.n() + k {
            return Ok(None);
        }
        if let Some(rows) = first_root_of_size(target.rows(), &edges, size) {
            return Ok(Some(target.to_graph(&rows)));
        }
    }
    Ok(None)
}

/// The maximum-edge-count root of a graph, or absent if it has no root at
/// all. Ties are broken by lexicographic edge order.
pub fn oracle_max_root(g: &Graph) -> Result<Option<Graph>, OracleError> {
    if g.m() > EDGE_CAP {
        return Err(OracleError::EdgeCapExceeded { edges: g.m() });
    }
    let target = Dense::from_graph(g).expect("edge cap keeps n well under 128");
    let edges = target.edge_indices();
    for size in (0..=g.m()).rev() {
        if let Some(rows) = first_root_of_size(target.rows(), &edges, size) {
            return Ok(Some(target.to_graph(&rows)));
        }
    }
    Ok(None)
}
