//! Bitset adjacency view for graphs with at most 128 vertices.
//!
//! Subset enumeration dominates the running time of the brute-force oracle
//! and the kernel solver, so both work on `u128` adjacency rows instead of
//! the pointer-heavy [`Graph`](crate::graph::Graph) representation and map
//! back to stable labels only at the boundary.

use crate::graph::{Edge, Graph, Vertex};

/// Label table for a dense bitset view: index `i` in a row vector corresponds
/// to `labels[i]`, with labels kept in ascending order so lexicographic edge
/// order is preserved by the index encoding.
#[derive(Debug, Clone)]
pub struct Dense {
    labels: Vec<Vertex>,
    rows: Vec<u128>,
}

/// Iterates over the set bit positions of a mask, ascending.
pub fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

impl Dense {
    /// Largest vertex count a `u128` row can hold.
    pub const MAX_VERTICES: usize = 128;

    /// Builds the dense view, or `None` when the graph has more than 128
    /// vertices.
    pub fn from_graph(g: &Graph) -> Option<Self> {
        if g.n() > Self::MAX_VERTICES {
            return None;
        }
        let labels: Vec<Vertex> = g.vertices().collect();
        let mut rows = vec![0u128; labels.len()];
        for e in g.edges() {
            let i = labels.binary_search(&e.u()).expect("endpoint is a vertex");
            let j = labels.binary_search(&e.v()).expect("endpoint is a vertex");
            rows[i] |= 1 << j;
            rows[j] |= 1 << i;
        }
        Some(Dense { labels, rows })
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// The label behind row index `i`.
    pub fn label(&self, i: usize) -> Vertex {
        self.labels[i]
    }

    /// The row index of a label.
    pub fn index_of(&self, v: Vertex) -> usize {
        self.labels
            .binary_search(&v)
            .unwrap_or_else(|_| panic!("label {v} is not in the dense view"))
    }

    /// Adjacency rows of the source graph.
    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    /// All edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    /// Because labels ascend with indices this matches [`Graph::edges`] order.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in bits(self.rows[i] >> i >> 1) {
                out.push((i, i + 1 + j));
            }
        }
        out
    }

    /// Converts index-encoded rows back into a labeled graph on the full
    /// vertex set of this view.
    pub fn to_graph(&self, rows: &[u128]) -> Graph {
        let mut g = Graph::from_vertices(self.labels.iter().copied());
        for (i, &row) in rows.iter().enumerate() {
            for j in bits(row) {
                if i < j {
                    g.add_edge(Edge::new(self.labels[i], self.labels[j]));
                }
            }
        }
        g
    }

    /// A fresh all-zero row vector of the right length.
    pub fn zero_rows(&self) -> Vec<u128> {
        vec![0; self.n()]
    }

    /// Bit mask with one bit per vertex of this view.
    pub fn full_mask(&self) -> u128 {
        mask_of(self.n())
    }
}

/// Bit mask with the lowest `n` bits set.
pub fn mask_of(n: usize) -> u128 {
    assert!(n <= Dense::MAX_VERTICES);
    if n == 0 {
        0
    } else {
        u128::MAX >> (Dense::MAX_VERTICES - n)
    }
}

/// Sets the symmetric pair `(i, j)` in `rows`.
#[inline]
pub fn set_pair(rows: &mut [u128], i: usize, j: usize) {
    rows[i] |= 1 << j;
    rows[j] |= 1 << i;
}

/// Clears the symmetric pair `(i, j)` in `rows`.
#[inline]
pub fn clear_pair(rows: &mut [u128], i: usize, j: usize) {
    rows[i] &= !(1 << j);
    rows[j] &= !(1 << i);
}

/// The square of an adjacency-row graph: `i ~ j` when their distance is ≤ 2.
pub fn square_rows(rows: &[u128]) -> Vec<u128> {
    let mut sq = rows.to_vec();
    for i in 0..rows.len() {
        let mut acc = rows[i];
        for j in bits(rows[i]) {
            acc |= rows[j];
        }
        sq[i] = acc & !(1 << i);
    }
    sq
}

/// Number of connected components of the adjacency-row graph, counting
/// isolated vertices as singleton components.
pub fn count_components(rows: &[u128]) -> usize {
    let n = rows.len();
    let mut visited: u128 = 0;
    let mut count = 0;
    for start in 0..n {
        if visited & (1 << start) != 0 {
            continue;
        }
        count += 1;
        let mut frontier: u128 = 1 << start;
        visited |= frontier;
        while frontier != 0 {
            let mut next = 0u128;
            for i in bits(frontier) {
                next |= rows[i];
            }
            frontier = next & !visited;
            visited |= frontier;
        }
    }
    count
}

/// Whether the adjacency rows describe a connected graph on all
/// `rows.len()` vertices (vacuously true for zero vertices).
pub fn rows_connected(rows: &[u128]) -> bool {
    let n = rows.len();
    if n == 0 {
        return true;
    }
    let mut reach: u128 = 1;
    let mut frontier: u128 = 1;
    while frontier != 0 {
        let mut next = 0u128;
        for i in bits(frontier) {
            next |= rows[i];
        }
        frontier = next & !reach;
        reach |= next;
    }
    reach == mask_of(n)
}
