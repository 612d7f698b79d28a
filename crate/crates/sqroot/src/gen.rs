//! Deterministic instance generators for tests and benchmarks.
//!
//! All randomness flows through a ChaCha8 stream seeded with
//! [`SeedableRng::seed_from_u64`], and the generators draw from it only via
//! the two helpers below (index sampling and unit-interval sampling), so a
//! given `(parameters, seed)` pair produces the same instance on every
//! platform and every run.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

/// Errors from the generators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    /// Tree-based generation needs at least two vertices.
    #[error("need at least {min} vertices (got {n})")]
    TooFewVertices { n: usize, min: usize },
    /// More extra edges were requested than non-tree slots exist.
    #[error("requested {k} extra edges but only {available} non-tree slots exist for n = {n}")]
    TooManyExtraEdges { n: usize, k: usize, available: usize },
    /// Edge probability outside `[0, 1]`.
    #[error("probability must lie in [0, 1] (got {p})")]
    InvalidProbability { p: f64 },
    /// A known-square family was asked for an unsupported size.
    #[error("family {family:?} needs size at least {min} (got {size})")]
    FamilyTooSmall {
        family: KnownFamily,
        min: usize,
        size: usize,
    },
}

/// A generated graph together with the root it was built from.
///
/// `k_true` is the planted root's edge surplus over a spanning tree,
/// `|E_root| − (n − 1)`; a minimum-root search with budget `k_true` is
/// guaranteed to succeed on `graph` (possibly even with a smaller budget,
/// when the planted root is not the smallest one).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub root: Graph,
    pub k_true: usize,
}

/// Families with closed-form squares and hand-checkable roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownFamily {
    /// The square of the cycle `C_n`; planted root `C_n` itself.
    CycleSquare,
    /// The complete graph `K_n`; planted root the star at vertex 1.
    Complete,
    /// Two size-`s` cliques glued on two shared vertices; planted root a
    /// double star on the shared pair.
    UnionTwoCliques,
}

/// The seeded stream every generator draws from.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform index in `0..bound` by rejection sampling on raw 64-bit output,
/// which keeps the draw unbiased without depending on any distribution API.
fn rand_index(rng: &mut impl RngCore, bound: usize) -> usize {
    assert!(bound > 0, "empty range");
    let bound = bound as u64;
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % bound) as usize;
        }
    }
}

/// Uniform float in `[0, 1)` from the top 53 bits of one 64-bit draw.
fn rand_unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// A uniformly random labeled tree on `{1..n}` via a random Prüfer sequence.
fn random_tree(rng: &mut impl RngCore, n: usize) -> Graph {
    debug_assert!(n >= 2);
    let n_v = n as Vertex;
    if n == 2 {
        return Graph::from_edges([Edge::new(1, 2)]);
    }
    let seq: Vec<Vertex> = (0..n - 2)
        .map(|_| 1 + rand_index(rng, n) as Vertex)
        .collect();
    let mut degree = vec![1usize; n + 1];
    for &v in &seq {
        degree[v as usize] += 1;
    }
    let mut tree = Graph::from_vertices(1..=n_v);
    // Repeatedly join the smallest leaf to the next sequence entry. A heap
    // of current degree-1 vertices keeps this O(n log n).
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<Vertex>> = (1..=n_v)
        .filter(|&v| degree[v as usize] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &v in &seq {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        tree.add_edge(Edge::new(leaf, v));
        degree[leaf as usize] = 0;
        degree[v as usize] -= 1;
        if degree[v as usize] == 1 {
            leaves.push(std::cmp::Reverse(v));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("two vertices remain");
    let std::cmp::Reverse(b) = leaves.pop().expect("two vertices remain");
    tree.add_edge(Edge::new(a, b));
    tree
}

/// All vertex pairs of `{1..n}` absent from `g`, in lexicographic order.
fn non_edges(g: &Graph, n: usize) -> Vec<Edge> {
    let n = n as Vertex;
    let mut out = Vec::new();
    for u in 1..=n {
        for v in (u + 1)..=n {
            let e = Edge::new(u, v);
            if !g.has_edge(e) {
                out.push(e);
            }
        }
    }
    out
}

/// Plants a root that is a uniformly random spanning tree on `{1..n}` plus
/// `k` distinct random extra edges, and returns it with its square.
///
/// # Errors
/// `n < 2`, or `k` larger than the number of non-tree vertex pairs.
pub fn gen_tree_plus_k(n: usize, k: usize, seed: u64) -> Result<PlantedInstance, GenError> {
    if n < 2 {
        return Err(GenError::TooFewVertices { n, min: 2 });
    }
    let available = n * (n - 1) / 2 - (n - 1);
    if k > available {
        return Err(GenError::TooManyExtraEdges { n, k, available });
    }
    let mut rng = rng_from_seed(seed);
    let mut root = random_tree(&mut rng, n);
    // k distinct extras via a partial Fisher–Yates over the sorted non-edges.
    let mut slots = non_edges(&root, n);
    for i in 0..k {
        let j = i + rand_index(&mut rng, slots.len() - i);
        slots.swap(i, j);
        root.add_edge(slots[i]);
    }
    let graph = root.compute_square();
    Ok(PlantedInstance {
        graph,
        root,
        k_true: k,
    })
}

/// A random connected graph: a random spanning tree on `{1..n}` plus each
/// remaining vertex pair independently with probability `p` (pairs examined
/// in lexicographic order, so the draw sequence is reproducible).
///
/// # Errors
/// `n < 1`, or `p` outside `[0, 1]`.
pub fn gen_random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if n < 1 {
        return Err(GenError::TooFewVertices { n, min: 1 });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidProbability { p });
    }
    if n == 1 {
        return Ok(Graph::from_vertices([1]));
    }
    let mut rng = rng_from_seed(seed);
    let mut g = random_tree(&mut rng, n);
    for e in non_edges(&g.clone(), n) {
        if rand_unit(&mut rng) < p {
            g.add_edge(e);
        }
    }
    Ok(g)
}

/// A member of one of the closed-form square families, with its planted
/// root. These are fully deterministic; no seed is involved.
///
/// Sizes: `CycleSquare` needs `size ≥ 3` (cycle length), `Complete` needs
/// `size ≥ 1` (vertex count), `UnionTwoCliques` needs `size ≥ 3` (clique
/// size; the result has `2·size − 2` vertices).
pub fn gen_known_square(family: KnownFamily, size: usize) -> Result<PlantedInstance, GenError> {
    match family {
        KnownFamily::CycleSquare => {
            if size < 3 {
                return Err(GenError::FamilyTooSmall {
                    family,
                    min: 3,
                    size,
                });
            }
            let root = Graph::cycle_graph(size as u32);
            Ok(PlantedInstance {
                graph: root.compute_square(),
                root,
                k_true: 1,
            })
        }
        KnownFamily::Complete => {
            if size < 1 {
                return Err(GenError::FamilyTooSmall {
                    family,
                    min: 1,
                    size,
                });
            }
            let n = size as Vertex;
            let root = Graph::star(1, 2..=n);
            Ok(PlantedInstance {
                graph: Graph::complete_graph(size as u32),
                root,
                k_true: 0,
            })
        }
        KnownFamily::UnionTwoCliques => {
            if size < 3 {
                return Err(GenError::FamilyTooSmall {
                    family,
                    min: 3,
                    size,
                });
            }
            let s = size as Vertex;
            // Cliques {1..s} and {s−1..2s−2} overlap in {s−1, s}; the double
            // star centered on that shared pair squares to the union.
            let mut graph = Graph::from_vertices(1..=(2 * s - 2));
            for u in 1..=s {
                for v in (u + 1)..=s {
                    graph.add_edge(Edge::new(u, v));
                }
            }
            for u in (s - 1)..=(2 * s - 2) {
                for v in (u + 1)..=(2 * s - 2) {
                    graph.add_edge(Edge::new(u, v));
                }
            }
            let mut root = Graph::from_vertices(1..=(2 * s - 2));
            root.add_edge(Edge::new(s - 1, s));
            for leaf in 1..=(s - 2) {
                root.add_edge(Edge::new(leaf, s - 1));
            }
            for leaf in (s + 1)..=(2 * s - 2) {
                root.add_edge(Edge::new(s, leaf));
            }
            Ok(PlantedInstance {
                graph,
                root,
                k_true: 0,
            })
        }
    }
}
