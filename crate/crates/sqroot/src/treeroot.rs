//! Polynomial-time detection of tree square roots.
//!
//! Squares of trees are heavily constrained: every maximal clique of `T²` is
//! the closed neighborhood of one internal vertex of `T`, two such cliques
//! share exactly the two internal vertices that are adjacent in `T`, and
//! leaves lie in exactly one maximal clique. That makes the root
//! reconstructible clique by clique, with at most one binary choice (when
//! there are exactly two maximal cliques), and lets the search stay
//! polynomial: any graph with more than `n` maximal cliques cannot be the
//! square of a tree, so clique enumeration is capped and aborted early.

use std::collections::BTreeSet;

use crate::graph::{Graph, GraphError, Vertex};

/// Returns a tree `T` with `T² = g` if one exists, `None` otherwise.
///
/// The answer is deterministic: the complete graph yields the star centered
/// at the smallest label, and the one ambiguous reconstruction step (two
/// maximal cliques sharing a pair `{a, b}` with `a < b`) tries `a` as the
/// first center before `b`.
///
/// # Errors
/// Returns [`GraphError::Disconnected`] when `g` has two or more components;
/// a tree square is always connected, so a disconnected query is almost
/// certainly a caller bug and is reported rather than answered with `None`.
pub fn has_tree_square_root(g: &Graph) -> Result<Option<Graph>, GraphError> {
    if g.n() == 0 {
        return Ok(None);
    }
    let profile = g.connectivity_profile();
    if !profile.is_connected {
        return Err(GraphError::Disconnected {
            components: profile.components.len(),
        });
    }

    // Complete graphs are exactly the squares of stars (and of K1/K2).
    if g.m() == g.n() * (g.n() - 1) / 2 {
        let mut vertices = g.vertices();
        let center = vertices.next().expect("n > 0");
        return Ok(Some(Graph::star(center, vertices)));
    }

    // A tree on n vertices has at most n internal vertices, hence its square
    // has at most n maximal cliques; more than that disqualifies g outright.
    let Some(mut cliques) = maximal_cliques_capped(g, g.n() + 1) else {
        return Ok(None);
    };
    cliques.sort_by(|a, b| {
        a.iter().collect::<Vec<_>>().cmp(&b.iter().collect::<Vec<_>>())
    });
    let t = cliques.len();
    // A non-complete graph has at least two maximal cliques.
    debug_assert!(t >= 2);

    // Adjacent internal vertices u, v of T give cliques meeting in exactly
    // {u, v}; all other clique pairs meet in at most one vertex.
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); t];
    let mut edge_count = 0usize;
    for i in 0..t {
        for j in (i + 1)..t {
            if cliques[i].intersection(&cliques[j]).count() == 2 {
                nbrs[i].push(j);
                nbrs[j].push(i);
                edge_count += 1;
            }
        }
    }
    // The clique adjacency structure must itself be a tree (the subtree of T
    // induced by its internal vertices).
    if edge_count != t - 1 || !clique_graph_connected(&nbrs) {
        return Ok(None);
    }

    if t == 2 {
        let shared: Vec<Vertex> = cliques[0].intersection(&cliques[1]).copied().collect();
        let (a, b) = (shared[0], shared[1]);
        for centers in [vec![a, b], vec![b, a]] {
            if let Some(tree) = assemble_tree(g, &cliques, &nbrs, &centers) {
                return Ok(Some(tree));
            }
        }
        return Ok(None);
    }

    // With three or more cliques every center is forced: a clique with two or
    // more neighbors shares exactly its own center with all of them, and a
    // leaf clique's center is the shared vertex that is not the neighbor's.
    let mut centers: Vec<Option<Vertex>> = vec![None; t];
    for i in 0..t {
        if nbrs[i].len() < 2 {
            continue;
        }
        let mut common: BTreeSet<Vertex> = cliques[i]
            .intersection(&cliques[nbrs[i][0]])
            .copied()
            .collect();
        for &j in &nbrs[i][1..] {
            common = common.intersection(&cliques[j]).copied().collect();
        }
        if common.len() != 1 {
            return Ok(None);
        }
        centers[i] = common.into_iter().next();
    }
    for i in 0..t {
        if nbrs[i].len() != 1 {
            continue;
        }
        // In a tree on t ≥ 3 nodes a leaf's neighbor has degree ≥ 2, so its
        // center is already resolved.
        let j = nbrs[i][0];
        let neighbor_center = centers[j].expect("non-leaf neighbor resolved first");
        let mut shared = cliques[i].intersection(&cliques[j]).copied();
        let own = shared
            .find(|&v| v != neighbor_center)
            .expect("two shared vertices, one is the neighbor's center");
        centers[i] = Some(own);
    }
    let centers: Vec<Vertex> = centers
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .expect("every clique is a leaf or has two neighbors");
    Ok(assemble_tree(g, &cliques, &nbrs, &centers))
}

/// Builds the candidate tree for a fixed center assignment and verifies it.
fn assemble_tree(
    g: &Graph,
    cliques: &[BTreeSet<Vertex>],
    nbrs: &[Vec<usize>],
    centers: &[Vertex],
) -> Option<Graph> {
    let center_set: BTreeSet<Vertex> = centers.iter().copied().collect();
    if center_set.len() != centers.len() {
        return None;
    }
    let mut tree = Graph::from_vertices(g.vertices());
    for (i, center) in centers.iter().enumerate() {
        if !cliques[i].contains(center) {
            return None;
        }
        for &j in &nbrs[i] {
            if i < j {
                tree.add_edge(crate::graph::Edge::new(*center, centers[j]));
            }
        }
    }
    // Every remaining vertex is a leaf of T and so lies in exactly one
    // maximal clique: the closed neighborhood of its tree neighbor.
    for v in g.vertices() {
        if center_set.contains(&v) {
            continue;
        }
        let mut containing = cliques
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&v))
            .map(|(i, _)| i);
        let home = containing.next()?;
        if containing.next().is_some() {
            return None;
        }
        tree.add_edge(crate::graph::Edge::new(v, centers[home]));
    }
    (tree.is_tree() && tree.compute_square() == *g).then_some(tree)
}

fn clique_graph_connected(nbrs: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; nbrs.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for &j in &nbrs[i] {
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Bron–Kerbosch with pivoting, aborting with `None` as soon as more than
/// `cap` maximal cliques have been collected.
fn maximal_cliques_capped(g: &Graph, cap: usize) -> Option<Vec<BTreeSet<Vertex>>> {
    fn expand(
        g: &Graph,
        r: &mut BTreeSet<Vertex>,
        mut p: BTreeSet<Vertex>,
        mut x: BTreeSet<Vertex>,
        out: &mut Vec<BTreeSet<Vertex>>,
        cap: usize,
    ) -> bool {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return out.len() <= cap;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| {
                let gain = p.intersection(g.neighbors(u)).count();
                // Prefer the smallest label among equally good pivots so the
                // traversal (and thus the cap cutoff) is deterministic.
                (gain, std::cmp::Reverse(u))
            })
            .expect("p ∪ x nonempty");
        let candidates: Vec<Vertex> = p.difference(g.neighbors(pivot)).copied().collect();
        for v in candidates {
            r.insert(v);
            let np = p.intersection(g.neighbors(v)).copied().collect();
            let nx = x.intersection(g.neighbors(v)).copied().collect();
            if !expand(g, r, np, nx, out, cap) {
                return false;
            }
            r.remove(&v);
            p.remove(&v);
            x.insert(v);
        }
        true
    }

    let mut out = Vec::new();
    let mut r = BTreeSet::new();
    let p: BTreeSet<Vertex> = g.vertex_set();
    expand(g, &mut r, p, BTreeSet::new(), &mut out, cap).then_some(out)
}
