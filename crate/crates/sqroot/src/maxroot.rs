//! Maximum square roots: spanning subgraphs `H ⊆ G` with `H² = G` and as
//! many edges as possible.
//!
//! Both solvers here work through the auxiliary conflict graph `P(G)` whose
//! vertices are the edges of `G`, with `xy` and `yz` adjacent whenever
//! `xz ∉ E(G)`. A spanning subgraph `H` satisfies `H² ⊆ G` exactly when its
//! edge set is independent in `P(G)`, and `G ⊆ H²` exactly when every edge of
//! `G` joins vertices at distance at most two in `H`. Deleting at most `k`
//! edges therefore means choosing a vertex cover of `P(G)` of size at most
//! `k`, which powers the `O*(2^k)` branching solver; the exact solver instead
//! enumerates all maximal independent sets of `P(G)`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Edge, Graph};

/// Errors from the maximum-root solvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxRootError {
    /// The candidate root does not have the same vertex set as the host.
    #[error("not a spanning subgraph: vertex sets differ")]
    VertexSetsDiffer,
    /// The candidate root has an edge the host graph lacks.
    #[error("not a spanning subgraph: edge {edge} is not in the host graph")]
    ForeignEdge { edge: Edge },
    /// The operation is defined for connected inputs only.
    #[error("connected graph required ({components} components)")]
    Disconnected { components: usize },
}

/// The conflict graph `P(G)`: one vertex per edge of `G` (in lexicographic
/// order), adjacency between `xy` and `yz` iff `xz ∉ E(G)` — i.e. iff taking
/// both edges into a root would square to an edge `G` does not have.
#[derive(Debug, Clone)]
pub struct AuxGraph<'g> {
    base: &'g Graph,
    vertices: Vec<Edge>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl<'g> AuxGraph<'g> {
    pub fn base(&self) -> &'g Graph {
        self.base
    }

    /// Number of `P(G)` vertices, i.e. `|E(G)|`.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The base-graph edge behind vertex `i`.
    pub fn edge_of(&self, i: usize) -> Edge {
        self.vertices[i]
    }

    /// Index of a base-graph edge, if present.
    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.vertices.binary_search(&e).ok()
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }

    /// All `P(G)` edges as index pairs `(i, j)` with `i < j`, in
    /// lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, nbrs) in self.adjacency.iter().enumerate() {
            for &j in nbrs.range((i + 1)..) {
                out.push((i, j));
            }
        }
        out
    }

    /// Whether a set of `P(G)` vertices is pairwise non-adjacent.
    pub fn is_independent(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&i| self.adjacency[i].intersection(set).next().is_none())
    }
}

/// Builds the conflict graph `P(G)` of `g`.
pub fn build_aux_graph(g: &Graph) -> AuxGraph<'_> {
    let vertices = g.edges();
    let mut adjacency = vec![BTreeSet::new(); vertices.len()];
    // Edge pairs sharing an endpoint, grouped by that shared endpoint.
    for y in g.vertices() {
        let nbrs: Vec<_> = g.neighbors(y).iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            for &z in &nbrs[a + 1..] {
                if !g.has_edge(Edge::new(x, z)) {
                    let i = vertices
                        .binary_search(&Edge::new(x, y))
                        .expect("edge of g");
                    let j = vertices
                        .binary_search(&Edge::new(y, z))
                        .expect("edge of g");
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
    }
    AuxGraph {
        base: g,
        vertices,
        adjacency,
    }
}

/// Tests the root characterization for a spanning subgraph `h` of `g`:
/// `h² = g` iff `E_h` is independent in `P(g)` **and** every edge of `g`
/// joins vertices at distance ≤ 2 in `h`.
///
/// `aux` must be the conflict graph of `g`. This is an independent route to
/// the same answer as squaring `h` and comparing; the two are cross-checked
/// against each other in the test suite.
///
/// # Errors
/// [`MaxRootError::VertexSetsDiffer`] / [`MaxRootError::ForeignEdge`] when
/// `h` is not a spanning subgraph of `g`.
pub fn check_root_charact(h: &Graph, g: &Graph, aux: &AuxGraph) -> Result<bool, MaxRootError> {
    debug_assert!(std::ptr::eq(aux.base(), g) || aux.base() == g);
    if h.vertex_set() != g.vertex_set() {
        return Err(MaxRootError::VertexSetsDiffer);
    }
    let mut indices = Vec::with_capacity(h.m());
    for e in h.edges() {
        match aux.index_of(e) {
            Some(i) => indices.push(i),
            None => return Err(MaxRootError::ForeignEdge { edge: e }),
        }
    }

    // Independence in P(g): no pair of chosen edges squares outside g.
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            if aux.adjacency[i].contains(&j) {
                return Ok(false);
            }
        }
    }
    // Coverage: each g-edge is an h-edge or spans a common h-neighbor.
    for e in g.edges() {
        if h.has_edge(e) {
            continue;
        }
        let (x, y) = e.endpoints();
        if h.neighbors(x).intersection(h.neighbors(y)).next().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counters reported by [`enumerate_maximal_independent_sets`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MisStats {
    /// Number of maximal independent sets emitted; bounded by `3^{⌈m/3⌉}`.
    pub sets_enumerated: u64,
}

/// Enumerates every maximal independent set of the conflict graph, in a
/// deterministic order, via Bron–Kerbosch with pivoting on the complement.
pub fn enumerate_maximal_independent_sets(aux: &AuxGraph) -> (Vec<BTreeSet<usize>>, MisStats) {
    let p = aux.vertex_count();
    // Independent sets of P are cliques of its complement.
    let complement: Vec<BTreeSet<usize>> = (0..p)
        .map(|i| {
            (0..p)
                .filter(|&j| j != i && !aux.adjacency[i].contains(&j))
                .collect()
        })
        .collect();

    fn expand(
        adj: &[BTreeSet<usize>],
        r: &mut BTreeSet<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| (p.intersection(&adj[u]).count(), std::cmp::Reverse(u)))
            .expect("p ∪ x nonempty");
        let candidates: Vec<usize> = p.difference(&adj[pivot]).copied().collect();
        for v in candidates {
            r.insert(v);
            let np = p.intersection(&adj[v]).copied().collect();
            let nx = x.intersection(&adj[v]).copied().collect();
            expand(adj, r, np, nx, out);
            r.remove(&v);
            p.remove(&v);
            x.insert(v);
        }
    }

    let mut out = Vec::new();
    let mut r = BTreeSet::new();
    expand(
        &complement,
        &mut r,
        (0..p).collect(),
        BTreeSet::new(),
        &mut out,
    );
    let stats = MisStats {
        sets_enumerated: out.len() as u64,
    };
    // Moon–Moser: a graph on p vertices has at most 3^{⌈p/3⌉} maximal
    // independent sets; exceeding it means duplicated emissions.
    if let Some(bound) = 3u128.checked_pow(p.div_ceil(3) as u32) {
        assert!(
            (stats.sets_enumerated as u128) <= bound,
            "maximal-independent-set enumeration exceeded the Moon–Moser bound"
        );
    }
    (out, stats)
}

/// Outcome of the degree-based prefilter for budgeted maximum-root search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefilterOutcome {
    /// The graph is complete, hence its own square root (zero deletions).
    TrivialYes,
    /// Any root of a connected non-complete graph omits at least `n − 2`
    /// edges, and the budget is smaller than that.
    Reject,
    /// No shortcut applies; run the full search.
    Pass,
}

/// Cheap pre-check for connected inputs: complete graphs are their own
/// roots, and a connected non-complete graph admits no root within fewer
/// than `n − 2` deletions.
///
/// # Errors
/// [`MaxRootError::Disconnected`] when `g` is not connected.
pub fn aingworth_prefilter(g: &Graph, k: usize) -> Result<PrefilterOutcome, MaxRootError> {
    let profile = g.connectivity_profile();
    if !profile.is_connected {
        return Err(MaxRootError::Disconnected {
            components: profile.components.len(),
        });
    }
    if g.m() == g.n() * g.n().saturating_sub(1) / 2 {
        return Ok(PrefilterOutcome::TrivialYes);
    }
    if k < g.n().saturating_sub(2) {
        return Ok(PrefilterOutcome::Reject);
    }
    Ok(PrefilterOutcome::Pass)
}

/// Counters reported by [`max_root_fpt_with_stats`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FptStats {
    /// Branching-tree leaves visited (cover-complete plus budget-exhausted),
    /// summed over components; at most `2^{k+1}` per component.
    pub leaves: u64,
}

/// [`max_root_fpt`] plus its branching counters.
pub fn max_root_fpt_with_stats(
    g: &Graph,
    k: usize,
) -> Result<(Option<Graph>, FptStats), MaxRootError> {
    let mut stats = FptStats::default();
    let mut total_deletions = 0usize;
    let mut combined = Graph::from_vertices(g.vertices());
    for comp in g.components() {
        let c = g.induced_subgraph(&comp);
        match aingworth_prefilter(&c, k)? {
            PrefilterOutcome::TrivialYes => {
                for e in c.edges() {
                    combined.add_edge(e);
                }
                continue;
            }
            PrefilterOutcome::Reject => return Ok((None, stats)),
            PrefilterOutcome::Pass => {}
        }
        let aux = build_aux_graph(&c);
        let p_edges = aux.edges();
        let mut search = CoverSearch {
            aux: &aux,
            p_edges: &p_edges,
            component: &c,
            budget: k,
            chosen: BTreeSet::new(),
            best: None,
            leaves: 0,
        };
        search.branch(0)?;
        if k <= 60 {
            assert!(
                search.leaves <= 1u64 << (k + 1),
                "branching visited more than 2^(k+1) leaves"
            );
        }
        stats.leaves += search.leaves;
        let Some((deletions, root)) = search.best else {
            return Ok((None, stats));
        };
        total_deletions += deletions;
        if total_deletions > k {
            return Ok((None, stats));
        }
        for e in root.edges() {
            combined.add_edge(e);
        }
    }
    Ok((Some(combined), stats))
}

/// Finds a spanning subgraph `H` with `H² = g` obtained by deleting at most
/// `k` edges of `g`, maximizing the edge count (equivalently, minimizing
/// deletions), or `None` when no such root exists.
///
/// Each component is solved by branching on the conflict graph: every root's
/// deleted-edge set is a vertex cover of `P(component)`, so the search picks
/// an uncovered conflict and tries both endpoints, up to depth `k`. Whenever
/// the chosen set becomes a cover, keeping every remaining edge is optimal —
/// adding edges back can only shrink distances — so each cover point is a
/// leaf. Ties between equally large roots go to the lexicographically
/// smallest edge set, making the answer deterministic.
pub fn max_root_fpt(g: &Graph, k: usize) -> Result<Option<Graph>, MaxRootError> {
    max_root_fpt_with_stats(g, k).map(|(root, _)| root)
}

struct CoverSearch<'a> {
    aux: &'a AuxGraph<'a>,
    p_edges: &'a [(usize, usize)],
    component: &'a Graph,
    budget: usize,
    chosen: BTreeSet<usize>,
    best: Option<(usize, Graph)>,
    leaves: u64,
}

impl CoverSearch<'_> {
    /// `from` is a scan hint: conflicts before it are already covered at this
    /// node, and covers only grow along a branch.
    fn branch(&mut self, from: usize) -> Result<(), MaxRootError> {
        let uncovered = self.p_edges[from..].iter().position(|&(i, j)| {
            !self.chosen.contains(&i) && !self.chosen.contains(&j)
        });
        let Some(offset) = uncovered else {
            // Vertex cover complete: deleting exactly `chosen` is the best
            // this branch can do.
            self.leaves += 1;
            let mut h = self.component.clone();
            for &i in &self.chosen {
                h.remove_edge(self.aux.edge_of(i));
            }
            if check_root_charact(&h, self.component, self.aux)? {
                let candidate = (self.chosen.len(), h);
                let better = match &self.best {
                    None => true,
                    Some((d, g)) => {
                        candidate.0 < *d || (candidate.0 == *d && candidate.1.edges() < g.edges())
                    }
                };
                if better {
                    self.best = Some(candidate);
                }
            }
            return Ok(());
        };
        if self.chosen.len() == self.budget {
            // Conflicts remain but the deletion budget is spent.
            self.leaves += 1;
            return Ok(());
        }
        let at = from + offset;
        let (i, j) = self.p_edges[at];
        for v in [i, j] {
            self.chosen.insert(v);
            self.branch(at)?;
            self.chosen.remove(&v);
        }
        Ok(())
    }
}

/// [`max_root_exact`] plus its enumeration counters.
pub fn max_root_exact_with_stats(g: &Graph) -> Result<(Option<Graph>, MisStats), MaxRootError> {
    let mut stats = MisStats { sets_enumerated: 0 };
    let mut combined = Graph::from_vertices(g.vertices());
    for comp in g.components() {
        let c = g.induced_subgraph(&comp);
        let aux = build_aux_graph(&c);
        let (sets, mis_stats) = enumerate_maximal_independent_sets(&aux);
        stats.sets_enumerated += mis_stats.sets_enumerated;
        let mut best: Option<Graph> = None;
        for set in &sets {
            let mut h = Graph::from_vertices(c.vertices());
            for &i in set {
                h.add_edge(aux.edge_of(i));
            }
            // Independence holds by construction; only coverage can fail.
            if !check_root_charact(&h, &c, &aux)? {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => h.m() > b.m() || (h.m() == b.m() && h.edges() < b.edges()),
            };
            if better {
                best = Some(h);
            }
        }
        let Some(root) = best else {
            return Ok((None, stats));
        };
        for e in root.edges() {
            combined.add_edge(e);
        }
    }
    Ok((Some(combined), stats))
}

/// Finds the maximum square root of `g` (over all deletion counts), or
/// `None` when `g` has no root at all.
///
/// Every root's edge set is independent in `P(g)` and extends to a *maximal*
/// independent set that is still a root — extra edges only help coverage —
/// so scanning all maximal independent sets per component is exhaustive.
/// Ties go to the lexicographically smallest edge set.
pub fn max_root_exact(g: &Graph) -> Result<Option<Graph>, MaxRootError> {
    max_root_exact_with_stats(g).map(|(root, _)| root)
}
