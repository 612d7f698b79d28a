//! Core undirected-graph representation and the structural primitives the
//! solvers are built on: squares, connectivity, simplicial vertices and true
//! twin partitions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Stable vertex label. Labels survive vertex deletions unchanged: removing a
/// vertex never renumbers the others, so edge sets recorded by the reduction
/// rules stay valid across the whole pipeline.
pub type Vertex = u32;

/// Errors for malformed structural queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    /// Two graphs were compared that do not live on the same vertex set.
    #[error("vertex sets differ: {root_only:?} only in candidate root, {square_only:?} only in target")]
    VertexSetMismatch {
        root_only: Vec<Vertex>,
        square_only: Vec<Vertex>,
    },
    /// An operation that requires a connected graph received a disconnected one.
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
}

/// An undirected edge, stored with the smaller endpoint first so that equal
/// edges are structurally equal and edges sort lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    /// Creates the canonical edge between two distinct vertices.
    ///
    /// # Panics
    /// Panics if `u == v`; self-loops are never valid edges here.
    pub fn new(u: Vertex, v: Vertex) -> Self {
        assert!(u != v, "self-loop {u}-{v} is not a valid edge");
        if u < v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    /// The smaller endpoint.
    pub fn u(&self) -> Vertex {
        self.0
    }

    /// The larger endpoint.
    pub fn v(&self) -> Vertex {
        self.1
    }

    /// Both endpoints as `(smaller, larger)`.
    pub fn endpoints(&self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    /// Whether `x` is one of the two endpoints.
    pub fn has_endpoint(&self, x: Vertex) -> bool {
        self.0 == x || self.1 == x
    }

    /// The endpoint that is not `x`, if `x` is an endpoint.
    pub fn other_endpoint(&self, x: Vertex) -> Option<Vertex> {
        if self.0 == x {
            Some(self.1)
        } else if self.1 == x {
            Some(self.0)
        } else {
            None
        }
    }

    /// The single shared endpoint of two distinct adjacent edges, if any.
    pub fn common_endpoint(&self, other: &Edge) -> Option<Vertex> {
        if self == other {
            return None;
        }
        if other.has_endpoint(self.0) {
            Some(self.0)
        } else if other.has_endpoint(self.1) {
            Some(self.1)
        } else {
            None
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Connectivity summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityProfile {
    /// At most one connected component (vacuously true for the empty graph).
    pub is_connected: bool,
    /// Connected, at least 3 vertices, and no cut vertex.
    pub is_two_connected: bool,
    /// The component partition, ordered by smallest member label.
    pub components: Vec<BTreeSet<Vertex>>,
}

/// A finite simple undirected graph with stable integer labels and sorted
/// adjacency sets.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    m: usize,
}

impl Default for Graph {
    fn default() -> Self {
        Self::empty()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, V={:?}, E={:?})",
            self.n(),
            self.m(),
            self.vertex_set(),
            self.edges()
        )
    }
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph {
            adj: BTreeMap::new(),
            m: 0,
        }
    }

    /// A graph on the given vertices with no edges.
    pub fn from_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Graph::empty();
        for v in vertices {
            g.add_vertex(v);
        }
        g
    }

    /// A graph built from edges; endpoints are added as vertices implicitly.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Graph::empty();
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    /// A graph with explicit vertices (so isolated ones survive) plus edges.
    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut g = Graph::from_vertices(vertices);
        for e in edges {
            g.add_edge(e);
        }
        g
    }

    /// The path 1-2-…-n.
    pub fn path_graph(n: u32) -> Self {
        let mut g = Graph::from_vertices(1..=n);
        for v in 1..n {
            g.add_edge(Edge::new(v, v + 1));
        }
        g
    }

    /// The cycle 1-2-…-n-1 (requires n ≥ 3).
    pub fn cycle_graph(n: u32) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices, got {n}");
        let mut g = Graph::path_graph(n);
        g.add_edge(Edge::new(n, 1));
        g
    }

    /// The complete graph on vertices 1..=n.
    pub fn complete_graph(n: u32) -> Self {
        let mut g = Graph::from_vertices(1..=n);
        for u in 1..=n {
            for v in (u + 1)..=n {
                g.add_edge(Edge::new(u, v));
            }
        }
        g
    }

    /// The star with center `center` and the given leaves.
    pub fn star(center: Vertex, leaves: impl IntoIterator<Item = Vertex>) -> Self {
        let mut g = Graph::from_vertices([center]);
        for leaf in leaves {
            g.add_edge(Edge::new(center, leaf));
        }
        g
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Ascending iterator over vertex labels.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// The vertex labels as a set.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices().collect()
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range((u + 1)..) {
                out.push(Edge(u, v));
            }
        }
        out
    }

    /// Whether `v` is a vertex of this graph.
    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Whether the edge is present.
    pub fn has_edge(&self, e: Edge) -> bool {
        self.adj.get(&e.0).is_some_and(|nbrs| nbrs.contains(&e.1))
    }

    /// The open neighborhood of `v`.
    ///
    /// # Panics
    /// Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        self.adj
            .get(&v)
            .unwrap_or_else(|| panic!("vertex {v} is not in the graph"))
    }

    /// The closed neighborhood `N[v] = N(v) ∪ {v}`.
    pub fn closed_neighborhood(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut set = self.neighbors(v).clone();
        set.insert(v);
        set
    }

    /// Degree of `v`.
    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    /// Adds an isolated vertex if not present.
    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Inserts an edge (and its endpoints, if missing). Returns `false` if the
    /// edge was already present.
    pub fn add_edge(&mut self, e: Edge) -> bool {
        self.add_vertex(e.0);
        self.add_vertex(e.1);
        let inserted = self.adj.get_mut(&e.0).unwrap().insert(e.1);
        if inserted {
            self.adj.get_mut(&e.1).unwrap().insert(e.0);
            self.m += 1;
        }
        inserted
    }

    /// Removes an edge, keeping both endpoints. Returns `false` if absent.
    pub fn remove_edge(&mut self, e: Edge) -> bool {
        let removed = self
            .adj
            .get_mut(&e.0)
            .is_some_and(|nbrs| nbrs.remove(&e.1));
        if removed {
            self.adj.get_mut(&e.1).unwrap().remove(&e.0);
            self.m -= 1;
        }
        removed
    }

    /// Removes a vertex and its incident edges. Labels of the remaining
    /// vertices are untouched. Returns `false` if the vertex was absent.
    pub fn remove_vertex(&mut self, v: Vertex) -> bool {
        match self.adj.remove(&v) {
            None => false,
            Some(nbrs) => {
                self.m -= nbrs.len();
                for u in nbrs {
                    self.adj.get_mut(&u).unwrap().remove(&v);
                }
                true
            }
        }
    }

    /// The subgraph induced by `keep`.
    pub fn induced_subgraph(&self, keep: &BTreeSet<Vertex>) -> Graph {
        let mut g = Graph::empty();
        for &v in keep {
            if self.has_vertex(v) {
                g.add_vertex(v);
            }
        }
        for (&u, nbrs) in &self.adj {
            if !keep.contains(&u) {
                continue;
            }
            for &v in nbrs.range((u + 1)..) {
                if keep.contains(&v) {
                    g.add_edge(Edge(u, v));
                }
            }
        }
        g
    }

    /// Whether every two distinct vertices of `set` are adjacent.
    pub fn is_clique(&self, set: &BTreeSet<Vertex>) -> bool {
        let mut iter = set.iter();
        while let Some(&u) = iter.next() {
            let nbrs = self.neighbors(u);
            for &v in iter.clone() {
                if !nbrs.contains(&v) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the graph is a tree (connected with exactly n−1 edges).
    pub fn is_tree(&self) -> bool {
        self.n() > 0 && self.m() == self.n() - 1 && self.connectivity_profile().is_connected
    }

    /// BFS distances from `src` to every reachable vertex.
    pub fn bfs_distances(&self, src: Vertex) -> BTreeMap<Vertex, u32> {
        let mut dist = BTreeMap::new();
        dist.insert(src, 0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[&u];
            for &v in self.neighbors(u) {
                if let std::collections::btree_map::Entry::Vacant(slot) = dist.entry(v) {
                    slot.insert(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// The square of the graph: same vertices, with `u ~ v` whenever their
    /// distance is 1 or 2. Empty and one-vertex graphs map to themselves.
    pub fn compute_square(&self) -> Graph {
        let mut sq = Graph::from_vertices(self.vertices());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs {
                if u < v {
                    sq.add_edge(Edge(u, v));
                }
                // Distance-2 pairs: both endpoints share the middle vertex v.
                for &w in self.neighbors(v) {
                    if u < w {
                        sq.add_edge(Edge(u, w));
                    }
                }
            }
        }
        sq
    }

    /// Component partition plus connectivity and 2-connectivity flags.
    pub fn connectivity_profile(&self) -> ConnectivityProfile {
        let components = self.components();
        let is_connected = components.len() <= 1;
        let is_two_connected = is_connected && self.n() >= 3 && self.cut_vertices().is_empty();
        ConnectivityProfile {
            is_connected,
            is_two_connected,
            components,
        }
    }

    /// Connected components, ordered by smallest member label.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([v]);
            seen.insert(v);
            while let Some(u) = queue.pop_front() {
                comp.insert(u);
                for &w in self.neighbors(u) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    /// All cut vertices (articulation points), found by an iterative
    /// depth-first search over discovery/low-link values.
    pub fn cut_vertices(&self) -> BTreeSet<Vertex> {
        let labels: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let adj: Vec<Vec<usize>> = labels
            .iter()
            .map(|&v| self.neighbors(v).iter().map(|w| index[w]).collect())
            .collect();

        let n = labels.len();
        const UNSEEN: u32 = u32::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0u32; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0u32;

        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0usize;
            // Frames: (vertex, parent-or-usize::MAX, next neighbor position).
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, parent, ref mut next)) = stack.last_mut() {
                if *next < adj[v].len() {
                    let w = adj[v][*next];
                    *next += 1;
                    if disc[w] == UNSEEN {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent == root {
                            root_children += 1;
                        } else if low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }

        labels
            .into_iter()
            .enumerate()
            .filter(|&(i, _)| is_cut[i])
            .map(|(_, v)| v)
            .collect()
    }

    /// Vertices whose open neighborhood is a clique. Isolated and pendant
    /// vertices qualify vacuously.
    pub fn simplicial_vertices(&self) -> BTreeSet<Vertex> {
        self.vertices()
            .filter(|&v| self.is_clique(self.neighbors(v)))
            .collect()
    }

    /// Partition of `s` into maximal classes of mutual true twins
    /// (`N[u] = N[v]`), ordered by smallest member label.
    pub fn true_twin_partition(&self, s: &BTreeSet<Vertex>) -> Vec<BTreeSet<Vertex>> {
        let mut by_neighborhood: BTreeMap<BTreeSet<Vertex>, BTreeSet<Vertex>> = BTreeMap::new();
        for &v in s {
            by_neighborhood
                .entry(self.closed_neighborhood(v))
                .or_default()
                .insert(v);
        }
        let mut classes: Vec<BTreeSet<Vertex>> = by_neighborhood.into_values().collect();
        // Iteration order above is by neighborhood contents; re-sort so the
        // observable order depends only on the members themselves.
        classes.sort_by_key(|class| *class.first().expect("classes are nonempty"));
        classes
    }
}

/// Whether `h` squares to exactly `g`. The two graphs must live on the same
/// vertex set; anything else is a malformed query.
pub fn is_square_root(h: &Graph, g: &Graph) -> Result<bool, GraphError> {
    if h.vertex_set() != g.vertex_set() {
        let hv = h.vertex_set();
        let gv = g.vertex_set();
        return Err(GraphError::VertexSetMismatch {
            root_only: hv.difference(&gv).copied().collect(),
            square_only: gv.difference(&hv).copied().collect(),
        });
    }
    Ok(&h.compute_square() == g)
}
