//! Labeled instances and bookkeeping shared by the reduction rules.
//!
//! A [`LabeledInstance`] is a graph together with an edge budget and two
//! disjoint edge label sets: *required* edges that every root built for the
//! instance must contain, and *blocked* edges that no root may use.  The
//! reduction rules shrink the graph while moving constraints into these two
//! sets; the final lifting stage replays the recorded steps in reverse to
//! rebuild a root of the original graph.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

/// Which reduction rule forced an edge into the required set.
///
/// The simplicial reduction treats the two origins differently: edges
/// required by the trimming rule may appear on simplicial vertices under a
/// strict side condition, while edges required by the path reduction rule
/// disqualify a vertex outright.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeOrigin {
    /// Required by the trimming rule (a pendant-clique contraction).
    Trim,
    /// Required by the path reduction rule (a chain contraction).
    Path,
}

/// Errors surfaced by the minimum-root pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    /// The input graph is not connected; roots of disconnected graphs are
    /// handled per component by the caller.
    #[error("input graph is disconnected ({components} components)")]
    Disconnected {
        /// Number of connected components found.
        components: usize,
    },
    /// The input graph has a tree square root, so the budgeted search is
    /// unnecessary; callers should use the tree root directly.
    #[error("input graph has a tree square root; kernelization expects that case to be handled first")]
    TreeRootExists,
    /// The input graph is connected on at least three vertices but has a cut
    /// vertex, so it cannot have any square root at all.
    #[error("input graph is not 2-connected, so it has no square root")]
    NotTwoConnected,
    /// A required edge was also blocked when building an instance.
    #[error("edge {edge} is both required and blocked")]
    RequiredBlockedOverlap {
        /// The offending edge.
        edge: Edge,
    },
    /// A label referenced an edge that is not present in the graph.
    #[error("labeled edge {edge} is not an edge of the instance graph")]
    LabelOutsideGraph {
        /// The offending edge.
        edge: Edge,
    },
    /// Replaying a reduction step in reverse found a root that is missing an
    /// edge the step guarantees to be present.
    #[error("lifting expected the root to contain edge {edge}")]
    LiftIntegrity {
        /// The edge that should have been present.
        edge: Edge,
    },
    /// An internal invariant failed; this indicates a bug, not a property of
    /// the input.
    #[error("internal invariant violated: {detail}")]
    Internal {
        /// Human-readable description of the violated invariant.
        detail: String,
    },
}

/// A graph paired with an edge budget and required/blocked edge labels.
///
/// Invariants maintained by the constructors and mutators:
/// * every labeled edge is an edge of `graph`,
/// * the required and blocked sets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledInstance {
    graph: Graph,
    k: usize,
    required: BTreeMap<Edge, EdgeOrigin>,
    blocked: BTreeSet<Edge>,
}

impl LabeledInstance {
    /// Wraps a graph with budget `k` and empty label sets.
    pub fn new(graph: Graph, k: usize) -> Self {
        LabeledInstance {
            graph,
            k,
            required: BTreeMap::new(),
            blocked: BTreeSet::new(),
        }
    }

    /// Builds an instance with explicit label sets, validating that every
    /// label lies on a graph edge and that no edge is both required and
    /// blocked.
    pub fn with_labels(
        graph: Graph,
        k: usize,
        required: BTreeMap<Edge, EdgeOrigin>,
        blocked: BTreeSet<Edge>,
    ) -> Result<Self, PipelineError> {
        for edge in required.keys().chain(blocked.iter()) {
            if !graph.has_edge(*edge) {
                return Err(PipelineError::LabelOutsideGraph { edge: *edge });
            }
        }
        if let Some(edge) = required.keys().find(|e| blocked.contains(*e)) {
            return Err(PipelineError::RequiredBlockedOverlap { edge: *edge });
        }
        Ok(LabeledInstance {
            graph,
            k,
            required,
            blocked,
        })
    }

    /// The instance graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// The edge budget: roots may use at most `n - 1 + k` edges.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Required edges with their origin tags.
    pub fn required(&self) -> &BTreeMap<Edge, EdgeOrigin> {
        &self.required
    }

    /// Required edges as a plain set.
    pub fn required_edges(&self) -> BTreeSet<Edge> {
        self.required.keys().copied().collect()
    }

    /// Required edges carrying a specific origin tag.
    pub fn required_from(&self, origin: EdgeOrigin) -> BTreeSet<Edge> {
        self.required
            .iter()
            .filter(|(_, o)| **o == origin)
            .map(|(e, _)| *e)
            .collect()
    }

    /// Blocked edges.
    pub fn blocked(&self) -> &BTreeSet<Edge> {
        &self.blocked
    }

    /// Marks `edge` as required.  An existing origin tag is kept, so an edge
    /// first required by the trimming rule stays attributed to it even when a
    /// later rule re-requires the same edge.
    pub(crate) fn insert_required(&mut self, edge: Edge, origin: EdgeOrigin) {
        debug_assert!(self.graph.has_edge(edge), "required edge must exist");
        debug_assert!(!self.blocked.contains(&edge), "edge is blocked");
        self.required.entry(edge).or_insert(origin);
    }

    /// Marks `edge` as blocked.
    pub(crate) fn insert_blocked(&mut self, edge: Edge) {
        debug_assert!(self.graph.has_edge(edge), "blocked edge must exist");
        debug_assert!(!self.required.contains_key(&edge), "edge is required");
        self.blocked.insert(edge);
    }

    /// Unblocks `edge` if present.
    pub(crate) fn remove_blocked(&mut self, edge: Edge) {
        self.blocked.remove(&edge);
    }

    /// Inserts a brand-new graph edge (used by the path reduction rule for
    /// its replacement edges).  Panics in debug builds if the edge already
    /// exists or touches an unknown vertex.
    pub(crate) fn add_graph_edge(&mut self, edge: Edge) {
        debug_assert!(!self.graph.has_edge(edge), "edge already present");
        self.graph.add_edge(edge);
    }

    /// Deletes a vertex together with every label on its incident edges.
    pub(crate) fn delete_vertex(&mut self, v: Vertex) {
        self.required.retain(|e, _| !e.has_endpoint(v));
        self.blocked.retain(|e| !e.has_endpoint(v));
        self.graph.remove_vertex(v);
    }
}

/// Result of offering one reduction rule a chance to fire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleOutcome<Rec> {
    /// The rule proved the instance has no solution.
    NoAnswer,
    /// The rule fired and produced a smaller (or relabeled) instance.
    Reduced {
        /// The reduced instance.
        instance: LabeledInstance,
        /// Replay record used by the lifting stage.
        record: Rec,
    },
    /// No site for the rule exists in the instance.
    NotApplicable,
}

/// Replay record for one firing of the trimming rule.
///
/// The rule found an attached clique `{u1, u2, deleted...}` whose non-anchor
/// vertices hang off the anchor pair, required the star `u1–u2`,
/// `u1–deleted[i]`, and deleted the clique interior.  Lifting re-attaches
/// every deleted vertex to `u1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrimRecord {
    /// Anchor kept as the star center (after any renaming the rule applied).
    pub u1: Vertex,
    /// The other anchor.
    pub u2: Vertex,
    /// Deleted clique-interior vertices, ascending.
    pub deleted: Vec<Vertex>,
    /// Size of the attached clique including both anchors.
    pub clique_size: usize,
}

/// Replay record for one firing of the path reduction rule.
///
/// The rule contracted the middle vertex `u2` of a chain configuration
/// `u1–u2–u3` (together with the leaf set `tail` hanging on `u2`), required
/// the bypass edge `u1–u3`, and rewired `u2`'s side neighborhoods `x_set`
/// (kept adjacent to `u1`) and `y_set` (kept adjacent to `u3`) with blocked
/// replacement edges.  Lifting removes the bypass edge and restores `u2` and
/// the tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    /// First chain endpoint.
    pub u1: Vertex,
    /// Contracted chain middle.
    pub u2: Vertex,
    /// Second chain endpoint.
    pub u3: Vertex,
    /// Leaf vertices deleted together with `u2`, ascending.
    pub deleted_tail: Vec<Vertex>,
    /// Side neighborhood attached to `u1`, ascending.
    pub x_set: Vec<Vertex>,
    /// Side neighborhood attached to `u3`, ascending.
    pub y_set: Vec<Vertex>,
}

/// Deletions performed on one true-twin class by the simplicial reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialClass {
    /// Class members kept in the kernel, ascending.
    pub survivors: Vec<Vertex>,
    /// Class members deleted from the instance, ascending.
    pub removed: Vec<Vertex>,
}

/// Replay record for the single firing of the simplicial reduction.
///
/// Only classes that actually lost a member are recorded.  Lifting locates,
/// per class, a surviving member that is a pendant vertex of the kernel root
/// and re-attaches every removed member to that pendant's unique neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialRecord {
    /// Per-class deletion records, in class order.
    pub classes: Vec<SimplicialClass>,
}

/// One recorded reduction step, in application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// A trimming rule firing.
    Trim(TrimRecord),
    /// A path reduction rule firing.
    Path(PathRecord),
    /// The simplicial reduction firing (at most once per kernelization).
    Simplicial(SimplicialRecord),
}

/// Number of firings per rule, reported alongside pipeline results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RuleCounts {
    /// Trimming rule firings.
    pub trim: usize,
    /// Path reduction rule firings.
    pub path: usize,
    /// Simplicial reduction firings that deleted at least one vertex (0 or 1).
    pub simplicial: usize,
}

/// The ordered list of reduction steps applied during kernelization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Steps in application order; lifting replays them in reverse.
    pub steps: Vec<ReductionStep>,
    /// Number of times a trimming site was observed *after* the trimming
    /// phase had finished (a diagnostic counter; such sites are recorded
    /// but deliberately not acted upon).
    pub late_trim_sites: usize,
}

impl ReductionTrace {
    /// Tallies firings per rule.  The simplicial step counts only if it
    /// deleted at least one vertex.
    pub fn rule_counts(&self) -> RuleCounts {
        let mut counts = RuleCounts::default();
        for step in &self.steps {
            match step {
                ReductionStep::Trim(_) => counts.trim += 1,
                ReductionStep::Path(_) => counts.path += 1,
                ReductionStep::Simplicial(rec) => {
                    if rec.classes.iter().any(|c| !c.removed.is_empty()) {
                        counts.simplicial += 1;
                    }
                }
            }
        }
        counts
    }
}
