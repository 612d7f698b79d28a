//! The trimming rule: contracting a clique attached through two vertices.
//!
//! A *trim site* is an adjacent pair `{u1, u2}` such that some connected
//! component of `G - {u1, u2}` together with the pair induces a clique.  In
//! any suitably preprocessed instance (no tree root, 2-connected graph) such
//! a configuration forces, inside every budget-respecting root, one anchor to
//! carry the whole clique interior as pendants, so the interior can be
//! deleted after recording the forced star as required edges and the
//! forbidden alternatives as blocked edges.

use std::collections::BTreeSet;

use crate::graph::{Edge, Graph, Vertex};

use super::instance::{EdgeOrigin, LabeledInstance, RuleOutcome, TrimRecord};

/// Finds the first trim site of `g` in deterministic order: anchor pairs are
/// scanned in lexicographic edge order, and for each pair the qualifying
/// component with the smallest member wins.  Returns the anchors (in label
/// order, before any renaming the rule itself applies) and the component.
pub(crate) fn find_trim_site(g: &Graph) -> Option<(Vertex, Vertex, BTreeSet<Vertex>)> {
    for edge in g.edges() {
        let (a, b) = edge.endpoints();
        let mut rest = g.vertex_set();
        rest.remove(&a);
        rest.remove(&b);
        let outside = g.induced_subgraph(&rest);
        for component in outside.components() {
            let mut clique = component.clone();
            clique.insert(a);
            clique.insert(b);
            if g.is_clique(&clique) {
                return Some((a, b, component));
            }
        }
    }
    None
}

/// Offers the trimming rule one chance to fire on `inst`.
///
/// Steps, given the site `{u1, u2}` with clique interior `C`:
/// 1. no site: `NotApplicable`;
/// 2. `N[u1] = N[u2]`: `NoAnswer` (both anchors would need the interior as
///    pendants, which no single root can arrange);
/// 3. both anchors have private closed neighbors: `NoAnswer`;
/// 4. otherwise rename so that `N[u1] ⊂ N[u2]` strictly;
/// 5. build the forced star `R' = {u1u2} ∪ {u1c : c ∈ C}` and the forbidden
///    set `B'` (all edges inside `{u2} ∪ C`, plus every edge from `u1` to a
///    neighbor outside the clique);
/// 6. a clash between `R'`/`B'` and the existing labels is a `NoAnswer`;
///    otherwise merge the labels and delete `C`.
pub fn apply_trimming_rule(inst: &LabeledInstance) -> RuleOutcome<TrimRecord> {
    let g = inst.graph();
    let Some((a, b, interior)) = find_trim_site(g) else {
        return RuleOutcome::NotApplicable;
    };

    let closed_a = g.closed_neighborhood(a);
    let closed_b = g.closed_neighborhood(b);
    let a_private: BTreeSet<Vertex> = closed_a.difference(&closed_b).copied().collect();
    let b_private: BTreeSet<Vertex> = closed_b.difference(&closed_a).copied().collect();

    if a_private.is_empty() && b_private.is_empty() {
        return RuleOutcome::NoAnswer;
    }
    if !a_private.is_empty() && !b_private.is_empty() {
        return RuleOutcome::NoAnswer;
    }
    // Keep as star center the anchor whose closed neighborhood is contained
    // in the other's.
    let (u1, u2) = if a_private.is_empty() { (a, b) } else { (b, a) };

    let mut required_new: BTreeSet<Edge> = BTreeSet::new();
    required_new.insert(Edge::new(u1, u2));
    for &c in &interior {
        required_new.insert(Edge::new(u1, c));
    }

    let mut blocked_new: BTreeSet<Edge> = BTreeSet::new();
    let mut others: BTreeSet<Vertex> = interior.clone();
    others.insert(u2);
    let others_vec: Vec<Vertex> = others.iter().copied().collect();
    for (i, &x) in others_vec.iter().enumerate() {
        for &y in &others_vec[i + 1..] {
            blocked_new.insert(Edge::new(x, y));
        }
    }
    for &x in g.neighbors(u1) {
        if !others.contains(&x) {
            blocked_new.insert(Edge::new(u1, x));
        }
    }

    let required_old = inst.required_edges();
    if required_old.intersection(&blocked_new).next().is_some()
        || required_new.intersection(inst.blocked()).next().is_some()
    {
        return RuleOutcome::NoAnswer;
    }

    let mut reduced = inst.clone();
    for e in required_new {
        reduced.insert_required(e, EdgeOrigin::Trim);
    }
    for e in blocked_new {
        reduced.insert_blocked(e);
    }
    for &c in &interior {
        reduced.delete_vertex(c);
    }

    let record = TrimRecord {
        u1,
        u2,
        deleted: interior.iter().copied().collect(),
        clique_size: interior.len() + 2,
    };
    RuleOutcome::Reduced {
        instance: reduced,
        record,
    }
}
