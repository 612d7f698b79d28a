//! The path reduction rule: contracting the middle of a chain configuration.
//!
//! A *chain site* is a triple `u1, u2, u3` (plus an optional leaf set
//! `u4..ur` hanging on `u2` and side sets `X`, `Y`) that can only arise as
//! the square of a path `u1 – u2 – u3` whose middle vertex carries the
//! leaves.  The rule deletes `u2` and the leaves, records the forced bypass
//! edge `u1u3` as required, and adds blocked replacement edges so that the
//! squares of the reduced and original instances stay in bijection.

use std::collections::BTreeSet;

use crate::graph::{Edge, Graph, Vertex};

use super::instance::{EdgeOrigin, LabeledInstance, PathRecord, RuleOutcome};

/// A chain site: the three chain vertices, the leaf set on the middle
/// vertex, and the two side neighborhoods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ChainSite {
    pub u1: Vertex,
    pub u2: Vertex,
    pub u3: Vertex,
    /// Leaves hanging on `u2` (possibly empty).
    pub tail: BTreeSet<Vertex>,
    /// Neighbors of `u2` adjacent to `u1` but not `u3`.
    pub x: BTreeSet<Vertex>,
    /// Neighbors of `u2` adjacent to `u3` but not `u1`.
    pub y: BTreeSet<Vertex>,
}

/// Checks whether `sep` (a subset of the chain clique) separates `tail` from
/// the rest of the graph: no vertex outside `clique` may be reachable from
/// `tail` once `sep` is removed.
fn separates(g: &Graph, sep: &[Vertex], tail: &BTreeSet<Vertex>, clique: &BTreeSet<Vertex>) -> bool {
    let mut keep = g.vertex_set();
    for v in sep {
        keep.remove(v);
    }
    let reduced = g.induced_subgraph(&keep);
    let mut seen: BTreeSet<Vertex> = tail.clone();
    let mut queue: Vec<Vertex> = tail.iter().copied().collect();
    while let Some(v) = queue.pop() {
        for &w in reduced.neighbors(v) {
            if seen.insert(w) {
                if !clique.contains(&w) {
                    return false;
                }
                queue.push(w);
            }
        }
    }
    true
}

/// Finds the first chain site of `g` in deterministic order: middle vertices
/// ascending, then endpoint pairs `(u1, u3)` with `u1 < u3` in lexicographic
/// order over the middle vertex's neighborhood.
///
/// For a candidate `(u1, u2, u3)` the site must satisfy, with
/// `tail = N(u1) ∩ N(u3) \ {u2}` and `U = {u1, u2, u3} ∪ tail`:
/// * `U` induces a clique;
/// * the remaining neighborhood `W = N(u2) \ (U \ {u2})` splits exactly into
///   `X = W ∩ N(u1)` and `Y = W ∩ N(u3)`, both nonempty;
/// * no edge joins `X` to `Y`;
/// * when `tail` is nonempty, `{u1, u2, u3}` is a minimal separator between
///   `tail` and the rest of the graph.
pub(crate) fn find_chain_site(g: &Graph) -> Option<ChainSite> {
    for u2 in g.vertices() {
        let nbrs: Vec<Vertex> = g.neighbors(u2).iter().copied().collect();
        for (i, &u1) in nbrs.iter().enumerate() {
            'pair: for &u3 in &nbrs[i + 1..] {
                let common: BTreeSet<Vertex> =
                    g.neighbors(u1).intersection(g.neighbors(u3)).copied().collect();
                debug_assert!(common.contains(&u2));
                let mut tail = common;
                tail.remove(&u2);

                let mut clique: BTreeSet<Vertex> = tail.clone();
                clique.extend([u1, u2, u3]);
                if !g.is_clique(&clique) {
                    continue;
                }

                let mut w: BTreeSet<Vertex> = g.neighbors(u2).iter().copied().collect();
                w.remove(&u1);
                w.remove(&u3);
                for t in &tail {
                    w.remove(t);
                }
                let x: BTreeSet<Vertex> =
                    w.iter().copied().filter(|&v| g.has_edge(Edge::new(v, u1))).collect();
                let y: BTreeSet<Vertex> =
                    w.iter().copied().filter(|&v| g.has_edge(Edge::new(v, u3))).collect();
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                debug_assert!(x.is_disjoint(&y), "side sets overlap the chain clique");
                if x.len() + y.len() != w.len() {
                    continue;
                }
                for &xv in &x {
                    for &yv in &y {
                        if g.has_edge(Edge::new(xv, yv)) {
                            continue 'pair;
                        }
                    }
                }

                if !tail.is_empty() {
                    // The triple must separate the tail from everything else,
                    // and no proper subset may already do so (supersets of
                    // separators separate, so checking pairs suffices).
                    if !separates(g, &[u1, u2, u3], &tail, &clique) {
                        continue;
                    }
                    let pairs = [[u1, u2], [u1, u3], [u2, u3]];
                    if pairs.iter().any(|p| separates(g, p, &tail, &clique)) {
                        continue;
                    }
                }

                return Some(ChainSite {
                    u1,
                    u2,
                    u3,
                    tail,
                    x,
                    y,
                });
            }
        }
    }
    None
}

/// Offers the path reduction rule one chance to fire on `inst`.
///
/// Given a chain site, the forced edges `R' = {u2u1, u2u3} ∪ {u2t : t ∈
/// tail}` and forbidden edges `B' = {xu2} ∪ {yu2} ∪ {u1u3} ∪ {u1t} ∪ {u3t}`
/// are checked against the existing labels (a clash is a `NoAnswer`); they
/// are *not* merged.  The rule then deletes `u2` and the tail, requires the
/// bypass edge `u1u3` (unblocking it first if necessary), and adds new
/// blocked edges `x–u3` and `y–u1` so squares keep covering the rewired
/// neighborhoods.
pub fn apply_path_reduction_rule(inst: &LabeledInstance) -> RuleOutcome<PathRecord> {
    let g = inst.graph();
    let Some(site) = find_chain_site(g) else {
        return RuleOutcome::NotApplicable;
    };
    let ChainSite {
        u1,
        u2,
        u3,
        tail,
        x,
        y,
    } = site;

    let mut required_new: BTreeSet<Edge> = BTreeSet::new();
    required_new.insert(Edge::new(u2, u1));
    required_new.insert(Edge::new(u2, u3));
    for &t in &tail {
        required_new.insert(Edge::new(u2, t));
    }

    let mut blocked_new: BTreeSet<Edge> = BTreeSet::new();
    for &xv in &x {
        blocked_new.insert(Edge::new(xv, u2));
    }
    for &yv in &y {
        blocked_new.insert(Edge::new(yv, u2));
    }
    blocked_new.insert(Edge::new(u1, u3));
    for &t in &tail {
        blocked_new.insert(Edge::new(u1, t));
        blocked_new.insert(Edge::new(u3, t));
    }

    let required_old = inst.required_edges();
    if required_old.intersection(&blocked_new).next().is_some()
        || required_new.intersection(inst.blocked()).next().is_some()
    {
        return RuleOutcome::NoAnswer;
    }

    let mut reduced = inst.clone();
    reduced.delete_vertex(u2);
    for &t in &tail {
        reduced.delete_vertex(t);
    }
    let bypass = Edge::new(u1, u3);
    reduced.remove_blocked(bypass);
    reduced.insert_required(bypass, EdgeOrigin::Path);
    for &xv in &x {
        let e = Edge::new(xv, u3);
        reduced.add_graph_edge(e);
        reduced.insert_blocked(e);
    }
    for &yv in &y {
        let e = Edge::new(yv, u1);
        reduced.add_graph_edge(e);
        reduced.insert_blocked(e);
    }

    let record = PathRecord {
        u1,
        u2,
        u3,
        deleted_tail: tail.iter().copied().collect(),
        x_set: x.iter().copied().collect(),
        y_set: y.iter().copied().collect(),
    };
    RuleOutcome::Reduced {
        instance: reduced,
        record,
    }
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeMap, BTreeSet};

    use super::*;
    use crate::graph::is_square_root;

    fn e(u: Vertex, v: Vertex) -> Edge {
        Edge::new(u, v)
    }

    fn graph(edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(edges.iter().map(|&(u, v)| e(u, v)))
    }

    fn squared_cycle(n: u32) -> Graph {
        Graph::cycle_graph(n).compute_square()
    }

    /// Square of the spider {1-5, 1-2, 2-3, 3-6, 2-4}: vertex 2 is a chain
    /// middle carrying the leaf 4, with side vertices 5 (toward 1) and 6
    /// (toward 3).
    fn spider_square() -> Graph {
        graph(&[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 3),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 4),
            (3, 6),
        ])
    }

    #[test]
    fn finds_chain_site_in_squared_seven_cycle() {
        let site = find_chain_site(&squared_cycle(7)).unwrap();
        assert_eq!((site.u1, site.u2, site.u3), (2, 1, 7));
        assert!(site.tail.is_empty());
        assert_eq!(site.x, BTreeSet::from([3]));
        assert_eq!(site.y, BTreeSet::from([6]));
    }

    #[test]
    fn squared_six_cycle_has_no_chain_site() {
        assert_eq!(find_chain_site(&squared_cycle(6)), None);
    }

    #[test]
    fn squared_seven_cycle_reduces_to_squared_six_cycle() {
        let inst = LabeledInstance::new(squared_cycle(7), 1);
        let RuleOutcome::Reduced { instance, record } = apply_path_reduction_rule(&inst) else {
            panic!("expected the rule to fire");
        };
        assert_eq!((record.u1, record.u2, record.u3), (2, 1, 7));
        assert_eq!(record.deleted_tail, Vec::<Vertex>::new());
        assert_eq!(record.x_set, vec![3]);
        assert_eq!(record.y_set, vec![6]);

        assert_eq!(instance.required_edges(), BTreeSet::from([e(2, 7)]));
        assert_eq!(instance.blocked(), &BTreeSet::from([e(3, 7), e(2, 6)]));

        // The reduced graph is the square of the cycle 2-3-4-5-6-7.
        let expected = graph(&[
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (2, 7),
            (2, 4),
            (3, 5),
            (4, 6),
            (5, 7),
            (2, 6),
            (3, 7),
        ]);
        assert_eq!(instance.graph(), &expected);
    }

    #[test]
    fn finds_chain_site_with_leaf_tail_in_spider_square() {
        let site = find_chain_site(&spider_square()).unwrap();
        assert_eq!((site.u1, site.u2, site.u3), (1, 2, 3));
        assert_eq!(site.tail, BTreeSet::from([4]));
        assert_eq!(site.x, BTreeSet::from([5]));
        assert_eq!(site.y, BTreeSet::from([6]));
    }

    #[test]
    fn spider_square_reduction_rewires_side_vertices() {
        let inst = LabeledInstance::new(spider_square(), 1);
        let RuleOutcome::Reduced { instance, record } = apply_path_reduction_rule(&inst) else {
            panic!("expected the rule to fire");
        };
        assert_eq!((record.u1, record.u2, record.u3), (1, 2, 3));
        assert_eq!(record.deleted_tail, vec![4]);

        let expected = graph(&[(1, 3), (1, 5), (3, 6), (3, 5), (1, 6)]);
        assert_eq!(instance.graph(), &expected);
        assert_eq!(instance.required_edges(), BTreeSet::from([e(1, 3)]));
        assert_eq!(instance.blocked(), &BTreeSet::from([e(3, 5), e(1, 6)]));

        // The reduced instance is solved by the path 5-1-3-6, which contains
        // the required bypass edge and avoids both blocked edges.
        let root = graph(&[(1, 5), (1, 3), (3, 6)]);
        assert!(is_square_root(&root, instance.graph()).unwrap());
    }

    #[test]
    fn required_label_clashing_with_new_blocked_edge_gives_no_answer() {
        // In the squared 7-cycle the rule wants to block 1-3; pre-requiring
        // that edge must abort.
        let mut required = BTreeMap::new();
        required.insert(e(1, 3), EdgeOrigin::Trim);
        let inst =
            LabeledInstance::with_labels(squared_cycle(7), 1, required, BTreeSet::new()).unwrap();
        assert_eq!(apply_path_reduction_rule(&inst), RuleOutcome::NoAnswer);
    }

    #[test]
    fn blocked_label_clashing_with_new_required_edge_gives_no_answer() {
        // The rule wants to require 1-2; pre-blocking it must abort.
        let blocked = BTreeSet::from([e(1, 2)]);
        let inst =
            LabeledInstance::with_labels(squared_cycle(7), 1, BTreeMap::new(), blocked).unwrap();
        assert_eq!(apply_path_reduction_rule(&inst), RuleOutcome::NoAnswer);
    }

    #[test]
    fn blocked_bypass_edge_is_unblocked_and_required() {
        // Pre-blocking the bypass edge 2-7 is not a clash: the rule moves it
        // from blocked to required.
        let blocked = BTreeSet::from([e(2, 7)]);
        let inst =
            LabeledInstance::with_labels(squared_cycle(7), 1, BTreeMap::new(), blocked).unwrap();
        let RuleOutcome::Reduced { instance, .. } = apply_path_reduction_rule(&inst) else {
            panic!("expected the rule to fire");
        };
        assert_eq!(instance.required_edges(), BTreeSet::from([e(2, 7)]));
        assert_eq!(instance.blocked(), &BTreeSet::from([e(3, 7), e(2, 6)]));
    }

    #[test]
    fn small_cliques_and_cycles_have_no_chain_site() {
        assert_eq!(find_chain_site(&Graph::complete_graph(5)), None);
        assert_eq!(find_chain_site(&Graph::cycle_graph(6)), None);
        assert_eq!(find_chain_site(&Graph::path_graph(5)), None);
    }

    #[test]
    fn longer_squared_cycles_keep_reducing() {
        // Repeated applications shrink the squared 12-cycle by one vertex
        // per firing until the (irreducible) squared 6-cycle remains.
        let mut inst = LabeledInstance::new(squared_cycle(12), 1);
        let mut firings = 0;
        loop {
            match apply_path_reduction_rule(&inst) {
                RuleOutcome::Reduced { instance, .. } => {
                    inst = instance;
                    firings += 1;
                }
                RuleOutcome::NotApplicable => break,
                RuleOutcome::NoAnswer => panic!("unexpected no-answer"),
            }
        }
        assert_eq!(firings, 6);
        assert_eq!(inst.graph().n(), 6);
    }
}
