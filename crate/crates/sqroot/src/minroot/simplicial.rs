//! The simplicial vertex reduction: capping true-twin classes of candidate
//! pendant vertices.
//!
//! After the trimming and path phases are exhausted, every budget-respecting
//! root of the remaining graph has a bounded non-pendant core; all other root
//! vertices are pendants, and pendants appear in the square as simplicial
//! vertices whose twin classes the rule may shrink.  The rule fires exactly
//! once per kernelization and either rejects the instance outright (when a
//! count exceeds what any root could realize) or deletes surplus twin-class
//! members, recording enough to re-attach them during lifting.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Edge, Vertex};

use super::instance::{
    EdgeOrigin, LabeledInstance, RuleOutcome, SimplicialClass, SimplicialRecord,
};

/// Bound on the number of non-candidate vertices (and on the number of twin
/// classes) a solvable instance can have after the earlier rules are
/// exhausted.
///
/// The linear term `15k - 14` counts the non-pendant core a root within
/// budget `n - 1 + k` can support.  It is floored at 6 because the smallest
/// irreducible cyclic instance — the square of a 6-cycle — has six core
/// vertices, which the linear formula undercounts at `k = 1`.
pub(crate) fn core_bound(k: usize) -> usize {
    (15 * k).saturating_sub(14).max(6)
}

/// Maximum surviving size of one twin class: one more than [`core_bound`],
/// so that every capped class is guaranteed a pendant member in any root of
/// the reduced instance.
pub(crate) fn class_cap(k: usize) -> usize {
    core_bound(k) + 1
}

/// Offers the twin-class capping reduction its single chance to fire.
///
/// Steps:
/// 1. collect the candidate set `S`: simplicial vertices not incident to any
///    path-required edge and, when incident to a trim-required edge, having
///    all but one incident edge blocked;
/// 2. more than [`core_bound`] non-candidates: `NoAnswer`;
/// 3. partition `S` into true-twin classes `S_1..S_t`, marking in `X_i` the
///    members incident to trim-required edges;
/// 4. more than [`core_bound`] classes: `NoAnswer`;
/// 5. some class whose trim-required edges share no common end-vertex:
///    `NoAnswer`;
/// 6. some class with at least [`class_cap`] unmarked members where a
///    trim-required edge `uv` (`u ∈ X_i`) coexists with a blocked edge `xv`
///    (`x ∈ S_i \ X_i`): `NoAnswer`;
/// 7. in every class keep only the smallest-labeled marked member, deleting
///    the rest of `X_i`;
/// 8. cap every class at [`class_cap`] members by deleting the largest
///    unmarked ones.
///
/// The outcome is always `Reduced`; when nothing needed deleting the record
/// is empty and the instance is returned unchanged.
pub fn apply_simplicial_reduction(inst: &LabeledInstance) -> RuleOutcome<SimplicialRecord> {
    let g = inst.graph();
    let k = inst.k();
    let bound = core_bound(k);
    let cap = class_cap(k);

    let trim_edges = inst.required_from(EdgeOrigin::Trim);
    let path_edges = inst.required_from(EdgeOrigin::Path);
    let mut blocked_degree: BTreeMap<Vertex, usize> = BTreeMap::new();
    for e in inst.blocked() {
        *blocked_degree.entry(e.u()).or_insert(0) += 1;
        *blocked_degree.entry(e.v()).or_insert(0) += 1;
    }
    let touches = |edges: &BTreeSet<Edge>, v: Vertex| edges.iter().any(|e| e.has_endpoint(v));

    // Step 1: candidate pendants.
    let mut candidates: BTreeSet<Vertex> = BTreeSet::new();
    for v in g.simplicial_vertices() {
        if touches(&path_edges, v) {
            continue;
        }
        if touches(&trim_edges, v) {
            let non_blocked = g.degree(v) - blocked_degree.get(&v).copied().unwrap_or(0);
            if non_blocked != 1 {
                continue;
            }
        }
        candidates.insert(v);
    }

    // Step 2: the rest of the graph must fit in the core bound.
    if g.n() - candidates.len() > bound {
        return RuleOutcome::NoAnswer;
    }

    // Step 3: twin classes and their marked members.
    let classes = g.true_twin_partition(&candidates);
    let marked: Vec<BTreeSet<Vertex>> = classes
        .iter()
        .map(|class| {
            class
                .iter()
                .copied()
                .filter(|&v| touches(&trim_edges, v))
                .collect()
        })
        .collect();

    // Step 4: so must the number of classes.
    if classes.len() > bound {
        return RuleOutcome::NoAnswer;
    }

    // Step 5: the trim-required edges of one class must share an end-vertex.
    for x_i in &marked {
        let incident: Vec<Edge> = trim_edges
            .iter()
            .copied()
            .filter(|e| x_i.iter().any(|&v| e.has_endpoint(v)))
            .collect();
        if let Some((first, rest)) = incident.split_first() {
            let mut common = BTreeSet::from([first.u(), first.v()]);
            for e in rest {
                common.retain(|&v| e.has_endpoint(v));
            }
            if common.is_empty() {
                return RuleOutcome::NoAnswer;
            }
        }
    }

    // Step 6: a large unmarked population may not coexist with a blocked
    // edge toward the forced attachment vertex.
    for (class, x_i) in classes.iter().zip(&marked) {
        if class.len() - x_i.len() < cap {
            continue;
        }
        for &u in x_i {
            for e in trim_edges.iter().filter(|e| e.has_endpoint(u)) {
                let Some(v) = e.other_endpoint(u) else {
                    continue;
                };
                for &x in class.difference(x_i) {
                    if x != v && inst.blocked().contains(&Edge::new(x, v)) {
                        return RuleOutcome::NoAnswer;
                    }
                }
            }
        }
    }

    // Steps 7 and 8: delete surplus members, largest labels first.
    let mut reduced = inst.clone();
    let mut recorded: Vec<SimplicialClass> = Vec::new();
    for (class, x_i) in classes.iter().zip(&marked) {
        let mut survivors: BTreeSet<Vertex> = class.clone();
        let mut removed: BTreeSet<Vertex> = BTreeSet::new();

        if x_i.len() > 1 {
            for &v in x_i.iter().rev().take(x_i.len() - 1) {
                reduced.delete_vertex(v);
                survivors.remove(&v);
                removed.insert(v);
            }
        }
        if survivors.len() > cap {
            let excess = survivors.len() - cap;
            let unmarked: Vec<Vertex> = survivors
                .iter()
                .copied()
                .filter(|v| !x_i.contains(v))
                .collect();
            for &v in unmarked.iter().rev().take(excess) {
                reduced.delete_vertex(v);
                survivors.remove(&v);
                removed.insert(v);
            }
        }

        if !removed.is_empty() {
            recorded.push(SimplicialClass {
                survivors: survivors.into_iter().collect(),
                removed: removed.into_iter().collect(),
            });
        }
    }

    RuleOutcome::Reduced {
        instance: reduced,
        record: SimplicialRecord { classes: recorded },
    }
}
