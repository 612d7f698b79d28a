//! Rebuilding a root of the original graph from a root of the kernel.
//!
//! Every reduction step records exactly what it deleted; replaying the trace
//! in reverse rebuilds the deleted structure.  The constructions mirror the
//! guarantees the rules enforce: trimmed clique interiors hang off the star
//! center, a contracted chain middle replaces its bypass edge, and capped
//! twin-class members re-attach as pendants next to a surviving pendant of
//! their class.

use crate::graph::{Edge, Graph};

use super::instance::{
    PathRecord, PipelineError, ReductionStep, ReductionTrace, SimplicialRecord, TrimRecord,
};

fn lift_trim(root: &mut Graph, rec: &TrimRecord) -> Result<(), PipelineError> {
    if !root.has_vertex(rec.u1) {
        return Err(PipelineError::Internal {
            detail: format!("trim lift expected star center {} in the root", rec.u1),
        });
    }
    for &d in &rec.deleted {
        root.add_edge(Edge::new(rec.u1, d));
    }
    Ok(())
}

fn lift_path(root: &mut Graph, rec: &PathRecord) -> Result<(), PipelineError> {
    let bypass = Edge::new(rec.u1, rec.u3);
    // Every root of the reduced instance contains the bypass edge (it is
    // required); its absence means the trace and the root are out of sync.
    if !root.has_edge(bypass) {
        return Err(PipelineError::LiftIntegrity { edge: bypass });
    }
    root.remove_edge(bypass);
    root.add_edge(Edge::new(rec.u2, rec.u1));
    root.add_edge(Edge::new(rec.u2, rec.u3));
    for &t in &rec.deleted_tail {
        root.add_edge(Edge::new(rec.u2, t));
    }
    Ok(())
}

fn lift_simplicial(root: &mut Graph, rec: &SimplicialRecord) -> Result<(), PipelineError> {
    for class in &rec.classes {
        // All pendant members of one twin class share the same neighbor in
        // any root (twins are mutually adjacent in the square, and pendants
        // at different neighbors would not be), so the smallest pendant
        // survivor determines the attachment vertex canonically.
        let pendant = class
            .survivors
            .iter()
            .copied()
            .find(|&v| root.has_vertex(v) && root.degree(v) == 1);
        let Some(pendant) = pendant else {
            return Err(PipelineError::Internal {
                detail: format!(
                    "twin-class lift found no pendant survivor among {:?}",
                    class.survivors
                ),
            });
        };
        let attach = *root
            .neighbors(pendant)
            .iter()
            .next()
            .expect("a pendant vertex has exactly one neighbor");
        for &w in &class.removed {
            root.add_edge(Edge::new(attach, w));
        }
    }
    Ok(())
}

/// Replays the reduction trace in reverse on a root of the kernel, producing
/// a root of the original graph.
///
/// Fails with [`PipelineError::LiftIntegrity`] when the root is missing an
/// edge a path step guarantees, and with [`PipelineError::Internal`] when
/// recorded vertices are absent — both indicate a root that does not belong
/// to this trace.
pub fn lift_solution(kernel_root: &Graph, trace: &ReductionTrace) -> Result<Graph, PipelineError> {
    let mut root = kernel_root.clone();
    for step in trace.steps.iter().rev() {
        match step {
            ReductionStep::Trim(rec) => lift_trim(&mut root, rec)?,
            ReductionStep::Path(rec) => lift_path(&mut root, rec)?,
            ReductionStep::Simplicial(rec) => lift_simplicial(&mut root, rec)?,
        }
    }
    Ok(root)
}
