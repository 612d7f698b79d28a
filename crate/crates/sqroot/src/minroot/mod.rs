//! Minimum square roots under an edge budget.
//!
//! Given a connected graph `G` on `n` vertices and a slack parameter `k`,
//! [`min_square_root`] decides whether `G` has a square root with at most
//! `n - 1 + k` edges and, if so, returns one. The search runs in three
//! phases:
//!
//! 1. **Reduction.** [`kernelize`] repeatedly fires two local replacement
//!    rules (a clique-trimming rule and a path-contraction rule) and a final
//!    simplicial-vertex cleanup. Each firing either answers "no" outright or
//!    shrinks the graph while recording how to undo the step. When the rules
//!    are exhausted the surviving kernel has size bounded by a function of
//!    `k` alone.
//! 2. **Search.** [`solve_labeled`] finds a root of the kernel that contains
//!    every required edge, avoids every blocked edge, and fits the budget.
//! 3. **Lifting.** [`lift_solution`] replays the recorded reduction steps in
//!    reverse, growing the kernel root back into a root of the original
//!    graph.
//!
//! The labels (`required` / `blocked` edges) exist because the replacement
//! rules commit to part of the root's structure when they delete vertices;
//! the kernel search must honor those commitments for the lift to be valid.

mod instance;
mod lift;
mod path;
mod simplicial;
mod solve;
mod trim;

pub use self::instance::{
    EdgeOrigin, LabeledInstance, PathRecord, PipelineError, ReductionStep, ReductionTrace,
    RuleCounts, RuleOutcome, SimplicialClass, SimplicialRecord, TrimRecord,
};
pub use self::lift::lift_solution;
pub use self::path::apply_path_reduction_rule;
pub use self::simplicial::apply_simplicial_reduction;
pub use self::solve::{solve_labeled, solve_labeled_jobs};
pub use self::trim::apply_trimming_rule;

use crate::graph::{is_square_root, Graph, GraphError};
use crate::treeroot::has_tree_square_root;

/// Result of running the reduction rules to exhaustion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelOutcome {
    /// A rule proved that no root fits the budget.
    No {
        /// Steps applied before the refutation, for reporting.
        trace: ReductionTrace,
    },
    /// An equivalent reduced instance whose size depends only on `k`.
    Kernel {
        /// The reduced labeled instance.
        instance: LabeledInstance,
        /// Undo log for [`lift_solution`].
        trace: ReductionTrace,
    },
}

/// Reduces `g` to a labeled kernel whose vertex count is bounded in `k`.
///
/// Preconditions are checked up front: the graph must be connected, must not
/// already have a tree square root (trees always fit the budget, so that case
/// is decided before reduction), and must be 2-connected when it has at least
/// three vertices (a connected graph of that size with a cut vertex has no
/// square root at all).
///
/// The trimming rule runs to exhaustion first, then the path rule runs to
/// exhaustion. If a path firing re-enables a trimming site, the site is
/// counted in [`ReductionTrace::late_trim_sites`] but not acted upon; the
/// simplicial cleanup that follows does not need trimming to be current.
/// The cleanup itself runs exactly once.
///
/// # Errors
///
/// Returns a [`PipelineError`] when a precondition fails, or an internal
/// error if the reduced graph ever exceeds its proven size bound.
pub fn kernelize(g: &Graph, k: usize) -> Result<KernelOutcome, PipelineError> {
    let profile = g.connectivity_profile();
    if !profile.is_connected {
        return Err(PipelineError::Disconnected {
            components: profile.components.len(),
        });
    }
    match has_tree_square_root(g) {
        Ok(Some(_)) => return Err(PipelineError::TreeRootExists),
        Ok(None) => {}
        Err(err) => return Err(graph_error_to_internal(err)),
    }
    if g.n() >= 3 && !profile.is_two_connected {
        return Err(PipelineError::NotTwoConnected);
    }

    let mut instance = LabeledInstance::new(g.clone(), k);
    let mut trace = ReductionTrace::default();

    loop {
        match apply_trimming_rule(&instance) {
            RuleOutcome::NoAnswer => return Ok(KernelOutcome::No { trace }),
            RuleOutcome::Reduced { instance: next, record } => {
                instance = next;
                trace.steps.push(ReductionStep::Trim(record));
            }
            RuleOutcome::NotApplicable => break,
        }
    }

    loop {
        match apply_path_reduction_rule(&instance) {
            RuleOutcome::NoAnswer => return Ok(KernelOutcome::No { trace }),
            RuleOutcome::Reduced { instance: next, record } => {
                instance = next;
                trace.steps.push(ReductionStep::Path(record));
                if trim::find_trim_site(instance.graph()).is_some() {
                    trace.late_trim_sites += 1;
                }
            }
            RuleOutcome::NotApplicable => break,
        }
    }

    match apply_simplicial_reduction(&instance) {
        RuleOutcome::NoAnswer => return Ok(KernelOutcome::No { trace }),
        RuleOutcome::Reduced { instance: next, record } => {
            instance = next;
            if record.classes.iter().any(|class| !class.removed.is_empty()) {
                trace.steps.push(ReductionStep::Simplicial(record));
            }
        }
        RuleOutcome::NotApplicable => {}
    }

    let bound = simplicial::core_bound(k);
    let limit = bound * (bound + 2);
    if instance.graph().n() > limit {
        return Err(PipelineError::Internal {
            detail: format!(
                "kernel has {} vertices, exceeding the bound {} for k = {}",
                instance.graph().n(),
                limit,
                k
            ),
        });
    }

    Ok(KernelOutcome::Kernel { instance, trace })
}

/// A square root found by the pipeline, together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSolution {
    /// A square root of the input graph within the edge budget.
    pub root: Graph,
    /// Number of edges in `root` (at most `n - 1 + k`).
    pub edge_count: usize,
    /// The kernel root the lift started from, when reduction ran; `None`
    /// when the answer came from the tree-root check or a trivial case.
    pub kernel_root: Option<Graph>,
}

/// Outcome of [`min_square_root_report`]: the answer plus pipeline metrics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinRootReport {
    /// The root, if one fits the budget.
    pub solution: Option<RootSolution>,
    /// Vertex count of the kernel, when kernelization completed.
    pub kernel_vertices: Option<usize>,
    /// How many times each reduction rule fired.
    pub rule_counts: RuleCounts,
}

/// Decides whether `g` has a square root with at most `n - 1 + k` edges.
///
/// Returns `Ok(Some(..))` with a witness root when one exists, `Ok(None)`
/// when none does.
///
/// # Errors
///
/// Returns [`PipelineError::Disconnected`] for disconnected input, or an
/// internal error if a reduction invariant is violated.
pub fn min_square_root(g: &Graph, k: usize) -> Result<Option<RootSolution>, PipelineError> {
    Ok(min_square_root_report(g, k)?.solution)
}

/// Like [`min_square_root`], but also reports kernel size and rule usage.
///
/// # Errors
///
/// Same conditions as [`min_square_root`].
pub fn min_square_root_report(g: &Graph, k: usize) -> Result<MinRootReport, PipelineError> {
    min_square_root_report_jobs(g, k, 1)
}

/// Like [`min_square_root_report`], running the kernel search on `jobs`
/// threads. The answer is identical for every `jobs` value.
///
/// # Errors
///
/// Same conditions as [`min_square_root`].
pub fn min_square_root_report_jobs(
    g: &Graph,
    k: usize,
    jobs: usize,
) -> Result<MinRootReport, PipelineError> {
    let profile = g.connectivity_profile();
    if !profile.is_connected {
        return Err(PipelineError::Disconnected {
            components: profile.components.len(),
        });
    }

    // The empty graph is its own square; it fits the budget exactly when
    // 0 <= n - 1 + k, i.e. when k >= 1.
    if g.n() == 0 {
        let solution = (k >= 1).then(|| RootSolution {
            root: Graph::empty(),
            edge_count: 0,
            kernel_root: None,
        });
        return Ok(MinRootReport {
            solution,
            kernel_vertices: None,
            rule_counts: RuleCounts::default(),
        });
    }

    // A tree root has n - 1 edges and therefore fits every budget.
    match has_tree_square_root(g) {
        Ok(Some(tree)) => {
            let edge_count = tree.m();
            return Ok(MinRootReport {
                solution: Some(RootSolution {
                    root: tree,
                    edge_count,
                    kernel_root: None,
                }),
                kernel_vertices: None,
                rule_counts: RuleCounts::default(),
            });
        }
        Ok(None) => {}
        Err(err) => return Err(graph_error_to_internal(err)),
    }

    // A connected graph on >= 3 vertices with a cut vertex has no square
    // root of any size.
    if g.n() >= 3 && !profile.is_two_connected {
        return Ok(MinRootReport {
            solution: None,
            kernel_vertices: None,
            rule_counts: RuleCounts::default(),
        });
    }

    // With zero slack only trees fit the budget, and the tree check failed.
    if k == 0 {
        return Ok(MinRootReport {
            solution: None,
            kernel_vertices: None,
            rule_counts: RuleCounts::default(),
        });
    }

    let (instance, trace) = match kernelize(g, k)? {
        KernelOutcome::No { trace } => {
            return Ok(MinRootReport {
                solution: None,
                kernel_vertices: None,
                rule_counts: trace.rule_counts(),
            });
        }
        KernelOutcome::Kernel { instance, trace } => (instance, trace),
    };

    let kernel_vertices = Some(instance.graph().n());
    let rule_counts = trace.rule_counts();

    let Some(kernel_root) = solve_labeled_jobs(&instance, jobs) else {
        return Ok(MinRootReport {
            solution: None,
            kernel_vertices,
            rule_counts,
        });
    };

    let root = lift_solution(&kernel_root, &trace)?;
    match is_square_root(&root, g) {
        Ok(true) => {}
        _ => {
            return Err(PipelineError::Internal {
                detail: "lifted root does not square to the input graph".into(),
            });
        }
    }
    let budget = g.n() - 1 + k;
    if root.m() > budget {
        return Err(PipelineError::Internal {
            detail: format!(
                "lifted root has {} edges, exceeding the budget {}",
                root.m(),
                budget
            ),
        });
    }

    Ok(MinRootReport {
        solution: Some(RootSolution {
            edge_count: root.m(),
            root,
            kernel_root: Some(kernel_root),
        }),
        kernel_vertices,
        rule_counts,
    })
}

fn graph_error_to_internal(err: GraphError) -> PipelineError {
    match err {
        GraphError::Disconnected { components } => PipelineError::Disconnected { components },
        other => PipelineError::Internal {
            detail: format!("unexpected graph error: {other}"),
        },
    }
}
