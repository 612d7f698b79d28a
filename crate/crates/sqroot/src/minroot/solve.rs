//! Exhaustive, deterministic search for a root of a labeled instance.
//!
//! The reduction rules leave behind a small graph with required and blocked
//! edge labels; this module enumerates candidate roots over the remaining
//! *free* edges.  A candidate is valid when its square is exactly the
//! instance graph, which splits into two bookkeepable conditions:
//!
//! * **independence** — no two root edges may meet at a vertex whose other
//!   endpoints are non-adjacent in the instance graph (their square would
//!   introduce a foreign edge), tracked by per-edge conflict counters;
//! * **coverage** — every instance edge needs a *witness* in the root, either
//!   the edge itself or a length-2 path through a common neighbor, tracked by
//!   per-witness inclusion counts and per-target live/satisfied counters.
//!
//! Free-edge subsets are visited in lexicographic order of their index
//! sequences (a node is checked before its extensions), so the first — and
//! returned — root is a deterministic function of the instance.

use std::collections::BTreeSet;

use crate::dense::{self, Dense};
use crate::graph::{Edge, Graph};

use super::instance::LabeledInstance;

/// Sentinel for a witness that is alive.
const NO_KILLER: usize = usize::MAX;

/// One way of covering a target edge: the edge itself in the root (one
/// member) or a length-2 path through a middle vertex (two members).
/// Members that are required edges count as included from the start; free
/// members bump `included` while chosen.  A witness dies when one of its
/// free members is excluded, remembering the excluder for cheap revival.
struct Witness {
    target: usize,
    needed: u8,
    included: u8,
    killer: usize,
}

/// Coverage counters for one target edge of the instance graph.
struct TargetState {
    /// Witnesses not yet killed by an exclusion.
    live: usize,
    /// Witnesses whose members are all in the current root.
    satisfied: usize,
}

/// Whether two distinct edges (as index pairs) conflict: they share an
/// endpoint whose other two endpoints are non-adjacent, so a root containing
/// both would square to a foreign edge.
fn conflicting(a: (usize, usize), b: (usize, usize), rows: &[u128]) -> bool {
    let (x, z) = if a.0 == b.0 {
        (a.1, b.1)
    } else if a.0 == b.1 {
        (a.1, b.0)
    } else if a.1 == b.0 {
        (a.0, b.1)
    } else if a.1 == b.1 {
        (a.0, b.0)
    } else {
        return false;
    };
    rows[x] & (1 << z) == 0
}

struct Solver {
    dense: Dense,
    required_pairs: Vec<(usize, usize)>,
    free_pairs: Vec<(usize, usize)>,
    witnesses: Vec<Witness>,
    /// Per free edge: witnesses containing it.
    free_witnesses: Vec<Vec<usize>>,
    targets: Vec<TargetState>,
    /// Per free edge: free edges it conflicts with.
    free_conflicts: Vec<Vec<usize>>,
    /// Per free edge: whether it conflicts with a required edge.
    r_conflict: Vec<bool>,
    /// Per free edge: number of chosen edges it conflicts with.
    blocked_count: Vec<u32>,
    /// Adjacency over edges still usable (required, chosen, or not yet
    /// excluded); an emission in this subtree is a subgraph of these rows.
    avail_rows: Vec<u128>,
    /// Free edges neither chosen nor excluded.
    avail_free: usize,
    /// Chosen free edges, as an ascending index sequence.
    chosen: Vec<usize>,
    /// Targets with no satisfied witness.
    uncovered: usize,
    /// Targets with no satisfied and no live witness: dead subtree.
    doomed: usize,
    lower: usize,
    upper: usize,
    component_target: usize,
}

impl Solver {
    /// Builds the solver state, pre-applying the required edges.  Returns
    /// `None` when no root can exist at all: the budget cannot fit the
    /// required edges, or two required edges conflict.
    ///
    /// # Panics
    /// On instances with more than 128 vertices.
    fn new(inst: &LabeledInstance) -> Option<Solver> {
        let g = inst.graph();
        let n = g.n();
        assert!(
            n <= Dense::MAX_VERTICES,
            "the kernel solver supports at most {} vertices, got {n}",
            Dense::MAX_VERTICES
        );
        let upper = (n + inst.k()).checked_sub(1)?;
        let dense = Dense::from_graph(g).expect("vertex count checked above");
        let rows = dense.rows().to_vec();

        let as_pair = |e: &Edge| (dense.index_of(e.u()), dense.index_of(e.v()));
        let blocked: BTreeSet<(usize, usize)> = inst.blocked().iter().map(as_pair).collect();
        let required: BTreeSet<(usize, usize)> =
            inst.required_edges().iter().map(as_pair).collect();

        let mut required_pairs = Vec::new();
        let mut free_pairs = Vec::new();
        for pair in dense.edge_indices() {
            if blocked.contains(&pair) {
                continue;
            }
            if required.contains(&pair) {
                required_pairs.push(pair);
            } else {
                free_pairs.push(pair);
            }
        }
        if required_pairs.len() > upper {
            return None;
        }

        for (i, &a) in required_pairs.iter().enumerate() {
            for &b in &required_pairs[i + 1..] {
                if conflicting(a, b, &rows) {
                    return None;
                }
            }
        }
        let f = free_pairs.len();
        let mut r_conflict = vec![false; f];
        let mut free_conflicts = vec![Vec::new(); f];
        for (i, &a) in free_pairs.iter().enumerate() {
            r_conflict[i] = required_pairs.iter().any(|&b| conflicting(a, b, &rows));
            for (dj, &b) in free_pairs[i + 1..].iter().enumerate() {
                if conflicting(a, b, &rows) {
                    let j = i + 1 + dj;
                    free_conflicts[i].push(j);
                    free_conflicts[j].push(i);
                }
            }
        }

        // Witness construction.  A usable pair is either required (counted
        // as included up front) or free (registered for updates).
        let free_index: std::collections::BTreeMap<(usize, usize), usize> = free_pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect();
        let usable = |p: &(usize, usize)| !blocked.contains(p);
        let mut witnesses: Vec<Witness> = Vec::new();
        let mut free_witnesses: Vec<Vec<usize>> = vec![Vec::new(); f];
        let mut targets: Vec<TargetState> = Vec::new();
        let mut uncovered = 0;
        let mut doomed = 0;
        for (t, (x, z)) in dense.edge_indices().into_iter().enumerate() {
            let mut live = 0;
            let mut satisfied = 0;
            let mut add = |members: &[(usize, usize)],
                           witnesses: &mut Vec<Witness>,
                           free_witnesses: &mut Vec<Vec<usize>>| {
                let mut included = 0;
                let id = witnesses.len();
                for p in members {
                    if required.contains(p) {
                        included += 1;
                    } else {
                        free_witnesses[free_index[p]].push(id);
                    }
                }
                witnesses.push(Witness {
                    target: t,
                    needed: members.len() as u8,
                    included,
                    killer: NO_KILLER,
                });
                live += 1;
                if included as usize == members.len() {
                    satisfied += 1;
                }
            };

            if usable(&(x, z)) {
                add(&[(x, z)], &mut witnesses, &mut free_witnesses);
            }
            for w in dense::bits(rows[x] & rows[z]) {
                let first = (x.min(w), x.max(w));
                let second = (w.min(z), w.max(z));
                if usable(&first) && usable(&second) {
                    add(&[first, second], &mut witnesses, &mut free_witnesses);
                }
            }
            if satisfied == 0 {
                uncovered += 1;
                if live == 0 {
                    doomed += 1;
                }
            }
            targets.push(TargetState { live, satisfied });
        }

        let mut avail_rows = vec![0u128; n];
        for &(i, j) in required_pairs.iter().chain(&free_pairs) {
            dense::set_pair(&mut avail_rows, i, j);
        }
        let component_target = dense::count_components(&rows);
        let lower = required_pairs.len().max(n - component_target.min(n));

        Some(Solver {
            dense,
            required_pairs,
            free_pairs,
            witnesses,
            free_witnesses,
            targets,
            free_conflicts,
            r_conflict,
            blocked_count: vec![0; f],
            avail_rows,
            avail_free: f,
            chosen: Vec::new(),
            uncovered,
            doomed,
            lower,
            upper,
            component_target,
        })
    }

    fn size(&self) -> usize {
        self.required_pairs.len() + self.chosen.len()
    }

    fn can_include(&self, idx: usize) -> bool {
        self.size() < self.upper && !self.r_conflict[idx] && self.blocked_count[idx] == 0
    }

    fn include(&mut self, idx: usize) {
        self.chosen.push(idx);
        self.avail_free -= 1;
        for wi in 0..self.free_witnesses[idx].len() {
            let w = self.free_witnesses[idx][wi];
            let wit = &mut self.witnesses[w];
            wit.included += 1;
            if wit.included == wit.needed {
                let ts = &mut self.targets[wit.target];
                ts.satisfied += 1;
                if ts.satisfied == 1 {
                    self.uncovered -= 1;
                }
            }
        }
        for ci in 0..self.free_conflicts[idx].len() {
            let c = self.free_conflicts[idx][ci];
            self.blocked_count[c] += 1;
        }
    }

    fn uninclude(&mut self, idx: usize) {
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some(idx));
        self.avail_free += 1;
        for wi in 0..self.free_witnesses[idx].len() {
            let w = self.free_witnesses[idx][wi];
            let wit = &mut self.witnesses[w];
            if wit.included == wit.needed {
                let ts = &mut self.targets[wit.target];
                if ts.satisfied == 1 {
                    self.uncovered += 1;
                }
                ts.satisfied -= 1;
            }
            wit.included -= 1;
        }
        for ci in 0..self.free_conflicts[idx].len() {
            let c = self.free_conflicts[idx][ci];
            self.blocked_count[c] -= 1;
        }
    }

    fn exclude(&mut self, idx: usize) {
        let (a, b) = self.free_pairs[idx];
        dense::clear_pair(&mut self.avail_rows, a, b);
        self.avail_free -= 1;
        for wi in 0..self.free_witnesses[idx].len() {
            let w = self.free_witnesses[idx][wi];
            let wit = &mut self.witnesses[w];
            if wit.killer != NO_KILLER {
                continue;
            }
            debug_assert!(wit.included < wit.needed);
            wit.killer = idx;
            let ts = &mut self.targets[wit.target];
            ts.live -= 1;
            if ts.live == 0 && ts.satisfied == 0 {
                self.doomed += 1;
            }
        }
    }

    fn unexclude(&mut self, idx: usize) {
        let (a, b) = self.free_pairs[idx];
        dense::set_pair(&mut self.avail_rows, a, b);
        self.avail_free += 1;
        for wi in 0..self.free_witnesses[idx].len() {
            let w = self.free_witnesses[idx][wi];
            let wit = &mut self.witnesses[w];
            if wit.killer != idx {
                continue;
            }
            wit.killer = NO_KILLER;
            let ts = &mut self.targets[wit.target];
            if ts.live == 0 && ts.satisfied == 0 {
                self.doomed -= 1;
            }
            ts.live += 1;
        }
    }

    fn build_root(&self) -> Graph {
        let label_edge =
            |&(i, j): &(usize, usize)| Edge::new(self.dense.label(i), self.dense.label(j));
        Graph::from_parts(
            (0..self.dense.n()).map(|i| self.dense.label(i)),
            self.required_pairs
                .iter()
                .map(label_edge)
                .chain(self.chosen.iter().map(|&idx| label_edge(&self.free_pairs[idx]))),
        )
    }

    /// Pre-applies an include/exclude pattern over the first `prefix` free
    /// edges (bit `i` of `pattern` set means edge `i` is included).  Returns
    /// `false` when the pattern is infeasible, i.e. its subtree is empty.
    fn apply_prefix(&mut self, prefix: usize, pattern: usize) -> bool {
        for idx in 0..prefix {
            if pattern & (1 << idx) != 0 {
                if !self.can_include(idx) {
                    return false;
                }
                self.include(idx);
            } else {
                self.exclude(idx);
            }
        }
        true
    }

    /// Pre-order walk over extensions of the current root by free edges with
    /// index ≥ `from`.  Returns the first valid root found together with its
    /// chosen-index sequence, and restores the entry state before returning.
    fn visit(&mut self, from: usize) -> Option<(Vec<usize>, Graph)> {
        if self.uncovered == 0 {
            let size = self.size();
            debug_assert!(size >= self.lower, "full coverage implies a spanning-size root");
            if size >= self.lower && size <= self.upper {
                return Some((self.chosen.clone(), self.build_root()));
            }
        }
        if self.doomed > 0
            || self.size() + self.avail_free < self.lower
            || dense::count_components(&self.avail_rows) > self.component_target
        {
            return None;
        }

        let mut excluded_here: Vec<usize> = Vec::new();
        let mut found = None;
        for idx in from..self.free_pairs.len() {
            if self.can_include(idx) {
                self.include(idx);
                let result = self.visit(idx + 1);
                self.uninclude(idx);
                if result.is_some() {
                    found = result;
                    break;
                }
            }
            self.exclude(idx);
            excluded_here.push(idx);
            if self.doomed > 0 || self.size() + self.avail_free < self.lower {
                break;
            }
        }
        for &idx in excluded_here.iter().rev() {
            self.unexclude(idx);
        }
        found
    }
}

/// Searches for a root of the labeled instance: a spanning subgraph of the
/// instance graph whose square is exactly the instance graph, containing
/// every required edge, avoiding every blocked edge, and using at most
/// `n - 1 + k` edges.
///
/// Candidate roots are visited in lexicographic order of their free-edge
/// index sequences and the first valid one is returned, so equal instances
/// always produce identical roots.
///
/// # Panics
/// On instances with more than 128 vertices.
pub fn solve_labeled(inst: &LabeledInstance) -> Option<Graph> {
    let mut solver = Solver::new(inst)?;
    let root = solver.visit(0).map(|(_, g)| g);
    if let Some(h) = &root {
        debug_assert_eq!(&h.compute_square(), inst.graph());
    }
    root
}

fn min_by_sequence(
    best: Option<(Vec<usize>, Graph)>,
    cand: (Vec<usize>, Graph),
) -> Option<(Vec<usize>, Graph)> {
    match best {
        None => Some(cand),
        Some(b) => {
            if cand.0 < b.0 {
                Some(cand)
            } else {
                Some(b)
            }
        }
    }
}

/// [`solve_labeled`] with the subset space split across `jobs` worker
/// threads.
///
/// The space is partitioned by the include/exclude pattern of a short prefix
/// of the free edges.  Each worker searches its patterns independently; the
/// overall winner is the candidate with the lexicographically smallest
/// chosen-index sequence, which is exactly the candidate the sequential
/// solver finds first.  The output is therefore byte-identical to
/// [`solve_labeled`] regardless of thread count or scheduling.
pub fn solve_labeled_jobs(inst: &LabeledInstance, jobs: usize) -> Option<Graph> {
    if jobs <= 1 {
        return solve_labeled(inst);
    }
    let free_count = Solver::new(inst)?.free_pairs.len();
    let mut prefix = 0;
    while prefix < free_count && prefix < 12 && (1usize << prefix) < 4 * jobs {
        prefix += 1;
    }
    let task_count = 1usize << prefix;

    let best = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|worker| {
                scope.spawn(move || {
                    let mut best: Option<(Vec<usize>, Graph)> = None;
                    let mut task = worker;
                    while task < task_count {
                        let mut solver =
                            Solver::new(inst).expect("feasibility already checked");
                        if solver.apply_prefix(prefix, task) {
                            if let Some(cand) = solver.visit(prefix) {
                                best = min_by_sequence(best, cand);
                            }
                        }
                        task += jobs;
                    }
                    best
                })
            })
            .collect();
        workers
            .into_iter()
            .map(|w| w.join().expect("solver worker panicked"))
            .fold(None, |acc, item| match item {
                Some(cand) => min_by_sequence(acc, cand),
                None => acc,
            })
    });
    best.map(|(_, g)| g)
}
