//! Cross-module integration: the staged minimum-root pipeline and the
//! budgeted maximum-root solvers against the exhaustive reference oracle,
//! plus planted-instance round trips.

use sqroot::gen::{gen_known_square, gen_tree_plus_k, KnownFamily};
use sqroot::graph::{is_square_root, Edge, Graph, Vertex};
use sqroot::minroot::{kernelize, min_square_root, KernelOutcome, ReductionStep};
use sqroot::maxroot::{max_root_exact, max_root_fpt};
use sqroot::oracle::{oracle_max_root, oracle_min_root};
use sqroot::treeroot::has_tree_square_root;

/// Every connected graph on vertices `1..=n`, by edge-subset enumeration.
fn all_connected_graphs(n: u32) -> Vec<Graph> {
    let pairs: Vec<Edge> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| Edge::new(u, v)))
        .collect();
    let mut graphs = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e);
        let g = Graph::from_parts(1..=n, edges);
        if g.connectivity_profile().is_connected {
            graphs.push(g);
        }
    }
    graphs
}

#[test]
fn connected_catalog_sizes_are_the_known_counts() {
    assert_eq!(all_connected_graphs(1).len(), 1);
    assert_eq!(all_connected_graphs(2).len(), 1);
    assert_eq!(all_connected_graphs(3).len(), 4);
    assert_eq!(all_connected_graphs(4).len(), 38);
    assert_eq!(all_connected_graphs(5).len(), 728);
}

#[test]
fn min_pipeline_matches_oracle_on_all_connected_graphs_up_to_n5() {
    for n in 1..=5 {
        for g in all_connected_graphs(n) {
            for k in 0..=2usize {
                let expected = oracle_min_root(&g, k).unwrap();
                let got = min_square_root(&g, k).unwrap();
                assert_eq!(
                    got.is_some(),
                    expected.is_some(),
                    "presence mismatch on {:?} at k = {k}",
                    g.edges()
                );
                if let Some(solution) = got {
                    assert_eq!(solution.edge_count, solution.root.m());
                    assert!(solution.edge_count <= g.n() - 1 + k);
                    assert_eq!(is_square_root(&solution.root, &g), Ok(true));
                }
            }
        }
    }
}

#[test]
fn max_solvers_match_oracle_on_all_connected_graphs_up_to_n5() {
    for n in 1..=5 {
        for g in all_connected_graphs(n) {
            let reference = oracle_max_root(&g).unwrap();

            let exact = max_root_exact(&g).unwrap();
            match (&reference, &exact) {
                (Some(want), Some(got)) => {
                    assert_eq!(got.m(), want.m(), "max size mismatch on {:?}", g.edges());
                    assert_eq!(is_square_root(got, &g), Ok(true));
                }
                (None, None) => {}
                other => panic!("presence mismatch on {:?}: {other:?}", g.edges()),
            }

            // The budgeted search agrees with the reference at the critical
            // budget (minimum deletions) and just below it.
            match &reference {
                Some(want) => {
                    let deletions = g.m() - want.m();
                    let at = max_root_fpt(&g, deletions).unwrap();
                    let root = at.expect("root must appear at its own deletion count");
                    assert_eq!(root.m(), want.m());
                    assert_eq!(is_square_root(&root, &g), Ok(true));
                    if deletions > 0 {
                        assert!(max_root_fpt(&g, deletions - 1).unwrap().is_none());
                    }
                }
                None => {
                    // No root at all: no budget can help; check a generous one.
                    assert!(max_root_fpt(&g, g.m()).unwrap().is_none());
                }
            }
        }
    }
}

#[test]
fn tree_square_recognition_matches_the_zero_budget_oracle() {
    for n in 1..=5 {
        for g in all_connected_graphs(n) {
            let tree = has_tree_square_root(&g).unwrap();
            let reference = oracle_min_root(&g, 0).unwrap();
            assert_eq!(
                tree.is_some(),
                reference.is_some(),
                "tree-root disagreement on {:?}",
                g.edges()
            );
            if let Some(t) = tree {
                assert!(t.is_tree());
                assert_eq!(is_square_root(&t, &g), Ok(true));
            }
        }
    }
}

#[test]
fn planted_cycle_squares_round_trip_at_their_true_budget() {
    for n in 5..=12 {
        let planted = gen_known_square(KnownFamily::CycleSquare, n).unwrap();
        let solution = min_square_root(&planted.graph, planted.k_true)
            .unwrap()
            .expect("planted cycle root fits its own budget");
        assert_eq!(is_square_root(&solution.root, &planted.graph), Ok(true));
        assert!(solution.edge_count <= planted.graph.n() - 1 + planted.k_true);
    }
}

#[test]
fn planted_known_families_with_tree_roots_solve_at_zero_budget() {
    for (family, size) in [
        (KnownFamily::Complete, 6),
        (KnownFamily::UnionTwoCliques, 4),
        (KnownFamily::UnionTwoCliques, 5),
    ] {
        let planted = gen_known_square(family, size).unwrap();
        assert_eq!(planted.k_true, 0);
        let solution = min_square_root(&planted.graph, 0)
            .unwrap()
            .expect("tree-rooted family must solve with zero slack");
        assert!(solution.root.is_tree());
        assert_eq!(is_square_root(&solution.root, &planted.graph), Ok(true));
    }
}

#[test]
fn planted_tree_plus_k_instances_round_trip() {
    for seed in 0..25u64 {
        let n = 8 + (seed as usize % 4) * 6; // 8, 14, 20, 26
        let k = seed as usize % 3;
        let planted = gen_tree_plus_k(n, k, seed).unwrap();
        assert_eq!(planted.root.m(), n - 1 + k);
        let solution = min_square_root(&planted.graph, k)
            .unwrap()
            .unwrap_or_else(|| panic!("planted instance (n = {n}, k = {k}, seed = {seed})"));
        assert_eq!(is_square_root(&solution.root, &planted.graph), Ok(true));
        assert!(solution.edge_count <= planted.graph.n() - 1 + k);
    }
}

#[test]
fn reduction_traces_account_for_every_deleted_vertex() {
    // Vertices deleted across all steps plus kernel vertices must equal the
    // input count, and each record must name vertices that were live when
    // its step fired.
    let fixtures: Vec<(Graph, usize)> = vec![
        (Graph::cycle_graph(7).compute_square(), 1),
        (Graph::cycle_graph(12).compute_square(), 1),
        (
            {
                let mut h = Graph::cycle_graph(5);
                for leaf in 6..=14 {
                    h.add_vertex(leaf);
                    h.add_edge(Edge::new(1, leaf));
                }
                h.compute_square()
            },
            1,
        ),
        (gen_tree_plus_k(18, 2, 7).unwrap().graph, 2),
    ];
    for (g, k) in fixtures {
        let KernelOutcome::Kernel { instance, trace } = kernelize(&g, k).unwrap() else {
            panic!("fixtures all kernelize");
        };
        let mut deleted: Vec<Vertex> = Vec::new();
        for step in &trace.steps {
            match step {
                ReductionStep::Trim(rec) => deleted.extend(&rec.deleted),
                ReductionStep::Path(rec) => {
                    deleted.push(rec.u2);
                    deleted.extend(&rec.deleted_tail);
                }
                ReductionStep::Simplicial(rec) => {
                    for class in &rec.classes {
                        deleted.extend(&class.removed);
                    }
                }
            }
        }
        let before = deleted.len();
        deleted.sort_unstable();
        deleted.dedup();
        assert_eq!(deleted.len(), before, "no vertex may be deleted twice");
        assert_eq!(deleted.len() + instance.graph().n(), g.n());
        for v in deleted {
            assert!(g.vertex_set().contains(&v));
            assert!(!instance.graph().vertex_set().contains(&v));
        }
    }
}
