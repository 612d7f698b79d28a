//! Property tests: structural invariants of squaring, the root
//! characterization, the labeled kernel search, and the seeded generators.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use sqroot::gen::{gen_random_connected, gen_tree_plus_k};
use sqroot::graph::{is_square_root, Edge, Graph, Vertex};
use sqroot::maxroot::{build_aux_graph, check_root_charact};
use sqroot::minroot::{min_square_root, solve_labeled, EdgeOrigin, LabeledInstance};
use sqroot::oracle::{oracle_enumerate_roots, OracleQuery};

fn all_pairs(n: u32) -> Vec<Edge> {
    (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| Edge::new(u, v)))
        .collect()
}

fn graph_from_mask(n: u32, mask: &[bool]) -> Graph {
    let edges = all_pairs(n)
        .into_iter()
        .zip(mask)
        .filter_map(|(e, &keep)| keep.then_some(e));
    Graph::from_parts(1..=n, edges)
}

fn arb_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let len = (n * (n - 1) / 2) as usize;
        prop::collection::vec(any::<bool>(), len).prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn arb_connected_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.connectivity_profile().is_connected)
}

/// A connected host plus a spanning subgraph chosen by an edge mask.
fn arb_host_and_spanning_subgraph(max_n: u32) -> impl Strategy<Value = (Graph, Graph)> {
    arb_connected_graph(max_n).prop_flat_map(|g| {
        let edges = g.edges();
        let vertices: Vec<Vertex> = g.vertices().collect();
        prop::collection::vec(any::<bool>(), edges.len()).prop_map(move |mask| {
            let kept = edges
                .iter()
                .zip(&mask)
                .filter_map(|(e, &keep)| keep.then_some(*e));
            (g.clone(), Graph::from_parts(vertices.clone(), kept))
        })
    })
}

/// A connected instance graph with a budget and disjoint required/blocked
/// edge labels (one trit per edge: free, required, or blocked).
fn arb_labeled_instance(max_n: u32) -> impl Strategy<Value = LabeledInstance> {
    (arb_connected_graph(max_n), 0..=2usize).prop_flat_map(|(g, k)| {
        let edges = g.edges();
        prop::collection::vec(0..3u8, edges.len()).prop_map(move |trits| {
            let mut required: BTreeMap<Edge, EdgeOrigin> = BTreeMap::new();
            let mut blocked: BTreeSet<Edge> = BTreeSet::new();
            for (e, t) in edges.iter().zip(&trits) {
                match t {
                    1 => {
                        required.insert(*e, EdgeOrigin::Trim);
                    }
                    2 => {
                        blocked.insert(*e);
                    }
                    _ => {}
                }
            }
            LabeledInstance::with_labels(g.clone(), k, required, blocked)
                .expect("labels are on edges and disjoint by construction")
        })
    })
}

proptest! {
    #[test]
    fn squaring_only_adds_edges(g in arb_graph(8)) {
        let square = g.compute_square();
        for e in g.edges() {
            prop_assert!(square.has_edge(e));
        }
    }

    #[test]
    fn squaring_preserves_the_component_partition(g in arb_graph(8)) {
        prop_assert_eq!(g.components(), g.compute_square().components());
    }

    #[test]
    fn every_graph_is_a_root_of_its_own_square(g in arb_graph(8)) {
        prop_assert_eq!(is_square_root(&g, &g.compute_square()), Ok(true));
    }

    #[test]
    fn squaring_is_monotone_under_edge_insertion(
        g in arb_graph(8),
        choice in any::<prop::sample::Index>(),
    ) {
        let vertices: Vec<Vertex> = g.vertices().collect();
        let non_edges: Vec<Edge> = match vertices.len() {
            0 | 1 => Vec::new(),
            n_len => {
                let n = vertices[n_len - 1];
                all_pairs(n)
                    .into_iter()
                    .filter(|e| {
                        g.vertex_set().contains(&e.u())
                            && g.vertex_set().contains(&e.v())
                            && !g.has_edge(*e)
                    })
                    .collect()
            }
        };
        if !non_edges.is_empty() {
            let mut bigger = g.clone();
            bigger.add_edge(*choice.get(&non_edges));
            let square = g.compute_square();
            let bigger_square = bigger.compute_square();
            for e in square.edges() {
                prop_assert!(bigger_square.has_edge(e));
            }
        }
    }

    #[test]
    fn conflict_characterization_matches_direct_squaring(
        (g, h) in arb_host_and_spanning_subgraph(7)
    ) {
        let aux = build_aux_graph(&g);
        prop_assert_eq!(
            check_root_charact(&h, &g, &aux).unwrap(),
            is_square_root(&h, &g).unwrap()
        );
    }

    #[test]
    fn labeled_search_agrees_with_the_constrained_oracle(
        inst in arb_labeled_instance(6)
    ) {
        let g = inst.graph().clone();
        let budget = g.n() - 1 + inst.k();
        let query = OracleQuery {
            min_edges: 0,
            max_edges: budget.min(g.m()),
            required: inst.required_edges(),
            blocked: inst.blocked().clone(),
            graph: g.clone(),
        };
        let reference = oracle_enumerate_roots(&query).unwrap();
        let found = solve_labeled(&inst);
        prop_assert_eq!(
            found.is_some(),
            !reference.is_empty(),
            "solver and oracle disagree on {:?} with R = {:?}, B = {:?}, k = {}",
            g.edges(),
            inst.required_edges(),
            inst.blocked(),
            inst.k()
        );
        if let Some(root) = found {
            prop_assert!(root.m() <= budget);
            prop_assert_eq!(is_square_root(&root, &g), Ok(true));
            for e in inst.required_edges() {
                prop_assert!(root.has_edge(e));
            }
            for e in inst.blocked() {
                prop_assert!(!root.has_edge(*e));
            }
        }
    }

    #[test]
    fn min_root_answers_always_verify(
        g in arb_connected_graph(6),
        k in 0..=2usize,
    ) {
        if let Some(solution) = min_square_root(&g, k).unwrap() {
            prop_assert!(solution.edge_count <= g.n() - 1 + k);
            prop_assert_eq!(is_square_root(&solution.root, &g), Ok(true));
            if let Some(kernel_root) = &solution.kernel_root {
                prop_assert!(kernel_root.m() <= solution.edge_count);
            }
        }
    }

    #[test]
    fn tree_plus_k_generation_is_reproducible_and_sound(
        n in 4..=24usize,
        k in 0..=3usize,
        seed in any::<u64>(),
    ) {
        let a = gen_tree_plus_k(n, k, seed).unwrap();
        let b = gen_tree_plus_k(n, k, seed).unwrap();
        prop_assert_eq!(&a.graph, &b.graph);
        prop_assert_eq!(&a.root, &b.root);
        prop_assert_eq!(a.root.m(), n - 1 + k);
        prop_assert_eq!(a.root.compute_square(), a.graph.clone());
        prop_assert!(a.root.connectivity_profile().is_connected);
    }

    #[test]
    fn random_connected_generation_is_reproducible_and_connected(
        n in 1..=24usize,
        p in 0.0..=1.0f64,
        seed in any::<u64>(),
    ) {
        let a = gen_random_connected(n, p, seed).unwrap();
        let b = gen_random_connected(n, p, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.connectivity_profile().is_connected);
        prop_assert_eq!(a.n(), n);
    }
}
