//! End-to-end tests of the command-line interface: exit codes, pinned
//! human and JSON output, emitted artifacts, and determinism.

use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;

use sqroot::graph::{Edge, Graph};
use sqroot_cli::format::{parse_graph, write_graph};
use sqroot_cli::{run, EXIT_INTERNAL, EXIT_NO, EXIT_USAGE, EXIT_YES};

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out: Vec<u8> = Vec::new();
    let argv = std::iter::once("sqroot").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).expect("output is UTF-8"))
}

/// A per-test scratch directory under the target tree.
fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::create_dir_all(&dir).expect("create scratch dir");
    dir
}

fn write_fixture(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    fs::write(&path, write_graph(g)).expect("write fixture");
    path.to_str().expect("utf-8 path").to_string()
}

fn c7_square(dir: &Path) -> String {
    write_fixture(dir, "c7sq.gr", &Graph::cycle_graph(7).compute_square())
}

#[test]
fn square_prints_the_canonical_square() {
    let dir = scratch("square");
    let p3 = write_fixture(&dir, "p3.gr", &Graph::path_graph(3));
    let (code, out) = run_cli(&["square", &p3]);
    assert_eq!(code, EXIT_YES);
    assert_eq!(out, "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
}

#[test]
fn verify_distinguishes_roots_from_non_roots() {
    let dir = scratch("verify");
    let root = write_fixture(&dir, "c7.gr", &Graph::cycle_graph(7));
    let square = c7_square(&dir);
    let path = write_fixture(&dir, "p7.gr", &Graph::path_graph(7));
    let small = write_fixture(&dir, "p3.gr", &Graph::path_graph(3));

    assert_eq!(run_cli(&["verify", &root, &square]).0, EXIT_YES);
    assert_eq!(run_cli(&["verify", &path, &square]).0, EXIT_NO);
    // Different vertex sets: a well-posed "no", not a usage error.
    let (code, out) = run_cli(&["verify", &small, &square]);
    assert_eq!(code, EXIT_NO);
    assert!(out.contains("different vertex sets"), "got: {out}");
}

#[test]
fn minroot_exit_codes_track_the_budget() {
    let dir = scratch("minroot-budget");
    let k4 = write_fixture(&dir, "k4.gr", &Graph::complete_graph(4));
    let square = c7_square(&dir);

    let (code, out) = run_cli(&["minroot", &k4, "-k", "0"]);
    assert_eq!(code, EXIT_YES);
    assert!(out.contains("square root with 3 edges"), "got: {out}");

    assert_eq!(run_cli(&["minroot", &square, "-k", "0"]).0, EXIT_NO);
    assert_eq!(run_cli(&["minroot", &square, "-k", "1"]).0, EXIT_YES);
}

#[test]
fn minroot_emits_verifiable_artifacts() {
    let dir = scratch("minroot-emit");
    let square = c7_square(&dir);
    let root_path = dir.join("root.gr");
    let kernel_path = dir.join("kernel.gr");
    let dot_path = dir.join("root.dot");

    let (code, _) = run_cli(&[
        "minroot",
        &square,
        "-k",
        "1",
        "--emit-root",
        root_path.to_str().unwrap(),
        "--emit-kernel",
        kernel_path.to_str().unwrap(),
        "--emit-dot",
        dot_path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_YES);

    // The emitted root passes the tool's own verifier.
    let (code, out) = run_cli(&["verify", root_path.to_str().unwrap(), &square]);
    assert_eq!(code, EXIT_YES, "emitted root must verify: {out}");

    // The kernel is the 6-vertex contraction, relabeled with a comment map.
    let kernel = parse_graph(&fs::read_to_string(&kernel_path).unwrap()).unwrap();
    assert_eq!(kernel.n(), 6);
    let kernel_text = fs::read_to_string(&kernel_path).unwrap();
    assert!(kernel_text.starts_with("c vertex 1 was 2\n"), "{kernel_text}");

    let dot = fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("graph {\n") && dot.ends_with("}\n"), "{dot}");
    assert_eq!(dot.matches(" -- ").count(), 7);
}

#[test]
fn maxroot_modes_and_exit_codes() {
    let dir = scratch("maxroot");
    let square = c7_square(&dir);
    let p3 = write_fixture(&dir, "p3.gr", &Graph::path_graph(3));

    let (code, out) = run_cli(&["maxroot", &square, "--exact"]);
    assert_eq!(code, EXIT_YES);
    assert!(out.contains("7 edges (7 deletions)"), "got: {out}");

    assert_eq!(run_cli(&["maxroot", &p3, "--exact"]).0, EXIT_NO);
    assert_eq!(run_cli(&["maxroot", &square, "--fpt", "-k", "6"]).0, EXIT_NO);
    assert_eq!(run_cli(&["maxroot", &square, "--fpt", "-k", "7"]).0, EXIT_YES);

    // A complete graph is its own root: zero deletions.
    let k5 = write_fixture(&dir, "k5.gr", &Graph::complete_graph(5));
    let (code, out) = run_cli(&["maxroot", &k5, "--fpt", "-k", "0"]);
    assert_eq!(code, EXIT_YES);
    assert!(out.contains("10 edges (0 deletions)"), "got: {out}");
}

#[test]
fn oracle_reference_answers() {
    let dir = scratch("oracle");
    let square = c7_square(&dir);

    assert_eq!(run_cli(&["oracle", &square, "--min", "-k", "0"]).0, EXIT_NO);
    let (code, out) = run_cli(&["oracle", &square, "--min", "-k", "1"]);
    assert_eq!(code, EXIT_YES);
    assert!(out.contains("7 edges"), "got: {out}");

    let (code, out) = run_cli(&["oracle", &square, "--max"]);
    assert_eq!(code, EXIT_YES);
    assert!(out.contains("7 edges (7 deletions)"), "got: {out}");

    // The reference path refuses oversized inputs instead of hanging.
    let big = write_fixture(&dir, "k8.gr", &Graph::complete_graph(8));
    let (code, out) = run_cli(&["oracle", &big, "--max"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("at most 24 edges"), "got: {out}");
}

#[test]
fn json_output_is_schema_stable() {
    let dir = scratch("json");
    let square = c7_square(&dir);
    let p3 = write_fixture(&dir, "p3.gr", &Graph::path_graph(3));

    let cases: &[(&[&str], &str)] = &[
        (
            &["minroot", &square, "-k", "1", "--json"],
            r#"{"answer":"yes","edges":7,"deletions":null,"kernel_vertices":6,"rule_counts":{"trim":0,"path":1,"simplicial":0}}"#,
        ),
        (
            &["minroot", &square, "-k", "0", "--json"],
            r#"{"answer":"no","edges":null,"deletions":null,"kernel_vertices":null,"rule_counts":{"trim":0,"path":0,"simplicial":0}}"#,
        ),
        (
            &["maxroot", &square, "--exact", "--json"],
            r#"{"answer":"yes","edges":7,"deletions":7,"kernel_vertices":null,"rule_counts":null}"#,
        ),
        (
            &["maxroot", &p3, "--exact", "--json"],
            r#"{"answer":"no","edges":null,"deletions":null,"kernel_vertices":null,"rule_counts":null}"#,
        ),
        (
            &["oracle", &square, "--min", "-k", "1", "--json"],
            r#"{"answer":"yes","edges":7,"deletions":null,"kernel_vertices":null,"rule_counts":null}"#,
        ),
        (
            &["square", &p3, "--json"],
            r#"{"answer":"yes","edges":3,"deletions":null,"kernel_vertices":null,"rule_counts":null}"#,
        ),
    ];
    for (args, want) in cases {
        let (_, out) = run_cli(args);
        assert_eq!(out.trim_end(), *want, "args: {args:?}");
        // Well-formed JSON with exactly the five fixed keys.
        let value: serde_json::Value = serde_json::from_str(out.trim_end()).unwrap();
        let object = value.as_object().unwrap();
        assert_eq!(object.len(), 5);
        for key in ["answer", "edges", "deletions", "kernel_vertices", "rule_counts"] {
            assert!(object.contains_key(key), "missing {key} in {out}");
        }
    }
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = scratch("errors");
    let square = c7_square(&dir);

    // Unknown flag, missing required mode, missing -k.
    assert_eq!(run_cli(&["minroot", &square, "--bogus"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["maxroot", &square]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["maxroot", &square, "--fpt"]).0, EXIT_USAGE);
    assert_eq!(run_cli(&["oracle", &square]).0, EXIT_USAGE);

    // Missing file.
    let missing = dir.join("missing.gr");
    let (code, out) = run_cli(&["square", missing.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("cannot read"), "got: {out}");

    // Malformed graph files carry line numbers.
    let bad = dir.join("bad.gr");
    fs::write(&bad, "p edge 2 1\ne 1 1\n").unwrap();
    let (code, out) = run_cli(&["square", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("line 2: self-loop at vertex 1"), "got: {out}");

    // Disconnected input is rejected where connectivity is required.
    let two = dir.join("two.gr");
    fs::write(&two, "p edge 4 2\ne 1 2\ne 3 4\n").unwrap();
    let (code, out) = run_cli(&["minroot", two.to_str().unwrap(), "-k", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("disconnected"), "got: {out}");

    // Exit codes 0..=3 are all distinct constants.
    assert_eq!(
        [EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INTERNAL],
        [0, 1, 2, 3]
    );
}

#[test]
fn help_and_version_are_successful_exits() {
    assert_eq!(run_cli(&["--help"]).0, EXIT_YES);
    assert_eq!(run_cli(&["--version"]).0, EXIT_YES);
    assert_eq!(run_cli(&["minroot", "--help"]).0, EXIT_YES);
}

#[test]
fn gen_families_write_canonical_reparseable_files() {
    let dir = scratch("gen");
    let cases: &[(&[&str], &str)] = &[
        (&["gen", "cycle-square", "7"], "cyc.gr"),
        (&["gen", "complete", "5"], "k5.gr"),
        (&["gen", "union-two-cliques", "4"], "utc.gr"),
        (&["gen", "tree-plus-k", "12", "2", "--seed", "9"], "tpk.gr"),
        (
            &["gen", "random-connected", "10", "0.3", "--seed", "9"],
            "rc.gr",
        ),
    ];
    for (args, name) in cases {
        let path = dir.join(name);
        let mut argv: Vec<&str> = args.to_vec();
        argv.push("-o");
        argv.push(path.to_str().unwrap());
        let (code, out) = run_cli(&argv);
        assert_eq!(code, EXIT_YES, "{args:?}: {out}");

        let text = fs::read_to_string(&path).unwrap();
        let g = parse_graph(&text).unwrap();
        assert_eq!(write_graph(&g), text, "canonical writer round trip");
        assert!(g.connectivity_profile().is_connected);
    }

    // Bad parameters are usage errors.
    assert_eq!(
        run_cli(&["gen", "cycle-square", "-o", "/tmp/x.gr"]).0,
        EXIT_USAGE
    );
    let (code, _) = run_cli(&[
        "gen",
        "tree-plus-k",
        "12",
        "-o",
        dir.join("short.gr").to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_USAGE);
    let (code, out) = run_cli(&[
        "gen",
        "cycle-square",
        "2",
        "-o",
        dir.join("tiny.gr").to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.starts_with("error:"), "got: {out}");
}

#[test]
fn generation_is_seed_deterministic() {
    let dir = scratch("gen-seed");
    let a = dir.join("a.gr");
    let b = dir.join("b.gr");
    let c = dir.join("c.gr");
    for (path, seed) in [(&a, "42"), (&b, "42"), (&c, "43")] {
        let (code, _) = run_cli(&[
            "gen",
            "tree-plus-k",
            "16",
            "2",
            "--seed",
            seed,
            "-o",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code, EXIT_YES);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn jobs_flag_never_changes_output() {
    let dir = scratch("jobs");
    let square = c7_square(&dir);
    let planted = dir.join("planted.gr");
    let (code, _) = run_cli(&[
        "gen",
        "tree-plus-k",
        "20",
        "2",
        "--seed",
        "11",
        "-o",
        planted.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_YES);

    for input in [square.as_str(), planted.to_str().unwrap()] {
        for k in ["1", "2"] {
            let base = run_cli(&["minroot", input, "-k", k, "--json"]);
            for jobs in ["2", "4", "8"] {
                let with_jobs = run_cli(&["minroot", input, "-k", k, "--json", "--jobs", jobs]);
                assert_eq!(with_jobs, base, "jobs {jobs} diverged on {input}");
            }
        }
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = scratch("rerun");
    let square = c7_square(&dir);
    for args in [
        vec!["square", square.as_str()],
        vec!["minroot", square.as_str(), "-k", "1"],
        vec!["maxroot", square.as_str(), "--exact"],
        vec!["oracle", square.as_str(), "--max"],
    ] {
        let first = run_cli(&args);
        let second = run_cli(&args);
        assert_eq!(first, second, "rerun diverged for {args:?}");
    }
}

proptest! {
    /// `parse(write(g)) == g` for graphs on label set `1..=n`.
    #[test]
    fn parse_write_round_trip(
        n in 0..9u32,
        mask in prop::collection::vec(any::<bool>(), 36),
    ) {
        let pairs: Vec<Edge> = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| Edge::new(u, v)))
            .collect();
        let edges = pairs
            .iter()
            .zip(&mask)
            .filter_map(|(e, &keep)| keep.then_some(*e));
        let g = Graph::from_parts(1..=n, edges);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }
}
