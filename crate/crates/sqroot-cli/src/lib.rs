//! Command-line front end for the square-root solvers.
//!
//! Subcommands: `square` (compute a square), `verify` (check a candidate
//! root), `minroot` (root with at most `n - 1 + k` edges), `maxroot` (root
//! with at most `k` edge deletions, or the exact maximum), `oracle`
//! (exhaustive reference search), and `gen` (seeded test families).
//!
//! Exit codes are part of the interface so shell harnesses can assert
//! answers without parsing text: `0` yes/success, `1` well-posed but
//! negative answer, `2` usage or input error, `3` internal invariant
//! failure. The `--json` flag replaces the human summary with a single
//! JSON object with the fixed key set `answer`, `edges`, `deletions`,
//! `kernel_vertices`, `rule_counts` (keys never dropped, `null` when not
//! applicable). All output is deterministic; `--jobs` changes only how the
//! budgeted search is scheduled, never what it prints.

pub mod format;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sqroot::gen::{gen_known_square, gen_random_connected, gen_tree_plus_k, KnownFamily};
use sqroot::graph::{is_square_root, Graph, GraphError};
use sqroot::maxroot::{max_root_exact, max_root_fpt, MaxRootError};
use sqroot::minroot::{kernelize, min_square_root_report_jobs, KernelOutcome, PipelineError};
use sqroot::oracle::{oracle_max_root, oracle_min_root, OracleError, EDGE_CAP};

/// Exit code: positive answer or successful generation.
pub const EXIT_YES: i32 = 0;
/// Exit code: well-posed instance, negative answer.
pub const EXIT_NO: i32 = 1;
/// Exit code: usage, parse, or input error.
pub const EXIT_USAGE: i32 = 2;
/// Exit code: internal invariant failure.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "sqroot",
    version,
    about = "Square roots of graphs under edge budgets",
    color = clap::ColorChoice::Never
)]
struct Cli {
    /// Print a single JSON result object instead of a human summary.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the budgeted root search. Output is byte-identical
    /// for every value.
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the square of a graph (vertices adjacent iff at distance <= 2).
    Square {
        /// Input graph file.
        input: PathBuf,
    },
    /// Check whether ROOT squares to GRAPH.
    Verify {
        /// Candidate root file.
        root: PathBuf,
        /// Target graph file.
        graph: PathBuf,
    },
    /// Find a square root with at most n - 1 + k edges.
    Minroot {
        /// Input graph file.
        input: PathBuf,
        /// Edge budget slack beyond a spanning tree.
        #[arg(short)]
        k: usize,
        /// Write the found root to FILE.
        #[arg(long, value_name = "FILE")]
        emit_root: Option<PathBuf>,
        /// Write the reduced kernel graph to FILE (when reduction ran).
        #[arg(long, value_name = "FILE")]
        emit_kernel: Option<PathBuf>,
        /// Write the found root in DOT format to FILE.
        #[arg(long, value_name = "FILE")]
        emit_dot: Option<PathBuf>,
    },
    /// Find a square root obtained by deleting at most k edges, or the
    /// maximum root over all deletion counts.
    #[command(group(ArgGroup::new("mode").required(true).args(["fpt", "exact"])))]
    Maxroot {
        /// Input graph file.
        input: PathBuf,
        /// Budgeted search: delete at most k edges.
        #[arg(long, requires = "k")]
        fpt: bool,
        /// Deletion budget for --fpt.
        #[arg(short, conflicts_with = "exact")]
        k: Option<usize>,
        /// Exact maximum root.
        #[arg(long)]
        exact: bool,
        /// Write the found root to FILE.
        #[arg(long, value_name = "FILE")]
        emit_root: Option<PathBuf>,
        /// Write the found root in DOT format to FILE.
        #[arg(long, value_name = "FILE")]
        emit_dot: Option<PathBuf>,
    },
    /// Solve by exhaustive reference enumeration (small graphs only).
    #[command(group(ArgGroup::new("mode").required(true).args(["min", "max"])))]
    Oracle {
        /// Input graph file.
        input: PathBuf,
        /// Minimum root under edge budget n - 1 + k.
        #[arg(long, requires = "k")]
        min: bool,
        /// Budget slack for --min.
        #[arg(short, conflicts_with = "max")]
        k: Option<usize>,
        /// Maximum root over all deletion counts.
        #[arg(long)]
        max: bool,
    },
    /// Generate a graph from a named family and write it to a file.
    Gen {
        /// Graph family.
        #[arg(value_enum)]
        family: Family,
        /// Family parameters: cycle-square <n>, complete <n>,
        /// union-two-cliques <s>, tree-plus-k <n> <k>,
        /// random-connected <n> <p>.
        params: Vec<String>,
        /// PRNG seed for the randomized families.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file.
        #[arg(short)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    /// Square of the cycle C_n.
    CycleSquare,
    /// Complete graph K_n.
    Complete,
    /// Squares of two stars sharing their center edge: two s-cliques glued
    /// on two vertices.
    UnionTwoCliques,
    /// Square of a random tree on n vertices plus k extra edges.
    TreePlusK,
    /// Random connected graph: spanning tree plus density-p extras.
    RandomConnected,
}

/// The `--json` result object. Key order is fixed; inapplicable fields are
/// serialized as `null`, never omitted.
#[derive(Serialize)]
struct JsonReport {
    answer: &'static str,
    edges: Option<usize>,
    deletions: Option<usize>,
    kernel_vertices: Option<usize>,
    rule_counts: Option<JsonRuleCounts>,
}

#[derive(Serialize)]
struct JsonRuleCounts {
    trim: usize,
    path: usize,
    simplicial: usize,
}

impl JsonReport {
    fn new(answer: &'static str) -> Self {
        JsonReport {
            answer,
            edges: None,
            deletions: None,
            kernel_vertices: None,
            rule_counts: None,
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing all output
/// to `out`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = write!(out, "{}", err.render());
            // --help and --version are successful exits; everything else
            // clap rejects is a usage error.
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_YES };
        }
    };
    let json = cli.json;
    match cli.command {
        Command::Square { input } => cmd_square(&input, json, out),
        Command::Verify { root, graph } => cmd_verify(&root, &graph, json, out),
        Command::Minroot {
            input,
            k,
            emit_root,
            emit_kernel,
            emit_dot,
        } => cmd_minroot(
            &input,
            k,
            cli.jobs,
            emit_root.as_deref(),
            emit_kernel.as_deref(),
            emit_dot.as_deref(),
            json,
            out,
        ),
        Command::Maxroot {
            input,
            fpt,
            k,
            exact: _,
            emit_root,
            emit_dot,
        } => cmd_maxroot(
            &input,
            fpt.then(|| k.expect("clap enforces --fpt requires -k")),
            emit_root.as_deref(),
            emit_dot.as_deref(),
            json,
            out,
        ),
        Command::Oracle {
            input,
            min,
            k,
            max: _,
        } => cmd_oracle(
            &input,
            min.then(|| k.expect("clap enforces --min requires -k")),
            json,
            out,
        ),
        Command::Gen {
            family,
            params,
            seed,
            output,
        } => cmd_gen(family, &params, seed, &output, json, out),
    }
}

fn emit(out: &mut dyn Write, text: impl AsRef<str>) {
    let _ = writeln!(out, "{}", text.as_ref());
}

fn finish(json: bool, out: &mut dyn Write, report: JsonReport, human: String, code: i32) -> i32 {
    if json {
        let line = serde_json::to_string(&report).expect("report serializes");
        emit(out, line);
    } else {
        emit(out, human);
    }
    code
}

fn read_graph(path: &Path, out: &mut dyn Write) -> Result<Graph, i32> {
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            emit(out, format!("error: cannot read {}: {err}", path.display()));
            return Err(EXIT_USAGE);
        }
    };
    format::parse_graph(&text).map_err(|err| {
        emit(out, format!("error: {}: {err}", path.display()));
        EXIT_USAGE
    })
}

fn write_file(path: &Path, text: &str, out: &mut dyn Write) -> Result<(), i32> {
    fs::write(path, text).map_err(|err| {
        emit(out, format!("error: cannot write {}: {err}", path.display()));
        EXIT_USAGE
    })
}

fn cmd_square(input: &Path, json: bool, out: &mut dyn Write) -> i32 {
    let g = match read_graph(input, out) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let square = g.compute_square();
    if json {
        let report = JsonReport {
            edges: Some(square.m()),
            ..JsonReport::new("yes")
        };
        return finish(json, out, report, String::new(), EXIT_YES);
    }
    let _ = write!(out, "{}", format::write_graph(&square));
    EXIT_YES
}

fn cmd_verify(root: &Path, graph: &Path, json: bool, out: &mut dyn Write) -> i32 {
    let (h, g) = match (read_graph(root, out), read_graph(graph, out)) {
        (Ok(h), Ok(g)) => (h, g),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    match is_square_root(&h, &g) {
        Ok(true) => finish(
            json,
            out,
            JsonReport {
                edges: Some(h.m()),
                ..JsonReport::new("yes")
            },
            format!(
                "yes: the candidate ({} edges) is a square root of the target",
                h.m()
            ),
            EXIT_YES,
        ),
        Ok(false) => finish(
            json,
            out,
            JsonReport::new("no"),
            "no: the candidate does not square to the target".to_string(),
            EXIT_NO,
        ),
        Err(GraphError::VertexSetMismatch { .. }) => finish(
            json,
            out,
            JsonReport::new("no"),
            "no: the candidate and the target have different vertex sets".to_string(),
            EXIT_NO,
        ),
        Err(err) => {
            emit(out, format!("internal error: {err}"));
            EXIT_INTERNAL
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_minroot(
    input: &Path,
    k: usize,
    jobs: usize,
    emit_root: Option<&Path>,
    emit_kernel: Option<&Path>,
    emit_dot: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> i32 {
    let g = match read_graph(input, out) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let report = match min_square_root_report_jobs(&g, k, jobs) {
        Ok(report) => report,
        Err(PipelineError::Disconnected { components }) => {
            emit(
                out,
                format!(
                    "error: input graph is disconnected ({components} components); \
                     minroot requires a connected graph"
                ),
            );
            return EXIT_USAGE;
        }
        Err(err) => {
            emit(out, format!("internal error: {err}"));
            return EXIT_INTERNAL;
        }
    };

    if let Some(path) = emit_kernel {
        // The report only carries the kernel size; re-derive the kernel
        // graph itself (reduction is deterministic and cheap next to the
        // search that already ran).
        if let Ok(KernelOutcome::Kernel { instance, .. }) = kernelize(&g, k) {
            if let Err(code) = write_file(path, &format::write_graph(instance.graph()), out) {
                return code;
            }
        }
    }

    let budget = g.n().saturating_sub(1) + k;
    let counts = report.rule_counts;
    let json_counts = Some(JsonRuleCounts {
        trim: counts.trim,
        path: counts.path,
        simplicial: counts.simplicial,
    });
    let kernel_note = match report.kernel_vertices {
        Some(n) => format!("kernel {n} vertices"),
        None => "no kernel stage".to_string(),
    };
    let rules_note = format!(
        "rules: trim {}, path {}, simplicial {}",
        counts.trim, counts.path, counts.simplicial
    );

    match report.solution {
        Some(solution) => {
            if let Some(path) = emit_root {
                if let Err(code) = write_file(path, &format::write_graph(&solution.root), out) {
                    return code;
                }
            }
            if let Some(path) = emit_dot {
                if let Err(code) = write_file(path, &format::write_dot(&solution.root), out) {
                    return code;
                }
            }
            finish(
                json,
                out,
                JsonReport {
                    edges: Some(solution.edge_count),
                    kernel_vertices: report.kernel_vertices,
                    rule_counts: json_counts,
                    ..JsonReport::new("yes")
                },
                format!(
                    "yes: square root with {} edges (budget {budget}); {kernel_note}; {rules_note}",
                    solution.edge_count
                ),
                EXIT_YES,
            )
        }
        None => finish(
            json,
            out,
            JsonReport {
                kernel_vertices: report.kernel_vertices,
                rule_counts: json_counts,
                ..JsonReport::new("no")
            },
            format!("no: no square root with at most {budget} edges; {kernel_note}; {rules_note}"),
            EXIT_NO,
        ),
    }
}

fn cmd_maxroot(
    input: &Path,
    fpt_budget: Option<usize>,
    emit_root: Option<&Path>,
    emit_dot: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> i32 {
    let g = match read_graph(input, out) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let result = match fpt_budget {
        Some(k) => max_root_fpt(&g, k),
        None => max_root_exact(&g),
    };
    let root = match result {
        Ok(root) => root,
        Err(err @ MaxRootError::Disconnected { .. }) => {
            emit(out, format!("error: {err}"));
            return EXIT_USAGE;
        }
        Err(err) => {
            emit(out, format!("internal error: {err}"));
            return EXIT_INTERNAL;
        }
    };
    match root {
        Some(root) => {
            if let Some(path) = emit_root {
                if let Err(code) = write_file(path, &format::write_graph(&root), out) {
                    return code;
                }
            }
            if let Some(path) = emit_dot {
                if let Err(code) = write_file(path, &format::write_dot(&root), out) {
                    return code;
                }
            }
            let deletions = g.m() - root.m();
            finish(
                json,
                out,
                JsonReport {
                    edges: Some(root.m()),
                    deletions: Some(deletions),
                    ..JsonReport::new("yes")
                },
                format!(
                    "yes: square root with {} edges ({deletions} deletions)",
                    root.m()
                ),
                EXIT_YES,
            )
        }
        None => {
            let human = match fpt_budget {
                Some(k) => format!("no: no square root within {k} deletions"),
                None => "no: the graph has no square root".to_string(),
            };
            finish(json, out, JsonReport::new("no"), human, EXIT_NO)
        }
    }
}

fn cmd_oracle(input: &Path, min_budget: Option<usize>, json: bool, out: &mut dyn Write) -> i32 {
    let g = match read_graph(input, out) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let result = match min_budget {
        Some(k) => oracle_min_root(&g, k),
        None => oracle_max_root(&g),
    };
    let root = match result {
        Ok(root) => root,
        Err(err @ OracleError::EdgeCapExceeded { .. }) => {
            emit(
                out,
                format!("error: {err} (the oracle accepts at most {EDGE_CAP} edges)"),
            );
            return EXIT_USAGE;
        }
        Err(err @ OracleError::Disconnected { .. }) => {
            emit(out, format!("error: {err}"));
            return EXIT_USAGE;
        }
    };
    match root {
        Some(root) => {
            let mut report = JsonReport {
                edges: Some(root.m()),
                ..JsonReport::new("yes")
            };
            let human = match min_budget {
                Some(_) => format!("yes: minimum square root has {} edges", root.m()),
                None => {
                    let deletions = g.m() - root.m();
                    report.deletions = Some(deletions);
                    format!(
                        "yes: maximum square root has {} edges ({deletions} deletions)",
                        root.m()
                    )
                }
            };
            finish(json, out, report, human, EXIT_YES)
        }
        None => {
            let human = match min_budget {
                Some(k) => {
                    let budget = g.n().saturating_sub(1) + k;
                    format!("no: no square root with at most {budget} edges")
                }
                None => "no: the graph has no square root".to_string(),
            };
            finish(json, out, JsonReport::new("no"), human, EXIT_NO)
        }
    }
}

fn cmd_gen(
    family: Family,
    params: &[String],
    seed: u64,
    output: &Path,
    json: bool,
    out: &mut dyn Write,
) -> i32 {
    fn usage(out: &mut dyn Write, family: Family, expected: &str, params: &[String]) -> i32 {
        emit(
            out,
            format!(
                "error: {:?} expects parameters {expected}, got {} ({})",
                family,
                params.len(),
                params.join(" ")
            ),
        );
        EXIT_USAGE
    }

    fn int(s: &str) -> Option<usize> {
        s.parse().ok()
    }

    let generated = match family {
        Family::CycleSquare | Family::Complete | Family::UnionTwoCliques => {
            let [size] = params else {
                return usage(out, family, "<size>", params);
            };
            let Some(size) = int(size) else {
                return usage(out, family, "<size>", params);
            };
            let known = match family {
                Family::CycleSquare => KnownFamily::CycleSquare,
                Family::Complete => KnownFamily::Complete,
                _ => KnownFamily::UnionTwoCliques,
            };
            gen_known_square(known, size).map(|inst| (inst.graph, Some(inst.k_true)))
        }
        Family::TreePlusK => {
            let [n, k] = params else {
                return usage(out, family, "<n> <k>", params);
            };
            let (Some(n), Some(k)) = (int(n), int(k)) else {
                return usage(out, family, "<n> <k>", params);
            };
            gen_tree_plus_k(n, k, seed).map(|inst| (inst.graph, Some(inst.k_true)))
        }
        Family::RandomConnected => {
            let [n, p] = params else {
                return usage(out, family, "<n> <p>", params);
            };
            let (Some(n), Ok(p)) = (int(n), p.parse::<f64>()) else {
                return usage(out, family, "<n> <p>", params);
            };
            gen_random_connected(n, p, seed).map(|graph| (graph, None))
        }
    };

    let (graph, k_true) = match generated {
        Ok(pair) => pair,
        Err(err) => {
            emit(out, format!("error: {err}"));
            return EXIT_USAGE;
        }
    };
    if let Err(code) = write_file(output, &format::write_graph(&graph), out) {
        return code;
    }
    let planted = match k_true {
        Some(k) => format!(" (planted root exists at k = {k})"),
        None => String::new(),
    };
    finish(
        json,
        out,
        JsonReport {
            edges: Some(graph.m()),
            ..JsonReport::new("yes")
        },
        format!(
            "generated {} vertices, {} edges -> {}{planted}",
            graph.n(),
            graph.m(),
            output.display()
        ),
        EXIT_YES,
    )
}
