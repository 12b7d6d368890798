//! The `flowforms` command line.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use flowforms_core::algebra::{reduced_form_from_tree, specialize_x_to_one};
use flowforms_core::graph::{MultiGraph, NodeGraph};
use flowforms_core::reduction::{build_reduction_tree, ReductionStrategy, TreeNode};
use flowforms_core::shelling::{find_shelling, h_from_shelling, verify_formal_sum, DEFAULT_SEARCH_BUDGET};
use flowforms_core::triangulation::{interior_face_counts, is_flag, SimplicialComplex, Triangulation};
use serde_json::{json, Value};

use crate::formats::{ints_json, leaf_paths, multivar_json, route_json, tree_json, unipoly_json};
use crate::report::{builtin_entries, cmd_report, cmd_verify, ehrhart_json, load_corpus_dir, read_graph_file};

#[derive(Debug, Parser)]
#[command(name = "flowforms", version, about = "Reduction trees, triangulations and Ehrhart data of flow polytopes")]
pub struct Cli {
    /// Seed for every random strategy.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Directory of graph files for `verify`.
    #[arg(long, global = true)]
    pub corpus: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a reduction tree and its leaves.
    Tree {
        graph: PathBuf,
        /// `sigma`, `random` (uses --seed) or `random:<seed>`.
        #[arg(long, default_value = "sigma")]
        strategy: String,
    },
    /// Print the reduced form read from the canonical tree.
    Reduce {
        graph: PathBuf,
        /// Set every edge variable to 1.
        #[arg(long)]
        at_one: bool,
        /// Substitute β + SHIFT for β; implies --at-one.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
    },
    /// Print routes, maximal coherent cliques, f- and h-vectors.
    Triangulate { graph: PathBuf },
    /// Find a shelling of the full-dimensional leaves and expand the formal sum.
    Shell { graph: PathBuf },
    /// Lattice-point counts, Ehrhart polynomial and h*-polynomial.
    Ehrhart {
        graph: PathBuf,
        #[arg(long)]
        mmax: Option<u64>,
    },
    /// Run every check on a corpus; exits 1 if any check fails.
    Verify,
    /// One-graph summary with cross-checks.
    Report { graph: PathBuf },
}

/// Input problems, as opposed to failed checks.
#[derive(Debug)]
pub struct UsageError(pub anyhow::Error);

fn load(path: &std::path::Path) -> Result<MultiGraph> {
    Ok(read_graph_file(path)?.graph)
}

fn parse_strategy(text: &str, seed: u64) -> Result<ReductionStrategy> {
    match text {
        "sigma" => Ok(ReductionStrategy::Sigma),
        "random" => Ok(ReductionStrategy::Random(seed)),
        _ => match text.strip_prefix("random:") {
            Some(s) => Ok(ReductionStrategy::Random(s.parse().with_context(|| format!("bad seed in {text:?}"))?)),
            None => bail!("unknown strategy {text:?}; expected sigma, random or random:<seed>"),
        },
    }
}

fn tree_text(node: &TreeNode, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match &node.reduction {
        Some(r) => out.push_str(&format!(
            "{pad}{} | reduce {} . {} at {}\n",
            node.graph, r.choice.incoming, r.choice.outgoing, r.choice.vertex
        )),
        None => out.push_str(&format!("{pad}{} | leaf\n", node.graph)),
    }
    for child in node.children() {
        tree_text(child, depth + 1, out);
    }
}

fn emit(out: &mut dyn Write, json_mode: bool, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
    if json_mode {
        writeln!(out, "{}", serde_json::to_string_pretty(value)?)?;
    } else {
        write!(out, "{}", text())?;
    }
    Ok(())
}

/// Runs `cli`, writing to `out`; `Ok(false)` means a check failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let usage = |e: anyhow::Error| anyhow::Error::new(UsageError(e));
    match &cli.command {
        Command::Tree { graph, strategy } => {
            let strategy = parse_strategy(strategy, cli.seed).map_err(usage)?;
            let g = load(graph).map_err(usage)?;
            let tree = build_reduction_tree(&g, &strategy);
            let leaves: Vec<Vec<Vec<usize>>> = tree.leaves().into_iter().map(leaf_paths).collect();
            let value = json!({"tree": tree_json(&tree.root), "leaves": leaves, "leaf_counts": tree.leaf_counts()});
            emit(out, cli.json, &value, || {
                let mut s = String::new();
                tree_text(&tree.root, 0, &mut s);
                s.push_str(&format!("leaf counts by edge count: {:?}\n", tree.leaf_counts()));
                s
            })?;
            Ok(true)
        }
        Command::Reduce { graph, at_one, shift } => {
            let g = load(graph).map_err(usage)?;
            let form = reduced_form_from_tree(&build_reduction_tree(&g, &ReductionStrategy::Sigma));
            if *at_one || shift.is_some() {
                let q = specialize_x_to_one(&form).shift(shift.unwrap_or(0));
                emit(out, cli.json, &json!({"coefficients": unipoly_json(&q), "text": q.to_string()}), || format!("{q}\n"))?;
            } else {
                emit(out, cli.json, &multivar_json(&form), || format!("{form}\n"))?;
            }
            Ok(true)
        }
        Command::Triangulate { graph } => {
            let g = load(graph).map_err(usage)?;
            let t = Triangulation::canonical(&g);
            let fh = t.complex.fh_vectors();
            let flag = is_flag(&t.complex);
            let interior = interior_face_counts(&t.complex, &t.aug, &t.routes);
            let value = json!({
                "routes": t.routes.iter().map(route_json).collect::<Vec<_>>(),
                "maximal_cliques": t.cliques,
                "f": ints_json(&fh.f),
                "h": ints_json(&fh.h),
                "flag": flag,
                "interior_counts": interior,
            });
            emit(out, cli.json, &value, || {
                let mut s = String::new();
                for (k, r) in t.routes.iter().enumerate() {
                    s.push_str(&format!("{k}: {r}\n"));
                }
                for c in &t.cliques {
                    s.push_str(&format!("clique {c:?}\n"));
                }
                s.push_str(&format!("f = {:?}\nh = {:?}\nflag = {flag}\ninterior faces by dimension = {interior:?}\n",
                    fh.f.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    fh.h.iter().map(ToString::to_string).collect::<Vec<_>>()));
                s
            })?;
            Ok(true)
        }
        Command::Shell { graph } => {
            let g = load(graph).map_err(usage)?;
            let tree = build_reduction_tree(&g, &ReductionStrategy::Sigma);
            let t = Triangulation::canonical(&g);
            let full: Vec<NodeGraph> = tree.full_dimensional_leaves().into_iter().cloned().collect();
            let all: Vec<NodeGraph> = tree.leaves().into_iter().cloned().collect();
            let complex = SimplicialComplex::from_facets(t.routes.len(), full.iter().map(|l| t.face_of(l)).collect());
            let identity: Vec<usize> = (0..complex.facets().len()).collect();
            let search = find_shelling(&complex, Some(&identity), Some(cli.seed), DEFAULT_SEARCH_BUDGET)?;
            let order = search.order.0;
            let shelled: Vec<NodeGraph> = order.iter().map(|&k| full[k].clone()).collect();
            let report = verify_formal_sum(&shelled, &all);
            let h = h_from_shelling(&order, &complex);
            let dfs = search.candidate_was_shelling == Some(true);
            let value = json!({
                "order": order,
                "h_from_shelling": ints_json(&h),
                "formal_sum_ok": report.passed,
                "dfs_was_shelling": dfs,
            });
            emit(out, cli.json, &value, || {
                format!(
                    "order = {order:?}\nh from shelling = {:?}\nformal sum ok = {}\ndfs order shells = {dfs}\n",
                    h.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    report.passed
                )
            })?;
            Ok(report.passed)
        }
        Command::Ehrhart { graph, mmax } => {
            let g = load(graph).map_err(usage)?;
            let value = ehrhart_json(&g, *mmax)?;
            emit(out, cli.json, &value, || {
                format!(
                    "dimension = {}\nvalues = {}\npolynomial = {}\nh* = {}\n",
                    value["dimension"], value["values"], value["polynomial"], value["hstar"]
                )
            })?;
            Ok(true)
        }
        Command::Verify => {
            let entries = match &cli.corpus {
                Some(dir) => load_corpus_dir(dir).map_err(|e| usage(e.into()))?,
                None => builtin_entries(),
            };
            let report = cmd_verify(&entries, cli.seed);
            if !cli.json {
                eprint!("{}", report.to_text());
            }
            writeln!(out, "{}", serde_json::to_string_pretty(&report.to_json())?)?;
            Ok(report.passed())
        }
        Command::Report { graph } => {
            let g = load(graph).map_err(usage)?;
            let summary = cmd_report(&g);
            emit(out, cli.json, &summary.to_json(), || summary.to_text())?;
            Ok(summary.consistent)
        }
    }
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}
