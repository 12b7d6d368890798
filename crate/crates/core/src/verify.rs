//! Every identity checked on one graph, as a list of named pass/fail results.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{graph_monomial, reduced_form_from_tree, rewrite_reduced_form, specialize_x_to_one, RewriteStrategy};
use crate::corpus::NamedGraph;
use crate::ehrhart::verify_cor_with;
use crate::graph::{MultiGraph, NodeGraph};
use crate::poly::{MultivarPoly, UniPoly};
use crate::reduction::{build_reduction_tree, ReductionStrategy, ReductionTree};
use crate::shelling::{find_shelling, h_from_shelling, verify_formal_sum, DEFAULT_SEARCH_BUDGET};
use crate::triangulation::{
    is_flag, verify_leaf_faces, verify_prop_coh_with, verify_thm_h_with, SimplicialComplex, Triangulation,
};

/// Random reduction orders compared against the canonical one.
pub const RANDOM_REDUCTION_ORDERS: usize = 20;
/// Random rewriting strategies compared against the tree.
pub const RANDOM_REWRITES: usize = 5;

const REDUCTION_STREAM: u64 = 1;
const REWRITE_STREAM: u64 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVerification {
    pub name: String,
    pub checks: Vec<Check>,
}

impl GraphVerification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// `count` seeds drawn from one stream of the generator seeded by `seed`.
pub fn derived_seeds(seed: u64, stream: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count).map(|_| rng.next_u64()).collect()
}

fn check(name: &'static str, passed: bool, witness: String) -> Check {
    Check { name, passed, witness }
}

fn multiset(leaves: &[&NodeGraph]) -> BTreeMap<NodeGraph, usize> {
    let mut m = BTreeMap::new();
    for &l in leaves {
        *m.entry(l.clone()).or_insert(0) += 1;
    }
    m
}

fn shelling_check(tree: &ReductionTree, t: &Triangulation) -> Check {
    let full: Vec<NodeGraph> = tree.full_dimensional_leaves().into_iter().cloned().collect();
    let all: Vec<NodeGraph> = tree.leaves().into_iter().cloned().collect();
    let complex = SimplicialComplex::from_facets(t.routes.len(), full.iter().map(|l| t.face_of(l)).collect());
    if complex.facets().len() != full.len() {
        return check("formal_sum", false, String::from("full-dimensional leaves span repeated simplices"));
    }
    let identity: Vec<usize> = (0..full.len()).collect();
    let search = match find_shelling(&complex, Some(&identity), None, DEFAULT_SEARCH_BUDGET) {
        Ok(s) => s,
        Err(e) => return check("formal_sum", false, e.to_string()),
    };
    let order = &search.order.0;
    let shelled: Vec<NodeGraph> = order.iter().map(|&k| full[k].clone()).collect();
    let report = verify_formal_sum(&shelled, &all);
    let h = h_from_shelling(order, &complex);
    let h_matches = h == t.complex.fh_vectors().h;
    let dfs = search.candidate_was_shelling == Some(true);
    let mut witness = format!("order {:?}, dfs order shells: {}, {} terms", order, dfs, report.terms);
    if let Some(g) = report.missing.first() {
        witness.push_str(&format!(", leaf {} not produced", g));
    }
    if let Some(g) = report.extra.first() {
        witness.push_str(&format!(", term {} is not a leaf", g));
    }
    if !h_matches {
        witness.push_str(&format!(", shelling h {:?} differs from f-vector h", h));
    }
    check("formal_sum", report.passed && h_matches, witness)
}

/// Runs every check on `named`; `leaf_fixture`, when given, must equal the
/// leaf multiset of the canonical tree.
pub fn verify_graph(named: &NamedGraph, seed: u64, leaf_fixture: Option<&[NodeGraph]>) -> GraphVerification {
    let graph: &MultiGraph = &named.graph;
    let tree = build_reduction_tree(graph, &ReductionStrategy::Sigma);
    let t = Triangulation::canonical(graph);
    let mut checks = Vec::new();

    let thm_h = verify_thm_h_with(&tree, &t);
    checks.push(check(
        "thm_h",
        thm_h.passed,
        format!("Q = {}; h(β+1) = {}; interior = {}", thm_h.q, thm_h.h_shifted, thm_h.interior),
    ));
    let q = thm_h.q.clone();

    let leaves: Vec<NodeGraph> = tree.leaves().into_iter().cloned().collect();
    let coh = verify_prop_coh_with(&leaves, tree.root_edges(), &t);
    checks.push(check(
        "prop_coh",
        coh.passed,
        coh.counterexample
            .unwrap_or_else(|| format!("{} full leaves = {} maximal cliques", coh.full_leaves, coh.maximal_cliques)),
    ));

    let faces = verify_leaf_faces(&tree, &t);
    checks.push(check(
        "leaf_faces",
        faces.passed,
        faces.counterexample.unwrap_or_else(|| format!("{} leaves = interior faces", leaves.len())),
    ));

    let flag = is_flag(&t.complex);
    checks.push(check("flag", flag, format!("{} facets on {} routes", t.complex.facets().len(), t.routes.len())));

    let expected = tree.leaf_counts();
    let mismatch = derived_seeds(seed, REDUCTION_STREAM, RANDOM_REDUCTION_ORDERS).into_iter().find_map(|s| {
        let counts = build_reduction_tree(graph, &ReductionStrategy::Random(s)).leaf_counts();
        (counts != expected).then_some((s, counts))
    });
    checks.push(match mismatch {
        None => check("lemma_leaves", true, format!("r = {:?} for σ and {} random orders", expected, RANDOM_REDUCTION_ORDERS)),
        Some((s, counts)) => check("lemma_leaves", false, format!("σ gives {:?}, random order {} gives {:?}", expected, s, counts)),
    });

    checks.push(shelling_check(&tree, &t));

    let cor = verify_cor_with(graph, &q);
    let witness = match (&cor.hstar, &cor.kostant_mismatch) {
        (_, Some((m, dp, brute))) => format!("Kostant at m = {}: dynamic program {}, enumeration {}", m, dp, brute),
        (Err(e), None) => e.to_string(),
        (Ok(h), None) => format!("Q(β-1) = {}; h* = {}", cor.q_shifted, h),
    };
    checks.push(check("corollary_cor", cor.passed, witness));

    let shifted = q.shift(-1);
    checks.push(check("nonnegativity", shifted.is_nonnegative(), format!("Q(β-1) = {}", shifted)));

    let monomial = MultivarPoly::from_monomial(graph_monomial(graph));
    let strategies = core::iter::once(RewriteStrategy::Lexicographic)
        .chain(derived_seeds(seed, REWRITE_STREAM, RANDOM_REWRITES).into_iter().map(RewriteStrategy::Random));
    let tree_form = reduced_form_from_tree(&tree);
    let bad: Option<(RewriteStrategy, UniPoly)> = strategies.into_iter().find_map(|s| {
        let at_one = specialize_x_to_one(&rewrite_reduced_form(&monomial, s));
        (at_one != q).then_some((s, at_one))
    });
    checks.push(match bad {
        None => check("rewrite_oracle", true, format!("{} terms; Q = {} for every strategy", tree_form.len(), q)),
        Some((s, p)) => check("rewrite_oracle", false, format!("tree Q = {}, {:?} gives {}", q, s, p)),
    });

    if let Some(fixture) = leaf_fixture {
        let want = multiset(&fixture.iter().collect::<Vec<_>>());
        let have = multiset(&tree.leaves());
        let witness = match want.iter().find(|(g, c)| have.get(*g) != Some(c)) {
            Some((g, _)) => format!("fixture leaf {} is not a leaf of the canonical tree with that multiplicity", g),
            None => match have.iter().find(|(g, c)| want.get(*g) != Some(c)) {
                Some((g, _)) => format!("canonical leaf {} is missing from the fixture", g),
                None => format!("{} leaves match", fixture.len()),
            },
        };
        checks.push(check("leaf_fixture", want == have, witness));
    }

    GraphVerification { name: named.name.clone(), checks }
}
