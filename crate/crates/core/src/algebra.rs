//! Reduced forms in the commutative subdivision algebra.
//!
//! Two independent routes lead to a reduced form of the monomial of a graph:
//! reading the leaves of a reduction tree ([`reduced_form_from_tree`]) and
//! rewriting the monomial directly with
//! `x_ij x_jk -> x_ik x_ij + x_jk x_ik + β x_ik` ([`rewrite_reduced_form`]).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{MultiGraph, NodeGraph, Vertex};
use crate::poly::{Monomial, MultivarPoly, UniPoly};
use crate::reduction::{build_reduction_tree, ReductionStrategy, ReductionTree};

/// `Π x_{tail,head}` over the edges of `node`; provenance is forgotten.
pub fn monomial_of_graph(node: &NodeGraph) -> Monomial {
    Monomial::from_pairs(node.edges().iter().map(|e| (e.tail(), e.head())), 0)
}

pub fn graph_monomial(graph: &MultiGraph) -> Monomial {
    Monomial::from_pairs(graph.edges().iter().map(|e| (e.tail, e.head)), 0)
}

/// `Σ_leaves β^{|E| - |E(leaf)|} · m[leaf]`.
pub fn reduced_form_from_tree(tree: &ReductionTree) -> MultivarPoly {
    let full = tree.root_edges();
    let mut p = MultivarPoly::zero();
    for leaf in tree.leaves() {
        let beta = (full - leaf.edge_count()) as u32;
        p.add_term(monomial_of_graph(leaf).with_beta(beta), BigInt::from(1));
    }
    p
}

/// Which monomial and which factor `x_ij x_jk` is rewritten next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    /// The lexicographically smallest factor of the smallest reducible monomial.
    Lexicographic,
    /// A uniformly random reducible monomial and factor, from a seeded generator.
    Random(u64),
}

/// Factors `((i,j),(j,k))`, `i < j < k`, dividing `m`, in lexicographic order.
fn divisible_factors(m: &Monomial) -> Vec<((Vertex, Vertex), (Vertex, Vertex))> {
    let pairs: Vec<_> = m.x_exponents().keys().copied().collect();
    let mut out = Vec::new();
    for &(i, j) in &pairs {
        for &(j2, k) in &pairs {
            if j2 == j && i < j && j < k {
                out.push(((i, j), (j, k)));
            }
        }
    }
    out
}

/// Replaces one factor `x_ij x_jk` of `m` by `x_ik x_ij + x_jk x_ik + β x_ik`.
fn rewrite_once(m: &Monomial, first: (Vertex, Vertex), second: (Vertex, Vertex)) -> [Monomial; 3] {
    let mut rest = m.clone();
    assert!(rest.div_x(first) && rest.div_x(second), "factor divides the monomial");
    let long = (first.0, second.1);
    let mut keep_first = rest.clone();
    keep_first.mul_x(long);
    keep_first.mul_x(first);
    let mut keep_second = rest.clone();
    keep_second.mul_x(second);
    keep_second.mul_x(long);
    let beta = rest.beta_exponent() + 1;
    let mut neither = rest.with_beta(beta);
    neither.mul_x(long);
    [keep_first, keep_second, neither]
}

type Terms = BTreeMap<Monomial, BigInt>;

fn push(m: Monomial, c: BigInt, done: &mut Terms, pending: &mut Terms) {
    let target = if divisible_factors(&m).is_empty() { done } else { pending };
    *target.entry(m).or_default() += c;
}

/// Rewrites until no monomial is divisible by any `x_ij x_jk` with `i < j < k`.
pub fn rewrite_reduced_form(p: &MultivarPoly, strategy: RewriteStrategy) -> MultivarPoly {
    let mut rng = match strategy {
        RewriteStrategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        RewriteStrategy::Lexicographic => None,
    };
    let mut done = Terms::new();
    let mut pending = Terms::new();
    for (m, c) in p.clone().into_terms() {
        push(m, c, &mut done, &mut pending);
    }
    loop {
        let key = match rng.as_mut() {
            None => pending.keys().next().cloned(),
            Some(rng) if !pending.is_empty() => pending.keys().nth(rng.gen_range(0..pending.len())).cloned(),
            Some(_) => None,
        };
        let Some(m) = key else { break };
        let c = pending.remove(&m).expect("key was just read");
        let factors = divisible_factors(&m);
        let (first, second) = match rng.as_mut() {
            None => factors[0],
            Some(rng) => factors[rng.gen_range(0..factors.len())],
        };
        for next in rewrite_once(&m, first, second) {
            push(next, c.clone(), &mut done, &mut pending);
        }
    }
    MultivarPoly::from_terms(done)
}

/// Sets every `x_ij` to 1 and collects coefficients by β-degree.
pub fn specialize_x_to_one(p: &MultivarPoly) -> UniPoly {
    let mut coeffs: Vec<BigInt> = Vec::new();
    for (m, c) in p.terms() {
        let deg = m.beta_exponent() as usize;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::default());
        }
        coeffs[deg] += c;
    }
    UniPoly::new(coeffs)
}

/// `p(β + delta)`.
pub fn shift_beta(p: &UniPoly, delta: i64) -> UniPoly {
    p.shift(delta)
}

pub fn check_nonnegative(p: &UniPoly) -> bool {
    p.is_nonnegative()
}

/// The reduced form at `x = 1`, read from the canonical reduction tree.
pub fn q_polynomial(graph: &MultiGraph) -> UniPoly {
    let tree = build_reduction_tree(graph, &ReductionStrategy::Sigma);
    specialize_x_to_one(&reduced_form_from_tree(&tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeId, ProvEdge};

    fn poly(terms: &[(&[(Vertex, Vertex)], u32)]) -> MultivarPoly {
        let mut p = MultivarPoly::zero();
        for (pairs, beta) in terms {
            p.add_term(Monomial::from_pairs(pairs.iter().copied(), *beta), BigInt::from(1));
        }
        p
    }

    #[test]
    fn p3_reduced_form_both_ways() {
        let g = MultiGraph::path(3);
        let expect = poly(&[(&[(1, 3), (1, 2)], 0), (&[(2, 3), (1, 3)], 0), (&[(1, 3)], 1)]);
        let tree = build_reduction_tree(&g, &ReductionStrategy::Sigma);
        assert_eq!(reduced_form_from_tree(&tree), expect);
        let rewritten = rewrite_reduced_form(
            &MultivarPoly::from_monomial(graph_monomial(&g)),
            RewriteStrategy::Lexicographic,
        );
        assert_eq!(rewritten, expect);
        assert_eq!(specialize_x_to_one(&expect), UniPoly::linear(2));
    }

    #[test]
    fn reduced_monomials_are_fixed_points() {
        let x12 = MultivarPoly::from_monomial(Monomial::from_pairs([(1, 2)], 0));
        assert_eq!(rewrite_reduced_form(&x12, RewriteStrategy::Lexicographic), x12);
        assert_eq!(rewrite_reduced_form(&x12, RewriteStrategy::Random(3)), x12);
        assert_eq!(specialize_x_to_one(&x12), UniPoly::one());
        let single = build_reduction_tree(&MultiGraph::path(2), &ReductionStrategy::Sigma);
        assert_eq!(reduced_form_from_tree(&single), x12);
    }

    #[test]
    fn p4_at_one_for_several_strategies() {
        let g = MultiGraph::path(4);
        let expect = UniPoly::from_i64(&[5, 5, 1]);
        assert_eq!(q_polynomial(&g), expect);
        let m = MultivarPoly::from_monomial(graph_monomial(&g));
        assert_eq!(specialize_x_to_one(&rewrite_reduced_form(&m, RewriteStrategy::Lexicographic)), expect);
        for seed in 0..5 {
            let p = rewrite_reduced_form(&m, RewriteStrategy::Random(seed));
            assert_eq!(specialize_x_to_one(&p), expect);
        }
        assert_eq!(shift_beta(&expect, -1), UniPoly::from_i64(&[1, 3, 1]));
        assert!(check_nonnegative(&shift_beta(&expect, -1)));
        assert!(check_nonnegative(&UniPoly::zero()));
    }

    #[test]
    fn graph_monomials() {
        let g = MultiGraph::path(3);
        let leaf = NodeGraph::new(
            3,
            vec![
                ProvEdge::from_path(&g, vec![EdgeId(1), EdgeId(2)]).unwrap(),
                ProvEdge::from_path(&g, vec![EdgeId(1)]).unwrap(),
            ],
        );
        assert_eq!(monomial_of_graph(&leaf), Monomial::from_pairs([(1, 3), (1, 2)], 0));
        assert_eq!(monomial_of_graph(&NodeGraph::new(3, vec![])), Monomial::one());

        // two different provenance paths spanning (1,4)
        let h = MultiGraph::new(4, &[(1, 2), (2, 4), (1, 3), (3, 4)]).unwrap();
        let both = NodeGraph::new(
            4,
            vec![
                ProvEdge::from_path(&h, vec![EdgeId(1), EdgeId(2)]).unwrap(),
                ProvEdge::from_path(&h, vec![EdgeId(3), EdgeId(4)]).unwrap(),
            ],
        );
        assert_eq!(monomial_of_graph(&both).to_string(), "x14^2");
    }

    #[test]
    fn repeated_variables_rewrite() {
        // x12^2 x23 has parallel edges; every strategy agrees at x = 1 with the tree.
        let g = MultiGraph::new(3, &[(1, 2), (1, 2), (2, 3)]).unwrap();
        let m = MultivarPoly::from_monomial(graph_monomial(&g));
        let q = q_polynomial(&g);
        assert_eq!(specialize_x_to_one(&rewrite_reduced_form(&m, RewriteStrategy::Lexicographic)), q);
        for seed in 0..5 {
            assert_eq!(specialize_x_to_one(&rewrite_reduced_form(&m, RewriteStrategy::Random(seed))), q);
        }
    }
}
