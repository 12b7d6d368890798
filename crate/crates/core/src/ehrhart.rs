//! Kostant partition functions and lattice-point counts of flow polytopes.
//!
//! `i(F_G̃, m) = K_G̃(m, 0, …, 0, −m)`; the Ehrhart polynomial is recovered by
//! exact interpolation and the h*-polynomial from the Ehrhart series.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::q_polynomial;
use crate::graph::{augment, AugmentedGraph, MultiGraph, Vertex};
use crate::poly::{RationalPoly, UniPoly};
use crate::reduction::{build_reduction_tree, ReductionStrategy};
use crate::triangulation::Triangulation;

/// Netflow over the vertices of `G̃` in the order `s, 1, …, n, t`.
pub type NetflowVector = Vec<i64>;

/// Dilates compared between the dynamic program and plain enumeration.
pub const CROSS_CHECK_MAX_DILATE: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EhrhartError {
    #[error("need at least {need} values, got {got}")]
    TooFewValues { need: usize, got: usize },
    #[error("interpolated degree {found:?}, expected {expected}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("interpolant does not reproduce i({m})")]
    ExtraValueMismatch { m: usize },
    #[error("Ehrhart series numerator has a nonzero coefficient in degree {degree}")]
    SeriesTail { degree: usize },
}

fn aug_pairs(aug: &AugmentedGraph) -> Vec<(Vertex, Vertex)> {
    aug.edges().into_iter().map(|e| aug.endpoints(e)).collect()
}

/// `(m, 0, …, 0, −m)`.
pub fn dilate_vector(aug: &AugmentedGraph, m: u64) -> NetflowVector {
    let mut v = vec![0; aug.vertex_count()];
    v[aug.source()] = m as i64;
    v[aug.sink()] -= m as i64;
    v
}

struct KostantDp<'a> {
    out: Vec<Vec<Vertex>>,
    netflow: &'a [i64],
    memo: BTreeMap<(Vertex, Vec<i64>), BigInt>,
}

impl KostantDp<'_> {
    /// Ways to route the flow from vertex `v` on, given the inflow already
    /// delivered to each vertex `≥ v`.
    fn count(&mut self, v: Vertex, pending: Vec<i64>) -> BigInt {
        if v == self.out.len() {
            return BigInt::one();
        }
        let key = (v, pending);
        if let Some(c) = self.memo.get(&key) {
            return c.clone();
        }
        let pending = &key.1;
        let outflow = self.netflow[v] + pending[0];
        let total = if outflow < 0 || (outflow > 0 && self.out[v].is_empty()) {
            BigInt::zero()
        } else {
            let mut rest = pending[1..].to_vec();
            let heads = self.out[v].clone();
            self.distribute(v, &heads, outflow, &mut rest)
        };
        self.memo.insert(key, total.clone());
        total
    }

    fn distribute(&mut self, v: Vertex, heads: &[Vertex], amount: i64, rest: &mut Vec<i64>) -> BigInt {
        match heads {
            [] => self.count(v + 1, rest.clone()),
            [last] => {
                rest[last - v - 1] += amount;
                let c = self.count(v + 1, rest.clone());
                rest[last - v - 1] -= amount;
                c
            }
            [first, tail @ ..] => {
                let mut total = BigInt::zero();
                for k in 0..=amount {
                    rest[first - v - 1] += k;
                    total += self.distribute(v, tail, amount - k, rest);
                    rest[first - v - 1] -= k;
                }
                total
            }
        }
    }
}

/// Kostant partition function of a graph with `tail < head` on every edge.
pub fn kostant_of_pairs(vertex_count: usize, pairs: &[(Vertex, Vertex)], netflow: &[i64]) -> BigInt {
    assert_eq!(netflow.len(), vertex_count, "one netflow coordinate per vertex");
    assert!(pairs.iter().all(|&(a, b)| a < b && b < vertex_count), "edges must increase");
    if netflow.iter().sum::<i64>() != 0 {
        return BigInt::zero();
    }
    let mut out = vec![Vec::new(); vertex_count];
    for &(a, b) in pairs {
        out[a].push(b);
    }
    let mut dp = KostantDp { out, netflow, memo: BTreeMap::new() };
    dp.count(0, vec![0; vertex_count])
}

/// Counts flows edge by edge, checking conservation only once every edge
/// has a value.
pub fn kostant_of_pairs_by_enumeration(vertex_count: usize, pairs: &[(Vertex, Vertex)], netflow: &[i64]) -> BigInt {
    assert_eq!(netflow.len(), vertex_count, "one netflow coordinate per vertex");
    assert!(pairs.iter().all(|&(a, b)| a < b && b < vertex_count), "edges must increase");
    let mut sorted = pairs.to_vec();
    sorted.sort();
    let bound: i64 = netflow.iter().filter(|&&x| x > 0).sum();

    fn go(i: usize, edges: &[(Vertex, Vertex)], bound: i64, netflow: &[i64], net: &mut Vec<i64>) -> BigInt {
        if i == edges.len() {
            return BigInt::from(u8::from(net.as_slice() == netflow));
        }
        let (a, b) = edges[i];
        let mut total = BigInt::zero();
        for x in 0..=bound {
            net[a] += x;
            net[b] -= x;
            total += go(i + 1, edges, bound, netflow, net);
            net[a] -= x;
            net[b] += x;
            // every edge into `a` is already assigned, so its net outflow only grows
            if net[a] + x > netflow[a] {
                break;
            }
        }
        total
    }

    let mut net = vec![0; vertex_count];
    go(0, &sorted, bound, netflow, &mut net)
}

pub fn kostant(aug: &AugmentedGraph, netflow: &[i64]) -> BigInt {
    kostant_of_pairs(aug.vertex_count(), &aug_pairs(aug), netflow)
}

pub fn kostant_by_enumeration(aug: &AugmentedGraph, netflow: &[i64]) -> BigInt {
    kostant_of_pairs_by_enumeration(aug.vertex_count(), &aug_pairs(aug), netflow)
}

/// `dim F_G̃ = |E(G)| + |V(G)| − 1`.
pub fn dimension(graph: &MultiGraph) -> usize {
    (graph.edge_count() + graph.n()).saturating_sub(1)
}

/// `i(F_G̃, m)` for `m = 0..=m_max`.
pub fn ehrhart_values(aug: &AugmentedGraph, m_max: u64) -> Vec<BigInt> {
    (0..=m_max).map(|m| kostant(aug, &dilate_vector(aug, m))).collect()
}

/// Newton interpolation through `(m, values[m])` for `m = 0..=degree`; the
/// remaining values must be reproduced and the degree must be exact.
pub fn ehrhart_polynomial(values: &[BigInt], degree: usize) -> Result<RationalPoly, EhrhartError> {
    if values.len() < degree + 1 {
        return Err(EhrhartError::TooFewValues { need: degree + 1, got: values.len() });
    }
    let mut diffs: Vec<BigRational> = values[..=degree].iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let mut leading = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        leading.push(diffs[0].clone());
        for j in 0..degree - k {
            diffs[j] = &diffs[j + 1] - &diffs[j];
        }
    }
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    // falling factorial t(t−1)…(t−k+1)/k!, ascending coefficients
    let mut basis = vec![BigRational::one()];
    for (k, c) in leading.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            coeffs[i] += c * b;
        }
        let shift = BigRational::from_integer(BigInt::from(k));
        let scale = BigRational::from_integer(BigInt::from(k + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &scale;
            next[i] -= b * &shift / &scale;
        }
        basis = next;
    }
    let poly = RationalPoly::new(coeffs);
    if poly.degree() != Some(degree) {
        return Err(EhrhartError::DegreeMismatch { expected: degree, found: poly.degree() });
    }
    for (m, v) in values.iter().enumerate().skip(degree + 1) {
        let at = BigRational::from_integer(BigInt::from(m));
        if poly.eval(&at) != BigRational::from_integer(v.clone()) {
            return Err(EhrhartError::ExtraValueMismatch { m });
        }
    }
    Ok(poly)
}

/// Numerator of `Σ_m i(m) β^m` over `(1−β)^{D+1}` from `values[0..=D+k]`;
/// coefficients in degrees `D+1..=D+k` must vanish.
pub fn hstar_from_values(values: &[BigInt], dim: usize) -> Result<UniPoly, EhrhartError> {
    if values.len() < dim + 1 {
        return Err(EhrhartError::TooFewValues { need: dim + 1, got: values.len() });
    }
    let series = UniPoly::new(values.to_vec());
    let factor = UniPoly::from_i64(&[1, -1]).pow(dim as u32 + 1);
    let product = (&series * &factor).truncate(values.len() - 1);
    for degree in dim + 1..values.len() {
        if !product.coeff(degree).is_zero() {
            return Err(EhrhartError::SeriesTail { degree });
        }
    }
    Ok(product.truncate(dim))
}

/// h*-polynomial of `F_G̃`, checked against two series terms past the degree.
pub fn hstar_polynomial(graph: &MultiGraph) -> Result<UniPoly, EhrhartError> {
    let dim = dimension(graph);
    let values = ehrhart_values(&augment(graph), dim as u64 + 2);
    hstar_from_values(&values, dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub dimension: usize,
    pub values: Vec<BigInt>,
    pub polynomial: RationalPoly,
    pub hstar: UniPoly,
}

/// Values up to `max(m_max, D + 2)`, interpolant and h*-polynomial.
pub fn ehrhart_data(graph: &MultiGraph, m_max: Option<u64>) -> Result<EhrhartData, EhrhartError> {
    let dimension = dimension(graph);
    let top = m_max.unwrap_or(0).max(dimension as u64 + 2);
    let values = ehrhart_values(&augment(graph), top);
    let polynomial = ehrhart_polynomial(&values, dimension)?;
    let hstar = hstar_from_values(&values, dimension)?;
    Ok(EhrhartData { dimension, values, polynomial, hstar })
}

/// First dilate `m ≤ max_m` where the two Kostant computations differ.
pub fn cross_check_kostant(graph: &MultiGraph, max_m: u64) -> Option<(u64, BigInt, BigInt)> {
    let aug = augment(graph);
    (0..=max_m).find_map(|m| {
        let v = dilate_vector(&aug, m);
        let (dp, brute) = (kostant(&aug, &v), kostant_by_enumeration(&aug, &v));
        (dp != brute).then_some((m, dp, brute))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorReport {
    pub q_shifted: UniPoly,
    pub hstar: Result<UniPoly, EhrhartError>,
    pub kostant_mismatch: Option<(u64, BigInt, BigInt)>,
    pub passed: bool,
}

/// `Q_G(β − 1)` against the h*-polynomial, plus the Kostant cross-check.
pub fn verify_cor(graph: &MultiGraph) -> CorReport {
    verify_cor_with(graph, &q_polynomial(graph))
}

pub fn verify_cor_with(graph: &MultiGraph, q: &UniPoly) -> CorReport {
    let q_shifted = q.shift(-1);
    let hstar = hstar_polynomial(graph);
    let kostant_mismatch = cross_check_kostant(graph, CROSS_CHECK_MAX_DILATE);
    let passed = hstar.as_ref().is_ok_and(|h| *h == q_shifted) && kostant_mismatch.is_none();
    CorReport { q_shifted, hstar, kostant_mismatch, passed }
}

/// `∏_{k=0}^{count−1} Cat(k)`.
pub fn catalan_product(count: usize) -> BigInt {
    (0..count as u64)
        .map(|k| binomial(BigInt::from(2 * k), BigInt::from(k)) / BigInt::from(k + 1))
        .product()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CryReport {
    pub n: usize,
    pub dimension: usize,
    pub leaf_count: BigInt,
    pub clique_count: BigInt,
    pub ehrhart_volume: BigRational,
    /// `∏_{k=0}^{n−1} Cat(k)`, the normalized volume of the flow polytope of
    /// `K_{n+2}`, a pyramid over `F_{K̃_n}`; informational.
    pub catalan_product: BigInt,
    pub agree: bool,
}

impl CryReport {
    pub fn catalan_matches(&self) -> bool {
        self.agree && self.leaf_count == self.catalan_product
    }

    pub fn summary(&self) -> String {
        alloc::format!(
            "n={} dim={} leaves={} cliques={} dim!*lead={} catalan={}",
            self.n, self.dimension, self.leaf_count, self.clique_count, self.ehrhart_volume, self.catalan_product
        )
    }
}

/// Normalized volume of `F_{K̃_n}` three ways.
pub fn cry_check(n: usize) -> Result<CryReport, EhrhartError> {
    let graph = MultiGraph::complete(n);
    let tree = build_reduction_tree(&graph, &ReductionStrategy::Sigma);
    let leaf_count = crate::algebra::specialize_x_to_one(&crate::algebra::reduced_form_from_tree(&tree)).coeff(0);
    let clique_count = BigInt::from(Triangulation::canonical(&graph).cliques.len());
    let data = ehrhart_data(&graph, None)?;
    let factorial: BigInt = (1..=data.dimension as u64).map(BigInt::from).product();
    let ehrhart_volume = data.polynomial.leading() * BigRational::from_integer(factorial);
    let agree = leaf_count == clique_count && ehrhart_volume == BigRational::from_integer(leaf_count.clone());
    Ok(CryReport {
        n,
        dimension: data.dimension,
        leaf_count,
        clique_count,
        ehrhart_volume,
        catalan_product: catalan_product(n),
        agree,
    })
}
