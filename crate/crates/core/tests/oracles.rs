//! Closed forms and brute-force counts checked against the library.

use flowforms_core::algebra::q_polynomial;
use flowforms_core::ehrhart::{ehrhart_data, ehrhart_values, kostant_of_pairs, kostant_of_pairs_by_enumeration};
use flowforms_core::graph::{augment, MultiGraph};
use flowforms_core::poly::UniPoly;
use flowforms_core::triangulation::Triangulation;
use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

fn narayana(m: u64, k: u64) -> BigInt {
    binomial(BigInt::from(m), BigInt::from(k)) * binomial(BigInt::from(m), BigInt::from(k - 1)) / BigInt::from(m)
}

#[test]
fn paths_give_narayana_numbers() {
    for n in 3..=7u64 {
        let m = n - 1;
        let expected = UniPoly::new((1..=m).map(|k| narayana(m, k)).collect());
        assert_eq!(q_polynomial(&MultiGraph::path(n as usize)).shift(-1), expected, "P{}", n);
    }
}

/// Lattice points of `F_G̃` counted by listing every 0..=m value on every edge.
fn dilate_count_naive(graph: &MultiGraph, m: i64) -> BigInt {
    let aug = augment(graph);
    let pairs: Vec<(usize, usize)> = aug.edges().into_iter().map(|e| aug.endpoints(e)).collect();
    let vc = aug.vertex_count();
    let mut count = 0u64;
    let total = (m as u64 + 1).pow(pairs.len() as u32);
    for code in 0..total {
        let mut net = vec![0i64; vc];
        let mut c = code;
        for &(a, b) in &pairs {
            let x = (c % (m as u64 + 1)) as i64;
            c /= m as u64 + 1;
            net[a] += x;
            net[b] -= x;
        }
        let mut want = vec![0i64; vc];
        want[0] = m;
        want[vc - 1] = -m;
        count += u64::from(net == want);
    }
    BigInt::from(count)
}

#[test]
fn lattice_points_match_naive_counts() {
    for g in [MultiGraph::path(2), MultiGraph::path(3), MultiGraph::new(3, &[(1, 2), (1, 2)]).unwrap()] {
        let values = ehrhart_values(&augment(&g), 2);
        for m in 0..=2 {
            assert_eq!(values[m as usize], dilate_count_naive(&g, m));
        }
    }
}

#[test]
fn single_edge_closed_form() {
    let values = ehrhart_values(&augment(&MultiGraph::path(2)), 12);
    for (m, v) in values.iter().enumerate() {
        assert_eq!(*v, BigInt::from((m + 1) * (m + 2) / 2));
    }
}

#[test]
fn volume_three_ways_on_small_graphs() {
    for g in [MultiGraph::path(4), MultiGraph::complete(3), MultiGraph::new(3, &[(1, 2), (1, 2), (2, 3)]).unwrap()] {
        let data = ehrhart_data(&g, None).unwrap();
        let fact: BigInt = (1..=data.dimension as u64).map(BigInt::from).product();
        let q0 = q_polynomial(&g).coeff(0);
        assert_eq!(data.polynomial.leading() * BigRational::from_integer(fact), BigRational::from_integer(q0.clone()));
        assert_eq!(BigInt::from(Triangulation::canonical(&g).cliques.len()), q0);
        assert_eq!(data.hstar.coefficient_sum(), q_polynomial(&g).coeff(0));
    }
}

#[test]
fn kostant_on_a_plain_chain() {
    // 0 -> 1 -> 2 with a shortcut 0 -> 2: flows of size m split between the two routes
    for m in 0..6i64 {
        let v = [m, 0, -m];
        let pairs = [(0, 1), (1, 2), (0, 2)];
        assert_eq!(kostant_of_pairs(3, &pairs, &v), BigInt::from(m + 1));
        assert_eq!(kostant_of_pairs_by_enumeration(3, &pairs, &v), BigInt::from(m + 1));
    }
}
