//! Framed augmented graphs, coherent routes and the clique triangulation of
//! the flow polytope, with f- and h-vector bookkeeping.
//!
//! Routes are referred to by their position in [`AugmentedGraph::routes`], so
//! a face of a complex is a sorted list of route indices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Zero;

use crate::algebra::{reduced_form_from_tree, specialize_x_to_one};
use crate::graph::{augment, leaf_to_routes, AugEdge, AugmentedGraph, MultiGraph, NodeGraph, Route, Vertex};
use crate::poly::UniPoly;
use crate::reduction::{build_reduction_tree, FramingSpec, ReductionStrategy, ReductionTree};

/// Total orders on the incoming and outgoing edges of every inner vertex of
/// the augmented graph, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framing {
    in_order: Vec<Vec<AugEdge>>,
    out_order: Vec<Vec<AugEdge>>,
}

impl Framing {
    pub fn in_order(&self, v: Vertex) -> &[AugEdge] {
        &self.in_order[v]
    }

    pub fn out_order(&self, v: Vertex) -> &[AugEdge] {
        &self.out_order[v]
    }

    fn in_rank(&self, v: Vertex, e: AugEdge) -> usize {
        self.in_order[v].iter().position(|&x| x == e).expect("edge enters the vertex")
    }

    fn out_rank(&self, v: Vertex, e: AugEdge) -> usize {
        self.out_order[v].iter().position(|&x| x == e).expect("edge leaves the vertex")
    }
}

/// The framing induced by the reduction order: original edges in the order of
/// `spec`, then `(s, v)` last among incoming and `(v, t)` last among outgoing.
pub fn sigma_tilde_framing(graph: &MultiGraph, spec: &FramingSpec) -> Framing {
    let n = graph.n();
    let mut in_order = vec![Vec::new(); n + 1];
    let mut out_order = vec![Vec::new(); n + 1];
    for v in 1..=n {
        in_order[v] = spec.in_order(v).iter().map(|&id| AugEdge::Inner(id)).collect();
        in_order[v].push(AugEdge::Source(v));
        out_order[v] = spec.out_order(v).iter().map(|&id| AugEdge::Inner(id)).collect();
        out_order[v].push(AugEdge::Sink(v));
    }
    Framing { in_order, out_order }
}

struct Walk<'a> {
    edges: Vec<AugEdge>,
    vertices: Vec<Vertex>,
    _aug: &'a AugmentedGraph,
}

impl<'a> Walk<'a> {
    fn new(route: &Route, aug: &'a AugmentedGraph) -> Self {
        let edges = route.aug_edges();
        let mut vertices = vec![aug.source()];
        vertices.extend(edges.iter().map(|&e| aug.endpoints(e).1));
        Self { edges, vertices, _aug: aug }
    }

    fn position(&self, v: Vertex) -> Option<usize> {
        let last = self.vertices.len() - 1;
        self.vertices[1..last].iter().position(|&x| x == v).map(|k| k + 1)
    }
}

/// Compares the parts of two routes entering `v`: walking back from `v`, the
/// first vertex where their entering edges differ decides by its in-order.
fn compare_in(p: &Walk<'_>, q: &Walk<'_>, pv: usize, qv: usize, framing: &Framing) -> Ordering {
    let (mut i, mut j) = (pv, qv);
    while i > 0 && j > 0 {
        let (ep, eq) = (p.edges[i - 1], q.edges[j - 1]);
        if ep != eq {
            let w = p.vertices[i];
            return framing.in_rank(w, ep).cmp(&framing.in_rank(w, eq));
        }
        i -= 1;
        j -= 1;
    }
    Ordering::Equal
}

fn compare_out(p: &Walk<'_>, q: &Walk<'_>, pv: usize, qv: usize, framing: &Framing) -> Ordering {
    let (mut i, mut j) = (pv, qv);
    while i < p.edges.len() && j < q.edges.len() {
        let (ep, eq) = (p.edges[i], q.edges[j]);
        if ep != eq {
            let w = p.vertices[i];
            return framing.out_rank(w, ep).cmp(&framing.out_rank(w, eq));
        }
        i += 1;
        j += 1;
    }
    Ordering::Equal
}

/// Routes are coherent when at no common inner vertex the order of their
/// incoming parts is opposite to the order of their outgoing parts.
pub fn coherent(p: &Route, q: &Route, framing: &Framing, aug: &AugmentedGraph) -> bool {
    let (wp, wq) = (Walk::new(p, aug), Walk::new(q, aug));
    for (pv, &v) in wp.vertices.iter().enumerate() {
        let Some(qv) = wq.position(v) else { continue };
        if pv == 0 || pv == wp.vertices.len() - 1 {
            continue;
        }
        let incoming = compare_in(&wp, &wq, pv, qv, framing);
        let outgoing = compare_out(&wp, &wq, pv, qv, framing);
        if incoming != Ordering::Equal && outgoing != Ordering::Equal && incoming != outgoing {
            return false;
        }
    }
    true
}

/// Symmetric coherence relation on the routes of a framed augmented graph.
#[derive(Clone, Debug)]
pub struct CoherenceGraph {
    adjacency: Vec<FixedBitSet>,
}

impl CoherenceGraph {
    pub fn new(routes: &[Route], framing: &Framing, aug: &AugmentedGraph) -> Self {
        let r = routes.len();
        let mut adjacency = vec![FixedBitSet::with_capacity(r); r];
        for a in 0..r {
            for b in a + 1..r {
                if coherent(&routes[a], &routes[b], framing, aug) {
                    adjacency[a].insert(b);
                    adjacency[b].insert(a);
                }
            }
        }
        Self { adjacency }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(b)
    }

    /// All maximal cliques, each sorted, the list sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        maximal_cliques_of(&self.adjacency)
    }
}

fn maximal_cliques_of(adjacency: &[FixedBitSet]) -> Vec<Vec<usize>> {
    fn expand(
        adjacency: &[FixedBitSet],
        clique: &mut Vec<usize>,
        mut candidates: FixedBitSet,
        mut excluded: FixedBitSet,
        out: &mut Vec<Vec<usize>>,
    ) {
        if candidates.is_clear() {
            if excluded.is_clear() {
                let mut c = clique.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        // pivot: the vertex of P ∪ X with most neighbours in P
        let pivot = candidates
            .ones()
            .chain(excluded.ones())
            .max_by_key(|&u| adjacency[u].intersection(&candidates).count())
            .expect("candidates are nonempty");
        let mut branch = candidates.clone();
        branch.difference_with(&adjacency[pivot]);
        for v in branch.ones().collect::<Vec<_>>() {
            clique.push(v);
            let mut next_candidates = candidates.clone();
            next_candidates.intersect_with(&adjacency[v]);
            let mut next_excluded = excluded.clone();
            next_excluded.intersect_with(&adjacency[v]);
            expand(adjacency, clique, next_candidates, next_excluded, out);
            clique.pop();
            candidates.set(v, false);
            excluded.insert(v);
        }
    }

    let n = adjacency.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    expand(adjacency, &mut Vec::new(), all, FixedBitSet::with_capacity(n), &mut out);
    out.sort();
    out
}

pub fn maximal_cliques(routes: &[Route], framing: &Framing, aug: &AugmentedGraph) -> Vec<Vec<usize>> {
    CoherenceGraph::new(routes, framing, aug).maximal_cliques()
}

/// A simplicial complex on vertices `0..vertex_count`, given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

/// f- and h-vectors: `f[0]` is `f_{-1}`, `f[i + 1]` counts `i`-faces, and
/// `h = (h_0, …, h_d)` with `d` the largest facet size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FHVectors {
    pub f: Vec<BigInt>,
    pub h: Vec<BigInt>,
}

impl SimplicialComplex {
    /// Sorts each facet and drops duplicates and facets contained in others;
    /// the order of the remaining facets is kept.
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<usize>>) -> Self {
        let sorted: Vec<Vec<usize>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for (k, f) in sorted.iter().enumerate() {
            let dominated = sorted.iter().enumerate().any(|(j, g)| {
                j != k && is_subset(f, g) && (g.len() > f.len() || j < k)
            });
            if !dominated {
                kept.push(f.clone());
            }
        }
        Self { vertex_count, facets: kept }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Largest facet size; the complex has dimension `d - 1`.
    pub fn d(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let d = self.d();
        self.facets.iter().all(|f| f.len() == d)
    }

    /// Every face, the empty face included, in sorted order.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 0u64..(1u64 << k) {
                let face: Vec<usize> = (0..k).filter(|&b| mask >> b & 1 == 1).map(|b| facet[b]).collect();
                out.insert(face);
            }
        }
        out
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// `(f_{-1}, f_0, …, f_{d-1})`.
    pub fn f_vector(&self) -> Vec<BigInt> {
        f_vector_of(self.d(), &self.faces())
    }

    pub fn fh_vectors(&self) -> FHVectors {
        let f = self.f_vector();
        let h = h_vector(&f);
        FHVectors { f, h }
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

fn f_vector_of(d: usize, faces: &BTreeSet<Vec<usize>>) -> Vec<BigInt> {
    let mut f = vec![BigInt::zero(); d + 1];
    for face in faces {
        f[face.len()] += 1;
    }
    f
}

pub fn complex_from_cliques(vertex_count: usize, cliques: &[Vec<usize>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(vertex_count, cliques.to_vec())
}

/// h-vector from `f = (f_{-1}, …, f_{d-1})` through
/// `Σ f_{i-1} (x-1)^{d-i} = Σ h_i x^{d-i}`.
pub fn h_vector(f: &[BigInt]) -> Vec<BigInt> {
    let d = f.len() - 1;
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let term = &f[i] * binomial(BigInt::from(d - i), BigInt::from(k - i));
                    if (k - i) % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect()
}

/// `Σ h_i x^i`.
pub fn h_polynomial(h: &[BigInt]) -> UniPoly {
    UniPoly::new(h.to_vec())
}

/// `Σ_{F ∈ C} x^{|F|} (1 - x)^{d - |F|}`, summed face by face.
pub fn h_polynomial_by_faces(complex: &SimplicialComplex) -> UniPoly {
    let d = complex.d();
    let one_minus_x = UniPoly::from_i64(&[1, -1]);
    let mut by_size = vec![0usize; d + 1];
    for face in complex.faces() {
        by_size[face.len()] += 1;
    }
    let mut total = UniPoly::zero();
    for (size, &count) in by_size.iter().enumerate() {
        let mut xs = vec![BigInt::zero(); size + 1];
        xs[size] = BigInt::from(count);
        total = &total + &(&UniPoly::new(xs) * &one_minus_x.pow((d - size) as u32));
    }
    total
}

/// A complex is flag when every set of vertices that are pairwise joined by
/// an edge is a face.
pub fn is_flag(complex: &SimplicialComplex) -> bool {
    let n = complex.vertex_count;
    let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
    for facet in complex.facets() {
        for &a in facet {
            for &b in facet {
                if a != b {
                    adjacency[a].insert(b);
                }
            }
        }
    }
    let used: BTreeSet<usize> = complex.facets.iter().flatten().copied().collect();
    maximal_cliques_of(&adjacency)
        .into_iter()
        .filter(|c| c.len() > 1 || used.contains(&c[0]))
        .all(|c| complex.contains_face(&c))
}

/// Edges of the augmented graph used by each route, as bitsets over
/// [`AugmentedGraph::edges`].
fn supports(aug: &AugmentedGraph, routes: &[Route]) -> Vec<FixedBitSet> {
    routes
        .iter()
        .map(|r| {
            let mut set = FixedBitSet::with_capacity(aug.edge_count());
            for e in r.aug_edges() {
                set.insert(aug.edge_position(e));
            }
            set
        })
        .collect()
}

/// A face is interior when its routes jointly use every edge of the augmented graph.
pub fn is_interior(face: &[usize], aug: &AugmentedGraph, routes: &[Route]) -> bool {
    let support = supports(aug, routes);
    covers_all(face, &support, aug.edge_count())
}

fn covers_all(face: &[usize], support: &[FixedBitSet], edge_count: usize) -> bool {
    let mut union = FixedBitSet::with_capacity(edge_count);
    for &r in face {
        union.union_with(&support[r]);
    }
    union.count_ones(..) == edge_count
}

/// Interior faces of `complex`, sorted.
pub fn interior_faces(complex: &SimplicialComplex, aug: &AugmentedGraph, routes: &[Route]) -> Vec<Vec<usize>> {
    let support = supports(aug, routes);
    complex
        .faces()
        .into_iter()
        .filter(|f| covers_all(f, &support, aug.edge_count()))
        .collect()
}

/// `counts[i]` is the number of interior faces of dimension `i`.
pub fn interior_face_counts(complex: &SimplicialComplex, aug: &AugmentedGraph, routes: &[Route]) -> Vec<usize> {
    let d = complex.d();
    let mut counts = vec![0; d];
    for face in interior_faces(complex, aug, routes) {
        if let Some(dim) = face.len().checked_sub(1) {
            counts[dim] += 1;
        }
    }
    counts
}

/// The clique triangulation of the flow polytope of the augmented graph
/// under the framing induced by `spec`.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub graph: MultiGraph,
    pub aug: AugmentedGraph,
    pub routes: Vec<Route>,
    pub framing: Framing,
    pub coherence: CoherenceGraph,
    pub cliques: Vec<Vec<usize>>,
    pub complex: SimplicialComplex,
}

impl Triangulation {
    pub fn new(graph: &MultiGraph, spec: &FramingSpec) -> Self {
        let aug = augment(graph);
        let routes = aug.routes();
        let framing = sigma_tilde_framing(graph, spec);
        let coherence = CoherenceGraph::new(&routes, &framing, &aug);
        let cliques = coherence.maximal_cliques();
        let complex = complex_from_cliques(routes.len(), &cliques);
        Self { graph: graph.clone(), aug, routes, framing, coherence, cliques, complex }
    }

    pub fn canonical(graph: &MultiGraph) -> Self {
        Self::new(graph, &FramingSpec::canonical(graph))
    }

    pub fn route_index(&self) -> BTreeMap<&Route, usize> {
        self.routes.iter().enumerate().map(|(k, r)| (r, k)).collect()
    }

    /// The face spanned by the routes of a leaf (or intersection of leaves).
    pub fn face_of(&self, node: &NodeGraph) -> Vec<usize> {
        let index = self.route_index();
        let mut face: Vec<usize> = leaf_to_routes(node, &self.graph)
            .expect("node graphs of the tree are valid")
            .iter()
            .map(|r| index[r])
            .collect();
        face.sort_unstable();
        face
    }

    /// Dimension of the flow polytope, `|E| + n - 1`.
    pub fn dimension(&self) -> usize {
        (self.graph.edge_count() + self.graph.n()).saturating_sub(1)
    }
}

fn describe_face(t: &Triangulation, face: &[usize]) -> String {
    let names: Vec<String> = face.iter().map(|&k| format!("{}", t.routes[k])).collect();
    format!("{{{}}}", names.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThmHReport {
    /// Reduced form at `x = 1` from the canonical tree.
    pub q: UniPoly,
    /// `h(C, β + 1)` for the clique triangulation.
    pub h_shifted: UniPoly,
    /// `Σ f°_i β^{d-1-i}`.
    pub interior: UniPoly,
    pub h_from_f: Vec<BigInt>,
    /// Face-by-face h-polynomial agrees with the f-to-h transform.
    pub h_formulas_agree: bool,
    pub passed: bool,
}

pub fn verify_thm_h(graph: &MultiGraph) -> ThmHReport {
    let tree = build_reduction_tree(graph, &ReductionStrategy::Sigma);
    let t = Triangulation::canonical(graph);
    verify_thm_h_with(&tree, &t)
}

pub fn verify_thm_h_with(tree: &ReductionTree, t: &Triangulation) -> ThmHReport {
    let q = specialize_x_to_one(&reduced_form_from_tree(tree));
    let fh = t.complex.fh_vectors();
    let h_poly = h_polynomial(&fh.h);
    let h_formulas_agree = h_poly == h_polynomial_by_faces(&t.complex);
    let h_shifted = h_poly.shift(1);
    let counts = interior_face_counts(&t.complex, &t.aug, &t.routes);
    let d = t.complex.d();
    let mut interior = vec![BigInt::zero(); d];
    for (dim, &c) in counts.iter().enumerate() {
        interior[d - 1 - dim] += c;
    }
    let interior = UniPoly::new(interior);
    let passed = h_formulas_agree && q == h_shifted && h_shifted == interior;
    ThmHReport { q, h_shifted, interior, h_from_f: fh.h, h_formulas_agree, passed }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropCohReport {
    pub full_leaves: usize,
    pub maximal_cliques: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

pub fn verify_prop_coh(graph: &MultiGraph) -> PropCohReport {
    let tree = build_reduction_tree(graph, &ReductionStrategy::Sigma);
    let t = Triangulation::canonical(graph);
    let leaves: Vec<NodeGraph> = tree.leaves().into_iter().cloned().collect();
    verify_prop_coh_with(&leaves, tree.root_edges(), &t)
}

/// Full-dimensional leaves must span exactly the maximal cliques, and every
/// other leaf must span a clique.
pub fn verify_prop_coh_with(leaves: &[NodeGraph], root_edges: usize, t: &Triangulation) -> PropCohReport {
    let mut counterexample = None;
    let mut full_faces = BTreeSet::new();
    let mut full_leaves = 0;
    for leaf in leaves {
        let face = t.face_of(leaf);
        let is_clique = face.iter().all(|&a| face.iter().all(|&b| a == b || t.coherence.adjacent(a, b)));
        if !is_clique && counterexample.is_none() {
            counterexample = Some(format!("leaf {} spans non-coherent routes {}", leaf, describe_face(t, &face)));
        }
        if leaf.edge_count() == root_edges {
            full_leaves += 1;
            full_faces.insert(face);
        }
    }
    let cliques: BTreeSet<Vec<usize>> = t.cliques.iter().cloned().collect();
    if counterexample.is_none() && full_faces != cliques {
        let witness = full_faces
            .symmetric_difference(&cliques)
            .next()
            .map(|f| describe_face(t, f))
            .unwrap_or_default();
        counterexample = Some(format!(
            "{} full leaves vs {} maximal cliques; first difference {}",
            full_faces.len(),
            cliques.len(),
            witness
        ));
    }
    if counterexample.is_none() && full_leaves != full_faces.len() {
        counterexample = Some(String::from("two full-dimensional leaves span the same simplex"));
    }
    PropCohReport {
        full_leaves,
        maximal_cliques: t.cliques.len(),
        passed: counterexample.is_none(),
        counterexample,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafFaceReport {
    /// Leaves and interior faces match one to one, by route set.
    pub interior_faces_match: bool,
    /// Route sets of pairwise leaf intersections behave as intersections of faces.
    pub intersections_match: bool,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// Leaves correspond one to one with interior faces, and for leaves `H1`,
/// `H2` the face of `H1 ∩ H2` is the intersection of their faces, which is
/// interior exactly when `H1 ∩ H2` is itself a leaf.
pub fn verify_leaf_faces(tree: &ReductionTree, t: &Triangulation) -> LeafFaceReport {
    let leaves: Vec<&NodeGraph> = tree.leaves();
    let leaf_set: BTreeSet<&NodeGraph> = leaves.iter().copied().collect();
    let faces: Vec<Vec<usize>> = leaves.iter().map(|l| t.face_of(l)).collect();
    let face_set: BTreeSet<Vec<usize>> = faces.iter().cloned().collect();
    let interior: BTreeSet<Vec<usize>> = interior_faces(&t.complex, &t.aug, &t.routes).into_iter().collect();
    let interior_faces_match = face_set == interior && faces.len() == interior.len();
    let mut counterexample = None;
    if !interior_faces_match {
        let witness = face_set.symmetric_difference(&interior).next().map(|f| describe_face(t, f));
        counterexample = Some(format!(
            "{} leaves, {} interior faces; first difference {}",
            faces.len(),
            interior.len(),
            witness.unwrap_or_default()
        ));
    }
    let mut intersections_match = true;
    'pairs: for (a, la) in leaves.iter().enumerate() {
        for (b, lb) in leaves.iter().enumerate().skip(a) {
            let meet = la.intersect(lb);
            let meet_face = t.face_of(&meet);
            let common: Vec<usize> = faces[a].iter().copied().filter(|x| faces[b].binary_search(x).is_ok()).collect();
            let is_leaf = leaf_set.contains(&meet);
            let inside = interior.contains(&meet_face);
            if meet_face != common || is_leaf != inside {
                intersections_match = false;
                if counterexample.is_none() {
                    counterexample = Some(format!("leaves {} and {} meet in {}", la, lb, meet));
                }
                break 'pairs;
            }
        }
    }
    LeafFaceReport {
        interior_faces_match,
        intersections_match,
        passed: interior_faces_match && intersections_match,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeId;

    fn route(first: Vertex, path: &[usize], last: Vertex) -> Route {
        Route { first, path: path.iter().map(|&k| EdgeId(k)).collect(), last }
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sigma_tilde_puts_source_and_sink_edges_last() {
        let g = MultiGraph::path(3);
        let framing = sigma_tilde_framing(&g, &FramingSpec::canonical(&g));
        assert_eq!(framing.in_order(2), &[AugEdge::Inner(EdgeId(1)), AugEdge::Source(2)]);
        assert_eq!(framing.out_order(2), &[AugEdge::Inner(EdgeId(2)), AugEdge::Sink(2)]);

        let isolated = MultiGraph::new(1, &[]).unwrap();
        let framing = sigma_tilde_framing(&isolated, &FramingSpec::canonical(&isolated));
        assert_eq!(framing.in_order(1), &[AugEdge::Source(1)]);
        assert_eq!(framing.out_order(1), &[AugEdge::Sink(1)]);

        let frame = MultiGraph::new(4, &[(1, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap();
        let framing = sigma_tilde_framing(&frame, &FramingSpec::canonical(&frame));
        assert_eq!(
            framing.in_order(2),
            &[AugEdge::Inner(EdgeId(1)), AugEdge::Inner(EdgeId(2)), AugEdge::Source(2)]
        );
    }

    #[test]
    fn p3_coherence() {
        let g = MultiGraph::path(3);
        let aug = augment(&g);
        let framing = sigma_tilde_framing(&g, &FramingSpec::canonical(&g));
        let s12t = route(1, &[1], 2);
        let s23t = route(2, &[2], 3);
        let s123t = route(1, &[1, 2], 3);
        assert!(!coherent(&s12t, &s23t, &framing, &aug));
        assert!(!coherent(&s23t, &s12t, &framing, &aug));
        assert!(coherent(&s12t, &s12t, &framing, &aug));
        assert!(coherent(&s123t, &s12t, &framing, &aug));
        assert!(coherent(&s123t, &s23t, &framing, &aug));
    }

    #[test]
    fn p3_cliques_and_vectors() {
        let t = Triangulation::canonical(&MultiGraph::path(3));
        // routes: s1t, s12t, s123t, s2t, s23t, s3t
        assert_eq!(t.cliques, vec![vec![0, 1, 2, 3, 5], vec![0, 2, 3, 4, 5]]);
        let fh = t.complex.fh_vectors();
        assert_eq!(fh.f, ints(&[1, 6, 14, 16, 9, 2]));
        assert_eq!(fh.h, ints(&[1, 1, 0, 0, 0, 0]));
        assert_eq!(h_polynomial_by_faces(&t.complex), h_polynomial(&fh.h));
        assert!(is_flag(&t.complex));
        assert_eq!(interior_face_counts(&t.complex, &t.aug, &t.routes), vec![0, 0, 0, 1, 2]);
    }

    #[test]
    fn f_vector_oracle_by_inclusion_exclusion() {
        // two 5-simplices sharing four vertices: faces of each, minus the shared ones
        let mut f = vec![0i64; 6];
        for (k, slot) in f.iter_mut().enumerate() {
            let b = |n: i64, k: i64| -> i64 { (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)) };
            *slot = 2 * b(5, k as i64) - b(4, k as i64);
        }
        let t = Triangulation::canonical(&MultiGraph::path(3));
        assert_eq!(t.complex.f_vector(), ints(&f));
    }

    #[test]
    fn single_simplex() {
        let t = Triangulation::canonical(&MultiGraph::path(2));
        assert_eq!(t.cliques, vec![vec![0, 1, 2]]);
        assert_eq!(t.complex.fh_vectors().h, ints(&[1, 0, 0, 0]));
        assert_eq!(interior_face_counts(&t.complex, &t.aug, &t.routes), vec![0, 0, 1]);
    }

    #[test]
    fn flagness_fixtures() {
        let hollow_triangle = SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(!is_flag(&hollow_triangle));
        // the 4-cycle's minimal non-faces are its diagonals, so it is flag
        let square = SimplicialComplex::from_facets(4, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        assert!(is_flag(&square));
        let solid = SimplicialComplex::from_facets(3, vec![vec![0, 1, 2]]);
        assert!(is_flag(&solid));
    }

    #[test]
    fn from_facets_drops_dominated_sets() {
        let c = SimplicialComplex::from_facets(4, vec![vec![2, 0, 1], vec![0, 1], vec![3], vec![1, 0, 2]]);
        assert_eq!(c.facets(), &[vec![0, 1, 2], vec![3]]);
        assert!(!c.is_pure());
    }

    #[test]
    fn p4_theorem_h() {
        let report = verify_thm_h(&MultiGraph::path(4));
        assert!(report.passed, "{:?}", report);
        assert_eq!(report.q, UniPoly::from_i64(&[5, 5, 1]));
        let t = Triangulation::canonical(&MultiGraph::path(4));
        let counts = interior_face_counts(&t.complex, &t.aug, &t.routes);
        assert_eq!(&counts[4..], &[1, 5, 5]);
        assert!(counts[..4].iter().all(|&c| c == 0));
    }

    #[test]
    fn proposition_on_small_graphs() {
        for g in [MultiGraph::path(2), MultiGraph::path(3), MultiGraph::path(4), MultiGraph::complete(3)] {
            let report = verify_prop_coh(&g);
            assert!(report.passed, "{:?}", report);
            assert_eq!(report.full_leaves, report.maximal_cliques);
        }
    }

    #[test]
    fn leaf_faces_on_p4() {
        let g = MultiGraph::path(4);
        let tree = build_reduction_tree(&g, &ReductionStrategy::Sigma);
        let report = verify_leaf_faces(&tree, &Triangulation::canonical(&g));
        assert!(report.passed, "{:?}", report);
    }
}
