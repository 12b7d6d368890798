//! Directed multigraphs on `[n]`, their augmentation by a source and a sink,
//! routes of the augmented graph, and the provenance-carrying edges that
//! label the nodes of a reduction tree.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Vertices are `1..=n`. In serialized routes and netflow vectors the source
/// is `0` and the sink is `n + 1`.
pub type Vertex = usize;

/// One-based index of an edge of the root graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: Vertex,
    pub head: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: Vertex },
    #[error("edge {index} = ({tail},{head}) must go from the smaller to the larger vertex")]
    Misoriented { index: usize, tail: Vertex, head: Vertex },
    #[error("edge {index} uses vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { index: usize, vertex: Vertex, n: usize },
    #[error("provenance is empty")]
    EmptyProvenance,
    #[error("provenance refers to unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("provenance edges {0} and {1} do not chain into a path")]
    BrokenPath(EdgeId, EdgeId),
    #[error("node graph has {found} vertices but the root graph has {expected}")]
    VertexCountMismatch { expected: usize, found: usize },
}

/// A loopless directed multigraph on `[n]` whose edges point from the smaller
/// to the larger endpoint. Parallel edges are told apart by their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl MultiGraph {
    /// Builds a graph from `(tail, head)` pairs; the `k`-th pair becomes edge `k + 1`.
    pub fn new(n: usize, pairs: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(pairs.len());
        for (k, &(tail, head)) in pairs.iter().enumerate() {
            let index = k + 1;
            for vertex in [tail, head] {
                if vertex == 0 || vertex > n {
                    return Err(GraphError::VertexOutOfRange { index, vertex, n });
                }
            }
            if tail == head {
                return Err(GraphError::Loop { index, vertex: tail });
            }
            if tail > head {
                return Err(GraphError::Misoriented { index, tail, head });
            }
            edges.push(Edge { id: EdgeId(index), tail, head });
        }
        Ok(Self { n, edges })
    }

    /// The path `1 → 2 → … → n`.
    pub fn path(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Self::new(n, &pairs).expect("path edges are valid")
    }

    /// The complete graph on `[n]`, edges listed lexicographically.
    pub fn complete(n: usize) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                pairs.push((i, j));
            }
        }
        Self::new(n, &pairs).expect("complete graph edges are valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        id.0.checked_sub(1).and_then(|k| self.edges.get(k))
    }

    pub fn pairs(&self) -> Vec<(Vertex, Vertex)> {
        self.edges.iter().map(|e| (e.tail, e.head)).collect()
    }

    /// Edges entering `v`, in index order.
    pub fn in_edges(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.head == v)
    }

    /// Edges leaving `v`, in index order.
    pub fn out_edges(&self, v: Vertex) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.tail == v)
    }
}

/// An edge of the augmented graph.
///
/// The derived order (source edges, then original edges, then sink edges) is
/// only used as a stable identifier; framings carry their own orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AugEdge {
    Source(Vertex),
    Inner(EdgeId),
    Sink(Vertex),
}

/// `G` together with a source `s` below every vertex and a sink `t` above
/// every vertex, joined by `(s, i)` and `(i, t)` for all `i ∈ [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    base: MultiGraph,
}

pub fn augment(graph: &MultiGraph) -> AugmentedGraph {
    AugmentedGraph { base: graph.clone() }
}

impl AugmentedGraph {
    pub fn base(&self) -> &MultiGraph {
        &self.base
    }

    pub fn source(&self) -> Vertex {
        0
    }

    pub fn sink(&self) -> Vertex {
        self.base.n + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.base.n + 2
    }

    pub fn edge_count(&self) -> usize {
        self.base.edge_count() + 2 * self.base.n
    }

    /// All edges: original edges by index, then `(s, i)`, then `(i, t)`.
    pub fn edges(&self) -> Vec<AugEdge> {
        let n = self.base.n;
        self.base
            .edges
            .iter()
            .map(|e| AugEdge::Inner(e.id))
            .chain((1..=n).map(AugEdge::Source))
            .chain((1..=n).map(AugEdge::Sink))
            .collect()
    }

    /// Dense position of `edge` in [`AugmentedGraph::edges`].
    pub fn edge_position(&self, edge: AugEdge) -> usize {
        let m = self.base.edge_count();
        let n = self.base.n;
        match edge {
            AugEdge::Inner(id) => id.0 - 1,
            AugEdge::Source(v) => m + v - 1,
            AugEdge::Sink(v) => m + n + v - 1,
        }
    }

    pub fn endpoints(&self, edge: AugEdge) -> (Vertex, Vertex) {
        match edge {
            AugEdge::Source(v) => (self.source(), v),
            AugEdge::Sink(v) => (v, self.sink()),
            AugEdge::Inner(id) => {
                let e = self.base.edge(id).expect("edge belongs to the graph");
                (e.tail, e.head)
            }
        }
    }

    /// Every route, each once, sorted by `(first vertex, inner path, last vertex)`.
    pub fn routes(&self) -> Vec<Route> {
        routes(self)
    }
}

/// A maximal `s → t` path of the augmented graph: `(s, first)`, the inner
/// path, then `(last, t)`. The trivial route through `v` has an empty path.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Route {
    pub first: Vertex,
    pub path: Vec<EdgeId>,
    pub last: Vertex,
}

impl Route {
    pub fn trivial(v: Vertex) -> Self {
        Self { first: v, path: Vec::new(), last: v }
    }

    pub fn is_trivial(&self) -> bool {
        self.path.is_empty()
    }

    /// Edges of the route in order, from the source edge to the sink edge.
    pub fn aug_edges(&self) -> Vec<AugEdge> {
        let mut out = Vec::with_capacity(self.path.len() + 2);
        out.push(AugEdge::Source(self.first));
        out.extend(self.path.iter().copied().map(AugEdge::Inner));
        out.push(AugEdge::Sink(self.last));
        out
    }

    /// The inner vertices visited, `first..=last`.
    pub fn inner_vertices(&self, graph: &MultiGraph) -> Vec<Vertex> {
        let mut out = vec![self.first];
        for id in &self.path {
            out.push(graph.edge(*id).expect("route edge belongs to the graph").head);
        }
        out
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s→{}", self.first)?;
        for id in &self.path {
            write!(f, "→[{}]", id)?;
        }
        write!(f, "→{}→t", self.last)
    }
}

/// Enumerates the routes of `aug` depth-first from each start vertex, following
/// out-edges sorted by `(head, index)`, then sorts them by identity.
pub fn routes(aug: &AugmentedGraph) -> Vec<Route> {
    let graph = aug.base();
    let mut adjacency: Vec<Vec<&Edge>> = vec![Vec::new(); graph.n() + 1];
    for e in graph.edges() {
        adjacency[e.tail].push(e);
    }
    for out in &mut adjacency {
        out.sort_by_key(|e| (e.head, e.id));
    }

    fn extend(
        adjacency: &[Vec<&Edge>],
        first: Vertex,
        at: Vertex,
        path: &mut Vec<EdgeId>,
        out: &mut Vec<Route>,
    ) {
        out.push(Route { first, path: path.clone(), last: at });
        for e in &adjacency[at] {
            path.push(e.id);
            extend(adjacency, first, e.head, path, out);
            path.pop();
        }
    }

    let mut out = Vec::new();
    let mut path = Vec::new();
    for v in 1..=graph.n() {
        extend(&adjacency, v, v, &mut path, &mut out);
    }
    out.sort();
    out
}

/// An edge of a reduction-tree node, recorded as the path of root-graph edges
/// it is the formal sum of. Two such edges are equal iff their provenance
/// lists are identical.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProvEdge {
    tail: Vertex,
    head: Vertex,
    provenance: Vec<EdgeId>,
}

impl ProvEdge {
    pub fn original(edge: &Edge) -> Self {
        Self { tail: edge.tail, head: edge.head, provenance: vec![edge.id] }
    }

    /// Checks that `provenance` is a directed path in `graph`.
    pub fn from_path(graph: &MultiGraph, provenance: Vec<EdgeId>) -> Result<Self, GraphError> {
        let first = *provenance.first().ok_or(GraphError::EmptyProvenance)?;
        let mut current = *graph.edge(first).ok_or(GraphError::UnknownEdge(first))?;
        let tail = current.tail;
        for &id in &provenance[1..] {
            let next = *graph.edge(id).ok_or(GraphError::UnknownEdge(id))?;
            if next.tail != current.head {
                return Err(GraphError::BrokenPath(current.id, id));
            }
            current = next;
        }
        Ok(Self { tail, head: current.head, provenance })
    }

    /// The edge `(a.tail, b.head)` whose provenance is `a` followed by `b`.
    pub fn concat(a: &ProvEdge, b: &ProvEdge) -> Self {
        debug_assert_eq!(a.head, b.tail);
        let mut provenance = a.provenance.clone();
        provenance.extend_from_slice(&b.provenance);
        Self { tail: a.tail, head: b.head, provenance }
    }

    pub fn tail(&self) -> Vertex {
        self.tail
    }

    pub fn head(&self) -> Vertex {
        self.head
    }

    pub fn provenance(&self) -> &[EdgeId] {
        &self.provenance
    }

    /// The route `(s, tail), provenance…, (head, t)`.
    pub fn to_route(&self) -> Route {
        Route { first: self.tail, path: self.provenance.clone(), last: self.head }
    }
}

impl fmt::Display for ProvEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})[", self.tail, self.head)?;
        for (k, id) in self.provenance.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{}", id)?;
        }
        f.write_str("]")
    }
}

/// The graph labelling a reduction-tree node: vertex set `[n]` and a multiset
/// of provenance edges, stored sorted so that equality is multiset equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeGraph {
    n: usize,
    edges: Vec<ProvEdge>,
}

impl NodeGraph {
    pub fn new(n: usize, mut edges: Vec<ProvEdge>) -> Self {
        edges.sort();
        Self { n, edges }
    }

    /// The root of a reduction tree: every edge is its own provenance.
    pub fn from_graph(graph: &MultiGraph) -> Self {
        Self::new(graph.n(), graph.edges().iter().map(ProvEdge::original).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[ProvEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &ProvEdge) -> bool {
        self.edges.binary_search(edge).is_ok()
    }

    /// Multiset intersection; the vertex set stays `[n]`.
    pub fn intersect(&self, other: &NodeGraph) -> NodeGraph {
        let (mut i, mut j) = (0, 0);
        let mut edges = Vec::new();
        while i < self.edges.len() && j < other.edges.len() {
            match self.edges[i].cmp(&other.edges[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    edges.push(self.edges[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        NodeGraph { n: self.n.max(other.n), edges }
    }

    /// No vertex has both an entering and a leaving edge.
    pub fn is_alternating(&self) -> bool {
        let mut has_in = vec![false; self.n + 1];
        let mut has_out = vec![false; self.n + 1];
        for e in &self.edges {
            has_out[e.tail] = true;
            has_in[e.head] = true;
        }
        !(1..=self.n).any(|v| has_in[v] && has_out[v])
    }
}

impl fmt::Display for NodeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", e)?;
        }
        f.write_str("}")
    }
}

pub fn intersect_node_graphs(a: &NodeGraph, b: &NodeGraph) -> NodeGraph {
    a.intersect(b)
}

/// The vertex set of the simplex of `node`: the route of every edge together
/// with the trivial route through each vertex of `[n]`.
pub fn leaf_to_routes(node: &NodeGraph, graph: &MultiGraph) -> Result<BTreeSet<Route>, GraphError> {
    if node.n() != graph.n() {
        return Err(GraphError::VertexCountMismatch { expected: graph.n(), found: node.n() });
    }
    let mut out = BTreeSet::new();
    for e in node.edges() {
        let checked = ProvEdge::from_path(graph, e.provenance.clone())?;
        if checked.tail != e.tail || checked.head != e.head {
            let last = *e.provenance.last().expect("nonempty provenance");
            return Err(GraphError::BrokenPath(e.provenance[0], last));
        }
        out.insert(e.to_route());
    }
    out.extend((1..=graph.n()).map(Route::trivial));
    Ok(out)
}
