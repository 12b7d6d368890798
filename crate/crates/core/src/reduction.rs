//! The reduction move on a node graph and reduction trees built from it.
//!
//! A reduction on edges `(i,j)` and `(j,k)` with `i < j < k` produces three
//! children, stored left to right as `G1` (keeps `(i,j)`), `G3` (keeps
//! neither) and `G2` (keeps `(j,k)`). Each child gains the edge `(i,k)` whose
//! provenance is the concatenation of the two reduced edges.
//!
//! Under the canonical order every vertex carries a total order on its
//! incoming and on its outgoing edges; the smallest non-alternating vertex is
//! reduced on its first incoming and first outgoing edge, and the orders are
//! carried to the children by [`propagate_order`].

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{EdgeId, MultiGraph, NodeGraph, ProvEdge, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("edge {0} is not present in the node graph")]
    EdgeAbsent(ProvEdge),
    #[error("edges {incoming} and {outgoing} do not meet at vertex {vertex}")]
    NotAdjacent { vertex: Vertex, incoming: ProvEdge, outgoing: ProvEdge },
    #[error("framing at vertex {vertex} is not a permutation of its {side} edges")]
    InvalidFraming { vertex: Vertex, side: &'static str },
}

/// The pair of edges reduced at an internal tree node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionChoice {
    pub vertex: Vertex,
    pub incoming: ProvEdge,
    pub outgoing: ProvEdge,
}

/// Which child of a reduction a node is.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Child {
    /// `G1`: keeps the incoming edge, drops the outgoing one.
    Left,
    /// `G3`: drops both.
    Middle,
    /// `G2`: keeps the outgoing edge, drops the incoming one.
    Right,
}

impl Child {
    pub const ALL: [Child; 3] = [Child::Left, Child::Middle, Child::Right];

    fn keeps_incoming(self) -> bool {
        self == Child::Left
    }

    fn keeps_outgoing(self) -> bool {
        self == Child::Right
    }
}

fn remove_one(edges: &mut Vec<ProvEdge>, edge: &ProvEdge) -> bool {
    match edges.iter().position(|e| e == edge) {
        Some(k) => {
            edges.remove(k);
            true
        }
        None => false,
    }
}

fn check_choice(node: &NodeGraph, choice: &ReductionChoice) -> Result<(), ReductionError> {
    for e in [&choice.incoming, &choice.outgoing] {
        if !node.contains(e) {
            return Err(ReductionError::EdgeAbsent(e.clone()));
        }
    }
    if choice.incoming.head() != choice.vertex || choice.outgoing.tail() != choice.vertex {
        return Err(ReductionError::NotAdjacent {
            vertex: choice.vertex,
            incoming: choice.incoming.clone(),
            outgoing: choice.outgoing.clone(),
        });
    }
    Ok(())
}

/// One child of the reduction of `node` at `choice`.
pub fn reduce_child(
    node: &NodeGraph,
    choice: &ReductionChoice,
    child: Child,
) -> Result<NodeGraph, ReductionError> {
    check_choice(node, choice)?;
    let mut edges = node.edges().to_vec();
    if !child.keeps_incoming() {
        remove_one(&mut edges, &choice.incoming);
    }
    if !child.keeps_outgoing() {
        remove_one(&mut edges, &choice.outgoing);
    }
    edges.push(ProvEdge::concat(&choice.incoming, &choice.outgoing));
    Ok(NodeGraph::new(node.n(), edges))
}

/// Returns `(G1, G3, G2)`, the children in left-to-right order.
pub fn reduce_step(
    node: &NodeGraph,
    choice: &ReductionChoice,
) -> Result<(NodeGraph, NodeGraph, NodeGraph), ReductionError> {
    Ok((
        reduce_child(node, choice, Child::Left)?,
        reduce_child(node, choice, Child::Middle)?,
        reduce_child(node, choice, Child::Right)?,
    ))
}

pub fn is_alternating(node: &NodeGraph) -> bool {
    node.is_alternating()
}

/// Initial total orders on the incoming and outgoing original edges of each
/// vertex. The same data drives the reduction order and the framing of the
/// augmented graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingSpec {
    in_orders: Vec<Vec<EdgeId>>,
    out_orders: Vec<Vec<EdgeId>>,
}

impl FramingSpec {
    /// Incoming edges by tail then index, outgoing edges by head then index.
    pub fn canonical(graph: &MultiGraph) -> Self {
        let n = graph.n();
        let mut in_orders = vec![Vec::new(); n + 1];
        let mut out_orders = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let mut ins: Vec<_> = graph.in_edges(v).collect();
            ins.sort_by_key(|e| (e.tail, e.id));
            in_orders[v] = ins.into_iter().map(|e| e.id).collect();
            let mut outs: Vec<_> = graph.out_edges(v).collect();
            outs.sort_by_key(|e| (e.head, e.id));
            out_orders[v] = outs.into_iter().map(|e| e.id).collect();
        }
        Self { in_orders, out_orders }
    }

    /// `in_orders[v - 1]` and `out_orders[v - 1]` list the edges entering and
    /// leaving `v`, smallest first.
    pub fn new(
        graph: &MultiGraph,
        in_orders: Vec<Vec<EdgeId>>,
        out_orders: Vec<Vec<EdgeId>>,
    ) -> Result<Self, ReductionError> {
        let n = graph.n();
        let check = |orders: &[Vec<EdgeId>], side: &'static str| -> Result<(), ReductionError> {
            if orders.len() != n {
                return Err(ReductionError::InvalidFraming { vertex: orders.len(), side });
            }
            for v in 1..=n {
                let mut expected: Vec<EdgeId> = if side == "incoming" {
                    graph.in_edges(v).map(|e| e.id).collect()
                } else {
                    graph.out_edges(v).map(|e| e.id).collect()
                };
                let mut given = orders[v - 1].clone();
                expected.sort();
                given.sort();
                if expected != given {
                    return Err(ReductionError::InvalidFraming { vertex: v, side });
                }
            }
            Ok(())
        };
        check(&in_orders, "incoming")?;
        check(&out_orders, "outgoing")?;
        let pad = |orders: Vec<Vec<EdgeId>>| {
            let mut padded = vec![Vec::new()];
            padded.extend(orders);
            padded
        };
        Ok(Self { in_orders: pad(in_orders), out_orders: pad(out_orders) })
    }

    pub fn n(&self) -> usize {
        self.in_orders.len() - 1
    }

    pub fn in_order(&self, v: Vertex) -> &[EdgeId] {
        &self.in_orders[v]
    }

    pub fn out_order(&self, v: Vertex) -> &[EdgeId] {
        &self.out_orders[v]
    }
}

/// A node graph with a total order on the edges entering and leaving each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedNode {
    graph: NodeGraph,
    in_order: Vec<Vec<ProvEdge>>,
    out_order: Vec<Vec<ProvEdge>>,
}

impl OrderedNode {
    pub fn root(graph: &MultiGraph, spec: &FramingSpec) -> Self {
        let n = graph.n();
        let lookup = |id: &EdgeId| ProvEdge::original(graph.edge(*id).expect("framed edge exists"));
        let in_order = (0..=n)
            .map(|v| if v == 0 { Vec::new() } else { spec.in_order(v).iter().map(lookup).collect() })
            .collect();
        let out_order = (0..=n)
            .map(|v| if v == 0 { Vec::new() } else { spec.out_order(v).iter().map(lookup).collect() })
            .collect();
        Self { graph: NodeGraph::from_graph(graph), in_order, out_order }
    }

    pub fn graph(&self) -> &NodeGraph {
        &self.graph
    }

    pub fn in_order(&self, v: Vertex) -> &[ProvEdge] {
        &self.in_order[v]
    }

    pub fn out_order(&self, v: Vertex) -> &[ProvEdge] {
        &self.out_order[v]
    }
}

/// The next reduction under the canonical order: the smallest vertex with
/// both incoming and outgoing edges, on its first edge of each kind.
pub fn sigma_next(node: &OrderedNode) -> Option<ReductionChoice> {
    (1..=node.graph.n()).find_map(|v| {
        let incoming = node.in_order[v].first()?;
        let outgoing = node.out_order[v].first()?;
        Some(ReductionChoice { vertex: v, incoming: incoming.clone(), outgoing: outgoing.clone() })
    })
}

/// Carries the edge orders of `parent` to one child of the reduction at
/// `choice`. Surviving edges keep their relative order. The new edge `(a,b)`
/// takes the rank of a dropped edge at its endpoint, or is placed directly
/// before a kept one.
pub fn propagate_order(parent: &OrderedNode, choice: &ReductionChoice, child: Child) -> OrderedNode {
    let mut in_order = parent.in_order.clone();
    let mut out_order = parent.out_order.clone();
    let new_edge = ProvEdge::concat(&choice.incoming, &choice.outgoing);
    let (a, v, b) = (choice.incoming.tail(), choice.vertex, choice.outgoing.head());

    let place = |order: &mut Vec<ProvEdge>, old: &ProvEdge, kept: bool| {
        let k = order.iter().position(|e| e == old).expect("reduced edge is ranked");
        if kept {
            order.insert(k, new_edge.clone());
        } else {
            order[k] = new_edge.clone();
        }
    };

    // at v the dropped edges simply disappear
    if !child.keeps_incoming() {
        remove_one(&mut in_order[v], &choice.incoming);
    }
    if !child.keeps_outgoing() {
        remove_one(&mut out_order[v], &choice.outgoing);
    }
    place(&mut out_order[a], &choice.incoming, child.keeps_incoming());
    place(&mut in_order[b], &choice.outgoing, child.keeps_outgoing());

    let edges = out_order.iter().flatten().cloned().collect();
    OrderedNode { graph: NodeGraph::new(parent.graph.n(), edges), in_order, out_order }
}

/// How the reduced pair is chosen at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStrategy {
    /// The canonical order with the canonical initial framing.
    Sigma,
    /// The canonical rule with caller-supplied initial orders.
    Framed(FramingSpec),
    /// Any non-alternating vertex and any incoming/outgoing pair there,
    /// drawn from a seeded generator.
    Random(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub choice: ReductionChoice,
    /// `[G1, G3, G2]`.
    pub children: Box<[TreeNode; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub graph: NodeGraph,
    pub reduction: Option<Reduction>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.reduction.is_none()
    }

    pub fn children(&self) -> &[TreeNode] {
        match &self.reduction {
            Some(r) => &r.children[..],
            None => &[],
        }
    }

    pub fn depth(&self) -> usize {
        self.children().iter().map(|c| c.depth() + 1).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.children().iter().map(TreeNode::node_count).sum::<usize>()
    }

    /// Leaves below this node, depth first, left to right.
    pub fn leaves(&self) -> Vec<&NodeGraph> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a NodeGraph>) {
        match &self.reduction {
            None => out.push(&self.graph),
            Some(r) => r.children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// All nodes, preorder.
    pub fn nodes(&self) -> Vec<&TreeNode> {
        let mut out = vec![self];
        for c in self.children() {
            out.extend(c.nodes());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTree {
    pub root: TreeNode,
}

impl ReductionTree {
    /// Edge count of the root graph.
    pub fn root_edges(&self) -> usize {
        self.root.graph.edge_count()
    }

    pub fn leaves(&self) -> Vec<&NodeGraph> {
        self.root.leaves()
    }

    /// Leaves with as many edges as the root, in depth-first order.
    pub fn full_dimensional_leaves(&self) -> Vec<&NodeGraph> {
        let full = self.root_edges();
        self.leaves().into_iter().filter(|l| l.edge_count() == full).collect()
    }

    /// `r[k]` is the number of leaves with `k` edges, for `k = 0..=|E|`.
    pub fn leaf_counts(&self) -> Vec<usize> {
        leaf_counts(self)
    }
}

pub fn leaves(tree: &ReductionTree) -> Vec<&NodeGraph> {
    tree.leaves()
}

pub fn leaf_counts(tree: &ReductionTree) -> Vec<usize> {
    let mut counts = vec![0; tree.root_edges() + 1];
    for leaf in tree.leaves() {
        counts[leaf.edge_count()] += 1;
    }
    counts
}

/// Upper bound `|E|·(n−1)` on the depth of any reduction tree of `graph`.
///
/// Total edge length `Σ (head − tail)` never decreases along a branch, grows
/// in every `G1`/`G2` step and is at most `|E|·(n−1)`; each `G3` step removes
/// an edge.
pub fn depth_bound(graph: &MultiGraph) -> usize {
    graph.edge_count() * graph.n().saturating_sub(1)
}

pub fn build_reduction_tree(graph: &MultiGraph, strategy: &ReductionStrategy) -> ReductionTree {
    let root = match strategy {
        ReductionStrategy::Sigma => build_ordered(OrderedNode::root(graph, &FramingSpec::canonical(graph))),
        ReductionStrategy::Framed(spec) => build_ordered(OrderedNode::root(graph, spec)),
        ReductionStrategy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            build_random(NodeGraph::from_graph(graph), &mut rng)
        }
    };
    ReductionTree { root }
}

fn build_ordered(node: OrderedNode) -> TreeNode {
    let Some(choice) = sigma_next(&node) else {
        return TreeNode { graph: node.graph, reduction: None };
    };
    let children = Child::ALL.map(|child| build_ordered(propagate_order(&node, &choice, child)));
    TreeNode { graph: node.graph, reduction: Some(Reduction { choice, children: Box::new(children) }) }
}

fn random_choice(node: &NodeGraph, rng: &mut ChaCha8Rng) -> Option<ReductionChoice> {
    let n = node.n();
    let mut ins: Vec<Vec<&ProvEdge>> = vec![Vec::new(); n + 1];
    let mut outs: Vec<Vec<&ProvEdge>> = vec![Vec::new(); n + 1];
    for e in node.edges() {
        ins[e.head()].push(e);
        outs[e.tail()].push(e);
    }
    let candidates: Vec<Vertex> = (1..=n).filter(|&v| !ins[v].is_empty() && !outs[v].is_empty()).collect();
    if candidates.is_empty() {
        return None;
    }
    let vertex = candidates[rng.gen_range(0..candidates.len())];
    let incoming = ins[vertex][rng.gen_range(0..ins[vertex].len())].clone();
    let outgoing = outs[vertex][rng.gen_range(0..outs[vertex].len())].clone();
    Some(ReductionChoice { vertex, incoming, outgoing })
}

fn build_random(graph: NodeGraph, rng: &mut ChaCha8Rng) -> TreeNode {
    let Some(choice) = random_choice(&graph, rng) else {
        return TreeNode { graph, reduction: None };
    };
    let children = Child::ALL.map(|child| {
        let next = reduce_child(&graph, &choice, child).expect("random choice is valid");
        build_random(next, rng)
    });
    TreeNode { graph, reduction: Some(Reduction { choice, children: Box::new(children) }) }
}
