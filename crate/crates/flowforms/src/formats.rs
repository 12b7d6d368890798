//! JSON file formats: graphs (with an optional leaf listing), routes,
//! polynomials and reduction trees.

use flowforms_core::graph::{EdgeId, GraphError, MultiGraph, NodeGraph, ProvEdge, Route};
use flowforms_core::poly::{MultivarPoly, RationalPoly, UniPoly};
use flowforms_core::reduction::{ReductionChoice, TreeNode};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph file")]
    Json(#[from] serde_json::Error),
    #[error("invalid graph")]
    Graph(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    leaves: Option<Vec<Vec<Vec<usize>>>>,
}

/// A graph together with an optional expected leaf listing.
#[derive(Clone, Debug)]
pub struct GraphInput {
    pub graph: MultiGraph,
    pub leaves: Option<Vec<NodeGraph>>,
}

fn node_from_paths(graph: &MultiGraph, paths: &[Vec<usize>]) -> Result<NodeGraph, GraphError> {
    let edges = paths
        .iter()
        .map(|p| ProvEdge::from_path(graph, p.iter().map(|&k| EdgeId(k)).collect()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NodeGraph::new(graph.n(), edges))
}

/// `{"n": .., "edges": [[tail, head], ..], "leaves": [[[e, ..], ..], ..]}`;
/// edge order fixes edge indices.
pub fn parse_graph(text: &str) -> Result<GraphInput, FormatError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let pairs: Vec<(usize, usize)> = file.edges.iter().map(|&[a, b]| (a, b)).collect();
    let graph = MultiGraph::new(file.n, &pairs)?;
    let leaves = file
        .leaves
        .map(|ls| ls.iter().map(|paths| node_from_paths(&graph, paths)).collect::<Result<Vec<_>, _>>())
        .transpose()?;
    Ok(GraphInput { graph, leaves })
}

pub fn graph_to_json(graph: &MultiGraph, leaves: Option<&[NodeGraph]>) -> Value {
    let file = GraphFile {
        n: graph.n(),
        edges: graph.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        leaves: leaves.map(|ls| ls.iter().map(leaf_paths).collect()),
    };
    serde_json::to_value(file).expect("graph files serialize")
}

/// An integer as a JSON number when it fits in `i64`, otherwise a string.
pub fn int_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

pub fn ints_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_json).collect())
}

pub fn route_json(route: &Route) -> Value {
    json!({"v1": route.first, "path": route.path.iter().map(|e| e.0).collect::<Vec<_>>(), "v2": route.last})
}

fn provenance(edge: &ProvEdge) -> Vec<usize> {
    edge.provenance().iter().map(|e| e.0).collect()
}

pub fn leaf_paths(node: &NodeGraph) -> Vec<Vec<usize>> {
    node.edges().iter().map(provenance).collect()
}

fn prov_edge_json(edge: &ProvEdge) -> Value {
    json!({"tail": edge.tail(), "head": edge.head(), "provenance": provenance(edge)})
}

pub fn node_graph_json(node: &NodeGraph) -> Value {
    Value::Array(node.edges().iter().map(prov_edge_json).collect())
}

fn choice_json(choice: &ReductionChoice) -> Value {
    json!({
        "vertex": choice.vertex,
        "incoming": prov_edge_json(&choice.incoming),
        "outgoing": prov_edge_json(&choice.outgoing),
    })
}

/// `{graph, choice, children: [G1, G3, G2]}`; leaves have a null choice and
/// no children.
pub fn tree_json(node: &TreeNode) -> Value {
    json!({
        "graph": node_graph_json(&node.graph),
        "choice": node.reduction.as_ref().map(|r| choice_json(&r.choice)),
        "children": node.children().iter().map(tree_json).collect::<Vec<_>>(),
    })
}

/// `{"terms": [{"x": {"i,j": e, ..}, "beta": k, "coef": c}, ..]}`.
pub fn multivar_json(p: &MultivarPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(m, c)| {
            let x: serde_json::Map<String, Value> =
                m.x_exponents().iter().map(|(&(i, j), &e)| (format!("{},{}", i, j), Value::from(e))).collect();
            json!({"x": x, "beta": m.beta_exponent(), "coef": int_json(c)})
        })
        .collect();
    json!({ "terms": terms })
}

/// Coefficients by ascending degree.
pub fn unipoly_json(p: &UniPoly) -> Value {
    ints_json(p.coeffs())
}

pub fn rational_json(p: &RationalPoly) -> Value {
    Value::Array(p.coefficient_strings().into_iter().map(Value::String).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use flowforms_core::algebra::reduced_form_from_tree;
    use flowforms_core::reduction::{build_reduction_tree, ReductionStrategy};

    #[test]
    fn parses_graphs() {
        let p3 = parse_graph(r#"{"n":3,"edges":[[1,2],[2,3]]}"#).unwrap();
        assert_eq!(p3.graph, MultiGraph::path(3));
        assert!(p3.leaves.is_none());
        let frame = parse_graph(r#"{"n":4,"edges":[[1,2],[1,2],[1,3],[2,3],[2,4],[3,4]]}"#).unwrap();
        assert_eq!(frame.graph.edge_count(), 6);
        assert_eq!(frame.graph.edge(EdgeId(2)).unwrap().tail, 1);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(parse_graph(r#"{"n":2,"edges":[[2,2]]}"#), Err(FormatError::Graph(_))));
        assert!(matches!(parse_graph(r#"{"n":2,"edges":[[2,1]]}"#), Err(FormatError::Graph(_))));
        assert!(matches!(parse_graph(r#"{"n":2,"edges":[[1,3]]}"#), Err(FormatError::Graph(_))));
        assert!(matches!(parse_graph(r#"{"n":2,"edges":[[1,2]"#), Err(FormatError::Json(_))));
        assert!(matches!(parse_graph(r#"{"n":2,"edge":[]}"#), Err(FormatError::Json(_))));
        assert!(matches!(
            parse_graph(r#"{"n":3,"edges":[[1,2],[2,3]],"leaves":[[[2,1]]]}"#),
            Err(FormatError::Graph(_))
        ));
    }

    #[test]
    fn leaves_round_trip() {
        let g = MultiGraph::path(3);
        let tree = build_reduction_tree(&g, &ReductionStrategy::Sigma);
        let leaves: Vec<NodeGraph> = tree.leaves().into_iter().cloned().collect();
        let text = graph_to_json(&g, Some(&leaves)).to_string();
        assert_eq!(text, r#"{"edges":[[1,2],[2,3]],"leaves":[[[1],[1,2]],[[1,2]],[[1,2],[2]]],"n":3}"#);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.leaves.unwrap(), leaves);
    }

    #[test]
    fn polynomial_and_route_json() {
        let tree = build_reduction_tree(&MultiGraph::path(3), &ReductionStrategy::Sigma);
        let p = reduced_form_from_tree(&tree);
        let v = multivar_json(&p);
        assert_eq!(v["terms"].as_array().unwrap().len(), 3);
        assert!(v["terms"].as_array().unwrap().contains(&json!({"x": {"1,2": 1, "1,3": 1}, "beta": 0, "coef": 1})));
        let r = Route { first: 1, path: vec![EdgeId(1)], last: 2 };
        assert_eq!(route_json(&r).to_string(), r#"{"path":[1],"v1":1,"v2":2}"#);
        assert_eq!(int_json(&(BigInt::from(i64::MAX) * 4)), Value::String("36893488147419103228".into()));
        assert_eq!(unipoly_json(&UniPoly::linear(2)), json!([2, 1]));
    }

    #[test]
    fn tree_layout() {
        let tree = build_reduction_tree(&MultiGraph::path(3), &ReductionStrategy::Sigma);
        let v = tree_json(&tree.root);
        assert_eq!(v["choice"]["vertex"], json!(2));
        assert_eq!(v["children"].as_array().unwrap().len(), 3);
        assert_eq!(v["children"][1]["graph"], json!([{"tail": 1, "head": 3, "provenance": [1, 2]}]));
        assert_eq!(v["children"][0]["choice"], Value::Null);
    }
}
