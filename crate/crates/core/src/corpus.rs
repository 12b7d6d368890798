//! The built-in graph corpus.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{MultiGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: MultiGraph,
}

/// The six-edge graph on `[4]` with a doubled edge `(1,2)`.
pub fn doubled_edge_graph() -> MultiGraph {
    MultiGraph::new(4, &[(1, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).expect("valid graph")
}

fn connected(n: usize, pairs: &[(Vertex, Vertex)]) -> bool {
    let mut seen = 1u32 << 1;
    loop {
        let grown = pairs.iter().fold(seen, |acc, &(a, b)| {
            if acc >> a & 1 == 1 || acc >> b & 1 == 1 {
                acc | 1 << a | 1 << b
            } else {
                acc
            }
        });
        if grown == seen {
            return seen.count_ones() as usize == n;
        }
        seen = grown;
    }
}

/// Connected simple graphs on `[n]`, edges oriented `i < j`, by edge mask.
pub fn connected_simple_graphs(n: usize) -> Vec<(u32, MultiGraph)> {
    let all: Vec<(Vertex, Vertex)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    (1u32..1 << all.len())
        .filter_map(|mask| {
            let pairs: Vec<_> = (0..all.len()).filter(|&k| mask >> k & 1 == 1).map(|k| all[k]).collect();
            connected(n, &pairs).then(|| (mask, MultiGraph::new(n, &pairs).expect("valid graph")))
        })
        .collect()
}

/// Paths `P2`–`P6`, `K3`, `K4`, the doubled-edge graph, then every other
/// connected simple graph on `[3]` and `[4]`.
pub fn builtin_corpus() -> Vec<NamedGraph> {
    let mut out: Vec<NamedGraph> = (2..=6)
        .map(|n| NamedGraph { name: format!("P{}", n), graph: MultiGraph::path(n) })
        .collect();
    out.push(NamedGraph { name: String::from("K3"), graph: MultiGraph::complete(3) });
    out.push(NamedGraph { name: String::from("K4"), graph: MultiGraph::complete(4) });
    out.push(NamedGraph { name: String::from("doubled"), graph: doubled_edge_graph() });
    let mut seen: BTreeSet<(usize, Vec<(Vertex, Vertex)>)> = out
        .iter()
        .map(|g| {
            let mut p = g.graph.pairs();
            p.sort_unstable();
            (g.graph.n(), p)
        })
        .collect();
    for n in [3, 4] {
        for (mask, graph) in connected_simple_graphs(n) {
            let mut p = graph.pairs();
            p.sort_unstable();
            if seen.insert((n, p)) {
                out.push(NamedGraph { name: format!("C{}_{:02x}", n, mask), graph });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        assert_eq!(connected_simple_graphs(2).len(), 1);
        assert_eq!(connected_simple_graphs(3).len(), 4);
        assert_eq!(connected_simple_graphs(4).len(), 38);
    }

    #[test]
    fn corpus_contents() {
        let corpus = builtin_corpus();
        assert_eq!(corpus.len(), 8 + 4 + 38 - 4);
        let names: BTreeSet<&str> = corpus.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names.len(), corpus.len());
        assert!(corpus.iter().all(|g| g.graph.edge_count() <= 6));
        let with_repeats = corpus
            .iter()
            .filter(|g| g.graph.pairs().iter().collect::<BTreeSet<_>>().len() < g.graph.edge_count())
            .count();
        assert_eq!(with_repeats, 1);
        assert_eq!(doubled_edge_graph().pairs().iter().filter(|&&p| p == (1, 2)).count(), 2);
    }
}
