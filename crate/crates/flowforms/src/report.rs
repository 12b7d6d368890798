//! Corpus loading, the verification report and the one-graph summary.

use std::fs;
use std::path::{Path, PathBuf};

use flowforms_core::algebra::q_polynomial;
use flowforms_core::corpus::{builtin_corpus, NamedGraph};
use flowforms_core::ehrhart::{ehrhart_data, EhrhartError};
use flowforms_core::graph::{MultiGraph, NodeGraph};
use flowforms_core::poly::UniPoly;
use flowforms_core::triangulation::{h_polynomial, is_flag, Triangulation};
use flowforms_core::verify::{verify_graph, GraphVerification};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::formats::{int_json, ints_json, parse_graph, rational_json, unipoly_json, FormatError};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}", path.display())]
    Format { path: PathBuf, source: FormatError },
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub graph: NamedGraph,
    pub leaves: Option<Vec<NodeGraph>>,
}

pub fn builtin_entries() -> Vec<CorpusEntry> {
    builtin_corpus().into_iter().map(|graph| CorpusEntry { graph, leaves: None }).collect()
}

pub fn read_graph_file(path: &Path) -> Result<crate::formats::GraphInput, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io { path: path.into(), source })?;
    parse_graph(&text).map_err(|source| CorpusError::Format { path: path.into(), source })
}

/// Every `*.json` file of `dir`, by file name; the name of a graph is its
/// file stem.
pub fn load_corpus_dir(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let read = fs::read_dir(dir).map_err(|source| CorpusError::Io { path: dir.into(), source })?;
    let mut paths = Vec::new();
    for entry in read {
        let path = entry.map_err(|source| CorpusError::Io { path: dir.into(), source })?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            paths.push(path);
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let input = read_graph_file(&path)?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok(CorpusEntry { graph: NamedGraph { name, graph: input.graph }, leaves: input.leaves })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub graphs: Vec<GraphVerification>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.graphs.iter().all(GraphVerification::passed)
    }

    pub fn to_json(&self) -> Value {
        let graphs: Vec<Value> = self
            .graphs
            .iter()
            .map(|g| {
                let checks: Map<String, Value> = g
                    .checks
                    .iter()
                    .map(|c| (c.name.to_string(), json!({"passed": c.passed, "witness": c.witness})))
                    .collect();
                json!({"name": g.name, "passed": g.passed(), "checks": checks})
            })
            .collect();
        json!({"seed": self.seed, "passed": self.passed(), "graphs": graphs})
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for g in &self.graphs {
            let failed: Vec<&str> = g.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            if failed.is_empty() {
                out.push_str(&format!("PASS {}\n", g.name));
            } else {
                out.push_str(&format!("FAIL {} ({})\n", g.name, failed.join(", ")));
                for c in g.checks.iter().filter(|c| !c.passed) {
                    out.push_str(&format!("  {}: {}\n", c.name, c.witness));
                }
            }
        }
        let passing = self.graphs.iter().filter(|g| g.passed()).count();
        out.push_str(&format!("{}/{} graphs pass (seed {})\n", passing, self.graphs.len(), self.seed));
        out
    }
}

/// Runs every check on every entry in parallel; results keep corpus order.
pub fn cmd_verify(entries: &[CorpusEntry], seed: u64) -> VerifyReport {
    let graphs = entries
        .par_iter()
        .map(|e| verify_graph(&e.graph, seed, e.leaves.as_deref()))
        .collect();
    VerifyReport { seed, graphs }
}

#[derive(Clone, Debug)]
pub struct GraphSummary {
    pub q: UniPoly,
    pub q_shifted: UniPoly,
    pub f: Vec<BigInt>,
    pub h: Vec<BigInt>,
    pub hstar: Result<UniPoly, EhrhartError>,
    pub volume: BigInt,
    pub maximal_cliques: usize,
    pub routes: usize,
    pub dimension: usize,
    pub flag: bool,
    pub consistent: bool,
}

/// Q, f, h, h* and the normalized volume, with the cross-checks between them.
pub fn cmd_report(graph: &MultiGraph) -> GraphSummary {
    let q = q_polynomial(graph);
    let t = Triangulation::canonical(graph);
    let fh = t.complex.fh_vectors();
    let data = ehrhart_data(graph, None);
    let volume = q.coeff(0);
    let q_shifted = q.shift(-1);
    let hstar = data.map(|d| d.hstar);
    let consistent = q == h_polynomial(&fh.h).shift(1)
        && hstar.as_ref().is_ok_and(|h| *h == q_shifted)
        && BigInt::from(t.cliques.len()) == volume;
    GraphSummary {
        q,
        q_shifted,
        f: fh.f,
        h: fh.h,
        hstar,
        volume,
        maximal_cliques: t.cliques.len(),
        routes: t.routes.len(),
        dimension: t.dimension(),
        flag: is_flag(&t.complex),
        consistent,
    }
}

impl GraphSummary {
    pub fn to_json(&self) -> Value {
        json!({
            "Q": self.q.to_string(),
            "Q_coefficients": unipoly_json(&self.q),
            "Q_shifted": unipoly_json(&self.q_shifted),
            "f": ints_json(&self.f),
            "h": ints_json(&self.h),
            "hstar": self.hstar.as_ref().map(unipoly_json).unwrap_or_else(|e| Value::String(e.to_string())),
            "volume": int_json(&self.volume),
            "maximal_cliques": self.maximal_cliques,
            "routes": self.routes,
            "dimension": self.dimension,
            "flag": self.flag,
            "consistent": self.consistent,
        })
    }

    pub fn to_text(&self) -> String {
        let hstar = match &self.hstar {
            Ok(h) => h.to_string(),
            Err(e) => format!("error: {}", e),
        };
        format!(
            "Q = {}\nQ(β-1) = {}\nh* = {}\nf = {:?}\nh = {:?}\nvolume = {}\nmaximal cliques = {}\nroutes = {}\ndimension = {}\nflag = {}\nconsistent = {}\n",
            self.q,
            self.q_shifted,
            hstar,
            self.f.iter().map(ToString::to_string).collect::<Vec<_>>(),
            self.h.iter().map(ToString::to_string).collect::<Vec<_>>(),
            self.volume,
            self.maximal_cliques,
            self.routes,
            self.dimension,
            self.flag,
            self.consistent,
        )
    }
}

/// Values, interpolant and h*-polynomial as JSON.
pub fn ehrhart_json(graph: &MultiGraph, m_max: Option<u64>) -> Result<Value, EhrhartError> {
    let data = ehrhart_data(graph, m_max)?;
    Ok(json!({
        "dimension": data.dimension,
        "values": ints_json(&data.values),
        "polynomial": rational_json(&data.polynomial),
        "hstar": unipoly_json(&data.hstar),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_summary() {
        let s = cmd_report(&MultiGraph::path(3));
        assert_eq!(s.q.to_string(), "β + 2");
        assert_eq!(s.hstar.as_ref().unwrap().to_string(), "β + 1");
        assert_eq!(s.volume, BigInt::from(2));
        assert!(s.consistent);
        assert!(s.to_text().starts_with("Q = β + 2\n"));
    }

    #[test]
    fn single_edge_summary() {
        let s = cmd_report(&MultiGraph::path(2));
        assert_eq!(s.q, UniPoly::one());
        assert_eq!(s.volume, BigInt::from(1));
        assert!(s.consistent);
    }

    #[test]
    fn k3_summary_is_consistent() {
        let s = cmd_report(&MultiGraph::complete(3));
        assert!(s.consistent && s.flag);
        assert_eq!(s.to_json()["volume"], json!(2));
    }

    #[test]
    fn empty_report_passes() {
        let r = cmd_verify(&[], 1);
        assert!(r.passed());
        assert_eq!(r.to_json().to_string(), r#"{"graphs":[],"passed":true,"seed":1}"#);
    }
}
