//! Shellings of pure simplicial complexes, h-vectors read off a shelling,
//! and the expansion of the leaves of the canonical reduction tree as a
//! formal sum over a shelling of its full-dimensional leaves.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::NodeGraph;
use crate::triangulation::SimplicialComplex;

/// Node expansions allowed to [`find_shelling`] by default.
pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShellingError {
    #[error("complex is not pure")]
    NotPure,
    #[error("no shelling found within {0} node expansions")]
    BudgetExhausted(usize),
    #[error("complex admits no shelling")]
    NotShellable,
}

/// A permutation of the facets of a complex, by facet index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingOrder(pub Vec<usize>);

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Codimension-one faces of `facet` that lie in one of `earlier`, when
/// `facet ∩ (∪ earlier)` is a nonempty union of them; `None` otherwise.
fn attachment(facet: &[usize], earlier: &[&Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let meets: Vec<Vec<usize>> = earlier.iter().map(|g| intersection(facet, g)).collect();
    let mut ridges: Vec<Vec<usize>> = meets.iter().filter(|m| m.len() + 1 == facet.len()).cloned().collect();
    ridges.sort();
    ridges.dedup();
    if ridges.is_empty() {
        return None;
    }
    let covered = meets
        .iter()
        .all(|m| ridges.iter().any(|r| m.iter().all(|x| r.binary_search(x).is_ok())));
    covered.then_some(ridges)
}

/// Whether `order` lists every facet of `complex` once and each facet after
/// the first meets the union of its predecessors in a nonempty union of its
/// own codimension-one faces.
pub fn is_shelling(order: &[usize], complex: &SimplicialComplex) -> bool {
    let facets = complex.facets();
    let mut seen = vec![false; facets.len()];
    if order.len() != facets.len() {
        return false;
    }
    for &k in order {
        if k >= facets.len() || seen[k] {
            return false;
        }
        seen[k] = true;
    }
    if !complex.is_pure() {
        return false;
    }
    (1..order.len()).all(|i| {
        let earlier: Vec<&Vec<usize>> = order[..i].iter().map(|&k| &facets[k]).collect();
        attachment(&facets[order[i]], &earlier).is_some()
    })
}

/// For each position of a shelling, the codimension-one faces along which
/// that facet attaches to its predecessors.
pub fn attaching_faces(order: &[usize], complex: &SimplicialComplex) -> Vec<Vec<Vec<usize>>> {
    let facets = complex.facets();
    (0..order.len())
        .map(|i| {
            if i == 0 {
                return Vec::new();
            }
            let earlier: Vec<&Vec<usize>> = order[..i].iter().map(|&k| &facets[k]).collect();
            attachment(&facets[order[i]], &earlier).unwrap_or_default()
        })
        .collect()
}

/// `h_i` = number of facets attaching along exactly `i` codimension-one faces.
pub fn h_from_shelling(order: &[usize], complex: &SimplicialComplex) -> Vec<BigInt> {
    let d = complex.d();
    let mut h = vec![BigInt::zero(); d + 1];
    for faces in attaching_faces(order, complex) {
        h[faces.len()] += 1;
    }
    h
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellingSearch {
    pub order: ShellingOrder,
    /// Whether the supplied candidate order was already a shelling.
    pub candidate_was_shelling: Option<bool>,
    pub expansions: usize,
}

/// Returns `candidate` if it shells `complex`; otherwise searches depth first
/// for a shelling, trying facets in index order or, with `seed`, in a
/// shuffled order.
pub fn find_shelling(
    complex: &SimplicialComplex,
    candidate: Option<&[usize]>,
    seed: Option<u64>,
    budget: usize,
) -> Result<ShellingSearch, ShellingError> {
    if !complex.is_pure() {
        return Err(ShellingError::NotPure);
    }
    let candidate_was_shelling = candidate.map(|c| is_shelling(c, complex));
    if let (Some(c), Some(true)) = (candidate, candidate_was_shelling) {
        return Ok(ShellingSearch { order: ShellingOrder(c.to_vec()), candidate_was_shelling, expansions: 0 });
    }

    let facets = complex.facets();
    let mut preference: Vec<usize> = (0..facets.len()).collect();
    if let Some(seed) = seed {
        preference.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    struct Search<'a> {
        facets: &'a [Vec<usize>],
        preference: &'a [usize],
        used: Vec<bool>,
        order: Vec<usize>,
        expansions: usize,
        budget: usize,
    }

    impl Search<'_> {
        fn run(&mut self) -> Result<bool, ShellingError> {
            if self.order.len() == self.facets.len() {
                return Ok(true);
            }
            for &k in self.preference {
                if self.used[k] {
                    continue;
                }
                if !self.order.is_empty() {
                    let earlier: Vec<&Vec<usize>> = self.order.iter().map(|&j| &self.facets[j]).collect();
                    if attachment(&self.facets[k], &earlier).is_none() {
                        continue;
                    }
                }
                self.expansions += 1;
                if self.expansions > self.budget {
                    return Err(ShellingError::BudgetExhausted(self.budget));
                }
                self.used[k] = true;
                self.order.push(k);
                if self.run()? {
                    return Ok(true);
                }
                self.order.pop();
                self.used[k] = false;
            }
            Ok(false)
        }
    }

    let mut search = Search {
        facets,
        preference: &preference,
        used: vec![false; facets.len()],
        order: Vec::new(),
        expansions: 0,
        budget,
    };
    if search.run()? {
        Ok(ShellingSearch { order: ShellingOrder(search.order), candidate_was_shelling, expansions: search.expansions })
    } else {
        Err(ShellingError::NotShellable)
    }
}

/// The multiset `P_i` for each facet: its intersections with earlier facets
/// that have exactly one edge fewer.
pub fn attach_profile(shelled: &[NodeGraph]) -> Vec<Vec<NodeGraph>> {
    (0..shelled.len())
        .map(|i| {
            shelled[..i]
                .iter()
                .map(|earlier| shelled[i].intersect(earlier))
                .filter(|meet| meet.edge_count() + 1 == shelled[i].edge_count())
                .collect()
        })
        .collect()
}

/// Expands `Σ_i Π_j (F_i + Q_j^i)` with intersection as the product; the
/// empty product contributes `F_i`.
pub fn formal_sum_expansion(shelled: &[NodeGraph]) -> Vec<NodeGraph> {
    let mut out = Vec::new();
    for (facet, profile) in shelled.iter().zip(attach_profile(shelled)) {
        let f = profile.len();
        for mask in 0u64..(1u64 << f) {
            let term = (0..f)
                .filter(|&b| mask >> b & 1 == 1)
                .fold(facet.clone(), |acc, b| acc.intersect(&profile[b]));
            out.push(term);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSumReport {
    pub terms: usize,
    pub leaves: usize,
    /// Leaves not produced by the expansion, with multiplicity.
    pub missing: Vec<NodeGraph>,
    /// Expansion terms that are not leaves, with multiplicity.
    pub extra: Vec<NodeGraph>,
    pub passed: bool,
}

fn multiset(items: &[NodeGraph]) -> BTreeMap<&NodeGraph, usize> {
    let mut m = BTreeMap::new();
    for g in items {
        *m.entry(g).or_insert(0) += 1;
    }
    m
}

/// Compares the expansion over `shelled` (full-dimensional leaves in
/// shelling order) with the multiset of all leaves.
pub fn verify_formal_sum(shelled: &[NodeGraph], leaves: &[NodeGraph]) -> FormalSumReport {
    let expansion = formal_sum_expansion(shelled);
    let (have, want) = (multiset(&expansion), multiset(leaves));
    let mut missing = Vec::new();
    let mut extra = Vec::new();
    for (g, &c) in &want {
        let got = have.get(g).copied().unwrap_or(0);
        missing.extend(core::iter::repeat_n((*g).clone(), c.saturating_sub(got)));
    }
    for (g, &c) in &have {
        let expected = want.get(g).copied().unwrap_or(0);
        extra.extend(core::iter::repeat_n((*g).clone(), c.saturating_sub(expected)));
    }
    let passed = missing.is_empty() && extra.is_empty();
    FormalSumReport { terms: expansion.len(), leaves: leaves.len(), missing, extra, passed }
}
