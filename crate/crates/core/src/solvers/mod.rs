//! Exact decision procedures with certificates, the degree-based sufficient
//! conditions that act as fast paths, and the constructive covering routines used
//! by the embedding pipelines.

mod cover;
mod decomposition;
mod hamiltonian;

pub use cover::{
    find_kk_factor, fischer_condition, hs_condition, multipartite_factor, near_factor_cover,
    CoverStrategy, MultipartiteCover, NearFactorCover, RemovedEdgeSet,
};
pub use decomposition::find_kk_decomposition;
pub use hamiltonian::{
    chvatal_sufficient, has_hamiltonian_path, is_hamiltonian, path_cover_number, HAM_DP_LIMIT,
    PATH_COVER_LIMIT,
};

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// All `k`-cliques of `g` inside `within`, each ascending, in lexicographic
/// order.
pub(crate) fn cliques_within(g: &Graph, k: usize, within: VertexSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    extend_cliques(g, k, within, &mut current, &mut out);
    out
}

fn extend_cliques(
    g: &Graph,
    k: usize,
    candidates: VertexSet,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    let need = k - current.len();
    if candidates.len() < need {
        return;
    }
    for v in candidates.iter() {
        // only vertices above v, so every clique is generated once in order
        let later = (candidates & g.neighbors(v)) - VertexSet::prefix(v + 1);
        current.push(v);
        extend_cliques(g, k, later, current, out);
        current.pop();
    }
}
