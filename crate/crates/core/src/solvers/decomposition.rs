use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::{binom2, Graph};
use crate::search::{ExactCover, Limits};

use super::cliques_within;

/// Exact K_k-decomposition search.
///
/// Exact cover over the edges of `g` with the k-cliques of `g` as options.
/// Instances failing the divisibility tests (`k-1` divides every degree,
/// `C(k,2)` divides the edge count) are rejected without search.
pub fn find_kk_decomposition(g: &Graph, k: usize, limits: &Limits) -> Result<Option<Certificate>> {
    if k < 3 {
        return Err(Error::input(format!("decomposition needs k >= 3, got {k}")));
    }
    if !divisible(g, k) {
        return Ok(None);
    }
    let mut deadline = limits.start("clique decomposition");
    let n = g.order();
    let mut edge_id = vec![usize::MAX; n * n];
    for (i, (u, v)) in g.edges().enumerate() {
        edge_id[u * n + v] = i;
    }
    let cliques = cliques_within(g, k, g.vertices());
    deadline.check()?;
    let mut ec = ExactCover::new(g.edge_count(), 0);
    let mut items = Vec::with_capacity(binom2(k));
    for c in &cliques {
        items.clear();
        for (i, &u) in c.iter().enumerate() {
            for &v in &c[i + 1..] {
                items.push(edge_id[u * n + v]);
            }
        }
        ec.add_option(&items);
    }
    Ok(ec.solve(&mut deadline)?.map(|rows| {
        let mut chosen: Vec<Vec<usize>> = rows.into_iter().map(|r| cliques[r].clone()).collect();
        chosen.sort();
        Certificate::Decomposition { k, cliques: chosen }
    }))
}

pub(crate) fn divisible(g: &Graph, k: usize) -> bool {
    g.edge_count().is_multiple_of(binom2(k)) && (0..g.order()).all(|v| g.degree(v).is_multiple_of(k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;

    fn decompose(g: &Graph, k: usize) -> Option<Certificate> {
        find_kk_decomposition(g, k, &Limits::default()).unwrap()
    }

    #[test]
    fn steiner_triple_systems() {
        for (n, blocks) in [(3, 1), (7, 7), (9, 12), (13, 26), (15, 35)] {
            let g = Graph::complete(n);
            let c = decompose(&g, 3).expect("STS exists");
            assert!(verify(&g, &c).unwrap().is_valid());
            match c {
                Certificate::Decomposition { cliques, .. } => assert_eq!(cliques.len(), blocks),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn divisibility_rejects() {
        assert!(decompose(&Graph::complete(6), 3).is_none());
        assert!(decompose(&Graph::complete(8), 3).is_none());
        assert!(decompose(&Graph::cycle(6), 3).is_none());
    }

    #[test]
    fn k4_designs() {
        let g = Graph::complete(13);
        let c = decompose(&g, 4).expect("projective plane of order 3");
        assert!(verify(&g, &c).unwrap().is_valid());
        assert!(decompose(&Graph::complete(4), 4).is_some());
    }

    #[test]
    fn empty_graph_is_trivially_decomposed() {
        let c = decompose(&Graph::empty(5).unwrap(), 3).unwrap();
        assert_eq!(
            c,
            Certificate::Decomposition {
                k: 3,
                cliques: vec![]
            }
        );
    }

    #[test]
    fn small_k_rejected() {
        assert!(find_kk_decomposition(&Graph::complete(3), 2, &Limits::default()).is_err());
    }
}
