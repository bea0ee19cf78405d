//! Solvers against independent brute-force oracles.

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use deficiency::designs::design_admissible;
use deficiency::solvers::{
    chvatal_sufficient, find_kk_decomposition, find_kk_factor, fischer_condition, hs_condition, is_hamiltonian,
    path_cover_number,
};
use deficiency::{verify, Graph, Limits, MultipartiteGraph};

fn naive_hamiltonian(g: &Graph) -> bool {
    let n = g.order();
    if n < 3 {
        return false;
    }
    (1..n).permutations(n - 1).any(|p| {
        let mut prev = 0;
        for &v in &p {
            if !g.has_edge(prev, v) {
                return false;
            }
            prev = v;
        }
        g.has_edge(prev, 0)
    })
}

/// Fewest paths covering `g`: a permutation with `b` non-adjacent
/// consecutive pairs splits into `b + 1` paths.
fn naive_path_cover(g: &Graph) -> usize {
    let n = g.order();
    (0..n)
        .permutations(n)
        .map(|p| 1 + p.windows(2).filter(|w| !g.has_edge(w[0], w[1])).count())
        .min()
        .unwrap()
}

fn naive_triangle_factor(g: &Graph, free: &[usize]) -> bool {
    let Some(&v) = free.first() else { return true };
    let rest: Vec<usize> = free[1..].to_vec();
    for (i, &a) in rest.iter().enumerate() {
        for &b in &rest[i + 1..] {
            if g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b) {
                let next: Vec<usize> = rest.iter().copied().filter(|&x| x != a && x != b).collect();
                if naive_triangle_factor(g, &next) {
                    return true;
                }
            }
        }
    }
    false
}

fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn hamiltonicity_exhaustive_small() {
    for n in 3..=6usize {
        let total = 1u64 << (n * (n - 1) / 2);
        let bad: Vec<u64> = (0..total)
            .into_par_iter()
            .filter(|&m| {
                let g = Graph::from_edge_mask(n, m);
                let cert = is_hamiltonian(&g).unwrap();
                if let Some(c) = &cert {
                    assert!(verify(&g, c).unwrap().is_valid());
                }
                cert.is_some() != naive_hamiltonian(&g)
            })
            .collect();
        assert!(bad.is_empty(), "n={n}: disagreement on masks {bad:?}");
    }
}

#[test]
fn hamiltonicity_random_up_to_eight() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..10_000 {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        assert_eq!(is_hamiltonian(&g).unwrap().is_some(), naive_hamiltonian(&g), "{g:?}");
    }
}

#[test]
fn path_cover_exhaustive_small() {
    for n in 1..=6usize {
        let total = 1u64 << (n * (n - 1) / 2);
        (0..total).into_par_iter().for_each(|m| {
            let g = Graph::from_edge_mask(n, m);
            let (mu, cert) = path_cover_number(&g).unwrap();
            assert!(verify(&g, &cert).unwrap().is_valid());
            assert_eq!(mu, naive_path_cover(&g), "{g:?}");
        });
    }
}

#[test]
fn chvatal_implies_hamiltonian() {
    for n in 3..=7usize {
        let total = 1u64 << (n * (n - 1) / 2);
        (0..total).into_par_iter().for_each(|m| {
            let g = Graph::from_edge_mask(n, m);
            if chvatal_sufficient(&g).unwrap() {
                assert!(is_hamiltonian(&g).unwrap().is_some(), "{g:?}");
            }
        });
    }
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..2_000 {
        let n = rng.gen_range(8..=12);
        let p = rng.gen_range(0.5..0.95);
        let g = random_graph(&mut rng, n, p);
        if chvatal_sufficient(&g).unwrap() {
            assert!(is_hamiltonian(&g).unwrap().is_some(), "{g:?}");
        }
    }
}

#[test]
fn triangle_factor_matches_partition_search() {
    let lim = Limits::default();
    (0u64..1 << 15).into_par_iter().for_each(|m| {
        let g = Graph::from_edge_mask(6, m);
        let found = find_kk_factor(&g, 3, &lim).unwrap();
        if let Some(c) = &found {
            assert!(verify(&g, c).unwrap().is_valid());
        }
        assert_eq!(found.is_some(), naive_triangle_factor(&g, &(0..6).collect::<Vec<_>>()), "{g:?}");
        if hs_condition(&g, 3).unwrap() {
            assert!(found.is_some());
        }
    });
    let mut rng = StdRng::seed_from_u64(13);
    for _ in 0..3_000 {
        let n = [3usize, 9, 12][rng.gen_range(0..3)];
        let p = rng.gen_range(0.3..0.95);
        let g = random_graph(&mut rng, n, p);
        let found = find_kk_factor(&g, 3, &lim).unwrap();
        assert_eq!(found.is_some(), naive_triangle_factor(&g, &(0..n).collect::<Vec<_>>()), "{g:?}");
        if hs_condition(&g, 3).unwrap() {
            assert!(found.is_some());
        }
    }
}

#[test]
fn fischer_implies_multipartite_factor() {
    let mut rng = StdRng::seed_from_u64(14);
    let lim = Limits::default();
    for _ in 0..500 {
        let size = rng.gen_range(2..=5);
        let host = MultipartiteGraph::complete_balanced(3, size).unwrap();
        let drop: Vec<(usize, usize)> = host.graph().edges().filter(|_| rng.gen_bool(0.15)).collect();
        let mg = host.without_edges(drop);
        if fischer_condition(&mg, 3).unwrap() {
            let c = find_kk_factor(mg.graph(), 3, &lim).unwrap().expect("factor");
            assert!(verify(mg.graph(), &c).unwrap().is_valid());
        }
    }
}

#[test]
fn admissibility_is_necessary() {
    let lim = Limits::default();
    for n in 3..=13 {
        let found = find_kk_decomposition(&Graph::complete(n), 3, &lim).unwrap();
        assert_eq!(found.is_some(), design_admissible(n, 3), "n={n}");
        if let Some(c) = found {
            assert!(verify(&Graph::complete(n), &c).unwrap().is_valid());
        }
    }
}
