use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the Hamiltonian-cycle subset DP (2^(n-1) words).
pub const HAM_DP_LIMIT: usize = 24;

/// Largest order accepted by the path-cover subset DP (2^n * n bytes).
pub const PATH_COVER_LIMIT: usize = 20;

fn small_adjacency(g: &Graph, limit: usize, what: &'static str) -> Result<Vec<u32>> {
    let n = g.order();
    if n > limit {
        return Err(Error::Capacity {
            what,
            needed: n,
            limit,
        });
    }
    Ok((0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, u| m | 1 << u))
        .collect())
}

/// Exact Hamiltonian-cycle search by subset dynamic programming.
///
/// `reach[S]` is the set of vertices `v` such that some path starts at vertex
/// 0, visits exactly `S ∪ {0}` and ends at `v`.
pub fn is_hamiltonian(g: &Graph) -> Result<Option<Certificate>> {
    let adj = small_adjacency(g, HAM_DP_LIMIT, "hamiltonian cycle search")?;
    let n = g.order();
    if n < 3 || adj.iter().any(|a| a.count_ones() < 2) {
        return Ok(None);
    }
    // subsets of {1..n-1} encoded on n-1 bits (vertex v -> bit v-1)
    let m = n - 1;
    let full = (1usize << m) - 1;
    let mut reach = vec![0u32; 1 << m];
    let shifted: Vec<u32> = (0..n).map(|v| adj[v] >> 1).collect();
    for v in 1..n {
        if adj[0] >> v & 1 == 1 {
            reach[1 << (v - 1)] |= 1 << (v - 1);
        }
    }
    for s in 1..=full {
        let ends = reach[s];
        if ends == 0 {
            continue;
        }
        let mut e = ends;
        while e != 0 {
            let b = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut nxt = shifted[b + 1] & !(s as u32) & full as u32;
            while nxt != 0 {
                let c = nxt.trailing_zeros() as usize;
                nxt &= nxt - 1;
                reach[s | 1 << c] |= 1 << c;
            }
        }
    }
    let closing = reach[full] & shifted[0];
    if closing == 0 {
        return Ok(None);
    }
    let mut cycle = Vec::with_capacity(n);
    let mut s = full;
    let mut v = closing.trailing_zeros() as usize;
    loop {
        cycle.push(v + 1);
        let rest = s & !(1 << v);
        if rest == 0 {
            break;
        }
        let prev = reach[rest] & shifted[v + 1];
        debug_assert!(prev != 0);
        s = rest;
        v = prev.trailing_zeros() as usize;
    }
    cycle.push(0);
    cycle.reverse();
    Ok(Some(Certificate::HamCycle(cycle)))
}

/// Chvátal's degree-sequence condition: with `d_1 <= .. <= d_n`, for every
/// `1 <= i < n/2` either `d_i > i` or `d_{n-i} >= n - i`. Sufficient, not
/// necessary, for a Hamiltonian cycle.
pub fn chvatal_sufficient(g: &Graph) -> Result<bool> {
    let n = g.order();
    if n < 3 {
        return Err(Error::input(format!(
            "Chvatal's condition needs n >= 3, got {n}"
        )));
    }
    let d = g.degree_sequence();
    Ok((1..).take_while(|&i| 2 * i < n).all(|i| d[i - 1] > i || d[n - i - 1] >= n - i))
}

/// Minimum number of vertex-disjoint paths covering every vertex, with an
/// optimal cover, by subset DP over `(visited set, end of the last path)`.
pub fn path_cover_number(g: &Graph) -> Result<(usize, Certificate)> {
    let adj = small_adjacency(g, PATH_COVER_LIMIT, "path cover search")?;
    let n = g.order();
    if n == 0 {
        return Err(Error::input("path cover of the empty graph"));
    }
    const INF: u8 = u8::MAX;
    let states = 1usize << n;
    let mut best = vec![INF; states * n];
    for v in 0..n {
        best[(1 << v) * n + v] = 1;
    }
    for s in 1..states {
        for v in 0..n {
            let c = best[s * n + v];
            if c == INF {
                continue;
            }
            let mut rest = !s & (states - 1);
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let cost = if adj[v] >> u & 1 == 1 { c } else { c + 1 };
                let slot = &mut best[(s | 1 << u) * n + u];
                if cost < *slot {
                    *slot = cost;
                }
            }
        }
    }
    let full = states - 1;
    let (mut end, mu) = (0..n)
        .map(|v| (v, best[full * n + v]))
        .min_by_key(|&(v, c)| (c, v))
        .expect("n >= 1");
    // walk back: each step either continues the current path or closes it
    let mut paths: Vec<Vec<usize>> = vec![vec![end]];
    let mut s = full;
    let mut cost = mu;
    while s.count_ones() > 1 {
        let rest = s & !(1 << end);
        let prev = (0..n)
            .filter(|&w| rest >> w & 1 == 1)
            .find_map(|w| {
                let c = best[rest * n + w];
                if c == INF {
                    return None;
                }
                let step = if adj[w] >> end & 1 == 1 { c } else { c + 1 };
                (step == cost).then_some((w, c))
            })
            .expect("DP predecessor exists");
        let (w, c) = prev;
        if c == cost && adj[w] >> end & 1 == 1 {
            paths.last_mut().unwrap().push(w);
        } else {
            paths.push(vec![w]);
        }
        s = rest;
        end = w;
        cost = c;
    }
    for p in &mut paths {
        p.reverse();
    }
    paths.reverse();
    Ok((mu as usize, Certificate::PathCover(paths)))
}

/// Whether some single path visits every vertex.
pub fn has_hamiltonian_path(g: &Graph) -> Result<bool> {
    Ok(g.order() == 0 || path_cover_number(g)?.0 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;

    fn assert_cycle(g: &Graph) {
        let c = is_hamiltonian(g).unwrap().expect("hamiltonian");
        assert!(verify(g, &c).unwrap().is_valid(), "{c:?}");
    }

    #[test]
    fn small_cases() {
        assert_cycle(&Graph::cycle(5));
        assert_cycle(&Graph::complete(7));
        assert!(is_hamiltonian(&Graph::star(4)).unwrap().is_none());
        let j = Graph::star(4).join(1).unwrap();
        assert!(is_hamiltonian(&j).unwrap().is_none());
        assert!(is_hamiltonian(&Graph::complete(2)).unwrap().is_none());
        assert!(is_hamiltonian(&Graph::empty(0).unwrap()).unwrap().is_none());
    }

    #[test]
    fn capacity_is_enforced() {
        let g = Graph::complete(HAM_DP_LIMIT + 1);
        assert!(matches!(is_hamiltonian(&g), Err(Error::Capacity { .. })));
    }

    #[test]
    fn chvatal_examples() {
        assert!(chvatal_sufficient(&Graph::complete(5)).unwrap());
        assert!(!chvatal_sufficient(&Graph::cycle(6)).unwrap());
        let g = Graph::empty(3).unwrap().join(3).unwrap();
        assert_eq!(g.degree_sequence(), vec![3, 3, 3, 5, 5, 5]);
        assert!(chvatal_sufficient(&g).unwrap());
        assert!(chvatal_sufficient(&Graph::path(2)).is_err());
    }

    #[test]
    fn path_cover_examples() {
        let cases = [
            (Graph::path(4), 1),
            (Graph::empty(4).unwrap(), 4),
            (Graph::star(4), 2),
            (Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(), 2),
            (Graph::empty(1).unwrap(), 1),
        ];
        for (g, mu) in cases {
            let (got, cert) = path_cover_number(&g).unwrap();
            assert_eq!(got, mu, "{g:?}");
            assert!(verify(&g, &cert).unwrap().is_valid());
            match cert {
                Certificate::PathCover(p) => assert_eq!(p.len(), mu),
                _ => unreachable!(),
            }
        }
    }
}
