//! Simple undirected graphs on dense vertex labels `0..n`.
//!
//! Graphs are immutable once built. Every operation that changes the edge set
//! returns a new graph.

use std::fmt;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

fn check_capacity(what: &'static str, n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what,
            needed: n,
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

pub(crate) fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `⌈c·√m⌉`, exact in integers.
pub(crate) fn ceil_mul_sqrt(c: usize, m: usize) -> usize {
    let target = (c * c) as u128 * m as u128;
    let mut x = (target as f64).sqrt() as u128;
    while x * x < target {
        x += 1;
    }
    while x > 0 && (x - 1) * (x - 1) >= target {
        x -= 1;
    }
    x as usize
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity("graph", n)?;
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::input(format!("loop at vertex {u}")));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// Build from adjacency sets. Caller guarantees symmetry and no loops.
    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        debug_assert!((0..adj.len()).all(|u| !adj[u].contains(u)
            && adj[u].iter().all(|v| v < adj.len() && adj[v].contains(u))));
        Graph { n: adj.len(), adj }
    }

    /// Graph on `n` vertices whose edges are the set bits of `mask`, edges
    /// numbered in lexicographic order `(0,1), (0,2), .., (n-2,n-1)`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        assert!(binom2(n) <= 64, "edge mask enumeration supports n <= 11");
        let mut adj = vec![VertexSet::EMPTY; n];
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> bit & 1 == 1 {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
                bit += 1;
            }
        }
        Graph { n, adj }
    }

    /// Inverse of [`Graph::from_edge_mask`].
    pub fn edge_mask(&self) -> u64 {
        assert!(binom2(self.n) <= 64);
        let mut mask = 0u64;
        let mut bit = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    mask |= 1 << bit;
                }
                bit += 1;
            }
        }
        mask
    }

    pub fn complete(n: usize) -> Self {
        let full = VertexSet::prefix(n);
        let adj = (0..n)
            .map(|v| {
                let mut s = full;
                s.remove(v);
                s
            })
            .collect();
        Graph { n, adj }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path fits capacity")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle fits capacity")
    }

    /// Star with centre `0` and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (0, v))).expect("star fits capacity")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Number of pairs that are not edges, `C(n,2) - e(G)`.
    pub fn missing_edge_count(&self) -> usize {
        binom2(self.n) - self.edge_count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Vertex degrees in non-decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// The join `G * K_t`: `t` new vertices `n..n+t`, each adjacent to every
    /// other vertex.
    pub fn join(&self, t: usize) -> Result<Graph> {
        let total = self.n + t;
        check_capacity("join", total)?;
        let new = VertexSet::prefix(total) - VertexSet::prefix(self.n);
        let mut adj = Vec::with_capacity(total);
        for v in 0..self.n {
            adj.push(self.adj[v] | new);
        }
        let full = VertexSet::prefix(total);
        for v in self.n..total {
            let mut s = full;
            s.remove(v);
            adj.push(s);
        }
        Ok(Graph { n: total, adj })
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.with_edges(std::iter::once((u, v)))
    }

    pub fn with_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in edges {
            if u >= self.n || v >= self.n || u == v {
                return Err(Error::input(format!("cannot add edge ({u}, {v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Same vertex set, listed edges removed (absent pairs are ignored).
    pub fn without_edges<I>(&self, edges: I) -> Graph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = self.adj.clone();
        for (u, v) in edges {
            if u < self.n && v < self.n {
                adj[u].remove(v);
                adj[v].remove(u);
            }
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced on `vertices`, relabelled so `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Graph {
            n: vertices.len(),
            adj,
        }
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::prefix(self.n);
        let adj = (0..self.n)
            .map(|v| {
                let mut s = full - self.adj[v];
                s.remove(v);
                s
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Disjoint union, `other`'s vertices shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        Graph::from_edges(
            self.n + other.n,
            self.edges()
                .chain(other.edges().map(|(u, v)| (u + shift, v + shift))),
        )
    }

    /// Canonical key under vertex relabelling, by exhaustive permutation.
    /// Two graphs with `n <= 8` are isomorphic iff their keys are equal.
    pub fn canonical_key(&self) -> u64 {
        let n = self.n;
        assert!(n <= 8, "canonical_key is exhaustive and limited to n <= 8");
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        loop {
            let mut mask = 0u64;
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if self.has_edge(perm[u], perm[v]) {
                        mask |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(mask);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// A graph together with an ordered partition of its vertices into
/// independent classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultipartiteGraph {
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
    graph: Graph,
}

impl MultipartiteGraph {
    pub fn new(graph: Graph, parts: Vec<Vec<usize>>) -> Result<Self> {
        let n = graph.order();
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(Error::input(format!("part vertex {v} out of range")));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} is in two parts")));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::input(format!("vertex {v} is in no part")));
        }
        for (u, v) in graph.edges() {
            if part_of[u] == part_of[v] {
                return Err(Error::input(format!(
                    "edge ({u}, {v}) lies inside part {}",
                    part_of[u]
                )));
            }
        }
        let mut parts = parts;
        for p in &mut parts {
            p.sort_unstable();
        }
        Ok(MultipartiteGraph {
            parts,
            part_of,
            graph,
        })
    }

    /// Complete `k`-partite graph with `size` vertices per part; part `p`
    /// holds vertices `p*size .. (p+1)*size`.
    pub fn complete_balanced(k: usize, size: usize) -> Result<Self> {
        let n = k * size;
        check_capacity("multipartite host", n)?;
        let parts: Vec<Vec<usize>> = (0..k).map(|p| (p * size..(p + 1) * size).collect()).collect();
        let mut adj = vec![VertexSet::EMPTY; n];
        let full = VertexSet::prefix(n);
        for part in &parts {
            let own: VertexSet = part.iter().copied().collect();
            for &v in part {
                adj[v] = full - own;
            }
        }
        Ok(MultipartiteGraph {
            part_of: (0..n).map(|v| v / size.max(1)).collect(),
            parts,
            graph: Graph::from_adjacency(adj),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Part sizes if all equal.
    pub fn balanced_size(&self) -> Option<usize> {
        let first = self.parts.first().map_or(0, Vec::len);
        self.parts.iter().all(|p| p.len() == first).then_some(first)
    }

    pub fn neighbors_in_part(&self, v: usize, part: usize) -> usize {
        let nb = self.graph.neighbors(v);
        self.parts[part].iter().filter(|&&u| nb.contains(u)).count()
    }

    /// Same partition, listed edges removed.
    pub fn without_edges<I>(&self, edges: I) -> MultipartiteGraph
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        MultipartiteGraph {
            parts: self.parts.clone(),
            part_of: self.part_of.clone(),
            graph: self.graph.without_edges(edges),
        }
    }
}
